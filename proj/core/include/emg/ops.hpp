#pragma once

#include <optional>
#include <string>

#include "emg/node.hpp"
#include "emg/params.hpp"

namespace emg {

enum class OpFail {
    None,
    LabelMismatch,      // child label does not refine the expectation
    AgreementFailure,   // governed attributes failed to unify
};

struct AgreeOutcome {
    bool ok = true;
    bool applied = false; // false when no agreement entry was active
};

struct MergeOutcome {
    bool ok = false;
    OpFail why = OpFail::None;
    Polarity pol = Polarity::Select;
    bool label_consumed = false;    // select, or license discharging at the
                                    // consumer's final expectation
    bool agreement_applied = false;
};

struct SuccessOutcome {
    bool pass = true;
    bool vacuous = false; // node still has pending or suspended work
};

/// Unify the governed attributes of n1 and n2 when at least one side has an
/// active agreement entry. Activation of a ^M entry requires that the node
/// arrives from memory. On success the unified values are written back to
/// both nodes; on failure nothing is touched.
AgreeOutcome op_agree(NodeStore& ns, NodeId n1, NodeId n2, bool from_memory,
                      const ParameterSet& params);

/// Merge n2 under n1's first pending expectation. Checks category refinement
/// and agreement, consumes the expectation, records the dependency, and
/// consumes n2's label for selection. A license merge that discharges n1's
/// final expectation consumes the label as well, closing the licensing chain.
/// On failure the outcome reports why and neither node is modified.
MergeOutcome op_merge(NodeStore& ns, NodeId n1, NodeId n2, bool from_memory,
                      const ParameterSet& params);

/// After a first merge, keep n2 on hold inside n1's buffer when n2 still has
/// expected categories to spend. Returns true when a slot was pushed.
bool op_move(NodeStore& ns, NodeId n1, NodeId n2, const ParameterSet& params);

/// When parent just consumed its last expectation, hand its remaining buffer
/// to child wholesale, preserving order. Returns the number of slots moved.
/// The transfer does not ask whether child can use them; a child with no
/// pending expectations then fails its own buffer check.
int op_inherit(NodeStore& ns, NodeId parent, NodeId child);

/// Right-edge check: a node with no work left passes only with an empty
/// buffer. Nodes with pending or suspended features pass vacuously.
SuccessOutcome op_success(const NodeStore& ns, NodeId n);

/// Buffer insertion honouring the memory policy: fifo appends, lifo
/// prepends. Probing always starts at the front.
void push_slot(NodeStore& ns, NodeId owner, MemorySlot slot,
               const ParameterSet& params);

/// Remove and return slot `index` of owner's buffer.
MemorySlot pop_slot(NodeStore& ns, NodeId owner, size_t index);

const char* op_fail_str(OpFail f);

} // namespace emg
