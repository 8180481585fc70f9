#include "emg/ops.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace emg {

AgreeOutcome op_agree(NodeStore& ns, NodeId n1, NodeId n2, bool from_memory,
                      const ParameterSet& params) {
    Node& a = ns[n1];
    Node& b = ns[n2];

    const AgrEntry* ea = params.resolve_agr(a.cat);
    const AgrEntry* eb = params.resolve_agr(b.cat);
    bool active_a = ea != nullptr && (!ea->moved_only || from_memory);
    bool active_b = eb != nullptr && (!eb->moved_only || from_memory);
    if (!active_a && !active_b)
        return {true, false};

    std::set<std::string> attrs;
    if (active_a)
        attrs.insert(ea->attrs.begin(), ea->attrs.end());
    if (active_b)
        attrs.insert(eb->attrs.begin(), eb->attrs.end());

    auto unified = unify_restricted(a.agr, b.agr, attrs);
    if (!unified)
        return {false, true};
    a.agr = unified->first;
    b.agr = unified->second;
    return {true, true};
}

MergeOutcome op_merge(NodeStore& ns, NodeId n1, NodeId n2, bool from_memory,
                      const ParameterSet& params) {
    MergeOutcome out;
    {
        const Node& a = ns[n1];
        const Node& b = ns[n2];
        assert(!a.pending.empty() && "merge target has no open expectation");
        if (!b.has_label() || !refines(b.label(), a.pending.front().cat)) {
            out.why = OpFail::LabelMismatch;
            return out;
        }
    }

    AgreeOutcome agr = op_agree(ns, n1, n2, from_memory, params);
    if (!agr.ok) {
        out.why = OpFail::AgreementFailure;
        return out;
    }

    Node& a = ns[n1];
    Node& b = ns[n2];
    ExpectFeature feat = a.pending.front();
    a.pending.erase(a.pending.begin());

    out.ok = true;
    out.pol = feat.pol;
    out.agreement_applied = agr.applied;
    if (feat.pol == Polarity::Select) {
        b.expected.erase(b.expected.begin());
        out.label_consumed = true;
    } else if (a.pending.empty() && a.suspended.empty()) {
        // License at the consumer's last expectation: nothing later in this
        // projection can reuse the copy, so the label is spent here too.
        b.expected.erase(b.expected.begin());
        out.label_consumed = true;
    }

    a.deps.push_back({feat, n2, from_memory});
    if (b.parent < 0)
        b.parent = n1;
    return out;
}

bool op_move(NodeStore& ns, NodeId n1, NodeId n2, const ParameterSet& params) {
    if (ns[n2].expected.empty())
        return false;
    push_slot(ns, n1, {n2}, params);
    return true;
}

int op_inherit(NodeStore& ns, NodeId parent, NodeId child) {
    Node& p = ns[parent];
    if (!p.pending.empty() || !p.suspended.empty() || p.mem.empty())
        return 0;
    Node& c = ns[child];
    int moved = static_cast<int>(p.mem.size());
    c.mem.insert(c.mem.end(), p.mem.begin(), p.mem.end());
    p.mem.clear();
    return moved;
}

SuccessOutcome op_success(const NodeStore& ns, NodeId n) {
    const Node& node = ns[n];
    if (!node.pending.empty() || !node.suspended.empty())
        return {true, true};
    return {node.mem.empty(), false};
}

void push_slot(NodeStore& ns, NodeId owner, MemorySlot slot,
               const ParameterSet& params) {
    Node& o = ns[owner];
    if (params.memory == MemoryPolicy::Lifo)
        o.mem.insert(o.mem.begin(), slot);
    else
        o.mem.push_back(slot);
    ns[slot.node].in_memory = true;
}

MemorySlot pop_slot(NodeStore& ns, NodeId owner, size_t index) {
    Node& o = ns[owner];
    assert(index < o.mem.size());
    MemorySlot slot = o.mem[index];
    o.mem.erase(o.mem.begin() + static_cast<long>(index));
    ns[slot.node].in_memory = false;
    return slot;
}

const char* op_fail_str(OpFail f) {
    switch (f) {
    case OpFail::None: return "none";
    case OpFail::LabelMismatch: return "label-mismatch";
    case OpFail::AgreementFailure: return "agreement-failure";
    }
    return "none";
}

} // namespace emg
