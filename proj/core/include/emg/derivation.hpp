#pragma once

#include <string>
#include <vector>

#include "emg/node.hpp"
#include "emg/ops.hpp"

namespace emg {

enum class StepKind {
    MergeInput,     // consumed a token from the input or proposal source
    MergeMemory,    // reused a buffered copy
    Move,           // pushed a copy into the merging node's buffer
    Inherit,        // buffer handed down at the parent's last expectation
    SuccessCheck,   // right-edge buffer check
    Ascend,         // control returned to the parent
    PostulateEmpty, // parser-introduced silent item, merged on the spot
    Suspend,        // expectations set aside for a later re-merge
    Resume,         // suspended expectations restored after a select re-merge
};

const char* step_kind_str(StepKind k);

struct DerivationStep {
    StepKind kind;
    NodeId a = -1;       // acting node (current node or parent)
    NodeId b = -1;       // node merged, pushed, created or descended into
    int item = -1;       // lexical item involved, for replay
    int token = -1;      // token consumed, -1 when none
    int arg = 0;         // suspend: feature count; inherit: slots moved
    std::string rel;     // feature spelling for merges
    std::string detail;
    int mem_load_after = 0;
};

struct TokenRec {
    std::string form;
    bool empty = false;
    int overt_index = 0; // 1-based among overt tokens, 0 for empty ones
};

enum class Status { Running, Success, Fail };

enum class FailReason {
    None,
    StartMismatch,       // first token has no viable start
    LabelMismatch,
    AgreementFailure,
    SuccessStop,         // buffer not empty at a right edge
    LeftoverInput,       // derivation closed before the input ran out
    InputExhausted,      // open expectation with nothing left to consume
    UnresumedSuspension, // suspended features never re-merged
    FormMismatch,        // deferred head does not match the input
    BranchCap,           // search aborted on the branch budget
};

const char* fail_reason_str(FailReason r);

struct DerivationState {
    NodeStore nodes;
    NodeId root = -1;
    NodeId cn = -1; // current node
    std::vector<TokenRec> tokens;
    size_t input_pos = 0;        // parse cursor
    int overt_used = 0;          // overt tokens consumed or charged
    int empties_used = 0;        // postulated or proposed silent items
    std::vector<int> assignment; // item index per overt token position
    std::vector<DerivationStep> log;
    Status status = Status::Running;
    FailReason fail = FailReason::None;
    std::string fail_detail;
    int mem_load = 0;               // total buffered slots
    bool suspend_choice_open = false;
};

struct DeriveResult {
    DerivationState state;
    bool ok = false;
};

/// Deterministic single path: start from the given item and, at every
/// expectation, take the first input item whose merge goes through. No
/// backtracking, no silent items, no suspension; ambiguity belongs to parse().
DeriveResult derive(const Grammar& g, int root_item,
                    const std::vector<std::string>& tokens);

/// Overt forms in spell-out order. Empty items leave no trace.
/// Meaningful for completed derivations; for a parse this returns the input.
std::vector<std::string> linearize(const DerivationState& state);

struct GenOptions {
    int max_len = 5;       // overt length ceiling
    int max_empties = 4;   // silent item budget per derivation
    long max_branches = 1000000;
};

struct GeneratedSentence {
    std::vector<std::string> words;
    DerivationState state;
};

struct GenResult {
    std::vector<GeneratedSentence> sentences; // sorted by words, deduplicated
    long explored = 0;
    bool aborted = false; // branch budget hit; results may be incomplete
};

/// Enumerate every derivable sentence up to max_len overt tokens by running
/// the derivation engine with the lexicon itself as token source.
GenResult generate(const Grammar& g, const GenOptions& opts = {});

/// Re-run a recorded derivation step by step and confirm it reproduces the
/// same tree, token sequence and memory profile. Soundness guard for search
/// results.
bool replay(const Grammar& g, const DerivationState& state,
            std::string* why = nullptr);

} // namespace emg
