#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "emg/derivation.hpp"
#include "emg/parsing.hpp"

namespace emg::detail {

// One expansion engine drives all three entry points. derive() walks the
// first viable successor, parse() explores all of them, generate() swaps the
// input for proposals drawn from the lexicon. Expansion is deterministic
// except at the four real choice points: which lexical item, whether to
// postulate a silent item, where to attach, and how much to suspend.
class Engine {
public:
    enum class Mode { Parse, Generate };

    Engine(const Grammar& g, Mode mode)
        : g_(g), mode_(mode),
          delayed_(g.params.delayed_expectation),
          head_medial_(g.params.linearization == Linearization::HeadMedial) {}

    // knobs
    std::vector<std::string> input; // parse mode token sequence
    int overt_budget = 0;           // generate mode length cap
    bool priming = true;
    bool eager_postulate = false;
    bool first_only = false;        // derive(): no silent items, no suspension
    int max_empties = 4;
    Scorer scorer;

    // counters, cumulative across expansions
    long explored = 0;  // expansions plus merge attempts
    long abandoned = 0; // attempts and branches that died
    long suspension_denied = 0;
    std::set<std::vector<int>> assignments; // full item-per-token commitments

    const Grammar& grammar() const { return g_; }

    /// One initial state per start item, in lexicon order. Non-viable starts
    /// come back as failed states so the caller can report them.
    std::vector<DerivationState> roots();
    DerivationState init_root(int item_idx);

    /// Advance the state through every forced step. Returns terminal states
    /// as a singleton, branch points as the list of successors (failed
    /// successors included, so the caller sees why a branch died).
    std::vector<DerivationState> expand(DerivationState s);

    // building blocks behind the public search ops
    std::vector<DerivationState> empty_branches(const DerivationState& s,
                                                bool any_site = true);
    std::vector<DerivationState> input_branches(const DerivationState& s);
    bool try_suspend(DerivationState& s, int k);

private:
    const Grammar& g_;
    Mode mode_;
    bool delayed_;
    bool head_medial_;

    const LexicalItem& item(int idx) const { return g_.items[size_t(idx)]; }
    void fail(DerivationState& s, FailReason r, std::string detail);
    void log(DerivationState& s, DerivationStep st) {
        st.mem_load_after = s.mem_load;
        s.log.push_back(std::move(st));
    }

    void step_completion(DerivationState& s);
    void finalize(DerivationState& s);
    bool spell_deferred(DerivationState& s);
    bool probe_memory(DerivationState& s);
    std::vector<DerivationState> suspension_variants(const DerivationState& s);
    std::vector<DerivationState> branch_candidates(DerivationState& s);

    bool apply_lexical(DerivationState& t, int idx, bool deferred, OpFail* why);
    bool apply_empty(DerivationState& t, int idx, OpFail* why);
    void after_merge(DerivationState& s, NodeId n2, const MergeOutcome& out);
    void consume_overt(DerivationState& s, NodeId n, const std::string& form,
                       int item_idx);
    bool empty_allowed(const DerivationState& s) const;
    bool higher_site_wants(const DerivationState& s) const;
    bool redirects_next(int idx, const DerivationState& s) const;
    int unspelled_deferred(const DerivationState& s) const;
};

} // namespace emg::detail
