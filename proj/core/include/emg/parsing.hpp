#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "emg/derivation.hpp"

namespace emg {

enum class Strategy {
    Exhaustive, // depth-first over all branch points
    Beam,       // stop after `beam` analyses, candidates ranked by the scorer
};

/// Ranking hook for beam search: higher scores are tried first.
/// Receives the candidate item and the expectation it would satisfy.
using Scorer = std::function<double(const LexicalItem&, const ExpectFeature&)>;

struct ParseConfig {
    Strategy strategy = Strategy::Exhaustive;
    int beam = 0;               // analysis cap for Strategy::Beam
    bool priming = true;        // propose only label-compatible items
    bool eager_postulate = false; // offer silent items even when input merges
    int max_empties = 4;        // silent item budget per derivation
    long max_branches = 100000; // state expansion budget for the whole search
    Scorer scorer;              // optional; default keeps lexicon order
};

struct ParseStats {
    long explored = 0;            // state expansions plus merge attempts
    long abandoned = 0;           // branches that died or were filtered
    long lexical_assignments = 0; // distinct full item-per-token choices seen
    long suspension_denied = 0;   // suspensions refused at the nesting cap
    std::map<std::string, long> failures; // failure reason -> branch count
};

struct ParseForest {
    std::vector<DerivationState> analyses; // complete, deduplicated
    ParseStats stats;
    bool aborted = false; // max_branches hit; forest may be incomplete
    // Most advanced failure, for diagnostics when analyses is empty.
    FailReason best_failure = FailReason::None;
    std::string best_failure_detail;
    int best_failure_progress = -1;    // overt tokens consumed on that branch
    DerivationState best_failure_state; // the dead branch itself, traceable
};

/// Explore every analysis of the token sequence: all start items, lexical
/// ambiguity, silent item postulation, attachment choices and, when the
/// grammar enables it, expectation suspension. Every returned analysis has
/// passed a full replay check.
ParseForest parse(const Grammar& g, const std::vector<std::string>& tokens,
                  const ParseConfig& cfg = {});

/// Structural priming filter: keep the candidate items whose label refines
/// the expectation. With `enabled` false the candidates pass unchanged.
std::vector<int> prime_filter(const Grammar& g,
                              const std::vector<int>& candidates,
                              const ExpectFeature& expectation, bool enabled);

/// Branch states that merge a silent item at the current expectation,
/// in lexicon order. Budget and adjacency limits apply.
std::vector<DerivationState> postulate_empty(const Grammar& g,
                                             const DerivationState& state,
                                             const ParseConfig& cfg = {});

/// All branch states for the current expectation against the next input
/// token: direct merges first (lowest site), then silent-item postulations
/// that push the token to a higher site.
std::vector<DerivationState> attachment_variants(
    const Grammar& g, const std::vector<std::string>& tokens,
    const DerivationState& state, const ParseConfig& cfg = {});

/// Set aside the first k pending expectations of the current node for a
/// later re-merge. Fails (returns false) when the node is not re-mergeable,
/// the grammar does not delay expectations, or a feature is already at the
/// nesting limit.
bool suspend_expectation(const Grammar& g, DerivationState& state, int k);

} // namespace emg
