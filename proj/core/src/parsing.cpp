#include "emg/parsing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "emg/output.hpp"
#include "engine.hpp"

namespace emg {

namespace {

void configure(detail::Engine& eng, const ParseConfig& cfg) {
    eng.priming = cfg.priming;
    eng.eager_postulate = cfg.eager_postulate;
    eng.max_empties = cfg.max_empties;
    eng.scorer = cfg.scorer;
}

std::string analysis_key(const DerivationState& s) {
    return serialize_dependencies(to_dependencies(s));
}

} // namespace

ParseForest parse(const Grammar& g, const std::vector<std::string>& tokens,
                  const ParseConfig& cfg) {
    detail::Engine eng(g, detail::Engine::Mode::Parse);
    eng.input = tokens;
    configure(eng, cfg);

    ParseForest forest;
    std::set<std::string> seen;
    std::vector<DerivationState> stack = eng.roots();
    std::reverse(stack.begin(), stack.end());

    auto note_failure = [&](DerivationState&& s) {
        eng.abandoned++;
        forest.stats.failures[fail_reason_str(s.fail)]++;
        if (s.overt_used > forest.best_failure_progress) {
            forest.best_failure_progress = s.overt_used;
            forest.best_failure = s.fail;
            forest.best_failure_detail = s.fail_detail;
            forest.best_failure_state = std::move(s);
        }
    };

    while (!stack.empty()) {
        if (eng.explored > cfg.max_branches) {
            forest.aborted = true;
            break;
        }
        DerivationState s = std::move(stack.back());
        stack.pop_back();
        if (s.status == Status::Running) {
            auto succ = eng.expand(std::move(s));
            for (auto it = succ.rbegin(); it != succ.rend(); ++it)
                stack.push_back(std::move(*it));
            continue;
        }
        if (s.status == Status::Fail) {
            note_failure(std::move(s));
            continue;
        }
        if (!seen.insert(analysis_key(s)).second)
            continue; // same tree reached along another search path
        std::string why;
        if (!replay(g, s, &why))
            throw std::logic_error("derivation replay check failed: " + why);
        forest.analyses.push_back(std::move(s));
        if (cfg.strategy == Strategy::Beam && cfg.beam > 0 &&
            int(forest.analyses.size()) >= cfg.beam)
            break;
    }

    forest.stats.explored = eng.explored;
    forest.stats.abandoned = eng.abandoned;
    forest.stats.suspension_denied = eng.suspension_denied;
    forest.stats.lexical_assignments = long(eng.assignments.size());
    if (forest.analyses.empty() && forest.best_failure == FailReason::None) {
        forest.best_failure = forest.aborted ? FailReason::BranchCap
                                             : FailReason::StartMismatch;
        forest.best_failure_detail =
            forest.aborted ? "search aborted at the branch budget"
                           : "no start item covers the input";
        forest.best_failure_progress = 0;
    }
    return forest;
}

std::vector<int> prime_filter(const Grammar& g,
                              const std::vector<int>& candidates,
                              const ExpectFeature& expectation, bool enabled) {
    if (!enabled)
        return candidates;
    std::vector<int> out;
    for (int idx : candidates) {
        if (idx < 0 || idx >= int(g.items.size()))
            continue;
        if (refines(g.items[size_t(idx)].label(), expectation.cat))
            out.push_back(idx);
    }
    return out;
}

std::vector<DerivationState> postulate_empty(const Grammar& g,
                                             const DerivationState& state,
                                             const ParseConfig& cfg) {
    if (state.status != Status::Running || state.cn < 0 ||
        state.nodes[state.cn].pending.empty())
        return {};
    detail::Engine eng(g, detail::Engine::Mode::Parse);
    configure(eng, cfg);
    return eng.empty_branches(state);
}

std::vector<DerivationState> attachment_variants(
    const Grammar& g, const std::vector<std::string>& tokens,
    const DerivationState& state, const ParseConfig& cfg) {
    if (state.status != Status::Running || state.cn < 0 ||
        state.nodes[state.cn].pending.empty())
        return {};
    detail::Engine eng(g, detail::Engine::Mode::Parse);
    eng.input = tokens;
    configure(eng, cfg);
    std::vector<DerivationState> out = eng.input_branches(state);
    auto empties = eng.empty_branches(state);
    for (auto& e : empties)
        out.push_back(std::move(e));
    return out;
}

bool suspend_expectation(const Grammar& g, DerivationState& state, int k) {
    if (state.status != Status::Running || state.cn < 0)
        return false;
    detail::Engine eng(g, detail::Engine::Mode::Parse);
    return eng.try_suspend(state, k);
}

} // namespace emg
