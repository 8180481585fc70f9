#include "emg/derivation.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "emg/output.hpp"
#include "engine.hpp"

namespace emg {

const char* step_kind_str(StepKind k) {
    switch (k) {
    case StepKind::MergeInput: return "MERGE_INPUT";
    case StepKind::MergeMemory: return "MERGE_MEMORY";
    case StepKind::Move: return "MOVE";
    case StepKind::Inherit: return "INHERIT";
    case StepKind::SuccessCheck: return "SUCCESS_CHECK";
    case StepKind::Ascend: return "ASCEND";
    case StepKind::PostulateEmpty: return "POSTULATE_EMPTY";
    case StepKind::Suspend: return "SUSPEND";
    case StepKind::Resume: return "RESUME";
    }
    return "?";
}

const char* fail_reason_str(FailReason r) {
    switch (r) {
    case FailReason::None: return "none";
    case FailReason::StartMismatch: return "start-mismatch";
    case FailReason::LabelMismatch: return "label-mismatch";
    case FailReason::AgreementFailure: return "agreement-failure";
    case FailReason::SuccessStop: return "success-stop";
    case FailReason::LeftoverInput: return "leftover-input";
    case FailReason::InputExhausted: return "input-exhausted";
    case FailReason::UnresumedSuspension: return "unresumed-suspension";
    case FailReason::FormMismatch: return "form-mismatch";
    case FailReason::BranchCap: return "branch-cap";
    }
    return "none";
}

DeriveResult derive(const Grammar& g, int root_item,
                    const std::vector<std::string>& tokens) {
    DeriveResult res;
    if (root_item < 0 || root_item >= int(g.items.size())) {
        res.state.status = Status::Fail;
        res.state.fail = FailReason::StartMismatch;
        res.state.fail_detail = "no such start item";
        return res;
    }
    detail::Engine eng(g, detail::Engine::Mode::Parse);
    eng.input = tokens;
    eng.first_only = true;
    DerivationState s = eng.init_root(root_item);
    while (s.status == Status::Running) {
        auto succ = eng.expand(std::move(s));
        s = std::move(succ.front());
    }
    res.ok = s.status == Status::Success;
    res.state = std::move(s);
    return res;
}

std::vector<std::string> linearize(const DerivationState& state) {
    // tokens are recorded in spell-out order, deferred heads included
    std::vector<std::string> out;
    for (const TokenRec& t : state.tokens)
        if (!t.empty)
            out.push_back(t.form);
    return out;
}

GenResult generate(const Grammar& g, const GenOptions& opts) {
    GenResult res;
    detail::Engine eng(g, detail::Engine::Mode::Generate);
    eng.max_empties = opts.max_empties;
    std::set<std::pair<std::vector<std::string>, std::string>> seen;

    for (int len = 1; len <= opts.max_len && !res.aborted; ++len) {
        eng.overt_budget = len;
        std::vector<DerivationState> stack = eng.roots();
        std::reverse(stack.begin(), stack.end());
        while (!stack.empty()) {
            if (eng.explored > opts.max_branches) {
                res.aborted = true;
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
            if (s.status != Status::Success)
                continue;
            if (s.overt_used != len)
                continue; // already found in a shorter pass
            std::vector<std::string> words = linearize(s);
            std::string key = serialize_dependencies(to_dependencies(s));
            if (seen.insert({words, key}).second)
                res.sentences.push_back({std::move(words), std::move(s)});
        }
    }
    res.explored = eng.explored;
    std::sort(res.sentences.begin(), res.sentences.end(),
              [](const GeneratedSentence& a, const GeneratedSentence& b) {
                  return a.words < b.words;
              });
    return res;
}

namespace {

struct Replayer {
    const Grammar& g;
    const DerivationState& target;
    std::string* why;
    NodeStore ns;
    std::vector<TokenRec> toks;
    int mem_load = 0;

    bool bad(const std::string& m) {
        if (why)
            *why = m;
        return false;
    }

    void push_token(NodeId n, const std::string& form, bool empty) {
        int oi = 0;
        if (!empty)
            for (const TokenRec& t : toks)
                if (!t.empty)
                    ++oi;
        toks.push_back({form, empty, empty ? 0 : oi + 1});
        ns[n].token = int(toks.size()) - 1;
    }

    bool run() {
        const Node& oroot = target.nodes[target.root];
        if (oroot.item < 0)
            return bad("root without a lexical item");
        const LexicalItem& rit = g.items[size_t(oroot.item)];
        NodeId r = ns.add(make_node(rit, oroot.item));
        if (r != target.root)
            return bad("unexpected root id");
        if (rit.is_empty()) {
            push_token(r, "_", true);
        } else if (g.params.linearization == Linearization::HeadMedial &&
                   rit.expect.size() >= 2) {
            ns[r].phon_deferred = true;
        }
        // an overt non-deferred root consumes its token in a "start" step

        for (size_t si = 0; si < target.log.size(); ++si) {
            const DerivationStep& st = target.log[si];
            if (!step(st))
                return false;
            if (mem_load != st.mem_load_after)
                return bad("memory load diverges at step " +
                           std::to_string(si + 1));
        }
        return compare();
    }

    bool merge_rel_matches(const DerivationStep& st) {
        const Node& a = ns[st.a];
        return !a.pending.empty() && a.pending.front().str() == st.rel;
    }

    // op_move and op_inherit run at their own Move/Inherit steps so the
    // recorded per-step memory loads line up

    bool step(const DerivationStep& st) {
        switch (st.kind) {
        case StepKind::MergeInput: {
            if (st.detail == "start") {
                const LexicalItem& it = g.items[size_t(st.item)];
                push_token(st.b, *it.phon, false);
                return true;
            }
            if (st.detail == "spellout") {
                if (!ns[st.b].phon_deferred)
                    return bad("spellout of a non-deferred head");
                ns[st.b].phon_deferred = false;
                push_token(st.b, *g.items[size_t(st.item)].phon, false);
                return true;
            }
            const LexicalItem& it = g.items[size_t(st.item)];
            NodeId n2 = ns.add(make_node(it, st.item));
            if (n2 != st.b)
                return bad("node id drift at a merge step");
            if (!merge_rel_matches(st))
                return bad("expectation mismatch at a merge step");
            MergeOutcome out = op_merge(ns, st.a, n2, false, g.params);
            if (!out.ok)
                return bad("input merge refused on replay");
            if (st.detail == "deferred")
                ns[n2].phon_deferred = true;
            else
                push_token(n2, *it.phon, false);
            (void)out;
            return true;
        }
        case StepKind::PostulateEmpty: {
            const LexicalItem& it = g.items[size_t(st.item)];
            NodeId n2 = ns.add(make_node(it, st.item));
            if (n2 != st.b)
                return bad("node id drift at a postulation");
            ns[n2].postulated = true;
            if (!merge_rel_matches(st))
                return bad("expectation mismatch at a postulation");
            MergeOutcome out = op_merge(ns, st.a, n2, false, g.params);
            if (!out.ok)
                return bad("postulated merge refused on replay");
            push_token(n2, "_", true);
            (void)out;
            return true;
        }
        case StepKind::MergeMemory: {
            Node& a = ns[st.a];
            size_t idx = a.mem.size();
            for (size_t i = 0; i < a.mem.size(); ++i)
                if (a.mem[i].node == st.b) {
                    idx = i;
                    break;
                }
            if (idx == a.mem.size())
                return bad("re-merged node is not in the buffer");
            if (!merge_rel_matches(st))
                return bad("expectation mismatch at a memory merge");
            MergeOutcome out = op_merge(ns, st.a, st.b, true, g.params);
            if (!out.ok)
                return bad("memory merge refused on replay");
            pop_slot(ns, st.a, idx);
            if (st.detail == "retained")
                push_slot(ns, st.a, {st.b}, g.params);
            else
                mem_load--;
            return true;
        }
        case StepKind::Move:
            if (ns[st.b].expected.empty())
                return bad("move of a copy with no surviving label");
            push_slot(ns, st.a, {st.b}, g.params);
            mem_load++;
            return true;
        case StepKind::Inherit: {
            int moved = op_inherit(ns, st.a, st.b);
            if (moved != st.arg)
                return bad("inherit moved a different slot count");
            return true;
        }
        case StepKind::SuccessCheck: {
            SuccessOutcome out = op_success(ns, st.b);
            bool pass = st.detail == "pass";
            if (out.pass != pass)
                return bad("right-edge check disagrees on replay");
            return true;
        }
        case StepKind::Ascend:
            if (ns[st.a].parent != st.b)
                return bad("ascend does not follow the parent link");
            return true;
        case StepKind::Suspend: {
            Node& c = ns[st.a];
            if (int(c.pending.size()) < st.arg)
                return bad("suspend exceeds the pending features");
            for (int i = 0; i < st.arg; ++i) {
                ExpectFeature f = c.pending.front();
                c.pending.erase(c.pending.begin());
                f.suspensions++;
                c.suspended.push_back(f);
            }
            return true;
        }
        case StepKind::Resume: {
            Node& m = ns[st.b];
            if (int(m.suspended.size()) != st.arg)
                return bad("resume count disagrees on replay");
            m.pending.insert(m.pending.end(), m.suspended.begin(),
                             m.suspended.end());
            m.suspended.clear();
            return true;
        }
        }
        return bad("unknown step kind");
    }

    bool compare() {
        if (ns.size() != target.nodes.size())
            return bad("node count differs after replay");
        if (toks.size() != target.tokens.size())
            return bad("token count differs after replay");
        for (size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].form != target.tokens[i].form ||
                toks[i].empty != target.tokens[i].empty ||
                toks[i].overt_index != target.tokens[i].overt_index)
                return bad("token " + std::to_string(i) +
                           " differs after replay");
        }
        for (NodeId i = 0; i < NodeId(ns.size()); ++i) {
            const Node& a = ns[i];
            const Node& b = target.nodes[i];
            if (a.item != b.item || a.token != b.token ||
                a.parent != b.parent)
                return bad("node " + std::to_string(i) +
                           " identity differs after replay");
            if (a.agr.str() != b.agr.str())
                return bad("node " + std::to_string(i) +
                           " agreement differs after replay");
            if (a.expected.size() != b.expected.size() ||
                a.pending.size() != b.pending.size() ||
                a.suspended.size() != b.suspended.size() ||
                a.mem.size() != b.mem.size())
                return bad("node " + std::to_string(i) +
                           " feature state differs after replay");
            if (a.deps.size() != b.deps.size())
                return bad("node " + std::to_string(i) +
                           " dependency count differs after replay");
            for (size_t d = 0; d < a.deps.size(); ++d) {
                if (a.deps[d].child != b.deps[d].child ||
                    a.deps[d].from_memory != b.deps[d].from_memory ||
                    a.deps[d].rel.str() != b.deps[d].rel.str())
                    return bad("node " + std::to_string(i) +
                               " dependencies differ after replay");
            }
        }
        if (mem_load != target.mem_load)
            return bad("final memory load differs after replay");
        return true;
    }
};

} // namespace

bool replay(const Grammar& g, const DerivationState& state, std::string* why) {
    if (state.root != 0 || state.nodes.size() == 0) {
        if (why)
            *why = "state has no root";
        return false;
    }
    Replayer r{g, state, why, {}, {}, 0};
    return r.run();
}

} // namespace emg
