#include "engine.hpp"

#include <algorithm>
#include <cassert>

namespace emg::detail {

void Engine::fail(DerivationState& s, FailReason r, std::string detail) {
    s.status = Status::Fail;
    s.fail = r;
    s.fail_detail = std::move(detail);
}

static std::string node_name(const DerivationState& s, NodeId n) {
    if (n < 0)
        return "?";
    const Node& node = s.nodes[n];
    if (node.token >= 0)
        return s.tokens[size_t(node.token)].form;
    return node.cat.str();
}

void Engine::consume_overt(DerivationState& s, NodeId n,
                           const std::string& form, int item_idx) {
    int oi = 0;
    for (const auto& t : s.tokens)
        if (!t.empty)
            ++oi;
    s.tokens.push_back({form, false, oi + 1});
    s.nodes[n].token = int(s.tokens.size()) - 1;
    s.assignment.push_back(item_idx);
    if (mode_ == Mode::Parse) {
        s.input_pos++;
        if (s.input_pos == input.size())
            assignments.insert(s.assignment);
    }
    for (NodeId a = n; a >= 0; a = s.nodes[a].parent)
        s.nodes[a].overt_merged = true;
}

DerivationState Engine::init_root(int item_idx) {
    const LexicalItem& it = item(item_idx);
    DerivationState s;
    NodeId r = s.nodes.add(make_node(it, item_idx));
    s.root = s.cn = r;
    if (it.is_empty()) {
        // a silent start item spends budget like any other silent item
        if (max_empties < 1) {
            fail(s, FailReason::StartMismatch,
                 "the start item is silent but the silent budget is 0");
            return s;
        }
        s.empties_used = 1;
        s.tokens.push_back({"_", true, 0});
        s.nodes[r].token = 0;
        return s;
    }
    bool defer = head_medial_ && it.expect.size() >= 2;
    if (mode_ == Mode::Parse) {
        if (defer) {
            s.nodes[r].phon_deferred = true;
            return s;
        }
        if (input.empty() || input[0] != *it.phon) {
            fail(s, FailReason::StartMismatch,
                 "start item '" + *it.phon + "' does not open the input");
            return s;
        }
        consume_overt(s, r, *it.phon, item_idx);
        s.overt_used = 1;
        log(s, {StepKind::MergeInput, -1, r, item_idx, 0, 0, "", "start", 0});
        return s;
    }
    // generation
    if (overt_budget < 1) {
        fail(s, FailReason::InputExhausted, "no overt budget for a start item");
        return s;
    }
    s.overt_used = 1;
    if (defer) {
        s.nodes[r].phon_deferred = true;
        return s;
    }
    consume_overt(s, r, *it.phon, item_idx);
    log(s, {StepKind::MergeInput, -1, r, item_idx, 0, 0, "", "start", 0});
    return s;
}

std::vector<DerivationState> Engine::roots() {
    std::vector<DerivationState> out;
    for (int idx : g_.start_items())
        out.push_back(init_root(idx));
    return out;
}

void Engine::finalize(DerivationState& s) {
    if (mode_ == Mode::Parse && s.input_pos < input.size()) {
        fail(s, FailReason::LeftoverInput,
             "derivation closed before '" + input[s.input_pos] + "'");
        return;
    }
    for (NodeId i = 0; i < NodeId(s.nodes.size()); ++i) {
        const Node& n = s.nodes[i];
        if (!n.suspended.empty()) {
            fail(s, FailReason::UnresumedSuspension,
                 node_name(s, i) + " still holds " +
                     std::to_string(n.suspended.size()) +
                     " suspended feature(s)");
            return;
        }
        if (!n.mem.empty()) {
            fail(s, FailReason::SuccessStop,
                 node_name(s, i) + " closed with a non-empty buffer");
            return;
        }
        if (n.phon_deferred) {
            fail(s, FailReason::FormMismatch,
                 "head '" + node_name(s, i) + "' was never spelled");
            return;
        }
    }
    s.status = Status::Success;
}

void Engine::step_completion(DerivationState& s) {
    NodeId id = s.cn;
    Node& c = s.nodes[id];
    if (!c.success_checked && c.suspended.empty()) {
        if (c.phon_deferred) {
            fail(s, FailReason::FormMismatch,
                 "deferred head '" + c.cat.str() + "' was never spelled");
            return;
        }
        c.success_checked = true;
        SuccessOutcome out = op_success(s.nodes, id);
        log(s, {StepKind::SuccessCheck, id, id, c.item, -1, 0, "",
                out.pass ? "pass" : "stop", 0});
        if (!out.pass) {
            fail(s, FailReason::SuccessStop,
                 node_name(s, id) + " holds " + std::to_string(c.mem.size()) +
                     " buffered cop" + (c.mem.size() == 1 ? "y" : "ies") +
                     " at its right edge");
            return;
        }
    }
    if (id == s.root) {
        finalize(s);
        return;
    }
    log(s, {StepKind::Ascend, id, c.parent, -1, -1, 0, "", "", 0});
    s.cn = c.parent;
}

bool Engine::spell_deferred(DerivationState& s) {
    Node& c = s.nodes[s.cn];
    if (!c.phon_deferred || c.pending.size() != 1)
        return false;
    const LexicalItem& it = item(c.item);
    if (mode_ == Mode::Parse) {
        if (s.input_pos >= input.size()) {
            fail(s, FailReason::InputExhausted,
                 "head '" + *it.phon + "' has no token left to spell");
            return true;
        }
        if (input[s.input_pos] != *it.phon) {
            fail(s, FailReason::FormMismatch,
                 "expected head '" + *it.phon + "', saw '" +
                     input[s.input_pos] + "'");
            return true;
        }
    }
    c.phon_deferred = false;
    consume_overt(s, s.cn, *it.phon, c.item);
    if (mode_ == Mode::Parse)
        s.overt_used++;
    log(s, {StepKind::MergeInput, c.parent, s.cn, c.item, c.token, 0, "",
            "spellout", 0});
    return true;
}

void Engine::after_merge(DerivationState& s, NodeId n2,
                         const MergeOutcome& out) {
    (void)out;
    if (op_move(s.nodes, s.cn, n2, g_.params)) {
        s.mem_load++;
        log(s, {StepKind::Move, s.cn, n2, s.nodes[n2].item, -1, 0, "", "", 0});
    }
    int moved = op_inherit(s.nodes, s.cn, n2);
    if (moved > 0) {
        bool idle = s.nodes[n2].pending.empty();
        log(s, {StepKind::Inherit, s.cn, n2, -1, -1, moved, "",
                idle ? "unconditional" : "", 0});
    }
    Node& m = s.nodes[n2];
    if (!m.pending.empty()) {
        s.cn = n2;
        if (delayed_)
            s.suspend_choice_open = true;
        return;
    }
    if (!m.success_checked && m.suspended.empty()) {
        m.success_checked = true;
        SuccessOutcome sc = op_success(s.nodes, n2);
        log(s, {StepKind::SuccessCheck, n2, n2, m.item, -1, 0, "",
                sc.pass ? "pass" : "stop", 0});
        if (!sc.pass)
            fail(s, FailReason::SuccessStop,
                 node_name(s, n2) + " holds " + std::to_string(m.mem.size()) +
                     " buffered cop" + (m.mem.size() == 1 ? "y" : "ies") +
                     " at its right edge");
    }
}

bool Engine::probe_memory(DerivationState& s) {
    Node& c = s.nodes[s.cn];
    if (c.mem.empty())
        return false;
    const ExpectFeature e = c.pending.front();
    size_t limit =
        g_.params.probe == ProbePolicy::Prefix ? size_t(1) : c.mem.size();
    for (size_t i = 0; i < limit && i < c.mem.size(); ++i) {
        NodeId n2 = c.mem[i].node;
        const Node& cand = s.nodes[n2];
        if (!cand.has_label() || !refines(cand.label(), e.cat))
            continue;
        MergeOutcome out = op_merge(s.nodes, s.cn, n2, true, g_.params);
        if (!out.ok)
            continue; // failed agreement reads as a non-match
        pop_slot(s.nodes, s.cn, i);
        bool repush =
            out.pol == Polarity::License && s.nodes[n2].has_label();
        if (repush) {
            // retention: a licensed copy goes back on the buffer
            push_slot(s.nodes, s.cn, {n2}, g_.params);
        } else {
            s.mem_load--;
        }
        log(s, {StepKind::MergeMemory, s.cn, n2, s.nodes[n2].item, -1, 0,
                e.str(),
                repush ? "retained"
                       : (out.pol == Polarity::License ? "discharged" : ""),
                0});
        if (out.pol == Polarity::Select && !s.nodes[n2].suspended.empty()) {
            Node& m = s.nodes[n2];
            int restored = int(m.suspended.size());
            m.pending.insert(m.pending.end(), m.suspended.begin(),
                             m.suspended.end());
            m.suspended.clear();
            m.success_checked = false;
            log(s, {StepKind::Resume, s.cn, n2, m.item, -1, restored, "", "",
                    0});
        }
        int moved = op_inherit(s.nodes, s.cn, n2);
        if (moved > 0) {
            bool idle = s.nodes[n2].pending.empty();
            log(s, {StepKind::Inherit, s.cn, n2, -1, -1, moved, "",
                    idle ? "unconditional" : "", 0});
        }
        Node& m = s.nodes[n2];
        if (!m.pending.empty()) {
            s.cn = n2;
            if (delayed_)
                s.suspend_choice_open = true;
            return true;
        }
        if (!m.success_checked && m.suspended.empty()) {
            m.success_checked = true;
            SuccessOutcome sc = op_success(s.nodes, n2);
            log(s, {StepKind::SuccessCheck, n2, n2, m.item, -1, 0, "",
                    sc.pass ? "pass" : "stop", 0});
            if (!sc.pass)
                fail(s, FailReason::SuccessStop,
                     node_name(s, n2) + " holds a non-empty buffer at its "
                                        "right edge");
        }
        return true;
    }
    return false;
}

bool Engine::apply_lexical(DerivationState& t, int idx, bool deferred,
                           OpFail* why) {
    const LexicalItem& it = item(idx);
    const ExpectFeature e = t.nodes[t.cn].pending.front();
    NodeId n2 = t.nodes.add(make_node(it, idx));
    MergeOutcome out = op_merge(t.nodes, t.cn, n2, false, g_.params);
    if (!out.ok) {
        *why = out.why;
        return false;
    }
    if (deferred) {
        t.nodes[n2].phon_deferred = true;
        if (mode_ == Mode::Generate)
            t.overt_used++; // the budget is charged at proposal time
    } else {
        consume_overt(t, n2, *it.phon, idx);
        t.overt_used++;
    }
    std::string note;
    if (deferred)
        note = "deferred";
    else if (out.pol == Polarity::License && out.label_consumed)
        note = "discharged";
    log(t, {StepKind::MergeInput, t.cn, n2, idx, t.nodes[n2].token, 0, e.str(),
            note, 0});
    after_merge(t, n2, out);
    return true;
}

bool Engine::apply_empty(DerivationState& t, int idx, OpFail* why) {
    const LexicalItem& it = item(idx);
    const ExpectFeature e = t.nodes[t.cn].pending.front();
    NodeId n2 = t.nodes.add(make_node(it, idx));
    t.nodes[n2].postulated = true;
    MergeOutcome out = op_merge(t.nodes, t.cn, n2, false, g_.params);
    if (!out.ok) {
        *why = out.why;
        return false;
    }
    t.empties_used++;
    t.tokens.push_back({"_", true, 0});
    t.nodes[n2].token = int(t.tokens.size()) - 1;
    log(t, {StepKind::PostulateEmpty, t.cn, n2, idx, t.nodes[n2].token, 0,
            e.str(),
            out.pol == Polarity::License && out.label_consumed ? "discharged"
                                                               : "",
            0});
    after_merge(t, n2, out);
    return true;
}

bool Engine::empty_allowed(const DerivationState& s) const {
    if (s.empties_used >= max_empties)
        return false;
    const Node& c = s.nodes[s.cn];
    // a silent item may not expand a silent item that has produced nothing
    // overt yet; without this, silent chains regress forever
    if (c.postulated && !c.overt_merged)
        return false;
    return true;
}

bool Engine::higher_site_wants(const DerivationState& s) const {
    if (s.input_pos >= input.size())
        return false;
    const std::vector<int>& cands = g_.lookup(input[s.input_pos]);
    if (cands.empty())
        return false;
    for (NodeId a = s.nodes[s.cn].parent; a >= 0; a = s.nodes[a].parent) {
        const Node& an = s.nodes[a];
        if (an.pending.empty())
            continue;
        for (int idx : cands)
            if (refines(item(idx).label(), an.pending.front().cat))
                return true;
    }
    return false;
}

int Engine::unspelled_deferred(const DerivationState& s) const {
    int n = 0;
    for (NodeId i = 0; i < NodeId(s.nodes.size()); ++i)
        if (s.nodes[i].phon_deferred)
            ++n;
    return n;
}

std::vector<DerivationState> Engine::suspension_variants(
    const DerivationState& s) {
    std::vector<DerivationState> out;
    if (!delayed_ || first_only)
        return out;
    const Node& c = s.nodes[s.cn];
    if (!c.in_memory || c.pending.empty())
        return out;
    for (size_t k = 1; k <= c.pending.size(); ++k) {
        bool allowed = true;
        for (size_t i = 0; i < k; ++i)
            if (c.pending[i].suspensions >= 2)
                allowed = false;
        if (!allowed) {
            suspension_denied++;
            continue;
        }
        DerivationState t = s;
        Node& tc = t.nodes[t.cn];
        std::string feats;
        for (size_t i = 0; i < k; ++i) {
            ExpectFeature f = tc.pending.front();
            tc.pending.erase(tc.pending.begin());
            f.suspensions++;
            if (!feats.empty())
                feats += " ";
            feats += f.str();
            tc.suspended.push_back(f);
        }
        log(t, {StepKind::Suspend, t.cn, t.cn, tc.item, -1, int(k), feats, "",
                0});
        out.push_back(std::move(t));
    }
    return out;
}

bool Engine::try_suspend(DerivationState& s, int k) {
    if (!delayed_ || s.status != Status::Running)
        return false;
    Node& c = s.nodes[s.cn];
    if (!c.in_memory || k < 1 || size_t(k) > c.pending.size())
        return false;
    for (int i = 0; i < k; ++i)
        if (c.pending[size_t(i)].suspensions >= 2) {
            suspension_denied++;
            return false;
        }
    std::string feats;
    for (int i = 0; i < k; ++i) {
        ExpectFeature f = c.pending.front();
        c.pending.erase(c.pending.begin());
        f.suspensions++;
        if (!feats.empty())
            feats += " ";
        feats += f.str();
        c.suspended.push_back(f);
    }
    log(s, {StepKind::Suspend, s.cn, s.cn, c.item, -1, k, feats, "", 0});
    return true;
}

std::vector<DerivationState> Engine::input_branches(const DerivationState& s) {
    std::vector<DerivationState> out;
    const ExpectFeature e = s.nodes[s.cn].pending.front();

    struct Cand {
        int item;
        bool deferred;
        double score;
        int ord;
    };
    std::vector<Cand> cands;
    int ord = 0;

    if (mode_ == Mode::Parse) {
        if (s.input_pos < input.size()) {
            const std::string& form = input[s.input_pos];
            for (int idx : g_.lookup(form)) {
                const LexicalItem& it = item(idx);
                if (priming && !refines(it.label(), e.cat))
                    continue;
                if (head_medial_ && it.expect.size() >= 2)
                    continue; // such heads spell out medially, merge deferred
                cands.push_back({idx, false, 0.0, ord++});
            }
            if (head_medial_) {
                int remaining = int(input.size() - s.input_pos);
                bool room = unspelled_deferred(s) < remaining;
                for (int idx = 0; idx < int(g_.items.size()); ++idx) {
                    const LexicalItem& it = item(idx);
                    if (it.is_empty() || it.expect.size() < 2)
                        continue;
                    if (!refines(it.label(), e.cat))
                        continue;
                    if (!room)
                        continue;
                    // dead unless the head's form still lies ahead
                    auto from = input.begin() + long(s.input_pos);
                    if (std::find(from, input.end(), *it.phon) == input.end())
                        continue;
                    cands.push_back({idx, true, 0.0, ord++});
                }
            }
        }
    } else {
        for (int idx = 0; idx < int(g_.items.size()); ++idx) {
            const LexicalItem& it = item(idx);
            if (it.is_empty())
                continue;
            if (!refines(it.label(), e.cat))
                continue;
            if (s.overt_used >= overt_budget)
                continue;
            bool defer = head_medial_ && it.expect.size() >= 2;
            cands.push_back({idx, defer, 0.0, ord++});
        }
    }

    if (scorer) {
        for (auto& c : cands)
            c.score = scorer(item(c.item), e);
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Cand& a, const Cand& b) {
                             if (a.score != b.score)
                                 return a.score > b.score;
                             return a.ord < b.ord;
                         });
    }

    for (const Cand& c : cands) {
        DerivationState t = s;
        OpFail why = OpFail::None;
        explored++;
        if (apply_lexical(t, c.item, c.deferred, &why)) {
            out.push_back(std::move(t));
            if (first_only)
                break;
        } else {
            abandoned++;
        }
    }
    return out;
}

bool Engine::redirects_next(int idx, const DerivationState& s) const {
    // A silent head is still worth guessing when a direct merge exists,
    // provided it would re-route the very next token one level down.
    const LexicalItem& it = item(idx);
    if (it.expect.empty() || s.input_pos >= input.size())
        return false;
    for (int j : g_.lookup(input[s.input_pos]))
        if (refines(item(j).label(), it.expect.front().cat))
            return true;
    return false;
}

std::vector<DerivationState> Engine::empty_branches(const DerivationState& s,
                                                    bool any_site) {
    std::vector<DerivationState> out;
    if (!empty_allowed(s))
        return out;
    const ExpectFeature e = s.nodes[s.cn].pending.front();
    for (int idx : g_.empties()) {
        if (!refines(item(idx).label(), e.cat))
            continue;
        if (!any_site && !redirects_next(idx, s))
            continue;
        DerivationState t = s;
        OpFail why = OpFail::None;
        explored++;
        if (apply_empty(t, idx, &why))
            out.push_back(std::move(t));
        else
            abandoned++;
    }
    return out;
}

std::vector<DerivationState> Engine::branch_candidates(DerivationState& s) {
    std::vector<DerivationState> out = input_branches(s);

    if (mode_ == Mode::Generate || !first_only) {
        bool any_site = mode_ == Mode::Generate || eager_postulate ||
                        out.empty() || higher_site_wants(s);
        auto empties = empty_branches(s, any_site);
        for (auto& t : empties)
            out.push_back(std::move(t));
    }

    if (!out.empty())
        return out;

    // nothing merged: turn the dead end into a diagnosis
    const ExpectFeature e = s.nodes[s.cn].pending.front();
    if (mode_ == Mode::Generate) {
        fail(s, FailReason::InputExhausted,
             "no proposal fits " + e.str() + " within the budget");
        std::vector<DerivationState> r;
        r.push_back(std::move(s));
        return r;
    }
    if (s.input_pos >= input.size()) {
        fail(s, FailReason::InputExhausted,
             "open " + e.str() + " at the end of the input");
    } else {
        const std::string& form = input[s.input_pos];
        bool agr_fail = false;
        bool known = !g_.lookup(form).empty();
        for (int idx : g_.lookup(form)) {
            NodeStore probe = s.nodes;
            MergeOutcome mo =
                op_merge(probe, s.cn,
                         probe.add(make_node(item(idx), idx)), false,
                         g_.params);
            if (mo.why == OpFail::AgreementFailure)
                agr_fail = true;
        }
        if (!known)
            fail(s, FailReason::LabelMismatch,
                 "no lexical item for '" + form + "'");
        else if (agr_fail)
            fail(s, FailReason::AgreementFailure,
                 "'" + form + "' cannot agree under " + e.str());
        else
            fail(s, FailReason::LabelMismatch,
                 "no reading of '" + form + "' fits " + e.str());
    }
    std::vector<DerivationState> r;
    r.push_back(std::move(s));
    return r;
}

std::vector<DerivationState> Engine::expand(DerivationState s) {
    explored++;
    for (;;) {
        if (s.status != Status::Running) {
            std::vector<DerivationState> r;
            r.push_back(std::move(s));
            return r;
        }
        if (s.suspend_choice_open) {
            s.suspend_choice_open = false;
            auto variants = suspension_variants(s);
            if (!variants.empty()) {
                std::vector<DerivationState> out;
                out.push_back(std::move(s));
                for (auto& v : variants)
                    out.push_back(std::move(v));
                return out;
            }
            continue;
        }
        if (s.nodes[s.cn].pending.empty()) {
            step_completion(s);
            continue;
        }
        if (spell_deferred(s))
            continue;
        if (probe_memory(s))
            continue;
        return branch_candidates(s);
    }
}

} // namespace emg::detail
