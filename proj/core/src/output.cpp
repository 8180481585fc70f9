#include "emg/output.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace emg {

namespace {

std::string node_form(const DerivationState& s, NodeId n) {
    if (n < 0 || size_t(n) >= s.nodes.size())
        return "?";
    const Node& node = s.nodes[n];
    if (node.token >= 0)
        return s.tokens[size_t(node.token)].form;
    return node.cat.str();
}

// 1-based output index per token id: overt tokens keep their surface
// positions, silent ones follow after so overt indices stay stable
std::vector<int> token_indices(const DerivationState& s) {
    std::vector<int> idx(s.tokens.size(), 0);
    int next = 0;
    for (size_t i = 0; i < s.tokens.size(); ++i)
        if (!s.tokens[i].empty)
            idx[i] = ++next;
    for (size_t i = 0; i < s.tokens.size(); ++i)
        if (s.tokens[i].empty)
            idx[i] = ++next;
    return idx;
}

bool consumes_token(const DerivationStep& st) {
    return st.kind == StepKind::MergeInput && st.token >= 0;
}

// settled memory load per token id: the load after the last step before the
// next overt consumption (silent tokens settle at their own postulation)
std::vector<int> settled_loads(const DerivationState& s,
                               std::vector<size_t>* settle_step = nullptr) {
    std::vector<int> loads(s.tokens.size(), 0);
    std::vector<size_t> at(s.tokens.size(), 0);
    const auto& log = s.log;
    for (size_t i = 0; i < log.size(); ++i) {
        const DerivationStep& st = log[i];
        if (st.kind == StepKind::PostulateEmpty && st.token >= 0) {
            loads[size_t(st.token)] = st.mem_load_after;
            at[size_t(st.token)] = i;
        }
        if (!consumes_token(st))
            continue;
        size_t settle = log.size() - 1;
        for (size_t j = i + 1; j < log.size(); ++j)
            if (consumes_token(log[j])) {
                settle = j - 1;
                break;
            }
        loads[size_t(st.token)] = log[settle].mem_load_after;
        at[size_t(st.token)] = settle;
    }
    if (settle_step)
        *settle_step = at;
    return loads;
}

std::string status_string(const DerivationState& s) {
    if (s.status == Status::Success)
        return "SUCCESS";
    if (s.status == Status::Fail)
        return std::string("FAIL(") + fail_reason_str(s.fail) + ")";
    return "RUNNING";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

DependencyGraph to_dependencies(const DerivationState& state) {
    DependencyGraph g;
    g.status = status_string(state);
    std::vector<int> idx = token_indices(state);
    std::vector<int> loads = settled_loads(state);

    g.tokens.resize(state.tokens.size());
    for (size_t i = 0; i < state.tokens.size(); ++i) {
        DepToken& t = g.tokens[size_t(idx[i]) - 1];
        t.index = idx[i];
        t.form = state.tokens[i].form;
        t.empty = state.tokens[i].empty;
        t.mem_load = loads[i];
    }

    if (state.root >= 0 && state.nodes[state.root].token >= 0)
        g.edges.push_back(
            {0, idx[size_t(state.nodes[state.root].token)], "root", false});
    for (const DerivationStep& st : state.log) {
        bool edge = false;
        bool from_memory = false;
        if (st.kind == StepKind::MergeInput && st.detail != "start" &&
            st.detail != "spellout")
            edge = true;
        else if (st.kind == StepKind::PostulateEmpty)
            edge = true;
        else if (st.kind == StepKind::MergeMemory)
            edge = from_memory = true;
        if (!edge)
            continue;
        int head_tok = state.nodes[st.a].token;
        int dep_tok = state.nodes[st.b].token;
        if (head_tok < 0 || dep_tok < 0)
            continue; // a head that never spelled cannot be addressed
        g.edges.push_back({idx[size_t(head_tok)], idx[size_t(dep_tok)],
                           st.rel, from_memory});
    }
    return g;
}

std::string serialize_dependencies(const DependencyGraph& g) {
    std::ostringstream out;
    out << "# status: " << g.status << "\n";
    for (const DepToken& t : g.tokens) {
        std::string heads;
        std::string rels;
        for (const DepEdge& e : g.edges) {
            if (e.dep != t.index)
                continue;
            if (!heads.empty()) {
                heads += "|";
                rels += "|";
            }
            heads += std::to_string(e.head);
            rels += e.rel;
        }
        if (heads.empty()) {
            heads = "0";
            rels = "root";
        }
        out << t.index << "\t" << t.form << "\t" << heads << "\t" << rels
            << "\t" << t.mem_load << "\n";
    }
    return out.str();
}

DependencyGraph parse_dependencies(const std::string& text) {
    DependencyGraph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_status = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line.rfind("# status:", 0) == 0) {
            g.status = line.substr(9);
            size_t p = g.status.find_first_not_of(' ');
            g.status = p == std::string::npos ? "" : g.status.substr(p);
            saw_status = true;
            continue;
        }
        if (line[0] == '#')
            continue;
        std::vector<std::string> f = split(line, '\t');
        if (f.size() != 5)
            throw std::runtime_error("dependency row " +
                                     std::to_string(lineno) +
                                     ": expected 5 tab-separated fields");
        DepToken t;
        try {
            t.index = std::stoi(f[0]);
            t.mem_load = std::stoi(f[4]);
        } catch (const std::exception&) {
            throw std::runtime_error("dependency row " +
                                     std::to_string(lineno) +
                                     ": bad number");
        }
        t.form = f[1];
        t.empty = f[1] == "_";
        g.tokens.push_back(t);
        std::vector<std::string> heads = split(f[2], '|');
        std::vector<std::string> rels = split(f[3], '|');
        if (heads.size() != rels.size())
            throw std::runtime_error("dependency row " +
                                     std::to_string(lineno) +
                                     ": HEAD and REL arity differ");
        for (size_t i = 0; i < heads.size(); ++i) {
            DepEdge e;
            try {
                e.head = std::stoi(heads[i]);
            } catch (const std::exception&) {
                throw std::runtime_error("dependency row " +
                                         std::to_string(lineno) +
                                         ": bad head index");
            }
            e.dep = t.index;
            e.rel = rels[i];
            e.from_memory = i > 0; // re-merges always come from memory
            g.edges.push_back(e);
        }
    }
    if (!saw_status)
        throw std::runtime_error("dependency table lacks a status line");
    return g;
}

TraceReport to_trace(const DerivationState& state) {
    TraceReport rep;
    rep.status = status_string(state);
    rep.reason = state.fail_detail;

    for (size_t i = 0; i < state.log.size(); ++i) {
        const DerivationStep& st = state.log[i];
        std::string d;
        switch (st.kind) {
        case StepKind::MergeInput:
            if (st.detail == "start")
                d = "start " + node_form(state, st.b);
            else if (st.detail == "spellout")
                d = "spellout " + node_form(state, st.b);
            else {
                d = st.rel + " " + node_form(state, st.b);
                if (!st.detail.empty())
                    d += " (" + st.detail + ")";
            }
            break;
        case StepKind::MergeMemory:
            d = st.rel + " " + node_form(state, st.b) + " from memory";
            if (!st.detail.empty())
                d += " (" + st.detail + ")";
            break;
        case StepKind::Move:
            d = node_form(state, st.b) + " buffered";
            break;
        case StepKind::Inherit:
            d = std::to_string(st.arg) + " slot" + (st.arg == 1 ? "" : "s") +
                " to " + node_form(state, st.b);
            if (!st.detail.empty())
                d += " (" + st.detail + ")";
            break;
        case StepKind::SuccessCheck:
            d = node_form(state, st.b) + ": " + st.detail;
            break;
        case StepKind::Ascend:
            d = "to " + node_form(state, st.b);
            break;
        case StepKind::PostulateEmpty:
            d = st.rel + " _ [" +
                (st.item >= 0 ? state.nodes[st.b].cat.str() : "?") + "]";
            if (!st.detail.empty())
                d += " (" + st.detail + ")";
            break;
        case StepKind::Suspend:
            d = st.rel + " set aside by " + node_form(state, st.a);
            break;
        case StepKind::Resume:
            d = node_form(state, st.b) + ": " + std::to_string(st.arg) +
                " feature" + (st.arg == 1 ? "" : "s") + " restored";
            break;
        }
        rep.lines.push_back(
            {int(i) + 1, step_kind_str(st.kind), d, st.mem_load_after});
    }

    // settled load and oldest buffered copy per overt token
    std::vector<size_t> settle_at;
    std::vector<int> loads = settled_loads(state, &settle_at);
    std::vector<std::set<NodeId>> open_after(state.log.size());
    std::set<NodeId> open;
    for (size_t i = 0; i < state.log.size(); ++i) {
        const DerivationStep& st = state.log[i];
        if (st.kind == StepKind::Move)
            open.insert(st.b);
        else if (st.kind == StepKind::MergeMemory && st.detail != "retained")
            open.erase(st.b);
        open_after[i] = open;
    }
    for (size_t i = 0; i < state.tokens.size(); ++i) {
        if (state.tokens[i].empty)
            continue;
        WordLoad w;
        w.form = state.tokens[i].form;
        w.mem_load = loads[i];
        w.retained_since = 0;
        if (!state.log.empty()) {
            for (NodeId n : open_after[settle_at[i]]) {
                int tok = state.nodes[n].token;
                int origin = tok >= 0 ? state.tokens[size_t(tok)].overt_index
                                      : 0;
                if (origin > 0 &&
                    (w.retained_since == 0 || origin < w.retained_since))
                    w.retained_since = origin;
            }
        }
        rep.per_word.push_back(std::move(w));
    }
    return rep;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
    std::vector<CorpusEntry> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> f = split(line, '\t');
        if (f.size() < 2 || f.size() > 3)
            throw std::runtime_error(
                "corpus line " + std::to_string(lineno) +
                ": expected SENTENCE<TAB>1|0 with an optional comment");
        CorpusEntry e;
        e.line = lineno;
        std::istringstream ws(f[0]);
        std::string w;
        while (ws >> w)
            e.words.push_back(w);
        if (f[1] == "1")
            e.accept = true;
        else if (f[1] == "0")
            e.accept = false;
        else
            throw std::runtime_error("corpus line " + std::to_string(lineno) +
                                     ": judgement must be 1 or 0");
        if (f.size() == 3)
            e.comment = f[2];
        out.push_back(std::move(e));
    }
    return out;
}

std::string serialize_trace(const TraceReport& report) {
    std::ostringstream out;
    out << "# status: " << report.status << "\n";
    if (!report.reason.empty())
        out << "# reason: " << report.reason << "\n";
    for (const TraceLine& l : report.lines)
        out << l.step << "\t" << l.kind << "\t" << l.detail << "\t"
            << l.mem_load << "\n";
    for (const WordLoad& w : report.per_word) {
        out << "# word\t" << w.form << "\t" << w.mem_load << "\t";
        if (w.retained_since > 0)
            out << w.retained_since;
        else
            out << "-";
        out << "\n";
    }
    return out.str();
}

} // namespace emg
