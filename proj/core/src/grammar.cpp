#include "emg/grammar.hpp"

#include <algorithm>
#include <sstream>

namespace emg {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool single_token(const std::string& s) {
    return !s.empty() && s.find_first_of(" \t") == std::string::npos;
}

// Split a line into whitespace-separated tokens, keeping one {...} block
// together as a single token.
std::vector<std::string> tokenize(const std::string& s, int line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') { ++i; continue; }
        if (s[i] == '{') {
            size_t close = s.find('}', i);
            if (close == std::string::npos) throw GrammarError(line, "unterminated '{'");
            out.push_back(s.substr(i, close - i + 1));
            i = close + 1;
        } else {
            size_t j = i;
            while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
                if (s[j] == '{') throw GrammarError(line, "unexpected '{' inside token");
                ++j;
            }
            out.push_back(s.substr(i, j - i));
            i = j;
        }
    }
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') { out.push_back(trim(cur)); cur.clear(); }
        else cur.push_back(c);
    }
    out.push_back(trim(cur));
    return out;
}

Category parse_category(const std::string& s, int line) {
    if (!valid_category(s)) throw GrammarError(line, "bad category '" + s + "'");
    return Category(s);
}

bool valid_attr_part(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
            return false;
    return true;
}

AgrFeature parse_agr_feature(const std::string& s, int line) {
    AgrFeature f;
    size_t dot = s.find('.');
    if (dot == std::string::npos) {
        f.attr = s;
    } else {
        f.attr = s.substr(0, dot);
        f.value = s.substr(dot + 1);
        if (!valid_attr_part(*f.value))
            throw GrammarError(line, "bad agreement value in '" + s + "'");
    }
    if (!valid_attr_part(f.attr))
        throw GrammarError(line, "bad agreement attribute in '" + s + "'");
    return f;
}

AgrSet parse_agr_block(const std::string& block, int line) {
    AgrSet set;
    std::string inner = trim(block.substr(1, block.size() - 2));
    if (inner.empty()) return set;
    for (const auto& part : split_commas(inner)) {
        if (part.empty()) throw GrammarError(line, "empty agreement feature");
        AgrFeature f = parse_agr_feature(part, line);
        if (set.find(f.attr))
            throw GrammarError(line, "duplicate agreement attribute '" + f.attr + "'");
        set.put(std::move(f));
    }
    return set;
}

bool is_expect_token(const std::string& t) {
    return !t.empty() && (t[0] == '=' || t[0] == '+');
}

// The empty form may be written "_" or the epsilon glyph.
bool empty_form(const std::string& s) { return s == "_" || s == "\xce\xb5"; }

struct Loader {
    Grammar g;
    std::set<std::string> params_seen;
    bool start_seen = false;
    int line = 0;

    void note_category(const Category& c) { g.categories.insert(c.str()); }

    void directive_agr(const std::vector<std::string>& toks) {
        if (toks.size() < 2 || toks.back().front() != '{')
            throw GrammarError(line, "@agr wants categories and a {...} attribute set");
        std::string cats;
        for (size_t i = 0; i + 1 < toks.size(); ++i) cats += toks[i];
        AgrSet attrs = parse_agr_block(toks.back(), line);
        if (attrs.empty()) throw GrammarError(line, "@agr with no attributes");
        for (const auto& f : attrs.items())
            if (f.value) throw GrammarError(line, "@agr lists attributes, not values: '" + f.str() + "'");
        for (auto spec : split_commas(cats)) {
            AgrEntry e;
            if (spec.size() > 2 && spec.compare(spec.size() - 2, 2, "^M") == 0) {
                e.moved_only = true;
                spec = spec.substr(0, spec.size() - 2);
            }
            e.cat = parse_category(spec, line);
            for (const auto& f : attrs.items()) e.attrs.insert(f.attr);
            for (const auto& prev : g.params.agr)
                if (prev.cat == e.cat)
                    throw GrammarError(line, "duplicate @agr for category '" + e.cat.str() + "'");
            note_category(e.cat);
            g.params.agr.push_back(std::move(e));
        }
    }

    void directive_param(const std::vector<std::string>& toks) {
        if (toks.size() != 2) throw GrammarError(line, "@param wants a key and a value");
        const std::string& key = toks[0];
        const std::string& val = toks[1];
        if (!params_seen.insert(key).second)
            throw GrammarError(line, "duplicate @param " + key);
        if (key == "delayed_expectation") {
            if (val == "on") g.params.delayed_expectation = true;
            else if (val == "off") g.params.delayed_expectation = false;
            else throw GrammarError(line, "delayed_expectation is on|off");
        } else if (key == "memory") {
            if (val == "fifo") g.params.memory = MemoryPolicy::Fifo;
            else if (val == "lifo") g.params.memory = MemoryPolicy::Lifo;
            else throw GrammarError(line, "memory is fifo|lifo");
        } else if (key == "linearization") {
            if (val == "default") g.params.linearization = Linearization::Default;
            else if (val == "head_medial") g.params.linearization = Linearization::HeadMedial;
            else throw GrammarError(line, "linearization is default|head_medial");
        } else if (key == "probe") {
            if (val == "prefix") g.params.probe = ProbePolicy::Prefix;
            else if (val == "first-match") g.params.probe = ProbePolicy::FirstMatch;
            else throw GrammarError(line, "probe is prefix|first-match");
        } else {
            throw GrammarError(line, "unknown @param '" + key + "'");
        }
    }

    void directive_start(const std::vector<std::string>& toks) {
        if (toks.size() != 1) throw GrammarError(line, "@start wants one category");
        if (start_seen) throw GrammarError(line, "duplicate @start");
        start_seen = true;
        g.params.start = parse_category(toks[0], line);
        note_category(g.params.start);
    }

    void entry(const std::string& phon_part, const std::string& rest) {
        if (!single_token(phon_part))
            throw GrammarError(line, "entry form must be a single token");
        LexicalItem it;
        if (!empty_form(phon_part)) it.phon = phon_part;

        auto toks = tokenize(rest, line);
        size_t i = 0;
        std::string expected_spec;
        while (i < toks.size() && toks[i][0] != '{' && !is_expect_token(toks[i]))
            expected_spec += toks[i++];
        if (expected_spec.empty())
            throw GrammarError(line, "entry needs at least one expected category");
        for (const auto& c : split_commas(expected_spec)) {
            it.expected.push_back(parse_category(c, line));
            note_category(it.expected.back());
        }
        if (i < toks.size() && toks[i][0] == '{')
            it.agr = parse_agr_block(toks[i++], line);
        for (; i < toks.size(); ++i) {
            if (!is_expect_token(toks[i]))
                throw GrammarError(line, "expected =CAT or +CAT, got '" + toks[i] + "'");
            ExpectFeature f;
            f.pol = toks[i][0] == '=' ? Polarity::Select : Polarity::License;
            f.cat = parse_category(toks[i].substr(1), line);
            note_category(f.cat);
            it.expect.push_back(std::move(f));
        }
        g.items.push_back(std::move(it));
    }

    void run(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = raw;
            if (size_t hash = s.find('#'); hash != std::string::npos) s = s.substr(0, hash);
            s = trim(s);
            if (s.empty()) continue;
            if (s[0] == '@') {
                auto toks = tokenize(s, line);
                std::string d = toks[0];
                toks.erase(toks.begin());
                if (d == "@agr") directive_agr(toks);
                else if (d == "@param") directive_param(toks);
                else if (d == "@start") directive_start(toks);
                else throw GrammarError(line, "unknown directive '" + d + "'");
            } else {
                size_t sep = s.find("::");
                if (sep == std::string::npos)
                    throw GrammarError(line, "malformed lexical entry (missing '::')");
                entry(trim(s.substr(0, sep)), trim(s.substr(sep + 2)));
            }
        }
        if (!start_seen) throw GrammarError(line, "missing @start directive");

        // Attributes used in items but governed by no @agr declaration are
        // legal, they just never take part in checking. Flag them.
        std::set<std::string> governed;
        for (const auto& e : g.params.agr) governed.insert(e.attrs.begin(), e.attrs.end());
        std::set<std::string> flagged;
        for (const auto& it : g.items)
            for (const auto& f : it.agr.items())
                if (!governed.count(f.attr) && flagged.insert(f.attr).second)
                    g.warnings.push_back("agreement attribute '" + f.attr +
                                         "' is not covered by any @agr declaration");
        g.rebuild_index();
    }
};

} // namespace

std::vector<int> Grammar::lookup(const std::string& form) const {
    auto it = by_form_.find(form);
    if (it == by_form_.end()) return {};
    return it->second;
}

std::vector<int> Grammar::start_items() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(items.size()); ++i)
        if (refines(items[i].label(), params.start)) out.push_back(i);
    return out;
}

void Grammar::rebuild_index() {
    by_form_.clear();
    empties_.clear();
    for (int i = 0; i < static_cast<int>(items.size()); ++i) {
        if (items[i].is_empty()) empties_.push_back(i);
        else by_form_[*items[i].phon].push_back(i);
    }
}

Grammar load_grammar(const std::string& text) {
    Loader l;
    l.run(text);
    return std::move(l.g);
}

std::string LexicalItem::str() const {
    std::string out = form() + " ::";
    for (size_t i = 0; i < expected.size(); ++i)
        out += (i ? "," : " ") + expected[i].str();
    if (!agr.empty()) out += " " + agr.str();
    for (const auto& f : expect) out += " " + f.str();
    return out;
}

std::string serialize_grammar(const Grammar& g) {
    std::string out;
    out += "@start " + g.params.start.str() + "\n";
    out += std::string("@param delayed_expectation ") +
           (g.params.delayed_expectation ? "on" : "off") + "\n";
    out += std::string("@param memory ") +
           (g.params.memory == MemoryPolicy::Fifo ? "fifo" : "lifo") + "\n";
    out += std::string("@param linearization ") +
           (g.params.linearization == Linearization::Default ? "default" : "head_medial") + "\n";
    out += std::string("@param probe ") +
           (g.params.probe == ProbePolicy::Prefix ? "prefix" : "first-match") + "\n";
    for (const auto& e : g.params.agr) {
        out += "@agr " + e.cat.str() + (e.moved_only ? "^M" : "") + " {";
        bool first = true;
        for (const auto& a : e.attrs) {
            if (!first) out += ", ";
            out += a;
            first = false;
        }
        out += "}\n";
    }
    for (const auto& it : g.items) out += it.str() + "\n";
    return out;
}

const AgrEntry* ParameterSet::resolve_agr(const Category& label) const {
    const AgrEntry* best = nullptr;
    for (const auto& e : agr)
        if (refines(label, e.cat) &&
            (!best || e.cat.segments.size() > best->cat.segments.size()))
            best = &e;
    return best;
}

} // namespace emg
