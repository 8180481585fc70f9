#include "emg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "emg/grammar.hpp"
#include "emg/output.hpp"
#include "emg/parsing.hpp"

namespace emg {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_words(const std::vector<std::string>& args) {
    std::vector<std::string> words;
    for (const std::string& a : args) {
        std::istringstream ws(a);
        std::string w;
        while (ws >> w)
            words.push_back(w);
    }
    return words;
}

long default_max_branches() {
    if (const char* env = std::getenv("EMG_MAX_BRANCHES")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return 100000;
}

void render_tree(std::ostream& out, const DerivationState& s, NodeId n,
                 int depth, const std::string& rel, bool from_memory) {
    for (int i = 0; i < depth; ++i)
        out << "  ";
    if (!rel.empty())
        out << rel << "  ";
    const Node& node = s.nodes[n];
    std::string form =
        node.token >= 0 ? s.tokens[size_t(node.token)].form : "?";
    out << form << " [" << node.cat.str() << "]";
    if (from_memory) {
        out << " (from memory)\n";
        return; // the subtree already printed at the first-merge site
    }
    out << "\n";
    for (const Dependency& d : node.deps)
        render_tree(out, s, d.child, depth + 1, d.rel.str(), d.from_memory);
}

void print_analysis(std::ostream& out, const DerivationState& s, bool trace,
                    bool trees) {
    out << serialize_dependencies(to_dependencies(s));
    if (trace)
        out << serialize_trace(to_trace(s));
    if (trees)
        render_tree(out, s, s.root, 0, "", false);
}

int cmd_parse(const std::string& grammar_path,
              const std::vector<std::string>& sentence, bool all, bool trace,
              bool trees, bool stats, int beam, bool no_priming,
              int max_empty, bool eager, long max_branches, std::ostream& out,
              std::ostream& err) {
    Grammar g = load_grammar(read_file(grammar_path));
    for (const std::string& w : g.warnings)
        err << "warning: " << w << "\n";

    ParseConfig cfg;
    cfg.priming = !no_priming;
    cfg.max_empties = max_empty;
    cfg.eager_postulate = eager;
    cfg.max_branches = max_branches;
    if (beam > 0) {
        cfg.strategy = Strategy::Beam;
        cfg.beam = beam;
    }

    ParseForest forest = parse(g, split_words(sentence), cfg);
    if (stats) {
        out << "# explored: " << forest.stats.explored << "\n";
        out << "# abandoned: " << forest.stats.abandoned << "\n";
        out << "# assignments: " << forest.stats.lexical_assignments << "\n";
    }
    if (forest.analyses.empty()) {
        out << "# status: FAIL(" << fail_reason_str(forest.best_failure)
            << ")\n";
        if (!forest.best_failure_detail.empty())
            out << "# reason: " << forest.best_failure_detail << "\n";
        if (trace && !forest.best_failure_state.log.empty()) {
            for (const TraceLine& l : to_trace(forest.best_failure_state).lines)
                out << l.step << "\t" << l.kind << "\t" << l.detail << "\t"
                    << l.mem_load << "\n";
        }
        return forest.aborted ? 2 : 1;
    }
    if (all) {
        out << "# analyses: " << forest.analyses.size() << "\n";
        bool first = true;
        for (const DerivationState& s : forest.analyses) {
            if (!first)
                out << "\n";
            first = false;
            print_analysis(out, s, trace, trees);
        }
    } else {
        print_analysis(out, forest.analyses.front(), trace, trees);
    }
    return forest.aborted ? 2 : 0;
}

int cmd_generate(const std::string& grammar_path, int max_len, int max_empty,
                 long max_branches, std::ostream& out, std::ostream& err) {
    Grammar g = load_grammar(read_file(grammar_path));
    for (const std::string& w : g.warnings)
        err << "warning: " << w << "\n";

    GenOptions opts;
    opts.max_len = max_len;
    opts.max_empties = max_empty;
    opts.max_branches = max_branches;
    GenResult res = generate(g, opts);

    std::set<std::string> printed;
    for (const GeneratedSentence& s : res.sentences) {
        std::string line;
        for (const std::string& w : s.words) {
            if (!line.empty())
                line += " ";
            line += w;
        }
        if (printed.insert(line).second)
            out << line << "\n";
    }
    if (res.aborted) {
        err << "error: generation aborted at the branch budget\n";
        return 2;
    }
    return 0;
}

int cmd_check(const std::string& grammar_path, const std::string& corpus_path,
              int max_empty, long max_branches, std::ostream& out,
              std::ostream& err) {
    Grammar g = load_grammar(read_file(grammar_path));
    for (const std::string& w : g.warnings)
        err << "warning: " << w << "\n";
    std::vector<CorpusEntry> corpus = parse_corpus(read_file(corpus_path));

    ParseConfig cfg;
    cfg.max_empties = max_empty;
    cfg.max_branches = max_branches;

    int agreed = 0;
    bool aborted = false;
    for (const CorpusEntry& e : corpus) {
        ParseForest forest = parse(g, e.words, cfg);
        aborted = aborted || forest.aborted;
        bool parsed = !forest.analyses.empty();
        std::string sentence;
        for (const std::string& w : e.words) {
            if (!sentence.empty())
                sentence += " ";
            sentence += w;
        }
        if (parsed == e.accept) {
            ++agreed;
            out << "PASS\t" << sentence << "\n";
        } else {
            out << "FAIL\texpected=" << (e.accept ? 1 : 0)
                << " parsed=" << (parsed ? 1 : 0) << "\t" << sentence << "\n";
        }
    }
    out << "# agreed " << agreed << "/" << corpus.size() << "\n";
    if (aborted) {
        err << "error: a parse aborted at the branch budget\n";
        return 2;
    }
    return agreed == int(corpus.size()) ? 0 : 1;
}

} // namespace

int run_emg(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"expectation-driven minimalist grammar tool"};
    app.require_subcommand(1);

    std::string grammar_path;
    std::string corpus_path;
    std::vector<std::string> sentence;
    bool all = false, trace = false, trees = false, stats = false;
    bool no_priming = false, eager = false;
    int beam = 0;
    int max_empty = 4;
    int max_len = 5;
    long max_branches = default_max_branches();

    CLI::App* p = app.add_subcommand("parse", "parse a sentence");
    p->add_option("grammar", grammar_path, "grammar file")->required();
    p->add_option("sentence", sentence, "sentence tokens")->required();
    p->add_flag("--all", all, "print every analysis");
    p->add_flag("--trace", trace, "print the derivation trace");
    p->add_flag("--trees", trees, "print the derivation tree");
    p->add_flag("--stats", stats, "print search statistics");
    p->add_option("--beam", beam, "stop after this many analyses");
    p->add_flag("--no-priming", no_priming,
                "also try label-incompatible lexical readings");
    p->add_option("--max-empty", max_empty, "silent item budget");
    p->add_flag("--eager-empty", eager,
                "offer silent items at every expectation");
    p->add_option("--max-branches", max_branches, "search budget");

    CLI::App* gen = app.add_subcommand("generate", "enumerate sentences");
    gen->add_option("grammar", grammar_path, "grammar file")->required();
    gen->add_option("--max-len", max_len, "overt length ceiling");
    gen->add_option("--max-empty", max_empty, "silent item budget");
    gen->add_option("--max-branches", max_branches, "search budget");

    CLI::App* chk = app.add_subcommand("check", "judge a corpus");
    chk->add_option("grammar", grammar_path, "grammar file")->required();
    chk->add_option("corpus", corpus_path, "judgement corpus")->required();
    chk->add_option("--max-empty", max_empty, "silent item budget");
    chk->add_option("--max-branches", max_branches, "search budget");

    std::vector<const char*> argv;
    argv.push_back("emg");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help and friends
            std::stringstream ss;
            int code = app.exit(e, ss, ss);
            out << ss.str();
            return code;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (p->parsed())
            return cmd_parse(grammar_path, sentence, all, trace, trees, stats,
                             beam, no_priming, max_empty, eager, max_branches,
                             out, err);
        if (gen->parsed())
            return cmd_generate(grammar_path, max_len, max_empty,
                                max_branches, out, err);
        if (chk->parsed())
            return cmd_check(grammar_path, corpus_path, max_empty,
                             max_branches, out, err);
    } catch (const GrammarError& e) {
        err << "error: " << grammar_path << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

} // namespace emg
