#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "emg/output.hpp"
#include "emg/parsing.hpp"

using namespace emg;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(BENCH_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> words(const std::string& sentence) {
    std::vector<std::string> out;
    std::istringstream ss(sentence);
    std::string w;
    while (ss >> w)
        out.push_back(w);
    return out;
}

const Grammar& clause() {
    static Grammar g = load_grammar(slurp("g24.emg"));
    return g;
}

} // namespace

static void BM_Unify(benchmark::State& state) {
    AgrSet a, b;
    a.put({"num", "s"});
    a.put({"per", "3"});
    b.put({"num", std::nullopt});
    b.put({"gen", "f"});
    for (auto _ : state)
        benchmark::DoNotOptimize(unify(a, b));
}
BENCHMARK(BM_Unify);

static void BM_LoadGrammar(benchmark::State& state) {
    const std::string text = slurp("g25.emg");
    for (auto _ : state)
        benchmark::DoNotOptimize(load_grammar(text));
}
BENCHMARK(BM_LoadGrammar);

static void BM_ParseClause(benchmark::State& state) {
    const auto sentence = words("Maria ha cantato");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(clause(), sentence));
}
BENCHMARK(BM_ParseClause);

static void BM_ParseReject(benchmark::State& state) {
    const auto sentence = words("ha Maria cantato");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(clause(), sentence));
}
BENCHMARK(BM_ParseReject);

static void BM_ParseClitic(benchmark::State& state) {
    static Grammar g = load_grammar(slurp("g25.emg"));
    const auto sentence = words("Maria l' ha cantata");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(g, sentence));
}
BENCHMARK(BM_ParseClitic);

static void BM_ParseAmbiguous(benchmark::State& state) {
    static Grammar g = load_grammar(slurp("g_amb.emg"));
    const auto sentence = words("a a a a a a");
    ParseConfig cfg;
    cfg.priming = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(g, sentence, cfg));
}
BENCHMARK(BM_ParseAmbiguous)->Arg(0)->Arg(1);

static void BM_ParseDelayed(benchmark::State& state) {
    static Grammar g = load_grammar(slurp("g28.emg"));
    const auto sentence = words("cause of_the riot are pictures of_the wall");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(g, sentence));
}
BENCHMARK(BM_ParseDelayed);

static void BM_Generate(benchmark::State& state) {
    GenOptions opts;
    opts.max_len = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(generate(clause(), opts));
}
BENCHMARK(BM_Generate)->Arg(3)->Arg(6);

static void BM_TraceReport(benchmark::State& state) {
    ParseForest f = parse(clause(), words("Maria ha cantato"));
    for (auto _ : state)
        benchmark::DoNotOptimize(serialize_trace(to_trace(f.analyses[0])));
}
BENCHMARK(BM_TraceReport);

BENCHMARK_MAIN();
