#pragma once

#include <string>
#include <vector>

#include "emg/derivation.hpp"

namespace emg {

struct DepToken {
    int index = 0; // 1-based; overt tokens first, silent ones after
    std::string form;
    bool empty = false;
    int mem_load = 0; // load once the word's merges settled
};

struct DepEdge {
    int head = 0; // 0 marks the root
    int dep = 0;
    std::string rel; // feature spelling, or "root"
    bool from_memory = false;
};

struct DependencyGraph {
    std::vector<DepToken> tokens;
    std::vector<DepEdge> edges; // chronological merge order
    std::string status = "SUCCESS";
};

/// Project a completed derivation onto its token-level dependency graph.
DependencyGraph to_dependencies(const DerivationState& state);

/// Tab-separated INDEX FORM HEAD REL MEMLOAD rows, one per token, heads and
/// relations of re-merged tokens joined with '|', preceded by a status line.
std::string serialize_dependencies(const DependencyGraph& g);

/// Inverse of serialize_dependencies. Throws std::runtime_error on rows that
/// do not scan.
DependencyGraph parse_dependencies(const std::string& text);

struct TraceLine {
    int step = 0;
    std::string kind;
    std::string detail;
    int mem_load = 0;
};

struct WordLoad {
    std::string form;
    int mem_load = 0;
    int retained_since = 0; // oldest buffered copy's overt index, 0 when none
};

struct TraceReport {
    std::vector<TraceLine> lines;
    std::vector<WordLoad> per_word; // overt tokens only, in surface order
    std::string status = "SUCCESS";
    std::string reason; // failure detail when status is not SUCCESS
};

/// Step-by-step account of a derivation, working for failures too.
TraceReport to_trace(const DerivationState& state);

/// STEP KIND DETAIL MEMLOAD rows plus '# word' summary lines.
std::string serialize_trace(const TraceReport& report);

struct CorpusEntry {
    std::vector<std::string> words;
    bool accept = true;
    std::string comment;
    int line = 0;
};

/// Judgement corpus: one "SENTENCE<TAB>1|0[<TAB>COMMENT]" row per line,
/// words separated by spaces. '#' lines and blank lines are skipped.
std::vector<CorpusEntry> parse_corpus(const std::string& text);

} // namespace emg
