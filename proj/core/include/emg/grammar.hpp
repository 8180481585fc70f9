#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "emg/lexicon.hpp"
#include "emg/params.hpp"

namespace emg {

/// Loader failure; the message always carries the offending line number.
class GrammarError : public std::runtime_error {
public:
    GrammarError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct Grammar {
    std::vector<LexicalItem> items; // declaration order
    ParameterSet params;
    std::vector<std::string> warnings;
    std::set<std::string> categories; // every category mentioned anywhere

    /// Indices of items with the given form, in declaration order.
    std::vector<int> lookup(const std::string& form) const;

    /// Indices of phonologically empty items, in declaration order.
    const std::vector<int>& empties() const { return empties_; }

    /// Items whose label refines the start category, in declaration order.
    std::vector<int> start_items() const;

    void rebuild_index();

private:
    std::map<std::string, std::vector<int>> by_form_;
    std::vector<int> empties_;
};

/// Parse the line-oriented grammar format. Throws GrammarError on malformed
/// input; non-fatal oddities (an agreement attribute no @agr governs) are
/// collected into Grammar::warnings.
Grammar load_grammar(const std::string& text);

/// Inverse of load_grammar up to comments and layout.
std::string serialize_grammar(const Grammar& g);

} // namespace emg
