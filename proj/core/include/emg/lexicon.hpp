#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emg/category.hpp"
#include "emg/features.hpp"

namespace emg {

/// A lexical item: optional phonological form, the ordered list of expected
/// categories (the first is the item's label), the ordered expect features
/// it will discharge, and its agreement features.
struct LexicalItem {
    std::optional<std::string> phon;
    std::vector<Category> expected; // never empty; expected[0] is the label
    std::vector<ExpectFeature> expect;
    AgrSet agr;

    const Category& label() const { return expected.front(); }
    bool is_empty() const { return !phon.has_value(); }
    std::string form() const { return phon ? *phon : "_"; }

    /// Entry in the grammar file syntax, e.g. "ha :: T {num.s, per.3} +D =V".
    std::string str() const;

    bool operator==(const LexicalItem& o) const {
        return phon == o.phon && expected == o.expected && expect == o.expect && agr == o.agr;
    }
};

} // namespace emg
