#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emg/category.hpp"

namespace emg {

/// One agreement feature: an attribute, optionally carrying a value.
/// "num" is the bare attribute, "num.pl" the valued one.
struct AgrFeature {
    std::string attr;
    std::optional<std::string> value;

    std::string str() const { return value ? attr + "." + *value : attr; }
    bool operator==(const AgrFeature& o) const { return attr == o.attr && value == o.value; }
};

/// A set of agreement features, at most one per attribute.
class AgrSet {
public:
    AgrSet() = default;

    /// Inserting a second feature for an attribute keeps the more specific
    /// one; two distinct values for one attribute are a caller bug and the
    /// later value wins (the loader rejects such items up front).
    void put(AgrFeature f);

    const AgrFeature* find(const std::string& attr) const;
    bool empty() const { return feats_.empty(); }
    size_t size() const { return feats_.size(); }
    const std::vector<AgrFeature>& items() const { return feats_; }

    std::string str() const;
    bool operator==(const AgrSet& o) const { return feats_ == o.feats_; }

private:
    std::vector<AgrFeature> feats_; // kept sorted by attr
};

/// Attribute-wise unification: bare + valued -> valued, equal values merge,
/// conflicting values fail. Empty result on failure.
std::optional<AgrSet> unify(const AgrSet& a, const AgrSet& b);

/// Unification restricted to the given attributes; features outside the set
/// pass through untouched on their own side. Returns the updated pair
/// (write-back is symmetric for the governed attributes).
std::optional<std::pair<AgrSet, AgrSet>> unify_restricted(
    const AgrSet& a, const AgrSet& b, const std::set<std::string>& attrs);

enum class Polarity { Select, License };

/// An expect feature: =X selects (consuming the matched label),
/// +X licenses (the matched label survives).
struct ExpectFeature {
    Polarity pol = Polarity::Select;
    Category cat;
    int suspensions = 0; // times this feature has been suspended

    std::string str() const { return (pol == Polarity::Select ? "=" : "+") + cat.str(); }
    bool operator==(const ExpectFeature& o) const { return pol == o.pol && cat == o.cat; }
};

} // namespace emg
