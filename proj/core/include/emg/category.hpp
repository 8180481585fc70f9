#pragma once

#include <string>
#include <vector>

namespace emg {

/// A categorial label as a dotted path of segments, e.g. "V.pp".
/// Sub-categories extend the path; "V.pp" is a V but "V" is not a V.pp.
struct Category {
    std::vector<std::string> segments;

    Category() = default;
    explicit Category(const std::string& dotted);

    bool empty() const { return segments.empty(); }
    std::string str() const;

    bool operator==(const Category& o) const { return segments == o.segments; }
    bool operator!=(const Category& o) const { return !(*this == o); }
    bool operator<(const Category& o) const { return segments < o.segments; }
};

/// True when `a` refines `b`: every segment of `b` prefixes `a`.
/// Reflexive; =V therefore accepts a V.pp item, never the reverse.
bool refines(const Category& a, const Category& b);

/// Segment syntax check: non-empty [A-Za-z0-9_]+ segments joined by dots.
bool valid_category(const std::string& dotted);

} // namespace emg
