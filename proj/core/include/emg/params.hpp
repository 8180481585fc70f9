#pragma once

#include <set>
#include <string>
#include <vector>

#include "emg/category.hpp"

namespace emg {

/// One @agr declaration: which attributes a category must check, and whether
/// checking applies only when the merged item comes out of memory (^M).
struct AgrEntry {
    Category cat;
    std::set<std::string> attrs;
    bool moved_only = false;

    bool operator==(const AgrEntry& o) const {
        return cat == o.cat && attrs == o.attrs && moved_only == o.moved_only;
    }
};

enum class Linearization { Default, HeadMedial };
enum class MemoryPolicy { Fifo, Lifo };
enum class ProbePolicy { Prefix, FirstMatch };

struct ParameterSet {
    std::vector<AgrEntry> agr;
    bool delayed_expectation = false;
    Linearization linearization = Linearization::Default;
    MemoryPolicy memory = MemoryPolicy::Fifo;
    ProbePolicy probe = ProbePolicy::Prefix;
    Category start;

    /// The most refined @agr entry the label refines, or null when agreement
    /// is trivially successful for this category.
    const AgrEntry* resolve_agr(const Category& label) const;

    bool operator==(const ParameterSet& o) const {
        return agr == o.agr && delayed_expectation == o.delayed_expectation &&
               linearization == o.linearization && memory == o.memory &&
               probe == o.probe && start == o.start;
    }
};

} // namespace emg
