#pragma once

#include <vector>

#include "emg/grammar.hpp"

namespace emg {

using NodeId = int;

/// An asymmetric dominance link: this node took `child` to satisfy `rel`.
struct Dependency {
    ExpectFeature rel;
    NodeId child = -1;
    bool from_memory = false;
};

/// A memory buffer slot. The stored "copy" is the node itself viewed through
/// its surviving features: phon is never read through a slot and consumed
/// features are already gone from the node.
struct MemorySlot {
    NodeId node = -1;
};

struct Node {
    int item = -1;  // index into Grammar::items, -1 for hand-built test nodes
    int token = -1; // index into the derivation's token table, -1 until spelled
    Category cat;   // the item's label; agreement category lookup keys on this
    AgrSet agr;
    std::vector<Category> expected;     // expected categories not yet consumed
    std::vector<ExpectFeature> pending; // expect features not yet discharged
    std::vector<ExpectFeature> suspended;
    std::vector<MemorySlot> mem;
    NodeId parent = -1;
    std::vector<Dependency> deps; // in merge order
    bool postulated = false;      // introduced by the parser, not the input
    bool in_memory = false;       // currently occupies somebody's buffer
    bool overt_merged = false;    // subtree consumed an overt token already
    bool success_checked = false;
    bool phon_deferred = false;   // head-medial: own token not yet consumed

    bool has_label() const { return !expected.empty(); }
    const Category& label() const { return expected.front(); }
};

class NodeStore {
public:
    NodeId add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<NodeId>(nodes_.size()) - 1;
    }
    Node& operator[](NodeId id) { return nodes_[id]; }
    const Node& operator[](NodeId id) const { return nodes_[id]; }
    size_t size() const { return nodes_.size(); }

private:
    std::vector<Node> nodes_;
};

inline Node make_node(const LexicalItem& it, int item_index) {
    Node n;
    n.item = item_index;
    n.cat = it.label();
    n.agr = it.agr;
    n.expected = it.expected;
    n.pending = it.expect;
    return n;
}

} // namespace emg
