#pragma once

#include <vector>

#include "lifecd/graph.hpp"

namespace lifecd {

/// Shortest-path spanning tree rooted at a source node, parent-map form.
///
/// Built by shortest_path_tree() under expected-delay edge weights
/// 1/(1-p); every tree edge carries the failure probability of the
/// underlying graph edge. Immutable after construction.
class SpanningTree {
  public:
    /// parent[v] = parent of v (0 for the root and for index 0);
    /// edge_p[v] = failure probability of edge (parent[v], v).
    SpanningTree(NodeId root, std::vector<NodeId> parent, std::vector<double> edge_p);

    NodeId root() const { return root_; }
    NodeId node_count() const { return static_cast<NodeId>(parent_.size()) - 1; }

    NodeId parent(NodeId v) const { return parent_[static_cast<std::size_t>(v)]; }

    /// Failure probability of the edge (parent(v), v); v must not be the root.
    double edge_prob(NodeId v) const;

    const std::vector<NodeId>& children(NodeId v) const {
        return children_[static_cast<std::size_t>(v)];
    }

    /// Hop count of the root-to-v tree path.
    int depth(NodeId v) const { return depth_[static_cast<std::size_t>(v)]; }

    /// Node sequence root, ..., v.
    std::vector<NodeId> path_from_root(NodeId v) const;

    /// Degree of v within the tree (parent plus children).
    int tree_degree(NodeId v) const;

  private:
    NodeId root_;
    std::vector<NodeId> parent_;
    std::vector<double> edge_p_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<int> depth_;
};

/// Dijkstra under edge weight 1/(1-p), the expected per-link delay. Among
/// equal-cost paths the lexicographically smallest node sequence wins, so
/// identical inputs always produce identical trees.
SpanningTree shortest_path_tree(const FailureGraph& g, NodeId source);

/// Root-to-leaf paths that are not subpaths of any other root-to-node path,
/// i.e. exactly one path per tree leaf, plus the leaf set itself.
struct CriticalPathSet {
    std::vector<std::vector<NodeId>> paths; // each root..leaf, ordered by leaf id
    std::vector<NodeId> leaf_nodes;         // ascending
};

CriticalPathSet critical_paths(const SpanningTree& t);

} // namespace lifecd
