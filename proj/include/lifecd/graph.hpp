#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "lifecd/errors.hpp"

namespace lifecd {

/// Node identifier, 1-based at every interface.
using NodeId = int;

/// One undirected link with its per-round failure probability.
/// Endpoints are stored normalized (a < b); (i,j) and (j,i) are the same edge.
struct Edge {
    NodeId a = 0;
    NodeId b = 0;
    double p = 0.0;
};

/// Undirected connected graph with Bernoulli per-round link failures.
///
/// Invariants enforced at construction: no self-loops, every p in [0,1)
/// (p = 1 would be a permanently dead link), node ids in 1..n, single
/// probability per unordered pair, and connectivity. Instances are
/// immutable afterwards and safe to share across threads.
class FailureGraph {
  public:
    FailureGraph(NodeId node_count, std::vector<Edge> edges);

    /// The trivial one-node network (no edges; consensus already holds).
    static FailureGraph single_node();

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Edges sorted by (a, b); iteration order is deterministic.
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(NodeId i, NodeId j) const;

    /// Failure probability of edge {i,j}; throws UnknownEdge if absent.
    double failure_prob(NodeId i, NodeId j) const;

    /// Neighbors of i as (node, p) pairs sorted by node id.
    const std::vector<std::pair<NodeId, double>>& neighbors(NodeId i) const;

    /// Largest failure probability over all edges (0 for the edgeless graph).
    double max_failure_prob() const;

    bool is_tree() const { return edges_.size() + 1 == static_cast<std::size_t>(n_); }

    /// Copy of this graph with edge {i,j} set to probability p.
    FailureGraph with_edge_prob(NodeId i, NodeId j, double p) const;

  private:
    NodeId n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<NodeId, double>>> adj_; // index 0 unused
};

/// Parses an edge-list document: one `i,j,p` line per edge, `#` comment lines
/// and blank lines ignored. A document with no edges denotes the single-node
/// network. Throws ParseError / ValidationError.
FailureGraph parse_graph(std::string_view text);

/// Hop distances from `from` to every node (index 0 unused).
std::vector<int> hop_distances(const FailureGraph& g, NodeId from);

/// Maximum hop distance from i to any node; 0 when n = 1.
int eccentricity(const FailureGraph& g, NodeId i);

/// Maximum eccentricity over all nodes.
int diameter(const FailureGraph& g);

} // namespace lifecd
