#include "lifecd/spanning_tree.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace lifecd {

SpanningTree::SpanningTree(NodeId root, std::vector<NodeId> parent, std::vector<double> edge_p)
    : root_(root), parent_(std::move(parent)), edge_p_(std::move(edge_p)) {
    const auto n = static_cast<NodeId>(parent_.size()) - 1;
    if (n < 1 || root_ < 1 || root_ > n || edge_p_.size() != parent_.size())
        throw ValidationError("malformed spanning tree");
    if (parent_[static_cast<std::size_t>(root_)] != 0)
        throw ValidationError("root must have no parent");

    children_.assign(parent_.size(), {});
    int with_parent = 0;
    for (NodeId v = 1; v <= n; ++v) {
        NodeId p = parent_[static_cast<std::size_t>(v)];
        if (v == root_) continue;
        if (p < 1 || p > n || p == v)
            throw ValidationError("node " + std::to_string(v) + " has invalid parent");
        children_[static_cast<std::size_t>(p)].push_back(v);
        ++with_parent;
    }
    if (with_parent != n - 1) throw ValidationError("tree must have exactly n-1 parent entries");
    for (auto& c : children_) std::sort(c.begin(), c.end());

    // depth by BFS from root; every node must be reached (acyclicity follows)
    depth_.assign(parent_.size(), -1);
    depth_[static_cast<std::size_t>(root_)] = 0;
    std::queue<NodeId> q;
    q.push(root_);
    int reached = 1;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (NodeId c : children_[static_cast<std::size_t>(v)]) {
            depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(v)] + 1;
            ++reached;
            q.push(c);
        }
    }
    if (reached != n) throw ValidationError("parent map does not reach all nodes from the root");
    for (NodeId v = 1; v <= n; ++v) {
        if (v == root_) continue;
        double p = edge_p_[static_cast<std::size_t>(v)];
        if (!(p >= 0.0 && p < 1.0))
            throw ValidationError("tree edge probability out of [0,1) at node " + std::to_string(v));
    }
}

double SpanningTree::edge_prob(NodeId v) const {
    if (v == root_) throw ValidationError("root has no parent edge");
    return edge_p_[static_cast<std::size_t>(v)];
}

std::vector<NodeId> SpanningTree::path_from_root(NodeId v) const {
    std::vector<NodeId> path;
    for (NodeId u = v; u != 0; u = parent(u)) path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
}

int SpanningTree::tree_degree(NodeId v) const {
    int d = static_cast<int>(children_[static_cast<std::size_t>(v)].size());
    if (v != root_) ++d;
    return d;
}

SpanningTree shortest_path_tree(const FailureGraph& g, NodeId source) {
    const NodeId n = g.node_count();
    if (source < 1 || source > n)
        throw ValidationError("source node " + std::to_string(source) + " out of range");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(static_cast<std::size_t>(n) + 1, kInf);
    std::vector<std::vector<NodeId>> path(static_cast<std::size_t>(n) + 1);
    std::vector<char> settled(static_cast<std::size_t>(n) + 1, 0);

    // Priority key is (cost, node sequence); the lexicographic component is
    // strictly increasing along extensions, so the greedy settles stay valid.
    struct Entry {
        double cost;
        std::vector<NodeId> path;
        bool operator>(const Entry& o) const {
            if (cost != o.cost) return cost > o.cost;
            return path > o.path;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;

    cost[static_cast<std::size_t>(source)] = 0.0;
    path[static_cast<std::size_t>(source)] = {source};
    pq.push({0.0, {source}});

    while (!pq.empty()) {
        Entry top = pq.top();
        pq.pop();
        NodeId v = top.path.back();
        if (settled[static_cast<std::size_t>(v)]) continue;
        if (top.cost != cost[static_cast<std::size_t>(v)] ||
            top.path != path[static_cast<std::size_t>(v)])
            continue; // stale entry
        settled[static_cast<std::size_t>(v)] = 1;

        for (auto [w, p] : g.neighbors(v)) {
            if (settled[static_cast<std::size_t>(w)]) continue;
            double cand = top.cost + 1.0 / (1.0 - p);
            auto& best_cost = cost[static_cast<std::size_t>(w)];
            auto& best_path = path[static_cast<std::size_t>(w)];
            bool better = cand < best_cost;
            if (!better && cand == best_cost) {
                auto cand_path = top.path;
                cand_path.push_back(w);
                better = cand_path < best_path;
            }
            if (better) {
                best_cost = cand;
                best_path = top.path;
                best_path.push_back(w);
                pq.push({cand, best_path});
            }
        }
    }

    std::vector<NodeId> parent(static_cast<std::size_t>(n) + 1, 0);
    std::vector<double> edge_p(static_cast<std::size_t>(n) + 1, 0.0);
    for (NodeId v = 1; v <= n; ++v) {
        if (v == source) continue;
        const auto& pv = path[static_cast<std::size_t>(v)];
        if (pv.size() < 2)
            throw InternalInvariantViolation("dijkstra failed to reach node " + std::to_string(v));
        NodeId par = pv[pv.size() - 2];
        parent[static_cast<std::size_t>(v)] = par;
        edge_p[static_cast<std::size_t>(v)] = g.failure_prob(par, v);
    }
    return SpanningTree(source, std::move(parent), std::move(edge_p));
}

CriticalPathSet critical_paths(const SpanningTree& t) {
    CriticalPathSet out;
    for (NodeId v = 1; v <= t.node_count(); ++v) {
        if (v == t.root()) continue;
        if (t.children(v).empty()) out.leaf_nodes.push_back(v);
    }
    std::sort(out.leaf_nodes.begin(), out.leaf_nodes.end());
    out.paths.reserve(out.leaf_nodes.size());
    for (NodeId leaf : out.leaf_nodes) out.paths.push_back(t.path_from_root(leaf));
    return out;
}

} // namespace lifecd
