#include "lifecd/engine.hpp"

#include <algorithm>
#include <string>

namespace lifecd {

namespace {

void check_sync(const ReductionState& s) {
    if (s.leaf_dists.size() != s.critical.leaf_nodes.size())
        throw InternalInvariantViolation("leaf distributions and critical paths desynchronized");
    auto it = s.leaf_dists.begin();
    for (NodeId leaf : s.critical.leaf_nodes) {
        if (it == s.leaf_dists.end() || it->first != leaf)
            throw InternalInvariantViolation("carrier set mismatch at node " + std::to_string(leaf));
        if (it->second.n_max() != s.n_max)
            throw InternalInvariantViolation("carrier distribution has wrong truncation length");
        ++it;
    }
}

CriticalPathSet paths_for_carriers(const SpanningTree& tree,
                                   const std::map<NodeId, DelayDistribution>& carriers) {
    CriticalPathSet out;
    out.leaf_nodes.reserve(carriers.size());
    out.paths.reserve(carriers.size());
    for (const auto& [node, dist] : carriers) {
        out.leaf_nodes.push_back(node);
        out.paths.push_back(tree.path_from_root(node));
    }
    return out;
}

int next_pow2_at_least(int v) {
    int n = 1;
    while (n < v && n < (1 << 30)) n <<= 1;
    return n;
}

} // namespace

ReductionState init_reduction(const SpanningTree& tree, int n_max) {
    ReductionState state{tree, critical_paths(tree), {}, n_max};
    for (NodeId leaf : state.critical.leaf_nodes)
        state.leaf_dists.emplace(leaf,
                                 DelayDistribution::geometric(tree.edge_prob(leaf), n_max));
    return state;
}

TerminalShape terminal_shape(const ReductionState& state) {
    const auto& leaves = state.critical.leaf_nodes;
    if (leaves.empty()) return TerminalShape::FinalMax; // degenerate, nothing to combine
    bool all_depth_one = std::all_of(leaves.begin(), leaves.end(), [&](NodeId v) {
        return state.tree.depth(v) == 1;
    });
    if (all_depth_one) return TerminalShape::FinalMax;
    if (leaves.size() == 1 && state.tree.depth(leaves.front()) == 2)
        return TerminalShape::FinalSum;
    return TerminalShape::NotTerminal;
}

ReductionState reduce_once(const ReductionState& state, std::vector<ReductionStep>* trace) {
    check_sync(state);
    const SpanningTree& tree = state.tree;
    const auto& leaves = state.critical.leaf_nodes;
    if (leaves.empty()) throw NotTerminal("nothing left to reduce");

    int l_max = 0;
    for (NodeId v : leaves) l_max = std::max(l_max, tree.depth(v));

    // group longest paths by the carrier's parent
    std::map<NodeId, std::vector<NodeId>> groups;
    for (NodeId v : leaves)
        if (tree.depth(v) == l_max) groups[tree.parent(v)].push_back(v);

    ReductionState next = state;
    for (const auto& [q, members] : groups) {
        if (members.size() == 1) {
            NodeId j = members.front();
            if (tree.depth(j) < 2)
                throw NotTerminal("single root-adjacent carrier admits no further reduction");
            auto fresh = DelayDistribution::geometric(tree.edge_prob(q), state.n_max);
            auto combined = sum(next.leaf_dists.at(j), fresh);
            next.leaf_dists.erase(j);
            auto [it, inserted] = next.leaf_dists.emplace(q, std::move(combined));
            if (!inserted)
                throw InternalInvariantViolation("parent " + std::to_string(q) +
                                                 " already carries a distribution");
            if (trace) trace->push_back({ReduceOp::Unicast, q, {j}, l_max});
        } else {
            std::vector<DelayDistribution> parts;
            parts.reserve(members.size());
            for (NodeId j : members) parts.push_back(next.leaf_dists.at(j));
            auto combined = max_combine(std::span<const DelayDistribution>(parts));
            for (NodeId j : members) next.leaf_dists.erase(j);
            next.leaf_dists.emplace(members.front(), std::move(combined));
            if (trace) trace->push_back({ReduceOp::Broadcast, q, members, l_max});
        }
    }
    next.critical = paths_for_carriers(tree, next.leaf_dists);
    check_sync(next);
    return next;
}

DelayDistribution finalize(const ReductionState& state, std::vector<ReductionStep>* trace) {
    check_sync(state);
    const SpanningTree& tree = state.tree;
    switch (terminal_shape(state)) {
    case TerminalShape::FinalSum: {
        NodeId j = state.critical.leaf_nodes.front();
        NodeId q = tree.parent(j); // parent(q) is the root
        auto fresh = DelayDistribution::geometric(tree.edge_prob(q), state.n_max);
        if (trace) trace->push_back({ReduceOp::FinalSum, q, {j}, 2});
        return sum(state.leaf_dists.at(j), fresh);
    }
    case TerminalShape::FinalMax: {
        if (state.leaf_dists.empty())
            throw NotTerminal("no carriers to finalize");
        std::vector<DelayDistribution> parts;
        parts.reserve(state.leaf_dists.size());
        for (const auto& [node, dist] : state.leaf_dists) parts.push_back(dist);
        if (trace)
            trace->push_back({ReduceOp::FinalMax, tree.root(), state.critical.leaf_nodes, 1});
        if (parts.size() == 1) return parts.front();
        return max_combine(std::span<const DelayDistribution>(parts));
    }
    case TerminalShape::NotTerminal:
        break;
    }
    throw NotTerminal("state is not in a terminal shape");
}

namespace {

DelayDistribution reduce_to_distribution(const SpanningTree& tree, int n_max,
                                         std::vector<ReductionStep>& trace) {
    trace.clear();
    ReductionState state = init_reduction(tree, n_max);
    // each pass consumes at least one tree edge, so n-1 passes suffice
    int guard = tree.node_count();
    while (terminal_shape(state) == TerminalShape::NotTerminal) {
        if (--guard < 0) throw InternalInvariantViolation("reduction failed to make progress");
        state = reduce_once(state, &trace);
    }
    return finalize(state, &trace);
}

} // namespace

EngineReport run_lifecd(const FailureGraph& g, NodeId source, const EngineOptions& opts) {
    if (source < 1 || source > g.node_count())
        throw ValidationError("source node " + std::to_string(source) + " out of range");
    if (!(opts.eps_trunc > 0.0 && opts.eps_trunc < 1.0))
        throw DomainError("eps_trunc must lie in (0,1)");
    if (opts.n_max_cap < 1) throw DomainError("n_max_cap must be positive");

    const bool exact = g.is_tree();
    if (g.node_count() == 1) {
        // consensus already holds; the delay is identically zero
        return {DelayDistribution::point_mass(0, 1), 0.0, exact, {}, 1};
    }

    SpanningTree tree = shortest_path_tree(g, source);
    int longest = 0;
    double p_max_tree = 0.0;
    for (NodeId v = 1; v <= tree.node_count(); ++v) {
        longest = std::max(longest, tree.depth(v));
        if (v != source) p_max_tree = std::max(p_max_tree, tree.edge_prob(v));
    }

    // The Markov seed is sufficient for tail_mass <= eps (the convergence
    // time is dominated by the sum of all tree-edge delays, whose mean is
    // below n/(1-p_max)), so adaptive doubling never needs to pass it.
    TruncationHint hint =
        truncation_length(g.node_count(), p_max_tree, opts.eps_trunc, opts.n_max_cap);
    int limit = hint.capped
                    ? opts.n_max_cap
                    : std::min(opts.n_max_cap, next_pow2_at_least(static_cast<int>(hint.length)));

    int n_max = std::min(opts.n_max_cap, std::max(64, next_pow2_at_least(longest + 1)));
    std::vector<ReductionStep> trace;
    DelayDistribution dist = reduce_to_distribution(tree, n_max, trace);
    while (dist.tail_mass() > opts.eps_trunc && n_max < limit) {
        n_max = static_cast<int>(std::min<long long>(2LL * n_max, limit));
        dist = reduce_to_distribution(tree, n_max, trace);
    }
    double e = expectation(dist);
    return {std::move(dist), e, exact, std::move(trace), n_max};
}

EngineReport run_lifecd(const FailureGraph& g, NodeId source, double eps_trunc) {
    EngineOptions opts;
    opts.eps_trunc = eps_trunc;
    return run_lifecd(g, source, opts);
}

double golfar_bound(const FailureGraph& g, std::optional<NodeId> source) {
    double hops = source ? static_cast<double>(eccentricity(g, *source))
                         : static_cast<double>(diameter(g));
    return hops / (1.0 - g.max_failure_prob());
}

} // namespace lifecd
