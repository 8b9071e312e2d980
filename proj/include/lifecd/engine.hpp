#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lifecd/distribution.hpp"
#include "lifecd/graph.hpp"
#include "lifecd/spanning_tree.hpp"

namespace lifecd {

enum class ReduceOp { Unicast, Broadcast, FinalSum, FinalMax };

/// One applied reduction, enough to replay or pretty-print the run.
struct ReductionStep {
    ReduceOp op;
    NodeId parent = 0;            // group parent q
    std::vector<NodeId> children; // reduced carrier nodes under q
    int path_length = 0;          // root-to-carrier length when applied
};

/// Working state of the iterative reduction. leaf_dists maps each active
/// carrier node to the delay of its already-merged subtree, measured from
/// the carrier's parent; keys always equal critical.leaf_nodes.
struct ReductionState {
    SpanningTree tree;
    CriticalPathSet critical;
    std::map<NodeId, DelayDistribution> leaf_dists;
    int n_max = 0;
};

/// Phase 2: geometric distributions at the tree leaves.
ReductionState init_reduction(const SpanningTree& tree, int n_max);

enum class TerminalShape { NotTerminal, FinalSum, FinalMax };

/// Phase-4 test: FinalSum when a single path of two edges remains, FinalMax
/// when every remaining carrier hangs directly off the root.
TerminalShape terminal_shape(const ReductionState& state);

/// Phase 3, one pass: reduces every longest-path group, unicast (convolve
/// with the parent edge) for singleton groups and broadcast (CDF product)
/// otherwise. Steps are appended to *trace when given.
ReductionState reduce_once(const ReductionState& state, std::vector<ReductionStep>* trace = nullptr);

/// Phase 4: the final sum or max. Throws NotTerminal unless terminal_shape
/// says otherwise.
DelayDistribution finalize(const ReductionState& state, std::vector<ReductionStep>* trace = nullptr);

struct EngineOptions {
    double eps_trunc = 1e-6;
    int n_max_cap = 1 << 20;
};

struct EngineReport {
    DelayDistribution distribution;
    double expected_value = 0.0;
    bool exact = false; // input graph was acyclic
    std::vector<ReductionStep> reduction_trace;
    int n_max = 0; // truncation length of the returned distribution
};

/// Runs the full pipeline: spanning tree, leaf initialization, iterative
/// reduction, final composition. Exact on acyclic graphs; on cyclic graphs
/// the result stochastically dominates the true convergence time (an upper
/// bound). The truncation length doubles until tail_mass <= eps_trunc or
/// the cap is hit.
EngineReport run_lifecd(const FailureGraph& g, NodeId source, const EngineOptions& opts = {});
EngineReport run_lifecd(const FailureGraph& g, NodeId source, double eps_trunc);

/// Prior-work baseline on the expected convergence time: e(source)/(1-p_max),
/// or D/(1-p_max) when no source is given.
double golfar_bound(const FailureGraph& g, std::optional<NodeId> source = std::nullopt);

} // namespace lifecd
