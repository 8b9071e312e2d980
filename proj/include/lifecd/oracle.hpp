#pragma once

#include <cstdint>

#include "lifecd/distribution.hpp"
#include "lifecd/graph.hpp"

namespace lifecd {

/// Ground-truth convergence-time distribution by forward propagation of the
/// informed-set Markov chain: states are subsets of nodes holding the source
/// value, each round every boundary edge succeeds independently with
/// probability 1-p, and an uninformed node joins when any incident boundary
/// edge succeeds. Exact for any topology; state space 2^n, so n <= 20.
///
/// pmf[k] = Pr(every node informed for the first time at round k); mass past
/// `horizon` is reported as tail_mass. One Bernoulli variable per edge per
/// round, shared by both directions.
DelayDistribution exact_distribution(const FailureGraph& g, NodeId source, int horizon);

/// One realized convergence time by direct simulation of informed-set growth.
/// Each round draws one uniform per edge in a fixed order, so a seed fully
/// determines the result.
int sample_convergence(const FailureGraph& g, NodeId source, std::uint64_t rng_seed);

/// Same protocol simulated at the value level (every node keeps a real state
/// and takes the max over itself and neighbors with surviving links). Draws
/// randomness identically to sample_convergence, so equal seeds give equal
/// results; exists to pin the protocol semantics down in tests.
int sample_convergence_value_mode(const FailureGraph& g, NodeId source, std::uint64_t rng_seed);

} // namespace lifecd
