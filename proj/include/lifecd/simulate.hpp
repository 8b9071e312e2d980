#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lifecd/distribution.hpp"
#include "lifecd/graph.hpp"

namespace lifecd {

/// Sample statistics from repeated protocol runs. The master seed plus the
/// run index determine every draw, so results reproduce exactly and are
/// independent of how runs were scheduled.
struct EmpiricalResult {
    std::vector<int> samples; // realized convergence times, run order
    std::uint64_t seed = 0;
    long long run_count = 0;
    DelayDistribution empirical; // pmf[k] = count(k)/R over 0..max(samples)
    double sample_mean = 0.0;
    double sample_std = 0.0; // unbiased; 0 when R = 1
};

/// Protocol dynamics to simulate. Both consume randomness identically, so
/// they produce the same samples; InformedSet tracks which nodes hold the
/// source value, ValueLevel runs the literal max update on real states.
enum class SimMode { InformedSet, ValueLevel };

/// `runs` independent convergence samples with per-run seeds derived from
/// the master seed. threads = 0 picks a budget from LIFECD_THREADS or the
/// hardware; the outcome does not depend on the choice.
EmpiricalResult monte_carlo(const FailureGraph& g, NodeId source, long long runs,
                            std::uint64_t seed, int threads = 0,
                            SimMode mode = SimMode::InformedSet);

struct StudyPoint {
    long long runs = 0;
    double mean = 0.0;
    double std_dev = 0.0;
};

/// Sample mean and deviation versus run count, one fresh stream per entry.
std::vector<StudyPoint> convergence_study(const FailureGraph& g, NodeId source,
                                          std::span<const long long> run_counts,
                                          std::uint64_t seed);

} // namespace lifecd
