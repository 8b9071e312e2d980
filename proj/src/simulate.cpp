#include "lifecd/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "lifecd/oracle.hpp"
#include "lifecd/parallel.hpp"
#include "lifecd/rng.hpp"

namespace lifecd {

EmpiricalResult monte_carlo(const FailureGraph& g, NodeId source, long long runs,
                            std::uint64_t seed, int threads, SimMode mode) {
    if (runs < 1) throw DomainError("runs must be positive");

    auto draw = mode == SimMode::InformedSet ? sample_convergence : sample_convergence_value_mode;
    std::vector<int> samples(static_cast<std::size_t>(runs), 0);
    parallel_for(
        static_cast<std::size_t>(runs),
        [&](std::size_t r) { samples[r] = draw(g, source, derive_seed(seed, r)); },
        threads);

    int max_t = *std::max_element(samples.begin(), samples.end());
    std::vector<double> pmf(static_cast<std::size_t>(std::max(1, max_t)) + 1, 0.0);
    double mean = 0.0;
    for (int s : samples) {
        pmf[static_cast<std::size_t>(s)] += 1.0;
        mean += s;
    }
    for (auto& v : pmf) v /= static_cast<double>(runs);
    mean /= static_cast<double>(runs);

    double var = 0.0;
    if (runs > 1) {
        for (int s : samples) var += (s - mean) * (s - mean);
        var /= static_cast<double>(runs - 1);
    }

    return {std::move(samples), seed,       runs,
            DelayDistribution::from_pmf(std::move(pmf)), mean, std::sqrt(var)};
}

std::vector<StudyPoint> convergence_study(const FailureGraph& g, NodeId source,
                                          std::span<const long long> run_counts,
                                          std::uint64_t seed) {
    if (run_counts.empty()) throw DomainError("run_counts must not be empty");
    std::vector<StudyPoint> out;
    out.reserve(run_counts.size());
    for (std::size_t i = 0; i < run_counts.size(); ++i) {
        // disjoint stream ids keep the per-R sample sets independent
        auto sub = monte_carlo(g, source, run_counts[i],
                               derive_seed(seed, 0x100000000ULL + i));
        out.push_back({sub.run_count, sub.sample_mean, sub.sample_std});
    }
    return out;
}

} // namespace lifecd
