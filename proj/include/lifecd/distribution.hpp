#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lifecd/errors.hpp"

namespace lifecd {

/// Probability distribution of a delay measured in whole rounds, truncated
/// to support {0, ..., n_max}. PMF and CDF are kept together; whatever mass
/// falls beyond n_max is tracked as tail_mass = 1 - cdf[n_max], never
/// renormalized away. Values are immutable once built.
class DelayDistribution {
  public:
    /// Rounds until the first success of a link that fails with probability p
    /// each round: pmf[k] = p^(k-1)(1-p) for k >= 1, cdf[k] = 1 - p^k.
    static DelayDistribution geometric(double p, int n_max);

    /// All mass at round k.
    static DelayDistribution point_mass(int k, int n_max);

    /// Adopts a pmf (index = round); cdf built by prefix sums. Entries must
    /// be nonnegative and sum to at most 1 (up to rounding).
    static DelayDistribution from_pmf(std::vector<double> pmf);

    int n_max() const { return static_cast<int>(pmf_.size()) - 1; }
    double pmf(int k) const { return pmf_[static_cast<std::size_t>(k)]; }
    double cdf(int k) const { return cdf_[static_cast<std::size_t>(k)]; }
    std::span<const double> pmf_values() const { return pmf_; }
    std::span<const double> cdf_values() const { return cdf_; }
    double tail_mass() const { return tail_; }

  private:
    DelayDistribution(std::vector<double> pmf, std::vector<double> cdf);

    std::vector<double> pmf_;
    std::vector<double> cdf_;
    double tail_ = 0.0;

    friend DelayDistribution sum(const DelayDistribution&, const DelayDistribution&);
    friend DelayDistribution max_combine(std::span<const DelayDistribution>);
};

/// Delay of two stages in sequence: discrete convolution of the PMFs,
/// truncated to the common n_max (mass pushed past the end accrues to
/// tail_mass). Both inputs must share one n_max.
DelayDistribution sum(const DelayDistribution& a, const DelayDistribution& b);

/// Slowest of several parallel stages: pointwise product of the CDFs,
/// PMF rebuilt by differencing. Throws EmptyList / LengthMismatch.
DelayDistribution max_combine(std::span<const DelayDistribution> ds);
DelayDistribution max_combine(const DelayDistribution& a, const DelayDistribution& b);

/// Mean number of rounds, computed over the truncated support; a lower
/// estimate whenever tail_mass > 0.
double expectation(const DelayDistribution& d);

/// Smallest k with cdf[k] >= tau, the round budget meeting confidence tau.
/// Throws TailTooHeavy when tau exceeds the captured mass.
int deadline_quantile(const DelayDistribution& d, double tau);

struct TruncationHint {
    std::int64_t length = 0;
    bool capped = false; // seed exceeded the cap and was clamped
};

/// Markov-inequality seed for the truncation length: ceil(n / ((1-p_max) eps)),
/// clamped to cap. A loose starting point; callers grow adaptively until
/// tail_mass <= eps.
TruncationHint truncation_length(int n, double p_max, double eps, std::int64_t cap);

/// Writes `k,pmf,cdf` rows for k = 0..n_max. Rows after the last k with
/// cdf < 1 - 1e-12 are elided (they carry no information).
void write_distribution_csv(std::ostream& os, const DelayDistribution& d);

} // namespace lifecd
