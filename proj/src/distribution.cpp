#include "lifecd/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace lifecd {

DelayDistribution::DelayDistribution(std::vector<double> pmf, std::vector<double> cdf)
    : pmf_(std::move(pmf)), cdf_(std::move(cdf)) {
    tail_ = std::max(0.0, 1.0 - cdf_.back());
}

DelayDistribution DelayDistribution::geometric(double p, int n_max) {
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("geometric requires p in [0,1)");
    if (n_max < 1) throw DomainError("n_max must be positive");
    std::vector<double> pmf(static_cast<std::size_t>(n_max) + 1, 0.0);
    std::vector<double> cdf(static_cast<std::size_t>(n_max) + 1, 0.0);
    // closed forms, not running sums, so both match the defining equations
    // to machine precision at every k
    double pk = 1.0; // p^k
    cdf[0] = 0.0;
    for (int k = 1; k <= n_max; ++k) {
        pmf[static_cast<std::size_t>(k)] = pk * (1.0 - p);
        pk *= p;
        cdf[static_cast<std::size_t>(k)] = 1.0 - pk;
    }
    return DelayDistribution(std::move(pmf), std::move(cdf));
}

DelayDistribution DelayDistribution::point_mass(int k, int n_max) {
    if (n_max < 1) throw DomainError("n_max must be positive");
    if (k < 0 || k > n_max) throw DomainError("point mass outside [0, n_max]");
    std::vector<double> pmf(static_cast<std::size_t>(n_max) + 1, 0.0);
    std::vector<double> cdf(static_cast<std::size_t>(n_max) + 1, 0.0);
    pmf[static_cast<std::size_t>(k)] = 1.0;
    for (int i = k; i <= n_max; ++i) cdf[static_cast<std::size_t>(i)] = 1.0;
    return DelayDistribution(std::move(pmf), std::move(cdf));
}

DelayDistribution DelayDistribution::from_pmf(std::vector<double> pmf) {
    if (pmf.empty()) throw DomainError("pmf must not be empty");
    std::vector<double> cdf(pmf.size());
    double run = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (!(pmf[k] >= 0.0)) throw DomainError("pmf entries must be nonnegative");
        run += pmf[k];
        cdf[k] = std::min(run, 1.0);
    }
    if (run > 1.0 + 1e-9) throw DomainError("pmf mass exceeds 1");
    return DelayDistribution(std::move(pmf), std::move(cdf));
}

DelayDistribution sum(const DelayDistribution& a, const DelayDistribution& b) {
    if (a.n_max() != b.n_max())
        throw LengthMismatch("sum requires equal truncation lengths");
    const int n = a.n_max();
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double ai = a.pmf(i);
        if (ai == 0.0) continue;
        for (int j = 0; j + i <= n; ++j) pmf[static_cast<std::size_t>(i + j)] += ai * b.pmf(j);
    }
    std::vector<double> cdf(pmf.size());
    double run = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        run += pmf[k];
        cdf[k] = std::min(run, 1.0);
    }
    return DelayDistribution(std::move(pmf), std::move(cdf));
}

DelayDistribution max_combine(std::span<const DelayDistribution> ds) {
    if (ds.empty()) throw EmptyList("max_combine over zero distributions");
    const int n = ds.front().n_max();
    for (const auto& d : ds)
        if (d.n_max() != n) throw LengthMismatch("max_combine requires equal truncation lengths");

    std::vector<double> cdf(static_cast<std::size_t>(n) + 1, 1.0);
    for (const auto& d : ds)
        for (int k = 0; k <= n; ++k) cdf[static_cast<std::size_t>(k)] *= d.cdf(k);

    std::vector<double> pmf(cdf.size(), 0.0);
    pmf[0] = cdf[0];
    for (int k = 1; k <= n; ++k)
        pmf[static_cast<std::size_t>(k)] =
            std::max(0.0, cdf[static_cast<std::size_t>(k)] - cdf[static_cast<std::size_t>(k - 1)]);
    return DelayDistribution(std::move(pmf), std::move(cdf));
}

DelayDistribution max_combine(const DelayDistribution& a, const DelayDistribution& b) {
    const DelayDistribution ds[] = {a, b};
    return max_combine(std::span<const DelayDistribution>(ds));
}

double expectation(const DelayDistribution& d) {
    double e = 0.0;
    for (int k = d.n_max(); k >= 1; --k) e += k * d.pmf(k); // small terms first
    return e;
}

int deadline_quantile(const DelayDistribution& d, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0,1)");
    if (d.cdf(d.n_max()) < tau)
        throw TailTooHeavy("tau = " + std::to_string(tau) +
                           " exceeds captured mass; extend the truncation length");
    // cdf is nondecreasing
    const auto& c = d.cdf_values();
    auto it = std::lower_bound(c.begin(), c.end(), tau);
    return static_cast<int>(it - c.begin());
}

TruncationHint truncation_length(int n, double p_max, double eps, std::int64_t cap) {
    if (n < 1) throw DomainError("n must be positive");
    if (!(p_max >= 0.0 && p_max < 1.0)) throw DomainError("p_max must lie in [0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
    if (cap < 1) throw DomainError("cap must be positive");
    double seed = std::ceil(static_cast<double>(n) / ((1.0 - p_max) * eps));
    if (seed > static_cast<double>(cap)) return {cap, true};
    return {static_cast<std::int64_t>(seed), false};
}

void write_distribution_csv(std::ostream& os, const DelayDistribution& d) {
    int last = d.n_max();
    for (int k = 0; k <= d.n_max(); ++k) {
        if (d.cdf(k) >= 1.0 - 1e-12) {
            last = k;
            break;
        }
    }
    os << "k,pmf,cdf\n";
    char buf[64];
    for (int k = 0; k <= last; ++k) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", k, d.pmf(k), d.cdf(k));
        os << buf;
    }
}

} // namespace lifecd
