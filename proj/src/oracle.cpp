#include "lifecd/oracle.hpp"

#include <algorithm>
#include <vector>

#include "lifecd/rng.hpp"

namespace lifecd {

DelayDistribution exact_distribution(const FailureGraph& g, NodeId source, int horizon) {
    const NodeId n = g.node_count();
    if (n > 20) throw TooLarge("exact informed-set chain limited to 20 nodes");
    if (source < 1 || source > n)
        throw ValidationError("source node out of range");
    if (horizon < 1) throw DomainError("horizon must be positive");

    const std::uint32_t full = (1u << n) - 1;
    const std::uint32_t start = 1u << (source - 1);

    std::vector<double> pi(static_cast<std::size_t>(full) + 1, 0.0);
    pi[start] = 1.0;

    std::vector<double> pmf(static_cast<std::size_t>(horizon) + 1, 0.0);
    if (start == full) pmf[0] = 1.0; // single node: converged at round 0

    std::vector<double> next(pi.size());
    std::vector<NodeId> frontier;
    std::vector<double> stay;
    double absorbed = pi[full];

    for (int k = 1; k <= horizon && absorbed < 1.0; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        next[full] = pi[full];
        for (std::uint32_t s = start; s <= full; ++s) {
            double mass = pi[s];
            if (mass == 0.0 || s == full) continue;
            if (!(s & start)) continue; // unreachable: source always informed

            // stay[i] = probability node frontier[i] hears nothing this round
            frontier.clear();
            stay.clear();
            for (NodeId v = 1; v <= n; ++v) {
                if (s & (1u << (v - 1))) continue;
                double q = 1.0;
                bool adjacent = false;
                for (auto [w, p] : g.neighbors(v)) {
                    if (s & (1u << (w - 1))) {
                        adjacent = true;
                        q *= p;
                    }
                }
                if (adjacent) {
                    frontier.push_back(v);
                    stay.push_back(q);
                }
            }
            // boundary edges touch exactly one uninformed node, so the
            // frontier nodes' outcomes are independent
            const std::uint32_t m = 1u << frontier.size();
            for (std::uint32_t joins = 0; joins < m; ++joins) {
                double prob = mass;
                std::uint32_t s2 = s;
                for (std::size_t i = 0; i < frontier.size(); ++i) {
                    if (joins & (1u << i)) {
                        prob *= 1.0 - stay[i];
                        s2 |= 1u << (frontier[i] - 1);
                    } else {
                        prob *= stay[i];
                    }
                }
                if (prob != 0.0) next[s2] += prob;
            }
        }
        pi.swap(next);
        pmf[static_cast<std::size_t>(k)] = pi[full] - absorbed;
        absorbed = pi[full];
    }
    return DelayDistribution::from_pmf(std::move(pmf));
}

namespace {

template <typename Update>
int run_rounds(const FailureGraph& g, std::uint64_t seed, Update&& update_round) {
    std::mt19937_64 rng(seed);
    const auto& edges = g.edges();
    std::vector<char> active(edges.size());
    int t = 0;
    for (;;) {
        // one shared Bernoulli per edge per round, fixed edge order
        for (std::size_t e = 0; e < edges.size(); ++e)
            active[e] = uniform01(rng) >= edges[e].p;
        ++t;
        if (update_round(active)) return t;
    }
}

} // namespace

int sample_convergence(const FailureGraph& g, NodeId source, std::uint64_t rng_seed) {
    const NodeId n = g.node_count();
    if (source < 1 || source > n) throw ValidationError("source node out of range");
    if (n == 1) return 0;

    std::vector<char> informed(static_cast<std::size_t>(n) + 1, 0);
    informed[static_cast<std::size_t>(source)] = 1;
    NodeId count = 1;
    const auto& edges = g.edges();

    return run_rounds(g, rng_seed, [&](const std::vector<char>& active) {
        // synchronous update: membership fixed at round start
        std::vector<NodeId> newly;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!active[e]) continue;
            bool ia = informed[static_cast<std::size_t>(edges[e].a)];
            bool ib = informed[static_cast<std::size_t>(edges[e].b)];
            if (ia != ib) newly.push_back(ia ? edges[e].b : edges[e].a);
        }
        for (NodeId v : newly) {
            if (!informed[static_cast<std::size_t>(v)]) {
                informed[static_cast<std::size_t>(v)] = 1;
                ++count;
            }
        }
        return count == n;
    });
}

int sample_convergence_value_mode(const FailureGraph& g, NodeId source, std::uint64_t rng_seed) {
    const NodeId n = g.node_count();
    if (source < 1 || source > n) throw ValidationError("source node out of range");
    if (n == 1) return 0;

    // source holds the unique maximum; the rest are distinct smaller values
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (NodeId v = 1; v <= n; ++v) x[static_cast<std::size_t>(v)] = -static_cast<double>(v);
    x[static_cast<std::size_t>(source)] = 1.0;
    const double x_star = 1.0;
    const auto& edges = g.edges();

    return run_rounds(g, rng_seed, [&](const std::vector<char>& active) {
        std::vector<double> next = x;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!active[e]) continue;
            auto a = static_cast<std::size_t>(edges[e].a);
            auto b = static_cast<std::size_t>(edges[e].b);
            next[a] = std::max(next[a], x[b]);
            next[b] = std::max(next[b], x[a]);
        }
        x.swap(next);
        for (NodeId v = 1; v <= n; ++v)
            if (x[static_cast<std::size_t>(v)] != x_star) return false;
        return true;
    });
}

} // namespace lifecd
