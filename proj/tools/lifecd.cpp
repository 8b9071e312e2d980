// Command-line front end: analytic convergence-time distributions, Monte
// Carlo simulation, bound comparison, deadline queries, and plot-ready CSVs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lifecd/engine.hpp"
#include "lifecd/graph.hpp"
#include "lifecd/oracle.hpp"
#include "lifecd/parallel.hpp"
#include "lifecd/rng.hpp"
#include "lifecd/simulate.hpp"

namespace {

using namespace lifecd;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumeric = 4;

struct RunConfig {
    std::string graph_path;
    NodeId source = 1;
    double eps_trunc = 1e-6;
    int n_max_cap = 1 << 20;
    long long runs = 5000;
    std::uint64_t seed = 0;
    double deadline_tau = 0.0;
    std::string sweep_spec;
    std::string out_path;
    bool trace = false;
    bool value_mode = false; // simulate the literal value-level update rule
    int horizon = 0;         // oracle only; 0 = match the engine
};

FailureGraph load_graph(const RunConfig& cfg) {
    std::ifstream in(cfg.graph_path, std::ios::binary);
    if (!in) throw ParseError("cannot open graph file: " + cfg.graph_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

/// Output sink: --out path or stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ParseError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Last row worth printing: first k with cdf within 1e-12 of 1.
int last_row(const DelayDistribution& d) {
    for (int k = 0; k <= d.n_max(); ++k)
        if (d.cdf(k) >= 1.0 - 1e-12) return k;
    return d.n_max();
}

const char* op_name(ReduceOp op) {
    switch (op) {
    case ReduceOp::Unicast: return "unicast";
    case ReduceOp::Broadcast: return "broadcast";
    case ReduceOp::FinalSum: return "final-sum";
    case ReduceOp::FinalMax: return "final-max";
    }
    return "?";
}

void print_trace(const EngineReport& report) {
    int step = 0;
    for (const auto& s : report.reduction_trace) {
        std::cerr << "step " << ++step << ": " << op_name(s.op) << "  path_len=" << s.path_length
                  << "  parent=" << s.parent << "  children=[";
        for (std::size_t i = 0; i < s.children.size(); ++i)
            std::cerr << (i ? "," : "") << s.children[i];
        std::cerr << "]\n";
    }
}

void print_engine_summary(const FailureGraph& g, const RunConfig& cfg, const EngineReport& r) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "E[Z]=%.6g exact=%s tail_mass=%.3g golfar=%.6g n_max=%d\n", r.expected_value,
                  r.exact ? "yes" : "no", r.distribution.tail_mass(),
                  golfar_bound(g, cfg.source), r.n_max);
    std::cerr << line;
}

int check_tail(const RunConfig& cfg, const EngineReport& r) {
    if (r.distribution.tail_mass() > cfg.eps_trunc) {
        std::cerr << "error: tail mass " << fmt(r.distribution.tail_mass())
                  << " still exceeds eps at the n_max cap (" << cfg.n_max_cap << ")\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_compute(const RunConfig& cfg) {
    FailureGraph g = load_graph(cfg);
    if (g.node_count() == 1) std::cerr << "warning: trivial network (single node)\n";
    EngineReport report = run_lifecd(g, cfg.source, {cfg.eps_trunc, cfg.n_max_cap});
    if (cfg.trace) print_trace(report);
    print_engine_summary(g, cfg, report);
    Sink sink(cfg.out_path);
    write_distribution_csv(sink.stream(), report.distribution);
    return check_tail(cfg, report);
}

int cmd_simulate(const RunConfig& cfg) {
    FailureGraph g = load_graph(cfg);
    EmpiricalResult res = monte_carlo(g, cfg.source, cfg.runs, cfg.seed, 0,
                                      cfg.value_mode ? SimMode::ValueLevel
                                                     : SimMode::InformedSet);

    nlohmann::json meta{{"seed", res.seed},
                        {"runs", res.run_count},
                        {"generator_id", kGeneratorId},
                        {"mean", res.sample_mean},
                        {"std", res.sample_std}};
    Sink sink(cfg.out_path);
    write_distribution_csv(sink.stream(), res.empirical);
    if (!cfg.out_path.empty()) {
        std::ofstream mf(cfg.out_path + ".meta.json", std::ios::binary | std::ios::trunc);
        mf << meta.dump(2) << "\n";
    }
    std::cerr << meta.dump() << "\n";
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
    FailureGraph g = load_graph(cfg);
    EngineReport report = run_lifecd(g, cfg.source, {cfg.eps_trunc, cfg.n_max_cap});
    EmpiricalResult sim = monte_carlo(g, cfg.source, cfg.runs, cfg.seed);
    print_engine_summary(g, cfg, report);

    const auto& calc = report.distribution;
    const auto& emp = sim.empirical;
    int rows = std::max(last_row(calc), emp.n_max());

    Sink sink(cfg.out_path);
    auto& os = sink.stream();
    os << "k,pmf_calc,cdf_calc,pmf_sim,cdf_sim\n";
    for (int k = 0; k <= rows; ++k) {
        double pc = k <= calc.n_max() ? calc.pmf(k) : 0.0;
        double cc = k <= calc.n_max() ? calc.cdf(k) : calc.cdf(calc.n_max());
        double ps = k <= emp.n_max() ? emp.pmf(k) : 0.0;
        double cs = k <= emp.n_max() ? emp.cdf(k) : emp.cdf(emp.n_max());
        os << k << ',' << fmt(pc) << ',' << fmt(cc) << ',' << fmt(ps) << ',' << fmt(cs) << '\n';
    }
    return check_tail(cfg, report);
}

struct SweepSpec {
    NodeId i = 0, j = 0;
    double start = 0, stop = 0, step = 0;
};

SweepSpec parse_sweep(const std::string& spec) {
    SweepSpec s;
    char dash = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream iss(spec);
    if (!(iss >> s.i >> dash >> s.j >> c1 >> s.start >> c2 >> s.stop >> c3 >> s.step) ||
        dash != '-' || c1 != ':' || c2 != ':' || c3 != ':' || !(iss >> std::ws).eof())
        throw CLI::ValidationError("--sweep", "expected I-J:START:STOP:STEP");
    if (!(s.step > 0.0)) throw CLI::ValidationError("--sweep", "step must be > 0");
    if (!(s.stop < 1.0)) throw CLI::ValidationError("--sweep", "stop must be < 1");
    if (!(s.start >= 0.0 && s.start <= s.stop))
        throw CLI::ValidationError("--sweep", "need 0 <= start <= stop");
    return s;
}

int cmd_sweep(const RunConfig& cfg) {
    FailureGraph g = load_graph(cfg);
    SweepSpec s = parse_sweep(cfg.sweep_spec);
    g.failure_prob(s.i, s.j); // throws UnknownEdge early

    std::vector<double> points;
    for (int idx = 0;; ++idx) {
        double p = s.start + idx * s.step;
        if (p > s.stop + 1e-12) break;
        points.push_back(std::min(p, s.stop));
    }

    struct Row {
        double p, calc, sim, golfar;
        bool tail_ok;
    };
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), [&](std::size_t idx) {
        FailureGraph gp = g.with_edge_prob(s.i, s.j, points[idx]);
        EngineReport rep = run_lifecd(gp, cfg.source, {cfg.eps_trunc, cfg.n_max_cap});
        EmpiricalResult sim = monte_carlo(gp, cfg.source, cfg.runs, derive_seed(cfg.seed, idx), 1);
        rows[idx] = {points[idx], rep.expected_value, sim.sample_mean,
                     golfar_bound(gp, cfg.source),
                     rep.distribution.tail_mass() <= cfg.eps_trunc};
    });

    Sink sink(cfg.out_path);
    auto& os = sink.stream();
    os << "p,calc,sim,golfar\n";
    bool all_ok = true;
    for (const auto& r : rows) {
        os << fmt(r.p) << ',' << fmt(r.calc) << ',' << fmt(r.sim) << ',' << fmt(r.golfar) << '\n';
        all_ok = all_ok && r.tail_ok;
    }
    if (!all_ok) {
        std::cerr << "error: tail mass exceeded eps at the n_max cap for some sweep points\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_deadline(const RunConfig& cfg) {
    FailureGraph g = load_graph(cfg);
    EngineReport report = run_lifecd(g, cfg.source, {cfg.eps_trunc, cfg.n_max_cap});
    print_engine_summary(g, cfg, report);
    int k_star = deadline_quantile(report.distribution, cfg.deadline_tau);
    std::cout << k_star << "\n";
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg) {
    FailureGraph g = load_graph(cfg);
    int horizon = cfg.horizon;
    if (horizon <= 0)
        horizon = run_lifecd(g, cfg.source, {cfg.eps_trunc, cfg.n_max_cap}).n_max;
    DelayDistribution d = exact_distribution(g, cfg.source, horizon);
    char line[128];
    std::snprintf(line, sizeof line, "E=%.6g tail_mass=%.3g horizon=%d\n", expectation(d),
                  d.tail_mass(), horizon);
    std::cerr << line;
    Sink sink(cfg.out_path);
    write_distribution_csv(sink.stream(), d);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convergence-time distributions for max-consensus under Bernoulli link failures"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_source = true) {
        sub->add_option("--graph", cfg.graph_path, "edge-list file (`i,j,p` per line)")->required();
        sub->add_option("--source", cfg.source, "source node id (1-based)")
            ->required(needs_source);
        sub->add_option("--eps", cfg.eps_trunc, "truncation tail tolerance")
            ->capture_default_str()
            ->check(CLI::Range(1e-15, 0.5));
        sub->add_option("--nmax-cap", cfg.n_max_cap, "hard cap on the truncation length")
            ->capture_default_str()
            ->check(CLI::Range(1, 1 << 26));
        sub->add_option("--out", cfg.out_path, "write CSV here instead of stdout");
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--runs", cfg.runs, "Monte Carlo run count")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "master seed; all randomness derives from it")
            ->capture_default_str();
    };

    auto* compute = app.add_subcommand("compute", "analytic PMF/CDF of the convergence time");
    add_common(compute);
    compute->add_flag("--trace", cfg.trace, "log each reduction step");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo empirical PMF/CDF");
    add_common(simulate);
    add_sim(simulate);
    simulate->add_flag("--value-mode", cfg.value_mode,
                       "run the literal value-level update rule instead of informed-set growth");

    auto* compare = app.add_subcommand("compare", "merged analytic vs simulated CSV");
    add_common(compare);
    add_sim(compare);

    auto* sweep = app.add_subcommand("sweep", "expected value over one edge's failure probability");
    add_common(sweep);
    add_sim(sweep);
    sweep->add_option("--sweep", cfg.sweep_spec, "I-J:START:STOP:STEP, e.g. 4-5:0.01:0.99:0.02")
        ->required();

    auto* deadline = app.add_subcommand("deadline", "smallest k with P(Z <= k) >= tau");
    add_common(deadline);
    deadline->add_option("--tau", cfg.deadline_tau, "confidence level in (0,1)")
        ->required()
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));

    auto* oracle = app.add_subcommand("oracle", "exact small-network distribution (n <= 20)");
    add_common(oracle);
    oracle->add_option("--horizon", cfg.horizon, "rounds to propagate (default: engine n_max)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*compute) return cmd_compute(cfg);
        if (*simulate) return cmd_simulate(cfg);
        if (*compare) return cmd_compare(cfg);
        if (*sweep) return cmd_sweep(cfg);
        if (*deadline) return cmd_deadline(cfg);
        if (*oracle) return cmd_oracle(cfg);
    } catch (const CLI::ParseError& e) { // late flag validation (e.g. --sweep format)
        app.exit(e);
        return kExitUsage;
    } catch (const TailTooHeavy& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
