#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string tmp_file(const char* tag) {
    static int counter = 0;
    return std::string("/tmp/lifecd_cli_test_") + tag + "_" + std::to_string(counter++);
}

CmdResult run_cli(const std::string& args) {
    std::string out_path = tmp_file("out"), err_path = tmp_file("err");
    std::string cmd =
        std::string(LIFECD_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    int rc = std::system(cmd.c_str());
    CmdResult res;
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

std::string data(const char* name) { return std::string(LIFECD_DATA_DIR) + "/" + name; }

std::string write_graph(const char* tag, const std::string& body) {
    std::string path = tmp_file(tag);
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("compute on the acyclic example") {
    CmdResult r = run_cli("compute --graph " + data("fig3b.csv") + " --source 1");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("k,pmf,cdf\n", 0) == 0);
    CHECK(r.err.find("E[Z]=3.762") != std::string::npos);
    CHECK(r.err.find("exact=yes") != std::string::npos);
}

TEST_CASE("compute summary carries both bounds on the cyclic example") {
    std::string g = write_graph("fig2a90", "1,2,0.05\n2,3,0.20\n2,4,0.20\n4,5,0.30\n3,5,0.90\n");
    CmdResult r = run_cli("compute --graph " + g + " --source 1");
    CHECK(r.status == 0);
    CHECK(r.err.find("golfar=30") != std::string::npos);
    CHECK(r.err.find("E[Z]=3.762") != std::string::npos);
    CHECK(r.err.find("exact=no") != std::string::npos);
    std::remove(g.c_str());
}

TEST_CASE("compute --trace logs the reduction") {
    CmdResult r = run_cli("compute --graph " + data("fig3b.csv") + " --source 1 --trace");
    CHECK(r.status == 0);
    CHECK(r.err.find("unicast") != std::string::npos);
    CHECK(r.err.find("broadcast") != std::string::npos);
    CHECK(r.err.find("final-sum") != std::string::npos);
}

TEST_CASE("trivial single-node network") {
    std::string g = write_graph("trivial", "# no links\n");
    CmdResult r = run_cli("compute --graph " + g + " --source 1");
    CHECK(r.status == 0);
    CHECK(r.err.find("trivial network") != std::string::npos);
    CHECK(r.out.find("0,1,1") != std::string::npos); // point mass at round 0
    std::remove(g.c_str());
}

TEST_CASE("exit codes") {
    CHECK(run_cli("compute --graph /nonexistent.csv --source 1").status == 3);
    CHECK(run_cli("compute --source 1").status == 2);             // missing --graph
    CHECK(run_cli("frobnicate").status == 2);                     // unknown subcommand
    std::string bad = write_graph("badp", "1,2,1.5\n");
    CHECK(run_cli("compute --graph " + bad + " --source 1").status == 3);
    std::remove(bad.c_str());
    std::string g = write_graph("sweepbad", "1,2,0.5\n2,3,0.5\n");
    CHECK(run_cli("sweep --graph " + g + " --source 1 --sweep 1-3:0.1:0.9:0.1").status == 3);
    CHECK(run_cli("sweep --graph " + g + " --source 1 --sweep nonsense").status == 2);
    std::remove(g.c_str());
}

TEST_CASE("deadline query") {
    std::string g = write_graph("deadline", "1,2,0.5\n");
    CmdResult r = run_cli("deadline --graph " + g + " --source 1 --tau 0.9");
    CHECK(r.status == 0);
    CHECK(r.out == "4\n");
    std::remove(g.c_str());
}

TEST_CASE("numeric failures exit with code 4") {
    std::string g = write_graph("heavy", "1,2,0.9\n");
    // cdf[16] = 1 - 0.9^16 ~ 0.815, far short of tau
    CmdResult r = run_cli("deadline --graph " + g + " --source 1 --tau 0.99 --nmax-cap 16");
    CHECK(r.status == 4);
    // tail mass cannot reach eps within the cap
    CmdResult r2 = run_cli("compute --graph " + g + " --source 1 --eps 1e-9 --nmax-cap 16");
    CHECK(r2.status == 4);
    std::remove(g.c_str());
}

TEST_CASE("value-mode simulation matches informed-set growth sample for sample") {
    std::string out_a = tmp_file("seta"), out_b = tmp_file("setb");
    std::string base = "simulate --graph " + data("fig3b.csv") + " --source 1 --runs 400 --seed 5";
    CHECK(run_cli(base + " --out " + out_a).status == 0);
    CHECK(run_cli(base + " --value-mode --out " + out_b).status == 0);
    CHECK(slurp(out_a) == slurp(out_b));
    for (const auto& p : {out_a, out_b}) {
        std::remove(p.c_str());
        std::remove((p + ".meta.json").c_str());
    }
}

TEST_CASE("simulate emits CSV plus a JSON sidecar") {
    std::string out = tmp_file("simcsv");
    CmdResult r = run_cli("simulate --graph " + data("fig3b.csv") +
                          " --source 1 --runs 200 --seed 7 --out " + out);
    CHECK(r.status == 0);
    std::string csv = slurp(out);
    CHECK(csv.rfind("k,pmf,cdf\n", 0) == 0);
    std::string meta = slurp(out + ".meta.json");
    CHECK(meta.find("\"generator_id\"") != std::string::npos);
    CHECK(meta.find("splitmix64-mt19937_64") != std::string::npos);
    CHECK(meta.find("\"seed\": 7") != std::string::npos);
    CHECK(meta.find("\"runs\": 200") != std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".meta.json").c_str());
}

TEST_CASE("compare merges the analytic and simulated columns") {
    CmdResult r = run_cli("compare --graph " + data("fig3b.csv") +
                          " --source 1 --runs 300 --seed 11");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("k,pmf_calc,cdf_calc,pmf_sim,cdf_sim\n", 0) == 0);
}

TEST_CASE("oracle subcommand") {
    CmdResult r = run_cli("oracle --graph " + data("fig3b.csv") + " --source 1");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("k,pmf,cdf\n", 0) == 0);
    CHECK(r.err.find("E=3.762") != std::string::npos);
}

TEST_CASE("sweep output shape") {
    CmdResult r = run_cli("sweep --graph " + data("fig2a.csv") +
                          " --source 1 --sweep 3-5:0.2:0.4:0.1 --runs 50 --seed 2");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("p,calc,sim,golfar\n", 0) == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 4); // header + 3 points
}
