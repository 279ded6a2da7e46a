#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sirnet/commands.hpp"

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SIRNET_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("theory subcommand reports critical coverages") {
    const std::string out = "/tmp/sirnet_cli_theory.csv";
    CHECK(run_cli("theory --dist poisson:lambda=6 --p 0.5 --strategies all --out " + out) == 0);
    const auto text = slurp(out);
    CHECK(text.find("strategy,param,v,R,pi_tilde,pi,tau,residual\n") != std::string::npos);
    CHECK(text.find("# vc,uniform,0.666666666663\n") != std::string::npos);
    CHECK(text.find("# vc,acq,0.560644703304\n") != std::string::npos);
    CHECK(text.find("# vc,e1,0.554679514931\n") != std::string::npos);
    CHECK(text.find("# vc,e2,0.605510097989\n") != std::string::npos);
}

TEST_CASE("theory subcommand walks a coverage grid") {
    const std::string out = "/tmp/sirnet_cli_grid.csv";
    CHECK(run_cli("theory --dist poisson:lambda=6 --p 0.5 --strategies uniform,e2 "
                  "--grid 0.15:0.45:0.15 --out " + out) == 0);
    const auto text = slurp(out);
    CHECK(text.find("uniform,0.3,0.3,") != std::string::npos);
    CHECK(text.find("0.822064868205") != std::string::npos); // tau at uniform v=0.3
    CHECK(text.find("0.789903659701") != std::string::npos); // tau at e2 v=0.3
    int rows = 0;
    for (const auto& line : lines_of(text))
        if (line.rfind("uniform,", 0) == 0 || line.rfind("e2,", 0) == 0) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("simulate output is byte-identical across reruns") {
    const std::string a = "/tmp/sirnet_cli_sim_a.csv";
    const std::string args = "simulate --dist poisson:lambda=6 --p 0.5 "
                             "--strategy uniform:v=0.3 --n 2000 --replicates 10 --seed 42 --out ";
    CHECK(run_cli(args + a) == 0);
    const auto text = slurp(a);
    CHECK(run_cli(args + a) == 0);
    CHECK(text == slurp(a));
    CHECK(text.rfind("# config,", 0) == 0);
    CHECK(text.find("replicate,seed,n,n_unvacc,V,final_size,fraction,major\n") !=
          std::string::npos);
    CHECK(lines_of(text).size() == 2 + 10 + 1); // config + header + rows + pmajor footer
}

TEST_CASE("subcritical runs report no major outbreaks") {
    const std::string out = "/tmp/sirnet_cli_sub.csv";
    CHECK(run_cli("simulate --dist poisson:lambda=6 --p 0.1 --n 5000 --replicates 5 "
                  "--seed 7 --out " + out) == 0);
    const auto text = slurp(out);
    CHECK(text.find("# pmajor,0,tauhat,NA\n") != std::string::npos);
}

TEST_CASE("sweep with zero replicates is theory-only") {
    const std::string out = "/tmp/sirnet_cli_sweep.csv";
    CHECK(run_cli("sweep --dist poisson:lambda=6 --p 0.5 --strategies uniform "
                  "--grid 0.3:0.3:0.1 --replicates 0 --n 1000 --out " + out) == 0);
    const auto text = slurp(out);
    CHECK(text.find("strategy,v,tau_theory,tau_hat,p_major,gap\n") != std::string::npos);
    CHECK(text.find("uniform,0.3,0.822064868205,NA,NA,NA\n") != std::string::npos);
}

TEST_CASE("generate emits a simple two-regular graph") {
    const std::string pm2 = "/tmp/sirnet_cli_pm2.csv";
    {
        std::ofstream f(pm2);
        f << "degree,probability\n2,1\n";
    }
    const std::string out = "/tmp/sirnet_cli_gen.csv";
    CHECK(run_cli("generate --dist explicit:path=" + pm2 + " --n 10 --seed 3 --out " + out) == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 12); // config + header + 10 edges
    CHECK(lines[1] == "u,v");
    std::map<int, int> degree;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        int u = -1, v = -1;
        char comma = 0;
        std::istringstream row(lines[i]);
        row >> u >> comma >> v;
        REQUIRE(comma == ',');
        CHECK(u != v); // simple: no loops
        CHECK(0 <= u);
        CHECK(u < 10);
        CHECK(0 <= v);
        CHECK(v < 10);
        degree[u] += 1;
        degree[v] += 1;
    }
    for (const auto& [v, d] : degree) CHECK(d == 2);
    CHECK(degree.size() == 10);
}

TEST_CASE("exit codes distinguish failure modes") {
    CHECK(run_cli("--help > /dev/null") == 0);
    CHECK(run_cli("simulate --dist poisson:lambda=6 --p 1.5 --replicates 1") == 2);
    CHECK(run_cli("simulate --replicates 1") == 2);   // missing required --dist
    CHECK(run_cli("bogus-subcommand") == 2);
    CHECK(run_cli("theory --dist poisson:lambda=0 --strategies all") == 2); // bad distribution

    // an impossible simple graph exhausts its rejection budget
    const std::string pm2 = "/tmp/sirnet_cli_pm2.csv";
    {
        std::ofstream f(pm2);
        f << "degree,probability\n2,1\n";
    }
    CHECK(run_cli("generate --dist explicit:path=" + pm2 +
                  " --n 1 --max-attempts 20 --out /tmp/sirnet_cli_fail.csv") == 4);
}

TEST_CASE("config lines round-trip through their own parser") {
    sirnet::RunConfig cfg;
    cfg.command = "simulate";
    cfg.dist = "poisson:lambda=6";
    cfg.p = 0.5;
    cfg.strategy = "e1:alpha=0.7";
    cfg.n = 5000;
    cfg.replicates = 20;
    cfg.seed = 9;
    cfg.threshold = "abs:100";
    cfg.graph_model = "simple";
    cfg.max_attempts = 77;
    cfg.out = "with space, comma.csv";
    const auto parsed = sirnet::RunConfig::from_config_line(cfg.config_line());
    CHECK(parsed == cfg);

    sirnet::RunConfig th;
    th.command = "theory";
    th.dist = "powerlaw:exp=3.5,dmax=200,mean=6";
    th.p = 0.5;
    th.strategies = {"uniform", "acq"};
    th.grid = sirnet::GridSpec{0.1, 0.9, 0.05};
    const auto parsed_th = sirnet::RunConfig::from_config_line(th.config_line());
    CHECK(parsed_th == th);

    CHECK_THROWS_AS(sirnet::RunConfig::from_config_line("not a config"),
                    std::invalid_argument);
}
