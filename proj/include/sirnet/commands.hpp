#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sirnet {

struct GridSpec {
    double lo = 0.0, hi = 0.0, step = 0.0;

    bool empty() const { return step <= 0.0; }
    std::vector<double> points() const;
    static GridSpec parse(const std::string& text); // "lo:hi:step"
    std::string to_string() const;
    bool operator==(const GridSpec&) const = default;
};

// Everything a subcommand needs, parseable back from the `# config,...`
// comment each output file starts with.
struct RunConfig {
    std::string command;
    std::string dist;
    double p = 0.5;
    std::string strategy = "none";       // single strategy spec (simulate)
    std::vector<std::string> strategies; // strategy names (theory, sweep)
    std::int64_t n = 10000;
    std::int64_t replicates = 0;
    std::uint64_t seed = 1;
    std::string threshold = "pow23";
    std::string graph_model = "multigraph";
    std::int64_t max_attempts = 10000;
    GridSpec grid;
    std::string out;

    std::string config_line() const;
    static RunConfig from_config_line(const std::string& line);
    bool operator==(const RunConfig&) const = default;
};

std::string csv_quote(const std::string& field);
std::vector<std::string> split_csv_line(const std::string& line);

void cmd_theory(const RunConfig& cfg, std::ostream& out);
void cmd_simulate(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_generate(const RunConfig& cfg, std::ostream& out);

// Dispatch on cfg.command; exceptions map to the documented exit codes.
void run_command(const RunConfig& cfg, std::ostream& out);

} // namespace sirnet
