#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sirnet/degree_dist.hpp"
#include "sirnet/graph.hpp"
#include "sirnet/rng.hpp"
#include "sirnet/vaccine.hpp"

namespace sirnet {

// Major/minor outbreak cut. The default declares an outbreak major once it
// reaches n^(2/3) of the unvaccinated population, the scale separating small
// components from the giant one.
struct ThresholdPolicy {
    enum class Kind { power23, absolute, fraction };
    Kind kind = Kind::power23;
    double value = 0.0; // count for absolute, fraction of unvaccinated for fraction

    std::int64_t threshold(std::int64_t n_unvacc) const;
    static ThresholdPolicy parse(const std::string& text); // "pow23" | "abs:<K>" | "frac:<x>"
    std::string to_string() const;
};

enum class GraphModel { multigraph, simple };
GraphModel parse_graph_model(const std::string& text);
std::string to_string(GraphModel model);

struct OutbreakResult {
    std::int64_t final_size = 0;
    std::int64_t initial_vertex = -1;
    std::int64_t unvaccinated_count = 0;
    double fraction = 0.0; // final_size / unvaccinated_count
    bool major = false;
};

// One SIR outbreak: infect a uniformly random unvaccinated vertex and grow the
// infection along edges, each infectious contact transmitting independently
// with probability p. Equivalent in law to the initial vertex's component
// after bond percolation of the unvaccinated subgraph.
OutbreakResult run_epidemic(const HalfEdgeGraph& g, const AliveMask& alive, double p, Rng& rng,
                            const ThresholdPolicy& policy);

// Deterministic variant driven by a fixed per-edge keep mask (edge ids follow
// the same ordering percolate_with uses).
std::int64_t epidemic_final_size_from(const HalfEdgeGraph& g, const AliveMask& alive,
                                      std::int64_t initial, const std::vector<char>& edge_keep);

bool classify_outbreak(std::int64_t final_size, std::int64_t n_unvacc,
                       const ThresholdPolicy& policy);

struct RunOptions {
    double p = 1.0;
    StrategySpec strategy{};
    GraphModel graph_model = GraphModel::multigraph;
    std::int64_t max_attempts = 10000; // simple-graph rejection budget
    ThresholdPolicy policy{};
};

struct ReplicateRecord {
    std::int64_t replicate = 0;
    std::uint64_t seed = 0;
    std::int64_t n = 0;
    std::int64_t n_unvacc = 0;
    std::int64_t V = 0;
    std::int64_t final_size = 0;
    double fraction = 0.0;
    bool major = false;
};

struct ReplicateFailure {
    std::int64_t replicate = 0;
    std::uint64_t seed = 0;
    std::string message;
};

struct ReplicateSummary {
    std::vector<ReplicateRecord> records;
    std::vector<ReplicateFailure> failures;
    std::int64_t replicates = 0;
    std::uint64_t base_seed = 0;
    double p_major = 0.0;
    double tau_hat = 0.0; // mean outbreak fraction over major replicates
    bool has_tau_hat = false;
};

// Independent replicates, one derived seed each: sample degrees, build the
// graph, vaccinate, run one outbreak. Graph-generation failures are recorded
// and skipped rather than aborting the batch.
ReplicateSummary run_replicates(const DegreeDistribution& dist, std::int64_t n,
                                std::int64_t replicates, std::uint64_t base_seed,
                                const RunOptions& opt);

} // namespace sirnet
