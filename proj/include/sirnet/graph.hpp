#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "sirnet/degree_dist.hpp"
#include "sirnet/rng.hpp"

namespace sirnet {

/// Multigraph in half-edge form. Vertex v owns the half-edges
/// [he_offset[v], he_offset[v+1]); `pairing` is a fixed-point-free involution
/// matching half-edges into edges. `record_degrees` keeps the degrees the
/// graph was built with — percolation rebuilds the half-edge arrays but
/// leaves the degrees of record untouched (per-degree component statistics
/// and coverage laws refer to them).
struct HalfEdgeGraph {
    enum class Simplicity { none, verified_simple };

    std::int64_t n = 0;
    std::vector<int> record_degrees;
    std::vector<std::int64_t> he_offset; // size n+1
    std::vector<std::int64_t> he_vertex; // half-edge -> owning vertex
    std::vector<std::int64_t> pairing;   // involution, pairing[h] != h
    Simplicity simplicity = Simplicity::none;

    std::int64_t half_edge_count() const { return static_cast<std::int64_t>(pairing.size()); }
    std::int64_t edge_count() const { return half_edge_count() / 2; }
    std::int64_t current_degree(std::int64_t v) const { return he_offset[v + 1] - he_offset[v]; }

    /// True if the pairing is a valid loop-free-in-index involution
    /// (structural sanity, not graph simplicity).
    bool valid_pairing() const;
    /// No self-loops and no parallel edges?
    bool is_simple() const;
};

/// Uniform configuration-model multigraph: one uniform shuffle of all
/// half-edges paired consecutively (uniform over perfect matchings).
HalfEdgeGraph configuration_multigraph(const DegreeSequence& seq, Rng& rng);

struct SimpleGraphResult {
    HalfEdgeGraph graph;
    std::int64_t attempts = 0;
};

/// Rejection sampling of the uniform *simple* graph with the given degrees:
/// redraw whole matchings until loop- and multi-edge-free. Throws
/// GenerationError (carrying the attempt count) past max_attempts.
SimpleGraphResult configuration_simple(const DegreeSequence& seq, Rng& rng,
                                       std::int64_t max_attempts = 10000);

/// Build a graph from an explicit edge list (u,v pairs, loops allowed).
HalfEdgeGraph graph_from_edges(std::int64_t n,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                               HalfEdgeGraph::Simplicity simplicity = HalfEdgeGraph::Simplicity::none);

/// i.i.d. vertex weights for the G(n,W) generator.
struct WeightSpec {
    enum class Kind { constant, two_point };
    Kind kind = Kind::constant;
    double w1 = 1.0;
    double w2 = 0.0;
    double q = 0.0; // two_point: W = w2 with probability q, else w1

    double sample(Rng& rng) const {
        if (kind == Kind::constant) return w1;
        return rng.uniform01() < q ? w2 : w1;
    }
    double max_weight() const { return kind == Kind::constant ? w1 : std::max(w1, w2); }
};

enum class GnwRule {
    saturating, // P(i~j) = WiWj / (n + WiWj)
    capped      // P(i~j) = min(WiWj / n, 1)
};

/// Independent Bernoulli edge per unordered pair; simple by construction.
/// Implemented with geometric skip-sampling at the max pair probability and
/// per-pair acceptance, so the per-pair law is exact at O(edges) cost.
HalfEdgeGraph gnw_graph(std::int64_t n, const WeightSpec& weights, Rng& rng, GnwRule rule);

/// Keep each edge independently with probability keep[edge id] — edges are
/// numbered in increasing order of their lower half-edge index.
HalfEdgeGraph percolate_with(const HalfEdgeGraph& g, const std::vector<char>& keep);

/// Bond percolation: each edge retained independently with probability p.
HalfEdgeGraph percolate(const HalfEdgeGraph& g, double p, Rng& rng);

struct ComponentReport {
    std::vector<std::int64_t> sizes;        // descending
    std::vector<std::int32_t> component_of; // per vertex; -1 where not alive
    std::int64_t live_vertices = 0;
    // per-degree occupancy: for each requested component-size threshold k,
    // count of live vertices of record degree d lying in components of size >= k
    std::vector<std::int64_t> thresholds;
    std::map<int, std::vector<std::int64_t>> per_degree_counts;

    std::int64_t c1() const { return sizes.empty() ? 0 : sizes[0]; }
    std::int64_t c2() const { return sizes.size() < 2 ? 0 : sizes[1]; }
};

/// Union-find component decomposition restricted to `alive` vertices
/// (null = all alive). Loops and parallel edges are connectivity no-ops.
ComponentReport components(const HalfEdgeGraph& g, const std::vector<char>* alive = nullptr,
                           const std::vector<std::int64_t>& size_thresholds = {1});

/// Edge-list CSV (`u,v` header, one row per edge instance, loops as u,u).
void write_edge_list(const HalfEdgeGraph& g, std::ostream& out);

} // namespace sirnet
