#include "sirnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "sirnet/errors.hpp"

namespace sirnet {

bool HalfEdgeGraph::valid_pairing() const {
    const auto m2 = half_edge_count();
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = pairing[h];
        if (q < 0 || q >= m2 || q == h || pairing[q] != h) return false;
    }
    return true;
}

bool HalfEdgeGraph::is_simple() const {
    const auto m2 = half_edge_count();
    std::vector<std::int64_t> keys;
    keys.reserve(static_cast<std::size_t>(m2 / 2));
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = pairing[h];
        if (h >= q) continue;
        const auto u = he_vertex[h], v = he_vertex[q];
        if (u == v) return false; // loop
        const auto lo = std::min(u, v), hi = std::max(u, v);
        keys.push_back(lo * (n + 1) + hi);
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

namespace {

HalfEdgeGraph skeleton_from_degrees(std::vector<int> degrees) {
    HalfEdgeGraph g;
    g.n = static_cast<std::int64_t>(degrees.size());
    g.record_degrees = std::move(degrees);
    g.he_offset.resize(static_cast<std::size_t>(g.n) + 1, 0);
    std::int64_t acc = 0;
    for (std::int64_t v = 0; v < g.n; ++v) {
        g.he_offset[v] = acc;
        acc += g.record_degrees[static_cast<std::size_t>(v)];
    }
    g.he_offset[g.n] = acc;
    g.he_vertex.resize(static_cast<std::size_t>(acc));
    for (std::int64_t v = 0; v < g.n; ++v)
        for (std::int64_t h = g.he_offset[v]; h < g.he_offset[v + 1]; ++h)
            g.he_vertex[static_cast<std::size_t>(h)] = v;
    return g;
}

} // namespace

HalfEdgeGraph configuration_multigraph(const DegreeSequence& seq, Rng& rng) {
    if (seq.n() < 1) throw std::invalid_argument("configuration_multigraph: empty degree sequence");
    const std::int64_t total = seq.degree_sum();
    if (total % 2 != 0)
        throw std::invalid_argument("configuration_multigraph: odd degree sum " + std::to_string(total));

    HalfEdgeGraph g = skeleton_from_degrees(seq.degrees);
    const std::int64_t m2 = total;
    // uniform permutation of half-edges, paired consecutively: uniform matching
    std::vector<std::int64_t> perm(static_cast<std::size_t>(m2));
    std::iota(perm.begin(), perm.end(), std::int64_t{0});
    for (std::int64_t i = m2 - 1; i > 0; --i) {
        const auto j = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    g.pairing.resize(static_cast<std::size_t>(m2));
    for (std::int64_t i = 0; i < m2; i += 2) {
        const auto a = perm[static_cast<std::size_t>(i)];
        const auto b = perm[static_cast<std::size_t>(i + 1)];
        g.pairing[static_cast<std::size_t>(a)] = b;
        g.pairing[static_cast<std::size_t>(b)] = a;
    }
    return g;
}

SimpleGraphResult configuration_simple(const DegreeSequence& seq, Rng& rng,
                                       std::int64_t max_attempts) {
    if (max_attempts < 1) throw std::invalid_argument("configuration_simple: max_attempts must be >= 1");
    for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        HalfEdgeGraph g = configuration_multigraph(seq, rng);
        if (g.is_simple()) {
            g.simplicity = HalfEdgeGraph::Simplicity::verified_simple;
            return {std::move(g), attempt};
        }
    }
    throw GenerationError("configuration_simple: no simple graph in " +
                              std::to_string(max_attempts) + " attempts (degree sequence too dense?)",
                          max_attempts);
}

HalfEdgeGraph graph_from_edges(std::int64_t n,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                               HalfEdgeGraph::Simplicity simplicity) {
    if (n < 0) throw std::invalid_argument("graph_from_edges: negative n");
    std::vector<int> degrees(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph_from_edges: endpoint out of range");
        degrees[static_cast<std::size_t>(u)] += 1;
        degrees[static_cast<std::size_t>(v)] += 1;
    }
    HalfEdgeGraph g = skeleton_from_degrees(std::move(degrees));
    g.simplicity = simplicity;
    g.pairing.resize(g.he_vertex.size());
    std::vector<std::int64_t> cursor(g.he_offset.begin(), g.he_offset.end() - 1);
    for (const auto& [u, v] : edges) {
        const auto hu = cursor[static_cast<std::size_t>(u)]++;
        const auto hv = cursor[static_cast<std::size_t>(v)]++;
        g.pairing[static_cast<std::size_t>(hu)] = hv;
        g.pairing[static_cast<std::size_t>(hv)] = hu;
    }
    return g;
}

HalfEdgeGraph gnw_graph(std::int64_t n, const WeightSpec& weights, Rng& rng, GnwRule rule) {
    if (n < 0) throw std::invalid_argument("gnw_graph: negative n");
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = weights.sample(rng);
    for (double x : w)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("gnw_graph: weights must be finite and non-negative");

    const double nn = static_cast<double>(n);
    auto pair_prob = [&](double wi, double wj) {
        const double prod = wi * wj;
        if (rule == GnwRule::saturating) return prod / (nn + prod);
        return std::min(prod / nn, 1.0);
    };
    const double wmax = *std::max_element(w.begin(), w.end());
    const double pmax = n > 0 ? pair_prob(wmax, wmax) : 0.0;

    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    if (pmax > 0.0 && n >= 2) {
        // walk the pairs (i,j), i<j, in lexicographic order with geometric
        // jumps at rate pmax; accept each candidate with pair_prob/pmax
        const double log1mp = std::log1p(-std::min(pmax, 1.0 - 1e-16));
        auto skip = [&]() {
            if (pmax >= 1.0) return std::int64_t{0};
            const double k = std::floor(std::log1p(-rng.uniform01()) / log1mp);
            return static_cast<std::int64_t>(std::min(k, 4.0e18));
        };
        std::int64_t i = 0, j = 0; // one slot before the first pair (0,1)
        auto advance = [&](std::int64_t delta) {
            j += delta;
            while (j >= n) {
                ++i;
                if (i >= n - 1) return false;
                j = (i + 1) + (j - n); // wrap overflow into the next row
            }
            return true;
        };
        while (advance(skip() + 1)) {
            const double pij = pair_prob(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]);
            if (pij >= pmax || rng.uniform01() < pij / pmax)
                edges.emplace_back(i, j);
        }
    }
    HalfEdgeGraph g = graph_from_edges(n, edges, HalfEdgeGraph::Simplicity::verified_simple);
    return g;
}

HalfEdgeGraph percolate_with(const HalfEdgeGraph& g, const std::vector<char>& keep) {
    if (static_cast<std::int64_t>(keep.size()) != g.edge_count())
        throw std::invalid_argument("percolate_with: keep mask size != edge count");
    std::vector<std::pair<std::int64_t, std::int64_t>> kept;
    kept.reserve(keep.size());
    std::int64_t eid = 0;
    const auto m2 = g.half_edge_count();
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = g.pairing[static_cast<std::size_t>(h)];
        if (h >= q) continue;
        if (keep[static_cast<std::size_t>(eid)])
            kept.emplace_back(g.he_vertex[static_cast<std::size_t>(h)],
                              g.he_vertex[static_cast<std::size_t>(q)]);
        ++eid;
    }
    HalfEdgeGraph out = graph_from_edges(g.n, kept, g.simplicity);
    out.record_degrees = g.record_degrees; // degrees of record survive percolation
    return out;
}

HalfEdgeGraph percolate(const HalfEdgeGraph& g, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percolate: p must lie in [0,1]");
    std::vector<char> keep(static_cast<std::size_t>(g.edge_count()));
    for (auto& k : keep) k = rng.bernoulli(p) ? 1 : 0;
    return percolate_with(g, keep);
}

namespace {

struct UnionFind {
    std::vector<std::int64_t> parent;
    std::vector<std::int64_t> size;
    explicit UnionFind(std::int64_t n)
        : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
        std::iota(parent.begin(), parent.end(), std::int64_t{0});
    }
    std::int64_t find(std::int64_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            // path halving
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)]) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
    }
};

} // namespace

ComponentReport components(const HalfEdgeGraph& g, const std::vector<char>* alive,
                           const std::vector<std::int64_t>& size_thresholds) {
    if (alive && static_cast<std::int64_t>(alive->size()) != g.n)
        throw std::invalid_argument("components: alive mask size != n");
    auto is_alive = [&](std::int64_t v) {
        return !alive || (*alive)[static_cast<std::size_t>(v)];
    };

    UnionFind uf(g.n);
    const auto m2 = g.half_edge_count();
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = g.pairing[static_cast<std::size_t>(h)];
        if (h >= q) continue;
        const auto u = g.he_vertex[static_cast<std::size_t>(h)];
        const auto v = g.he_vertex[static_cast<std::size_t>(q)];
        if (is_alive(u) && is_alive(v)) uf.unite(u, v);
    }

    ComponentReport rep;
    rep.component_of.assign(static_cast<std::size_t>(g.n), -1);
    rep.thresholds = size_thresholds;

    // densify component ids over alive roots
    std::vector<std::int64_t> root_of(static_cast<std::size_t>(g.n));
    std::vector<std::int64_t> comp_size;
    std::vector<std::int32_t> comp_id(static_cast<std::size_t>(g.n), -1);
    for (std::int64_t v = 0; v < g.n; ++v) {
        if (!is_alive(v)) continue;
        const auto r = uf.find(v);
        root_of[static_cast<std::size_t>(v)] = r;
        if (comp_id[static_cast<std::size_t>(r)] < 0) {
            comp_id[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(comp_size.size());
            comp_size.push_back(0);
        }
        rep.live_vertices += 1;
    }
    for (std::int64_t v = 0; v < g.n; ++v) {
        if (!is_alive(v)) continue;
        const auto id = comp_id[static_cast<std::size_t>(root_of[static_cast<std::size_t>(v)])];
        rep.component_of[static_cast<std::size_t>(v)] = id;
        comp_size[static_cast<std::size_t>(id)] += 1;
    }

    rep.sizes = comp_size;
    std::sort(rep.sizes.begin(), rep.sizes.end(), std::greater<>());

    for (std::int64_t v = 0; v < g.n; ++v) {
        if (!is_alive(v)) continue;
        const auto id = rep.component_of[static_cast<std::size_t>(v)];
        const auto csz = comp_size[static_cast<std::size_t>(id)];
        const int d = g.record_degrees[static_cast<std::size_t>(v)];
        auto& counts = rep.per_degree_counts[d];
        if (counts.empty()) counts.assign(size_thresholds.size(), 0);
        for (std::size_t t = 0; t < size_thresholds.size(); ++t)
            if (csz >= size_thresholds[t]) counts[t] += 1;
    }
    return rep;
}

void write_edge_list(const HalfEdgeGraph& g, std::ostream& out) {
    out << "u,v\n";
    const auto m2 = g.half_edge_count();
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = g.pairing[static_cast<std::size_t>(h)];
        if (h >= q) continue;
        out << g.he_vertex[static_cast<std::size_t>(h)] << ','
            << g.he_vertex[static_cast<std::size_t>(q)] << '\n';
    }
}

} // namespace sirnet
