#include "sirnet/epidemic.hpp"

#include <cmath>
#include <stdexcept>

#include "sirnet/errors.hpp"
#include "sirnet/format.hpp"

namespace sirnet {

std::int64_t ThresholdPolicy::threshold(std::int64_t n_unvacc) const {
    if (n_unvacc < 0) throw std::invalid_argument("threshold: negative population");
    switch (kind) {
        case Kind::power23: {
            // smallest t with t^3 >= n^2, exactly
            const double guess = std::cbrt(static_cast<double>(n_unvacc) * static_cast<double>(n_unvacc));
            std::int64_t t = std::max<std::int64_t>(0, static_cast<std::int64_t>(guess) - 2);
            const auto n128 = static_cast<__int128>(n_unvacc) * n_unvacc;
            while (static_cast<__int128>(t) * t * t < n128) ++t;
            return t;
        }
        case Kind::absolute:
            return static_cast<std::int64_t>(value);
        case Kind::fraction:
            return static_cast<std::int64_t>(std::ceil(value * static_cast<double>(n_unvacc)));
    }
    throw std::invalid_argument("threshold: bad policy kind");
}

ThresholdPolicy ThresholdPolicy::parse(const std::string& text) {
    ThresholdPolicy p;
    if (text == "pow23") {
        p.kind = Kind::power23;
        return p;
    }
    auto tail_number = [&](const std::string& prefix) {
        std::size_t used = 0;
        double value = 0.0;
        const std::string tail = text.substr(prefix.size());
        try {
            value = std::stod(tail, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("threshold policy '" + text + "': bad number");
        }
        if (used != tail.size())
            throw std::invalid_argument("threshold policy '" + text + "': trailing junk");
        return value;
    };
    if (text.rfind("abs:", 0) == 0) {
        p.kind = Kind::absolute;
        p.value = tail_number("abs:");
        if (!(p.value >= 0) || p.value != std::floor(p.value))
            throw std::invalid_argument("threshold policy: abs count must be a non-negative integer");
        return p;
    }
    if (text.rfind("frac:", 0) == 0) {
        p.kind = Kind::fraction;
        p.value = tail_number("frac:");
        if (!(p.value >= 0.0 && p.value <= 1.0))
            throw std::invalid_argument("threshold policy: fraction must lie in [0,1]");
        return p;
    }
    throw std::invalid_argument("threshold policy '" + text + "': expected pow23|abs:<K>|frac:<x>");
}

std::string ThresholdPolicy::to_string() const {
    switch (kind) {
        case Kind::power23: return "pow23";
        case Kind::absolute: return "abs:" + fmt_g(value);
        case Kind::fraction: return "frac:" + fmt_g(value);
    }
    return "?";
}

GraphModel parse_graph_model(const std::string& text) {
    if (text == "multigraph") return GraphModel::multigraph;
    if (text == "simple") return GraphModel::simple;
    throw std::invalid_argument("graph model '" + text + "': expected multigraph|simple");
}

std::string to_string(GraphModel model) {
    return model == GraphModel::multigraph ? "multigraph" : "simple";
}

bool classify_outbreak(std::int64_t final_size, std::int64_t n_unvacc,
                       const ThresholdPolicy& policy) {
    return final_size >= policy.threshold(n_unvacc);
}

namespace {

// Shared BFS. transmit(h) decides whether the contact along half-edge h
// (pointing away from the infected endpoint) succeeds. Each graph edge is
// queried at most once: a contact toward an already-infected vertex is
// skipped, which leaves the outbreak distribution untouched because a closed
// edge toward a vertex that later becomes infected can no longer change the
// infected set.
template <class Transmit>
std::int64_t bfs_outbreak(const HalfEdgeGraph& g, const AliveMask& alive, std::int64_t initial,
                          Transmit&& transmit) {
    std::vector<char> infected(static_cast<std::size_t>(g.n), 0);
    std::vector<std::int64_t> queue;
    queue.push_back(initial);
    infected[static_cast<std::size_t>(initial)] = 1;
    std::int64_t size = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto u = queue[head];
        for (std::int64_t h = g.he_offset[u]; h < g.he_offset[u + 1]; ++h) {
            const auto q = g.pairing[static_cast<std::size_t>(h)];
            const auto w = g.he_vertex[static_cast<std::size_t>(q)];
            if (!alive.alive[static_cast<std::size_t>(w)]) continue;
            if (infected[static_cast<std::size_t>(w)]) continue;
            if (!transmit(h)) continue;
            infected[static_cast<std::size_t>(w)] = 1;
            queue.push_back(w);
            ++size;
        }
    }
    return size;
}

} // namespace

OutbreakResult run_epidemic(const HalfEdgeGraph& g, const AliveMask& alive, double p, Rng& rng,
                            const ThresholdPolicy& policy) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("run_epidemic: p must lie in [0,1]");
    if (static_cast<std::int64_t>(alive.alive.size()) != g.n)
        throw std::invalid_argument("run_epidemic: alive mask size != n");

    OutbreakResult out;
    out.unvaccinated_count = alive.live_count;
    if (alive.live_count == 0) return out;

    // uniform unvaccinated index case
    auto pick = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(alive.live_count)));
    std::int64_t initial = -1;
    for (std::int64_t v = 0; v < g.n; ++v) {
        if (!alive.alive[static_cast<std::size_t>(v)]) continue;
        if (pick-- == 0) {
            initial = v;
            break;
        }
    }
    out.initial_vertex = initial;
    out.final_size = bfs_outbreak(g, alive, initial, [&](std::int64_t) { return rng.bernoulli(p); });
    out.fraction = static_cast<double>(out.final_size) / static_cast<double>(alive.live_count);
    out.major = classify_outbreak(out.final_size, alive.live_count, policy);
    return out;
}

std::int64_t epidemic_final_size_from(const HalfEdgeGraph& g, const AliveMask& alive,
                                      std::int64_t initial, const std::vector<char>& edge_keep) {
    if (initial < 0 || initial >= g.n)
        throw std::invalid_argument("epidemic_final_size_from: initial vertex out of range");
    if (!alive.alive[static_cast<std::size_t>(initial)])
        throw std::invalid_argument("epidemic_final_size_from: initial vertex is vaccinated");
    if (static_cast<std::int64_t>(edge_keep.size()) != g.edge_count())
        throw std::invalid_argument("epidemic_final_size_from: keep mask size != edge count");

    const auto m2 = g.half_edge_count();
    std::vector<std::int64_t> he_eid(static_cast<std::size_t>(m2));
    std::int64_t eid = 0;
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = g.pairing[static_cast<std::size_t>(h)];
        if (h >= q) continue;
        he_eid[static_cast<std::size_t>(h)] = eid;
        he_eid[static_cast<std::size_t>(q)] = eid;
        ++eid;
    }
    return bfs_outbreak(g, alive, initial, [&](std::int64_t h) {
        return edge_keep[static_cast<std::size_t>(he_eid[static_cast<std::size_t>(h)])] != 0;
    });
}

ReplicateSummary run_replicates(const DegreeDistribution& dist, std::int64_t n,
                                std::int64_t replicates, std::uint64_t base_seed,
                                const RunOptions& opt) {
    if (n < 1) throw std::invalid_argument("run_replicates: n must be >= 1");
    if (replicates < 1) throw std::invalid_argument("run_replicates: replicates must be >= 1");
    if (!(opt.p >= 0.0 && opt.p <= 1.0))
        throw std::invalid_argument("run_replicates: p must lie in [0,1]");

    ReplicateSummary summary;
    summary.replicates = replicates;
    summary.base_seed = base_seed;
    summary.records.reserve(static_cast<std::size_t>(replicates));

    std::int64_t majors = 0;
    double major_fraction_sum = 0.0;
    for (std::int64_t r = 0; r < replicates; ++r) {
        const auto seed = derive_seed(base_seed, static_cast<std::uint64_t>(r));
        Rng rng(seed);
        try {
            const DegreeSequence seq = sample_degree_sequence(dist, n, rng);
            HalfEdgeGraph graph;
            if (opt.graph_model == GraphModel::simple)
                graph = configuration_simple(seq, rng, opt.max_attempts).graph;
            else
                graph = configuration_multigraph(seq, rng);

            const VaccinationMask mask = make_mask(graph, opt.strategy, rng);
            const AliveMask alive = surviving_vertices(graph, mask);
            const OutbreakResult ob = run_epidemic(graph, alive, opt.p, rng, opt.policy);

            ReplicateRecord rec;
            rec.replicate = r;
            rec.seed = seed;
            rec.n = n;
            rec.n_unvacc = ob.unvaccinated_count;
            rec.V = mask.V;
            rec.final_size = ob.final_size;
            rec.fraction = ob.fraction;
            rec.major = ob.major;
            summary.records.push_back(rec);
            if (ob.major) {
                ++majors;
                major_fraction_sum += ob.fraction;
            }
        } catch (const GenerationError& err) {
            summary.failures.push_back({r, seed, err.what()});
        }
    }

    const auto ok = static_cast<std::int64_t>(summary.records.size());
    summary.p_major = ok > 0 ? static_cast<double>(majors) / static_cast<double>(ok) : 0.0;
    if (majors > 0) {
        summary.tau_hat = major_fraction_sum / static_cast<double>(majors);
        summary.has_tau_hat = true;
    }
    return summary;
}

} // namespace sirnet
