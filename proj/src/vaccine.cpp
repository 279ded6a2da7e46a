#include "sirnet/vaccine.hpp"

#include <stdexcept>

#include "sirnet/format.hpp"

namespace sirnet {

namespace {

double parse_param(const std::string& text, std::size_t colon, const char* key) {
    const std::string rest = text.substr(colon + 1);
    const std::string prefix = std::string(key) + "=";
    if (rest.rfind(prefix, 0) != 0)
        throw std::invalid_argument("strategy spec '" + text + "': expected '" + prefix + "<value>'");
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(rest.substr(prefix.size()), &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("strategy spec '" + text + "': bad number");
    }
    if (used != rest.size() - prefix.size())
        throw std::invalid_argument("strategy spec '" + text + "': trailing junk after number");
    return value;
}

} // namespace

StrategySpec StrategySpec::parse(const std::string& text) {
    if (text == "none") return {StrategyKind::none, 0.0};
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("strategy spec '" + text +
                                    "': expected none|uniform:v=..|acq:c=..|e1:alpha=..|e2:alpha=..");
    const std::string head = text.substr(0, colon);
    StrategySpec spec;
    if (head == "uniform") {
        spec.kind = StrategyKind::uniform;
        spec.param = parse_param(text, colon, "v");
        if (!(spec.param >= 0.0 && spec.param <= 1.0))
            throw std::invalid_argument("uniform coverage must lie in [0,1]");
    } else if (head == "acq") {
        spec.kind = StrategyKind::acquaintance;
        spec.param = parse_param(text, colon, "c");
        if (!(spec.param >= 0.0))
            throw std::invalid_argument("acquaintance intensity c must be >= 0");
    } else if (head == "e1" || head == "e2") {
        spec.kind = head == "e1" ? StrategyKind::e1 : StrategyKind::e2;
        spec.param = parse_param(text, colon, "alpha");
        if (!(spec.param >= 0.0 && spec.param <= 1.0))
            throw std::invalid_argument("edgewise alpha must lie in [0,1]");
    } else {
        throw std::invalid_argument("unknown strategy '" + head + "'");
    }
    return spec;
}

std::string StrategySpec::name() const {
    switch (kind) {
        case StrategyKind::none: return "none";
        case StrategyKind::uniform: return "uniform";
        case StrategyKind::acquaintance: return "acq";
        case StrategyKind::e1: return "e1";
        case StrategyKind::e2: return "e2";
    }
    return "?";
}

std::string StrategySpec::to_string() const {
    switch (kind) {
        case StrategyKind::none: return "none";
        case StrategyKind::uniform: return "uniform:v=" + fmt_g(param);
        case StrategyKind::acquaintance: return "acq:c=" + fmt_g(param);
        case StrategyKind::e1: return "e1:alpha=" + fmt_g(param);
        case StrategyKind::e2: return "e2:alpha=" + fmt_g(param);
    }
    return "?";
}

namespace {

VaccinationMask blank_mask(const HalfEdgeGraph& g, StrategySpec spec) {
    VaccinationMask m;
    m.vaccinated.assign(static_cast<std::size_t>(g.n), 0);
    m.strategy = spec;
    return m;
}

void finish_count(VaccinationMask& m) {
    std::int64_t V = 0;
    for (char c : m.vaccinated) V += c;
    m.V = V;
}

} // namespace

VaccinationMask uniform_mask(const HalfEdgeGraph& g, double v, Rng& rng) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("uniform coverage must lie in [0,1]");
    VaccinationMask m = blank_mask(g, {StrategyKind::uniform, v});
    for (auto& flag : m.vaccinated)
        if (rng.bernoulli(v)) flag = 1;
    finish_count(m);
    return m;
}

VaccinationMask acquaintance_mask(const HalfEdgeGraph& g, double c, Rng& rng) {
    if (!(c >= 0.0)) throw std::invalid_argument("acquaintance intensity c must be >= 0");
    VaccinationMask m = blank_mask(g, {StrategyKind::acquaintance, c});
    for (std::int64_t v = 0; v < g.n; ++v) {
        const std::int64_t k = rng.poisson(c);
        const std::int64_t deg = g.he_offset[v + 1] - g.he_offset[v];
        if (deg == 0) continue; // nobody to name
        for (std::int64_t i = 0; i < k; ++i) {
            const auto h = g.he_offset[v] +
                           static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(deg)));
            const auto partner = g.pairing[static_cast<std::size_t>(h)];
            m.vaccinated[static_cast<std::size_t>(g.he_vertex[static_cast<std::size_t>(partner)])] = 1;
        }
    }
    finish_count(m);
    return m;
}

VaccinationMask e1_mask(const HalfEdgeGraph& g, double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("edgewise alpha must lie in [0,1]");
    VaccinationMask m = blank_mask(g, {StrategyKind::e1, alpha});
    const auto m2 = g.half_edge_count();
    for (std::int64_t h = 0; h < m2; ++h)
        if (rng.bernoulli(1.0 - alpha))
            m.vaccinated[static_cast<std::size_t>(g.he_vertex[static_cast<std::size_t>(h)])] = 1;
    finish_count(m);
    return m;
}

VaccinationMask e2_mask(const HalfEdgeGraph& g, double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("edgewise alpha must lie in [0,1]");
    VaccinationMask m = blank_mask(g, {StrategyKind::e2, alpha});
    const auto m2 = g.half_edge_count();
    for (std::int64_t h = 0; h < m2; ++h) {
        const auto q = g.pairing[static_cast<std::size_t>(h)];
        if (h >= q) continue;
        if (rng.bernoulli(1.0 - alpha)) {
            m.vaccinated[static_cast<std::size_t>(g.he_vertex[static_cast<std::size_t>(h)])] = 1;
            m.vaccinated[static_cast<std::size_t>(g.he_vertex[static_cast<std::size_t>(q)])] = 1;
        }
    }
    finish_count(m);
    return m;
}

VaccinationMask make_mask(const HalfEdgeGraph& g, const StrategySpec& spec, Rng& rng) {
    switch (spec.kind) {
        case StrategyKind::none: {
            VaccinationMask m = blank_mask(g, spec);
            m.V = 0;
            return m;
        }
        case StrategyKind::uniform: return uniform_mask(g, spec.param, rng);
        case StrategyKind::acquaintance: return acquaintance_mask(g, spec.param, rng);
        case StrategyKind::e1: return e1_mask(g, spec.param, rng);
        case StrategyKind::e2: return e2_mask(g, spec.param, rng);
    }
    throw std::invalid_argument("make_mask: bad strategy kind");
}

AliveMask surviving_vertices(const HalfEdgeGraph& g, const VaccinationMask& mask) {
    if (static_cast<std::int64_t>(mask.vaccinated.size()) != g.n)
        throw std::invalid_argument("surviving_vertices: mask size != n");
    AliveMask a;
    a.alive.resize(static_cast<std::size_t>(g.n));
    for (std::int64_t v = 0; v < g.n; ++v) {
        const bool alive = !mask.vaccinated[static_cast<std::size_t>(v)];
        a.alive[static_cast<std::size_t>(v)] = alive ? 1 : 0;
        a.live_count += alive ? 1 : 0;
    }
    return a;
}

} // namespace sirnet
