#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sirnet/graph.hpp"
#include "sirnet/rng.hpp"

namespace sirnet {

enum class StrategyKind { none, uniform, acquaintance, e1, e2 };

// Pre-epidemic vaccination policy. `param` is the natural parameter of the
// strategy: coverage v for uniform, naming intensity c for acquaintance, and
// the retention probability alpha for the two edgewise variants.
struct StrategySpec {
    StrategyKind kind = StrategyKind::none;
    double param = 0.0;

    // "none" | "uniform:v=0.3" | "acq:c=0.8" | "e1:alpha=0.7" | "e2:alpha=0.7"
    static StrategySpec parse(const std::string& text);
    std::string to_string() const;
    std::string name() const; // strategy label without the parameter
};

struct VaccinationMask {
    std::vector<char> vaccinated; // one flag per vertex
    std::int64_t V = 0;           // number vaccinated
    StrategySpec strategy;
};

// Everyone independently with probability v.
VaccinationMask uniform_mask(const HalfEdgeGraph& g, double v, Rng& rng);

// Each vertex names Po(c) acquaintances; every naming picks a uniformly
// random incident half-edge and the neighbour at its other end is
// vaccinated. Vertices of degree zero name nobody.
VaccinationMask acquaintance_mask(const HalfEdgeGraph& g, double c, Rng& rng);

// Per half-edge: with probability 1-alpha the half-edge's own endpoint is
// vaccinated.
VaccinationMask e1_mask(const HalfEdgeGraph& g, double alpha, Rng& rng);

// Per edge: with probability 1-alpha both endpoints are vaccinated (a loop
// counts as a single event on its single vertex).
VaccinationMask e2_mask(const HalfEdgeGraph& g, double alpha, Rng& rng);

VaccinationMask make_mask(const HalfEdgeGraph& g, const StrategySpec& spec, Rng& rng);

struct AliveMask {
    std::vector<char> alive;
    std::int64_t live_count = 0;
};

AliveMask surviving_vertices(const HalfEdgeGraph& g, const VaccinationMask& mask);

} // namespace sirnet
