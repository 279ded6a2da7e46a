#pragma once

#include <functional>
#include <vector>

#include "sirnet/degree_dist.hpp"
#include "sirnet/vaccine.hpp"

namespace sirnet {

struct FixedPointResult {
    double value = 0.0;
    double residual = 0.0;
    long iterations = 0;
    bool degenerate = false; // every point is a fixed point (deterministic unit offspring)
};

// Smallest fixed point of a monotone map [0,1] -> [0,1]: iterate from 0, then
// polish with Newton. Throws NumericalError if the residual stays above 1e-10.
FixedPointResult smallest_fixed_point(const std::function<double(double)>& f,
                                      const std::function<double(double)>& fprime);

struct TheoryResult {
    StrategySpec strategy;
    double v = 0.0;        // vaccination coverage implied by the strategy parameter
    double R = 0.0;        // reproduction number
    double pi_tilde = 0.0; // extinction probability of the edge-level process
    double pi = 0.0;       // probability the outbreak stays minor
    double tau = 0.0;      // limit fraction of unvaccinated ever infected (major outbreak)
    double residual = 0.0;
    bool degenerate = false;
};

// Basic reproduction number p * E[D(D-1)]/E[D] with no vaccination.
double r0(const DegreeDistribution& dist, double p);

TheoryResult base_theory(const DegreeDistribution& dist, double p);
TheoryResult uniform_theory(const DegreeDistribution& dist, double p, double v);

// Probability a given half-edge's owner escapes all naming rounds directed at
// it, size-biased over the namer's degree.
double acquaintance_alpha(const DegreeDistribution& dist, double c);
// Offspring distribution of the acquaintance-vaccination branching process
// (index = number of infected children).
std::vector<double> acquaintance_offspring(const DegreeDistribution& dist, double p, double c);
TheoryResult acquaintance_theory(const DegreeDistribution& dist, double p, double c);

enum class EdgeVariant { e1, e2 };
std::vector<double> edgewise_offspring(const DegreeDistribution& dist, double p, double alpha,
                                       EdgeVariant variant);
TheoryResult edgewise_theory(const DegreeDistribution& dist, double p, double alpha,
                             EdgeVariant variant);

// Asymptotic vaccinated fraction reached by a strategy at its parameter.
double coverage(const DegreeDistribution& dist, const StrategySpec& spec);

struct CriticalCoverage {
    double param_star = 0.0; // strategy parameter at which R crosses 1
    double vc = 0.0;         // corresponding coverage
};

// Smallest coverage driving the reproduction number down to 1. Uniform has
// the closed form 1 - 1/R0; the others are found by bisection in the
// strategy parameter after a monotonicity sweep.
CriticalCoverage critical_coverage(const DegreeDistribution& dist, double p, StrategyKind kind);

// Strategy parameter achieving coverage v. Throws std::invalid_argument when
// v is unreachable (acquaintance saturates below 1; edgewise cannot vaccinate
// isolated vertices).
double invert_coverage(const DegreeDistribution& dist, StrategyKind kind, double v);

TheoryResult theory_for(const DegreeDistribution& dist, double p, const StrategySpec& spec);
TheoryResult theory_at_coverage(const DegreeDistribution& dist, double p, StrategyKind kind,
                                double v);

struct TauPoint {
    double v = 0.0;
    bool achievable = false;
    TheoryResult result;
};

std::vector<TauPoint> tau_curve(const DegreeDistribution& dist, double p, StrategyKind kind,
                                const std::vector<double>& coverages);

} // namespace sirnet
