#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "sirnet/degree_dist.hpp"
#include "sirnet/errors.hpp"
#include "sirnet/theory.hpp"

using namespace sirnet;

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) < tol; }

double pmf_mean(const std::vector<double>& pmf) {
    double mean = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) mean += static_cast<double>(j) * pmf[j];
    return mean;
}

} // namespace

TEST_CASE("smallest fixed point of a quadratic map") {
    // 0.25 + 0.75 t^2 has fixed points 1/3 and 1; we want the smaller
    const auto fp = smallest_fixed_point(
        [](double t) { return 0.25 + 0.75 * t * t; },
        [](double t) { return 1.5 * t; });
    CHECK(near(fp.value, 1.0 / 3.0, 1e-12));
    CHECK(fp.residual < 1e-10);
    CHECK_FALSE(fp.degenerate);

    // supercritical-by-nothing: identity-like map t -> t is flagged
    const auto deg = smallest_fixed_point(
        [](double t) { return t; },
        [](double) { return 1.0; });
    CHECK(deg.degenerate);
    CHECK(deg.value == 0.0);
}

TEST_CASE("Poisson(6), p=0.5: reproduction number and final size") {
    const auto dist = poisson(6.0);
    CHECK(near(r0(dist, 0.5), 3.0, 1e-9));

    const auto base = base_theory(dist, 0.5);
    CHECK(near(base.R, 3.0, 1e-9));
    CHECK(near(base.tau, 0.940479790707297, 1e-9));
    CHECK(near(base.pi, 0.059520209292703, 1e-9));
    // Poisson specialty: the edge- and vertex-level extinction probabilities agree
    CHECK(near(base.pi_tilde, base.pi, 1e-9));
    CHECK(base.residual < 1e-10);
    CHECK_FALSE(base.degenerate);
}

TEST_CASE("Poisson(6), p=0.5: uniform vaccination curve") {
    const auto dist = poisson(6.0);
    const struct { double v, tau; } rows[] = {
        {0.15, 0.898974861466},
        {0.20, 0.87859581977392},
        {0.30, 0.822064868205},
        {0.35, 0.782620262297383},
        {0.45, 0.667691095619},
        {0.50, 0.582811643863863},
        {0.60, 0.313698331034437},
    };
    for (const auto& row : rows) {
        const auto th = uniform_theory(dist, 0.5, row.v);
        CHECK(near(th.tau, row.tau, 1e-9));
        CHECK(near(th.R, (1.0 - row.v) * 3.0, 1e-8));
        CHECK(th.v == row.v);
    }
    // past the critical coverage the outbreak dies out
    const auto sub = uniform_theory(dist, 0.5, 0.75);
    CHECK(near(sub.R, 0.75, 1e-9));
    CHECK(near(sub.tau, 0.0, 1e-12));
    CHECK(near(sub.pi, 1.0, 1e-12));
}

TEST_CASE("Poisson(6), p=0.5: acquaintance vaccination") {
    const auto dist = poisson(6.0);
    CHECK(near(acquaintance_alpha(dist, 0.0), 1.0, 1e-12));
    CHECK(near(acquaintance_alpha(dist, 1.0), 0.84949446966356, 1e-9));
    CHECK(near(coverage(dist, {StrategyKind::acquaintance, 1.0}), 0.594661671670266, 1e-9));

    const auto th = acquaintance_theory(dist, 0.5, 1.0);
    CHECK(near(th.R, 0.892724805414457, 1e-9));
    CHECK(near(th.tau, 0.0, 1e-12)); // R < 1 already at c = 1

    const struct { double v, c, tau; } rows[] = {
        {0.15, 0.165730771267, 0.876537588709},
        {0.30, 0.371389428679, 0.745207676642},
        {0.45, 0.639296861285, 0.456591769127},
    };
    for (const auto& row : rows) {
        CHECK(near(invert_coverage(dist, StrategyKind::acquaintance, row.v), row.c, 1e-8));
        const auto at = theory_at_coverage(dist, 0.5, StrategyKind::acquaintance, row.v);
        CHECK(near(at.tau, row.tau, 1e-9));
        CHECK(near(at.v, row.v, 1e-9));
    }
}

TEST_CASE("Poisson(6), p=0.5: edgewise vaccination") {
    const auto dist = poisson(6.0);
    CHECK(near(coverage(dist, {StrategyKind::e1, 0.7}), 0.834701111778, 1e-9));

    const auto th1 = edgewise_theory(dist, 0.5, 0.7, EdgeVariant::e1);
    const auto th2 = edgewise_theory(dist, 0.5, 0.7, EdgeVariant::e2);
    CHECK(near(th1.R, 0.242989365686, 1e-9));
    CHECK(near(th2.R, 0.347127665266, 1e-9));

    const struct { double v, alpha, tau1, tau2; } rows[] = {
        {0.15, 0.97291351175, 0.880642658845, 0.890113732099},
        {0.30, 0.94055417601, 0.753236094968, 0.789903659701},
        {0.45, 0.900360499874, 0.458232737368, 0.573320307344},
    };
    for (const auto& row : rows) {
        CHECK(near(invert_coverage(dist, StrategyKind::e1, row.v), row.alpha, 1e-8));
        CHECK(near(theory_at_coverage(dist, 0.5, StrategyKind::e1, row.v).tau, row.tau1, 1e-9));
        CHECK(near(theory_at_coverage(dist, 0.5, StrategyKind::e2, row.v).tau, row.tau2, 1e-9));
    }
}

TEST_CASE("Poisson(6), p=0.5: critical coverages per strategy") {
    const auto dist = poisson(6.0);
    const auto unif = critical_coverage(dist, 0.5, StrategyKind::uniform);
    CHECK(near(unif.vc, 2.0 / 3.0, 1e-9));
    const auto acq = critical_coverage(dist, 0.5, StrategyKind::acquaintance);
    CHECK(near(acq.param_star, 0.902265373878, 1e-8));
    CHECK(near(acq.vc, 0.560644703303793, 1e-9));
    const auto e1 = critical_coverage(dist, 0.5, StrategyKind::e1);
    CHECK(near(e1.param_star, 0.865173155856, 1e-8));
    CHECK(near(e1.vc, 0.554679514931207, 1e-9));
    const auto e2 = critical_coverage(dist, 0.5, StrategyKind::e2);
    CHECK(near(e2.param_star, 0.844973044008, 1e-8));
    CHECK(near(e2.vc, 0.605510097988762, 1e-9));

    // R is actually subcritical just above each critical coverage
    CHECK(theory_at_coverage(dist, 0.5, StrategyKind::uniform, 0.75).R < 1.0);
    for (auto kind : {StrategyKind::acquaintance, StrategyKind::e1, StrategyKind::e2})
        CHECK(theory_at_coverage(dist, 0.5, kind, 0.70).R < 1.0);
}

TEST_CASE("heavy-tailed distribution: critical coverages and ordering") {
    const auto dist = parse_dist_spec("powerlaw:exp=3.5,dmax=200,mean=6");
    CHECK(near(r0(dist, 0.5), 4.07492356176148, 1e-6));

    const double vc_u = critical_coverage(dist, 0.5, StrategyKind::uniform).vc;
    const double vc_a = critical_coverage(dist, 0.5, StrategyKind::acquaintance).vc;
    const double vc_1 = critical_coverage(dist, 0.5, StrategyKind::e1).vc;
    const double vc_2 = critical_coverage(dist, 0.5, StrategyKind::e2).vc;
    CHECK(near(vc_u, 0.754596623754158, 1e-6));
    CHECK(near(vc_a, 0.51529433573278, 1e-6));
    CHECK(near(vc_1, 0.506662187444388, 1e-6));
    CHECK(near(vc_2, 0.547491707442785, 1e-6));
    // degree-targeting strategies need much less coverage than uniform
    CHECK(vc_1 < vc_a);
    CHECK(vc_a < vc_2);
    CHECK(vc_2 < vc_u);
}

TEST_CASE("structural identities hold on assorted inputs") {
    const std::vector<DegreeDistribution> dists = {
        poisson(2.7),
        power_law(3.0, 40),
        explicit_distribution({{1, 0.2}, {3, 0.5}, {8, 0.3}}),
    };
    const double ps[] = {0.35, 0.6, 0.9};
    const double alphas[] = {0.55, 0.8, 0.95};
    const double cs[] = {0.3, 0.9, 2.0};
    const double vs[] = {0.1, 0.4, 0.8};

    for (std::size_t i = 0; i < dists.size(); ++i) {
        const auto& dist = dists[i];
        const double p = ps[i];

        // uniform thins R0 linearly, e1 is an alpha-fold thinning of e2
        CHECK(near(uniform_theory(dist, p, vs[i]).R, (1.0 - vs[i]) * r0(dist, p), 1e-10));
        const double r1 = edgewise_theory(dist, p, alphas[i], EdgeVariant::e1).R;
        const double r2 = edgewise_theory(dist, p, alphas[i], EdgeVariant::e2).R;
        CHECK(near(r1, alphas[i] * r2, 1e-10));

        // explicit offspring laws: normalized, with mean equal to R
        const auto acq = acquaintance_offspring(dist, p, cs[i]);
        CHECK(near(std::accumulate(acq.begin(), acq.end(), 0.0), 1.0, 1e-12));
        CHECK(near(pmf_mean(acq), acquaintance_theory(dist, p, cs[i]).R, 1e-10));
        for (auto variant : {EdgeVariant::e1, EdgeVariant::e2}) {
            const auto off = edgewise_offspring(dist, p, alphas[i], variant);
            CHECK(near(std::accumulate(off.begin(), off.end(), 0.0), 1.0, 1e-12));
            CHECK(near(pmf_mean(off), edgewise_theory(dist, p, alphas[i], variant).R, 1e-10));
        }
    }
}

TEST_CASE("every strategy collapses to the base case at its vanishing parameter") {
    const auto dist = poisson(4.2);
    const double p = 0.45;
    const auto base = base_theory(dist, p);
    const TheoryResult variants[] = {
        uniform_theory(dist, p, 0.0),
        acquaintance_theory(dist, p, 0.0),
        edgewise_theory(dist, p, 1.0, EdgeVariant::e1),
        edgewise_theory(dist, p, 1.0, EdgeVariant::e2),
    };
    for (const auto& th : variants) {
        CHECK(near(th.R, base.R, 1e-8));
        CHECK(near(th.pi_tilde, base.pi_tilde, 1e-8));
        CHECK(near(th.tau, base.tau, 1e-8));
        CHECK(near(th.v, 0.0, 1e-12));
    }
}

TEST_CASE("degenerate two-regular case is flagged, not mangled") {
    const auto ring = explicit_distribution({{2, 1.0}});
    const auto th = base_theory(ring, 1.0);
    CHECK(th.degenerate);
    CHECK(near(th.R, 1.0, 1e-12));
    CHECK(th.pi_tilde == 0.0);
    CHECK(near(th.tau, 1.0, 1e-12));
}

TEST_CASE("coverage inversion round-trips and refuses the unreachable") {
    const auto dist = poisson(6.0);
    CHECK(invert_coverage(dist, StrategyKind::uniform, 0.42) == 0.42);
    for (auto kind : {StrategyKind::acquaintance, StrategyKind::e1, StrategyKind::e2}) {
        const double param = invert_coverage(dist, kind, 0.3);
        CHECK(near(coverage(dist, {kind, param}), 0.3, 1e-9));
        CHECK_THROWS_AS(invert_coverage(dist, kind, 0.9999), std::invalid_argument);
    }

    const auto curve = tau_curve(dist, 0.5, StrategyKind::acquaintance, {0.3, 0.9999});
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].achievable);
    CHECK(near(curve[0].result.tau, 0.745207676642, 1e-9));
    CHECK_FALSE(curve[1].achievable);

    // dispatch by parsed spec string agrees with the direct calls
    CHECK(near(theory_for(dist, 0.5, StrategySpec::parse("e2:alpha=0.7")).R,
               0.347127665266, 1e-9));
    CHECK(near(theory_for(dist, 0.5, StrategySpec::parse("uniform:v=0.3")).tau,
               0.822064868205, 1e-9));
}
