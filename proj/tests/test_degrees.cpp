#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "sirnet/degree_dist.hpp"
#include "sirnet/rng.hpp"

using namespace sirnet;

TEST_CASE("poisson truncation keeps twelve digits of mass") {
    const auto d = poisson(6.0);
    CHECK(d.max_degree() == 30);
    CHECK(d.prob(0) == doctest::Approx(0.00247875217666758).epsilon(1e-12));
    const auto m = d.moments();
    CHECK(std::fabs(m.mean - 6.0) < 1e-9);
    CHECK(std::fabs(m.variance - 6.0) < 1e-9);
    CHECK(std::fabs(d.pgf(0.5) - std::exp(-3.0)) < 1e-10);
    CHECK(std::fabs(d.pgf_prime(1.0) - 6.0) < 1e-9);

    CHECK(poisson(0.1).prob(0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
    CHECK(poisson(1.5).max_degree() == 16);
    CHECK_THROWS_AS(poisson(0.0), std::invalid_argument);
    CHECK_THROWS_AS(poisson(-2.0), std::invalid_argument);
}

TEST_CASE("constructor validates and renormalizes") {
    const auto d = explicit_distribution({{1, 2.0}, {3, 1.0}});
    CHECK(d.prob(1) == doctest::Approx(2.0 / 3.0));
    CHECK(d.prob(3) == doctest::Approx(1.0 / 3.0));
    CHECK(d.prob(2) == 0.0);
    CHECK(d.prob(99) == 0.0);
    CHECK(d.max_degree() == 3);

    CHECK_THROWS_AS(DegreeDistribution({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution({0.5, -0.1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution({0.0, 0.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution({1.0}, {}), std::invalid_argument); // mean zero
}

TEST_CASE("size biased reweighting") {
    const auto d = poisson(6.0);
    const auto sb = d.size_biased();
    CHECK(sb.prob(0) == 0.0);
    CHECK(sb.prob(3) == doctest::Approx(3.0 * d.prob(3) / 6.0).epsilon(1e-9));
    CHECK(std::fabs(sb.moments().mean - 7.0) < 1e-9); // E[D^2]/E[D] = 42/6
}

TEST_CASE("pgf matches the closed form and rejects bad arguments") {
    const auto d = poisson(6.0);
    for (double t : {0.0, 0.25, 0.7, 1.0})
        CHECK(std::fabs(d.pgf(t) - std::exp(-6.0 * (1.0 - t))) < 1e-10);
    CHECK(std::fabs(d.pgf_prime(0.5) - 6.0 * std::exp(-3.0)) < 1e-10);
    CHECK_THROWS_AS(d.pgf(1.5), std::invalid_argument);
    CHECK_THROWS_AS(d.pgf_prime(-0.1), std::invalid_argument);
}

TEST_CASE("power law plateau hits the target mean") {
    const auto d = parse_dist_spec("powerlaw:exp=3.5,dmax=200,mean=6");
    const auto m = d.moments();
    CHECK(std::fabs(m.mean - 6.0) < 1e-9);
    CHECK(m.variance == doctest::Approx(18.8990827411378).epsilon(1e-6));
    CHECK(d.prob(0) == 0.0);
    for (int k = 2; k <= 10; ++k)
        CHECK(d.prob(k) == doctest::Approx(d.prob(1)).epsilon(1e-12));
    // tail untouched: pure k^-3.5 decay
    CHECK(d.prob(11) / d.prob(200) == doctest::Approx(std::pow(200.0 / 11.0, 3.5)).epsilon(1e-9));

    const auto bare = power_law(3.5, 200);
    CHECK(bare.moments().mean == doctest::Approx(1.19039048388066).epsilon(1e-9));
}

TEST_CASE("power law override solving and failure modes") {
    const std::map<int, double> ov{{1, 1.0}, {2, 1.0}};
    const auto d = power_law(3.5, 50, ov, 2.0);
    CHECK(std::fabs(d.moments().mean - 2.0) < 1e-9);
    CHECK(d.prob(1) == doctest::Approx(d.prob(2)).epsilon(1e-12));

    CHECK_THROWS_AS(power_law(3.5, 200, ov, 6.0), std::invalid_argument); // out of reach
    CHECK_THROWS_AS(power_law(3.5, 200, {}, 6.0), std::invalid_argument); // nothing to adjust
    CHECK_THROWS_AS(power_law(1.9, 200), std::invalid_argument);
    CHECK_THROWS_AS(power_law(3.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(power_law(3.5, 50, {{0, 1.0}}, std::nullopt), std::invalid_argument);
}

TEST_CASE("explicit csv loading") {
    const char* path = "test_degrees_tmp.csv";
    {
        std::ofstream f(path);
        f << "# a comment\ndegree,probability\n1,0.25\n2,0.5\n7,0.25\n";
    }
    const auto d = load_distribution_csv(path);
    CHECK(d.prob(2) == doctest::Approx(0.5));
    CHECK(d.prob(7) == doctest::Approx(0.25));
    CHECK(d.max_degree() == 7);

    {
        std::ofstream f(path);
        f << "deg,prob\n1,1\n";
    }
    CHECK_THROWS_AS(load_distribution_csv(path), std::invalid_argument);
    CHECK_THROWS_AS(load_distribution_csv("no_such_file.csv"), std::invalid_argument);
    std::remove(path);
}

TEST_CASE("dist spec parsing") {
    CHECK(parse_dist_spec("poisson:lambda=6").moments().mean == doctest::Approx(6.0));
    CHECK_THROWS_AS(parse_dist_spec("poisson:lambda=-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dist_spec("poisson:mu=6"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dist_spec("gaussian:mu=0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dist_spec("poisson"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dist_spec("powerlaw:exp=3.5"), std::invalid_argument); // dmax missing
}

TEST_CASE("degree sequence sampling: parity and distributional fit") {
    const auto d = explicit_distribution({{1, 0.3}, {2, 0.5}, {7, 0.2}});
    Rng rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        const auto seq = sample_degree_sequence(d, 101, rng);
        CHECK(seq.n() == 101);
        CHECK(seq.degree_sum() % 2 == 0);
        for (int deg : seq.degrees) {
            const bool in_support = deg == 1 || deg == 2 || deg == 7;
            const bool bumped = deg == 3 || deg == 8; // parity fix adds one
            CHECK((in_support || bumped));
        }
    }

    // chi-square fit of the raw sampler
    const int N = 200000;
    Rng rng2(777);
    std::map<int, int> counts;
    for (int i = 0; i < N; ++i) counts[d.sample(rng2)] += 1;
    const double expect[] = {0.3 * N, 0.5 * N, 0.2 * N};
    const int obs[] = {counts[1], counts[2], counts[7]};
    CHECK(counts[1] + counts[2] + counts[7] == N);
    double chi2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double diff = obs[i] - expect[i];
        chi2 += diff * diff / expect[i];
    }
    boost::math::chi_squared chi(2);
    CHECK(chi2 < boost::math::quantile(chi, 0.999));
}
