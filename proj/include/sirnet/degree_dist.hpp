#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sirnet/rng.hpp"

namespace sirnet {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double second_moment = 0.0;
};

/// Where a distribution came from; carried along for reporting/config echo.
struct Provenance {
    enum class Kind { poisson, power_law, explicit_pmf, empirical };
    Kind kind = Kind::explicit_pmf;
    std::string detail; // human-readable parameter summary
};

/// Finitely supported degree distribution. The pmf is stored densely by
/// degree (index d = P(D=d)); construction renormalizes and validates:
/// probabilities non-negative, total mass positive, mean strictly positive.
///
/// Note: a point mass at degree 2 is accepted (several small fixtures need
/// it); the degenerate branching-process consequences are flagged downstream
/// by the fixed-point solver rather than rejected here.
class DegreeDistribution {
public:
    DegreeDistribution(std::vector<double> pmf, Provenance prov);

    const std::vector<double>& pmf() const { return pmf_; }
    int max_degree() const { return static_cast<int>(pmf_.size()) - 1; }
    double prob(int d) const {
        return (d >= 0 && d < static_cast<int>(pmf_.size())) ? pmf_[d] : 0.0;
    }

    Moments moments() const;

    /// Size-biased transform p~_j = j p_j / mu (degree-0 mass vanishes).
    DegreeDistribution size_biased() const;

    /// f_D(t) = sum_j p_j t^j on [0,1]; throws std::invalid_argument outside.
    double pgf(double t) const;
    /// f'_D(t) = sum_j j p_j t^(j-1).
    double pgf_prime(double t) const;

    /// One draw by inversion of the cumulative table.
    int sample(Rng& rng) const;

    const Provenance& provenance() const { return prov_; }

private:
    std::vector<double> pmf_;
    std::vector<double> cdf_;
    Provenance prov_;
};

struct DegreeSequence {
    std::vector<int> degrees;
    std::int64_t n() const { return static_cast<std::int64_t>(degrees.size()); }
    std::int64_t degree_sum() const;
};

/// Poisson(lambda) truncated at the smallest D_max with tail mass < mass_tol,
/// then renormalized.
DegreeDistribution poisson(double lambda, double mass_tol = 1e-12);

/// p_d proportional to d^(-exponent) on [1, d_max], with optional low-degree
/// mass-weight overrides. If target_mean is given, one scalar multiplying all
/// override weights is solved for by monotone bisection so the mean matches
/// target_mean within 1e-9; infeasible targets raise std::invalid_argument
/// reporting the achievable range.
DegreeDistribution power_law(double exponent, int d_max,
                             const std::map<int, double>& low_degree_overrides = {},
                             std::optional<double> target_mean = std::nullopt);

DegreeDistribution explicit_distribution(const std::vector<std::pair<int, double>>& entries);

/// Load `degree,probability` CSV (header required).
DegreeDistribution load_distribution_csv(const std::string& path);

/// n i.i.d. draws; an odd degree total is fixed by incrementing the degree of
/// one uniformly chosen vertex.
DegreeSequence sample_degree_sequence(const DegreeDistribution& dist, std::int64_t n, Rng& rng);

/// Parse a distribution spec string:
///   poisson:lambda=6
///   powerlaw:exp=3.5,dmax=200[,mean=6]
///   explicit:path=degrees.csv
/// The powerlaw form with mean= uses the calibrated default low-degree
/// plateau (equal weights on degrees 1..10) as override set.
DegreeDistribution parse_dist_spec(const std::string& spec);

} // namespace sirnet
