#include "sirnet/degree_dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sirnet/errors.hpp"

namespace sirnet {

namespace {

void trim_trailing_zeros(std::vector<double>& pmf) {
    while (pmf.size() > 1 && pmf.back() == 0.0) pmf.pop_back();
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
    }
}

} // namespace

DegreeDistribution::DegreeDistribution(std::vector<double> pmf, Provenance prov)
    : pmf_(std::move(pmf)), prov_(std::move(prov)) {
    if (pmf_.empty()) throw std::invalid_argument("degree distribution: empty pmf");
    double total = 0.0;
    for (std::size_t d = 0; d < pmf_.size(); ++d) {
        if (!(pmf_[d] >= 0.0) || !std::isfinite(pmf_[d]))
            throw std::invalid_argument("degree distribution: negative or non-finite mass at degree " +
                                        std::to_string(d));
        total += pmf_[d];
    }
    if (total <= 0.0) throw std::invalid_argument("degree distribution: zero total mass");
    for (double& x : pmf_) x /= total;
    trim_trailing_zeros(pmf_);

    double mean = 0.0;
    for (std::size_t d = 0; d < pmf_.size(); ++d) mean += static_cast<double>(d) * pmf_[d];
    if (mean <= 0.0)
        throw std::invalid_argument("degree distribution: mean must be positive (all mass at degree 0)");

    cdf_.resize(pmf_.size());
    double acc = 0.0;
    for (std::size_t d = 0; d < pmf_.size(); ++d) {
        acc += pmf_[d];
        cdf_[d] = acc;
    }
    cdf_.back() = 1.0; // guard the binary search against rounding shortfall
}

Moments DegreeDistribution::moments() const {
    double mean = 0.0, second = 0.0;
    for (std::size_t d = 0; d < pmf_.size(); ++d) {
        const double dd = static_cast<double>(d);
        mean += dd * pmf_[d];
        second += dd * dd * pmf_[d];
    }
    return {mean, second - mean * mean, second};
}

DegreeDistribution DegreeDistribution::size_biased() const {
    const double mu = moments().mean;
    std::vector<double> biased(pmf_.size(), 0.0);
    for (std::size_t d = 1; d < pmf_.size(); ++d)
        biased[d] = static_cast<double>(d) * pmf_[d] / mu;
    Provenance prov{Provenance::Kind::explicit_pmf, "size_biased(" + prov_.detail + ")"};
    return DegreeDistribution(std::move(biased), std::move(prov));
}

double DegreeDistribution::pgf(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("pgf: t must lie in [0,1]");
    // Horner from the top degree; exact finite sum
    double acc = 0.0;
    for (std::size_t d = pmf_.size(); d-- > 0;) acc = acc * t + pmf_[d];
    return acc;
}

double DegreeDistribution::pgf_prime(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("pgf_prime: t must lie in [0,1]");
    double acc = 0.0;
    for (std::size_t d = pmf_.size(); d-- > 1;)
        acc = acc * t + static_cast<double>(d) * pmf_[d];
    return acc;
}

int DegreeDistribution::sample(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin());
}

std::int64_t DegreeSequence::degree_sum() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
}

DegreeDistribution poisson(double lambda, double mass_tol) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson: lambda must be positive");
    if (!(mass_tol > 0.0 && mass_tol < 1.0))
        throw std::invalid_argument("poisson: mass_tol must lie in (0,1)");
    // grow support until the remaining tail is below mass_tol
    std::vector<double> pmf;
    double term = std::exp(-lambda); // P(D=0)
    double cum = 0.0;
    int d = 0;
    for (;;) {
        pmf.push_back(term);
        cum += term;
        if (1.0 - cum < mass_tol) break;
        ++d;
        term *= lambda / static_cast<double>(d);
        if (d > 10000000)
            throw NumericalError("poisson: truncation did not terminate");
    }
    std::ostringstream detail;
    detail << "poisson(lambda=" << lambda << ",mass_tol=" << mass_tol << ")";
    return DegreeDistribution(std::move(pmf), {Provenance::Kind::poisson, detail.str()});
}

DegreeDistribution power_law(double exponent, int d_max,
                             const std::map<int, double>& low_degree_overrides,
                             std::optional<double> target_mean) {
    if (!(exponent > 2.0)) throw std::invalid_argument("power_law: exponent must exceed 2");
    if (d_max < 2) throw std::invalid_argument("power_law: d_max must be at least 2");
    for (const auto& [d, w] : low_degree_overrides) {
        if (d < 1 || d > d_max)
            throw std::invalid_argument("power_law: override degree " + std::to_string(d) +
                                        " outside [1, d_max]");
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("power_law: override weight must be finite and non-negative");
    }

    auto weights_for = [&](double s) {
        std::vector<double> w(static_cast<std::size_t>(d_max) + 1, 0.0);
        for (int d = 1; d <= d_max; ++d)
            w[d] = std::pow(static_cast<double>(d), -exponent);
        for (const auto& [d, ow] : low_degree_overrides) w[d] = s * ow;
        return w;
    };
    auto mean_of = [](const std::vector<double>& w) {
        double tot = 0.0, wsum = 0.0;
        for (std::size_t d = 0; d < w.size(); ++d) {
            tot += static_cast<double>(d) * w[d];
            wsum += w[d];
        }
        return tot / wsum;
    };

    std::ostringstream detail;
    detail << "power_law(exp=" << exponent << ",dmax=" << d_max;
    if (!low_degree_overrides.empty()) {
        detail << ",overrides={";
        bool first = true;
        for (const auto& [d, w] : low_degree_overrides) {
            if (!first) detail << " ";
            first = false;
            detail << d << ":" << w;
        }
        detail << "}";
    }

    double scale = 1.0;
    if (target_mean) {
        if (low_degree_overrides.empty())
            throw std::invalid_argument("power_law: target_mean requires low-degree overrides to adjust");
        // mean(s) = (s*A1 + B1)/(s*A0 + B0) is monotone in s; bracket and bisect.
        const double m_zero = mean_of(weights_for(0.0));
        double hi = 1.0;
        while (hi < 1e12 && ((mean_of(weights_for(hi)) > *target_mean) == (m_zero > *target_mean)))
            hi *= 2.0;
        const double m_hi = mean_of(weights_for(hi));
        const double lo_mean = std::min(m_zero, m_hi), hi_mean = std::max(m_zero, m_hi);
        if (!(*target_mean <= hi_mean && *target_mean >= lo_mean)) {
            std::ostringstream err;
            err << "power_law: target mean " << *target_mean
                << " unreachable with the given overrides (achievable range ["
                << lo_mean << ", " << hi_mean << "])";
            throw std::invalid_argument(err.str());
        }
        double lo = 0.0;
        const bool decreasing = m_zero > *target_mean; // mean falls as s grows
        for (int it = 0; it < 300; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double m = mean_of(weights_for(mid));
            if ((m > *target_mean) == decreasing)
                lo = mid;
            else
                hi = mid;
        }
        scale = 0.5 * (lo + hi);
        const double achieved = mean_of(weights_for(scale));
        if (std::abs(achieved - *target_mean) > 1e-9)
            throw NumericalError("power_law: bisection failed to reach target mean");
        detail << ",mean=" << *target_mean;
    }
    detail << ")";
    return DegreeDistribution(weights_for(scale), {Provenance::Kind::power_law, detail.str()});
}

DegreeDistribution explicit_distribution(const std::vector<std::pair<int, double>>& entries) {
    if (entries.empty()) throw std::invalid_argument("explicit distribution: no entries");
    int dmax = 0;
    for (const auto& [d, p] : entries) {
        if (d < 0) throw std::invalid_argument("explicit distribution: negative degree");
        dmax = std::max(dmax, d);
    }
    std::vector<double> pmf(static_cast<std::size_t>(dmax) + 1, 0.0);
    for (const auto& [d, p] : entries) pmf[d] += p;
    return DegreeDistribution(std::move(pmf), {Provenance::Kind::explicit_pmf, "explicit"});
}

DegreeDistribution load_distribution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open distribution file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty distribution file '" + path + "'");
    // tolerate an optional leading config/comment block
    while (!line.empty() && line[0] == '#') {
        if (!std::getline(in, line))
            throw std::invalid_argument("distribution file '" + path + "' has no header row");
    }
    if (line != "degree,probability")
        throw std::invalid_argument("distribution file '" + path +
                                    "': expected header 'degree,probability', got '" + line + "'");
    std::vector<std::pair<int, double>> entries;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("distribution file '" + path + "': malformed row '" + line + "'");
        const int d = static_cast<int>(parse_int(line.substr(0, comma), "degree"));
        const double p = parse_double(line.substr(comma + 1), "probability");
        entries.emplace_back(d, p);
    }
    auto dist = explicit_distribution(entries);
    return DegreeDistribution(dist.pmf(), {Provenance::Kind::explicit_pmf, "explicit(path=" + path + ")"});
}

DegreeSequence sample_degree_sequence(const DegreeDistribution& dist, std::int64_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_degree_sequence: n must be at least 1");
    DegreeSequence seq;
    seq.degrees.resize(static_cast<std::size_t>(n));
    std::int64_t total = 0;
    for (auto& d : seq.degrees) {
        d = dist.sample(rng);
        total += d;
    }
    if (total % 2 != 0) {
        // parity fix: bump one uniformly chosen vertex by one
        const auto idx = rng.uniform_index(static_cast<std::uint64_t>(n));
        seq.degrees[static_cast<std::size_t>(idx)] += 1;
    }
    return seq;
}

namespace {

// split "a=1,b=2" into key/value pairs
std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed key=value item '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

} // namespace

DegreeDistribution parse_dist_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("distribution spec '" + spec +
                                    "' must look like kind:key=value[,...]");
    const std::string kind = spec.substr(0, colon);
    const auto kv = parse_kv(spec.substr(colon + 1));
    auto require = [&](const char* key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("distribution spec '" + spec + "' missing '" +
                                        std::string(key) + "='");
        return it->second;
    };

    if (kind == "poisson") {
        return poisson(parse_double(require("lambda"), "lambda"));
    }
    if (kind == "powerlaw") {
        const double exponent = parse_double(require("exp"), "exp");
        const int dmax = static_cast<int>(parse_int(require("dmax"), "dmax"));
        std::optional<double> mean;
        std::map<int, double> overrides;
        if (kv.count("mean")) {
            mean = parse_double(kv.at("mean"), "mean");
            // calibrated default: equal-weight plateau on degrees 1..10, scaled
            // to hit the requested mean (reproduces the reference heavy-tail
            // distribution: mean 6 -> variance 18.90)
            for (int d = 1; d <= 10 && d <= dmax; ++d) overrides[d] = 1.0;
        }
        return power_law(exponent, dmax, overrides, mean);
    }
    if (kind == "explicit") {
        return load_distribution_csv(require("path"));
    }
    throw std::invalid_argument("unknown distribution kind '" + kind + "'");
}

} // namespace sirnet
