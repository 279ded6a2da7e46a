#include "sirnet/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sirnet/errors.hpp"
#include "sirnet/format.hpp"

namespace sirnet {

namespace {

double binom_pmf(int n, double x, int j) {
    if (j < 0 || j > n) return 0.0;
    if (x <= 0.0) return j == 0 ? 1.0 : 0.0;
    if (x >= 1.0) return j == n ? 1.0 : 0.0;
    const double lg = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
    return std::exp(lg + j * std::log(x) + (n - j) * std::log1p(-x));
}

// All four strategies share one offspring shape: pick a size-biased contact
// of degree k with weight w_k; with probability gate_k it is susceptible and
// then infects Bi(k-1, q_k) of its other neighbours, otherwise it infects
// nobody. The generating function is
//   g(t) = sum_k w_k [ (1 - gate_k) + gate_k (1 - q_k (1 - t))^(k-1) ].
struct OffspringModel {
    std::vector<int> degree;
    std::vector<double> weight, gate, q;

    double eval(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < degree.size(); ++i) {
            const int k = degree[i];
            s += weight[i] * ((1.0 - gate[i]) +
                              gate[i] * std::pow(1.0 - q[i] * (1.0 - t), k - 1));
        }
        return s;
    }
    double deriv(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < degree.size(); ++i) {
            const int k = degree[i];
            if (k < 2) continue;
            s += weight[i] * gate[i] * (k - 1) * q[i] *
                 std::pow(1.0 - q[i] * (1.0 - t), k - 2);
        }
        return s;
    }
    double mean() const {
        double s = 0.0;
        for (std::size_t i = 0; i < degree.size(); ++i)
            s += weight[i] * gate[i] * (degree[i] - 1) * q[i];
        return s;
    }
    std::vector<double> pmf() const {
        int kmax = 1;
        for (int k : degree) kmax = std::max(kmax, k);
        std::vector<double> out(static_cast<std::size_t>(kmax), 0.0);
        for (std::size_t i = 0; i < degree.size(); ++i) {
            const int k = degree[i];
            out[0] += weight[i] * (1.0 - gate[i]);
            for (int j = 0; j <= k - 1; ++j)
                out[static_cast<std::size_t>(j)] += weight[i] * gate[i] * binom_pmf(k - 1, q[i], j);
        }
        while (out.size() > 1 && out.back() == 0.0) out.pop_back();
        return out;
    }
};

std::vector<std::pair<int, double>> size_biased_support(const DegreeDistribution& dist) {
    std::vector<std::pair<int, double>> sb;
    const DegreeDistribution tilde = dist.size_biased();
    const auto& pmf = tilde.pmf();
    for (int k = 1; k < static_cast<int>(pmf.size()); ++k)
        if (pmf[static_cast<std::size_t>(k)] > 0.0)
            sb.emplace_back(k, pmf[static_cast<std::size_t>(k)]);
    return sb;
}

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("transmission probability p must lie in [0,1]");
}

OffspringModel base_model(const DegreeDistribution& dist, double p) {
    OffspringModel m;
    for (const auto& [k, w] : size_biased_support(dist)) {
        m.degree.push_back(k);
        m.weight.push_back(w);
        m.gate.push_back(1.0);
        m.q.push_back(p);
    }
    return m;
}

OffspringModel acq_model(const DegreeDistribution& dist, double p, double c, double alpha) {
    OffspringModel m;
    for (const auto& [k, w] : size_biased_support(dist)) {
        const double esc = std::exp(-c / k);
        m.degree.push_back(k);
        m.weight.push_back(w * esc / alpha);
        m.gate.push_back(std::pow(alpha, k - 1));
        m.q.push_back(p * esc);
    }
    return m;
}

OffspringModel edge_model(const DegreeDistribution& dist, double p, double alpha,
                          EdgeVariant variant) {
    OffspringModel m;
    const double x = variant == EdgeVariant::e1 ? p * alpha : p;
    for (const auto& [k, w] : size_biased_support(dist)) {
        m.degree.push_back(k);
        m.weight.push_back(w);
        m.gate.push_back(std::pow(alpha, k - 1));
        m.q.push_back(x);
    }
    return m;
}

TheoryResult solve_model(const OffspringModel& model, const StrategySpec& spec, double v,
                         const std::function<double(double)>& pi_of) {
    const FixedPointResult fp = smallest_fixed_point(
        [&](double t) { return model.eval(t); }, [&](double t) { return model.deriv(t); });
    TheoryResult res;
    res.strategy = spec;
    res.v = v;
    res.R = model.mean();
    res.pi_tilde = fp.value;
    res.pi = std::clamp(pi_of(fp.value), 0.0, 1.0);
    res.tau = 1.0 - res.pi;
    res.residual = fp.residual;
    res.degenerate = fp.degenerate;
    return res;
}

constexpr double kAcqIntensityCap = 100.0; // naming intensity beyond this is saturated

} // namespace

FixedPointResult smallest_fixed_point(const std::function<double(double)>& f,
                                      const std::function<double(double)>& fprime) {
    FixedPointResult res;
    // convex monotone map with f(0)=0 and slope 1 at 0 is the identity
    if (std::abs(f(0.0)) < 1e-15 && std::abs(fprime(0.0) - 1.0) < 1e-10) {
        res.degenerate = true;
        res.residual = std::abs(f(0.0));
        return res;
    }
    double t = 0.0;
    long it = 0;
    for (; it < 1000000; ++it) {
        const double next = f(t);
        const bool done = std::abs(next - t) < 1e-14;
        t = next;
        if (done) break;
    }
    for (int k = 0; k < 8; ++k) {
        const double h = f(t) - t;
        const double hp = fprime(t) - 1.0;
        if (std::abs(hp) < 1e-14) break;
        const double cand = t - h / hp;
        if (!(cand >= 0.0 && cand <= 1.0)) break;
        t = cand;
    }
    res.value = std::clamp(t, 0.0, 1.0);
    res.residual = std::abs(f(res.value) - res.value);
    res.iterations = it;
    if (res.residual > 1e-10)
        throw NumericalError("extinction fixed point did not converge (residual=" +
                             fmt_g(res.residual) + ")");
    return res;
}

double r0(const DegreeDistribution& dist, double p) {
    check_p(p);
    const Moments m = dist.moments();
    return p * (m.second_moment - m.mean) / m.mean;
}

TheoryResult base_theory(const DegreeDistribution& dist, double p) {
    check_p(p);
    const OffspringModel model = base_model(dist, p);
    return solve_model(model, {StrategyKind::none, 0.0}, 0.0, [&](double pt) {
        return dist.pgf(1.0 - p * (1.0 - pt));
    });
}

TheoryResult uniform_theory(const DegreeDistribution& dist, double p, double v) {
    check_p(p);
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("uniform coverage must lie in [0,1]");
    const double pe = p * (1.0 - v); // a contact must transmit and find its target unvaccinated
    const OffspringModel model = base_model(dist, pe);
    return solve_model(model, {StrategyKind::uniform, v}, v, [&](double pt) {
        return dist.pgf(1.0 - pe * (1.0 - pt));
    });
}

double acquaintance_alpha(const DegreeDistribution& dist, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("acquaintance intensity c must be >= 0");
    double a = 0.0;
    for (const auto& [k, w] : size_biased_support(dist)) a += w * std::exp(-c / k);
    return std::min(a, 1.0); // guard summation ulps at c = 0; alpha is a probability
}

std::vector<double> acquaintance_offspring(const DegreeDistribution& dist, double p, double c) {
    check_p(p);
    const double alpha = acquaintance_alpha(dist, c);
    return acq_model(dist, p, c, alpha).pmf();
}

TheoryResult acquaintance_theory(const DegreeDistribution& dist, double p, double c) {
    check_p(p);
    if (!(c >= 0.0)) throw std::invalid_argument("acquaintance intensity c must be >= 0");
    const double alpha = acquaintance_alpha(dist, c);
    const double fa = dist.pgf(alpha);
    const OffspringModel model = acq_model(dist, p, c, alpha);
    return solve_model(model, {StrategyKind::acquaintance, c}, 1.0 - fa, [&](double pt) {
        // root vertex of degree j: unvaccinated w.p. alpha^j, each edge dies
        // out w.p. 1 - p e^{-c/j} (1 - pi~)
        double num = dist.prob(0);
        const auto& pmf = dist.pmf();
        for (int j = 1; j < static_cast<int>(pmf.size()); ++j) {
            if (pmf[static_cast<std::size_t>(j)] == 0.0) continue;
            num += pmf[static_cast<std::size_t>(j)] * std::pow(alpha, j) *
                   std::pow(1.0 - p * std::exp(-c / j) * (1.0 - pt), j);
        }
        return num / fa;
    });
}

std::vector<double> edgewise_offspring(const DegreeDistribution& dist, double p, double alpha,
                                       EdgeVariant variant) {
    check_p(p);
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("edgewise alpha must lie in [0,1]");
    return edge_model(dist, p, alpha, variant).pmf();
}

TheoryResult edgewise_theory(const DegreeDistribution& dist, double p, double alpha,
                             EdgeVariant variant) {
    check_p(p);
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("edgewise alpha must lie in [0,1]");
    const double fa = dist.pgf(alpha);
    const double x = variant == EdgeVariant::e1 ? p * alpha : p;
    const OffspringModel model = edge_model(dist, p, alpha, variant);
    const StrategySpec spec{variant == EdgeVariant::e1 ? StrategyKind::e1 : StrategyKind::e2, alpha};
    return solve_model(model, spec, 1.0 - fa, [&](double pt) {
        return dist.pgf(alpha * (1.0 - x * (1.0 - pt))) / fa;
    });
}

double coverage(const DegreeDistribution& dist, const StrategySpec& spec) {
    switch (spec.kind) {
        case StrategyKind::none:
            return 0.0;
        case StrategyKind::uniform:
            return spec.param;
        case StrategyKind::acquaintance:
            return 1.0 - dist.pgf(acquaintance_alpha(dist, spec.param));
        case StrategyKind::e1:
        case StrategyKind::e2:
            return 1.0 - dist.pgf(spec.param);
    }
    throw std::invalid_argument("coverage: bad strategy kind");
}

namespace {

// R as a function of the raw strategy parameter, no fixed point needed
double reproduction_at(const DegreeDistribution& dist, double p, StrategyKind kind, double param) {
    switch (kind) {
        case StrategyKind::uniform:
            return (1.0 - param) * r0(dist, p);
        case StrategyKind::acquaintance:
            return acq_model(dist, p, param, acquaintance_alpha(dist, param)).mean();
        case StrategyKind::e1:
        case StrategyKind::e2:
            return edge_model(dist, p, param, kind == StrategyKind::e1 ? EdgeVariant::e1
                                                                       : EdgeVariant::e2)
                .mean();
        case StrategyKind::none:
            return r0(dist, p);
    }
    throw std::invalid_argument("reproduction_at: bad strategy kind");
}

} // namespace

CriticalCoverage critical_coverage(const DegreeDistribution& dist, double p, StrategyKind kind) {
    check_p(p);
    const double R0 = r0(dist, p);
    if (kind == StrategyKind::none)
        throw std::invalid_argument("critical_coverage: pick a vaccination strategy");
    if (kind == StrategyKind::uniform) {
        if (R0 <= 1.0) return {0.0, 0.0};
        const double vc = 1.0 - 1.0 / R0;
        return {vc, vc};
    }
    if (R0 <= 1.0) return {kind == StrategyKind::acquaintance ? 0.0 : 1.0, 0.0};

    // acquaintance: R decreases in c on [0, cap]; edgewise: R increases in alpha
    const bool increasing = kind != StrategyKind::acquaintance;
    const double lo = 0.0;
    const double hi = kind == StrategyKind::acquaintance ? kAcqIntensityCap : 1.0;
    double prev = reproduction_at(dist, p, kind, lo);
    for (int i = 1; i <= 64; ++i) {
        const double x = lo + (hi - lo) * i / 64.0;
        const double cur = reproduction_at(dist, p, kind, x);
        const bool ok = increasing ? cur >= prev - 1e-12 : cur <= prev + 1e-12;
        if (!ok)
            throw NumericalError("reproduction number is not monotone in the strategy parameter");
        prev = cur;
    }
    const double r_lo = reproduction_at(dist, p, kind, lo);
    const double r_hi = reproduction_at(dist, p, kind, hi);
    const double r_min = increasing ? r_lo : r_hi;
    if (r_min > 1.0)
        throw NumericalError("strategy cannot reach criticality: R stays above 1 (min R=" +
                             fmt_g(r_min) + ")");

    double a = lo, b = hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        const double r = reproduction_at(dist, p, kind, mid);
        const bool left_of_root = increasing ? r < 1.0 : r > 1.0;
        (left_of_root ? a : b) = mid;
        if (b - a < 1e-14 * std::max(1.0, hi)) break;
    }
    CriticalCoverage out;
    out.param_star = 0.5 * (a + b);
    out.vc = coverage(dist, {kind, out.param_star});
    return out;
}

double invert_coverage(const DegreeDistribution& dist, StrategyKind kind, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("coverage must lie in [0,1]");
    switch (kind) {
        case StrategyKind::none:
            if (v != 0.0) throw std::invalid_argument("strategy none has coverage 0");
            return 0.0;
        case StrategyKind::uniform:
            return v;
        case StrategyKind::acquaintance: {
            const double vmax = coverage(dist, {kind, kAcqIntensityCap});
            if (v > vmax + 1e-12)
                throw std::invalid_argument("coverage " + fmt_g(v) +
                                            " not reachable by acquaintance vaccination (max " +
                                            fmt_g(vmax) + " at c=" + fmt_g(kAcqIntensityCap) + ")");
            double a = 0.0, b = kAcqIntensityCap;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (a + b);
                (coverage(dist, {kind, mid}) < v ? a : b) = mid;
            }
            return 0.5 * (a + b);
        }
        case StrategyKind::e1:
        case StrategyKind::e2: {
            const double vmax = 1.0 - dist.prob(0); // isolated vertices cannot be reached
            if (v > vmax + 1e-12)
                throw std::invalid_argument("coverage " + fmt_g(v) +
                                            " not reachable by edgewise vaccination (max " +
                                            fmt_g(vmax) + ")");
            double a = 0.0, b = 1.0; // coverage decreases in alpha
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (a + b);
                (coverage(dist, {kind, mid}) > v ? a : b) = mid;
            }
            return 0.5 * (a + b);
        }
    }
    throw std::invalid_argument("invert_coverage: bad strategy kind");
}

TheoryResult theory_for(const DegreeDistribution& dist, double p, const StrategySpec& spec) {
    switch (spec.kind) {
        case StrategyKind::none: return base_theory(dist, p);
        case StrategyKind::uniform: return uniform_theory(dist, p, spec.param);
        case StrategyKind::acquaintance: return acquaintance_theory(dist, p, spec.param);
        case StrategyKind::e1: return edgewise_theory(dist, p, spec.param, EdgeVariant::e1);
        case StrategyKind::e2: return edgewise_theory(dist, p, spec.param, EdgeVariant::e2);
    }
    throw std::invalid_argument("theory_for: bad strategy kind");
}

TheoryResult theory_at_coverage(const DegreeDistribution& dist, double p, StrategyKind kind,
                                double v) {
    return theory_for(dist, p, {kind, invert_coverage(dist, kind, v)});
}

std::vector<TauPoint> tau_curve(const DegreeDistribution& dist, double p, StrategyKind kind,
                                const std::vector<double>& coverages) {
    std::vector<TauPoint> curve;
    curve.reserve(coverages.size());
    for (double v : coverages) {
        TauPoint pt;
        pt.v = v;
        double param = 0.0;
        try {
            param = invert_coverage(dist, kind, v);
            pt.achievable = true;
        } catch (const std::invalid_argument&) {
            pt.achievable = false;
        }
        if (pt.achievable) pt.result = theory_for(dist, p, {kind, param});
        curve.push_back(pt);
    }
    return curve;
}

} // namespace sirnet
