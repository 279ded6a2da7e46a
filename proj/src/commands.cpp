#include "sirnet/commands.hpp"

#include <cmath>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sirnet/degree_dist.hpp"
#include "sirnet/epidemic.hpp"
#include "sirnet/format.hpp"
#include "sirnet/graph.hpp"
#include "sirnet/rng.hpp"
#include "sirnet/theory.hpp"
#include "sirnet/vaccine.hpp"

namespace sirnet {

std::vector<double> GridSpec::points() const {
    if (empty()) return {};
    std::vector<double> pts;
    for (int i = 0;; ++i) {
        const double x = lo + i * step;
        if (x > hi + 1e-9 * step) break;
        pts.push_back(x);
    }
    return pts;
}

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid '" + text + "': expected lo:hi:step");
    try {
        std::size_t u1 = 0, u2 = 0, u3 = 0;
        const std::string s1 = text.substr(0, c1);
        const std::string s2 = text.substr(c1 + 1, c2 - c1 - 1);
        const std::string s3 = text.substr(c2 + 1);
        g.lo = std::stod(s1, &u1);
        g.hi = std::stod(s2, &u2);
        g.step = std::stod(s3, &u3);
        if (u1 != s1.size() || u2 != s2.size() || u3 != s3.size())
            throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw std::invalid_argument("grid '" + text + "': expected lo:hi:step with numeric parts");
    }
    if (!(g.step > 0.0) || g.hi < g.lo)
        throw std::invalid_argument("grid '" + text + "': need step > 0 and hi >= lo");
    return g;
}

std::string GridSpec::to_string() const {
    return fmt_g(lo) + ":" + fmt_g(hi) + ":" + fmt_g(step);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

StrategyKind kind_from_name(const std::string& name) {
    if (name == "uniform") return StrategyKind::uniform;
    if (name == "acq") return StrategyKind::acquaintance;
    if (name == "e1") return StrategyKind::e1;
    if (name == "e2") return StrategyKind::e2;
    throw std::invalid_argument("unknown strategy name '" + name +
                                "' (expected uniform|acq|e1|e2)");
}

const std::vector<std::string> kAllStrategies = {"uniform", "acq", "e1", "e2"};

std::vector<std::string> expand_strategies(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& name : names) {
        if (name == "all") {
            out.insert(out.end(), kAllStrategies.begin(), kAllStrategies.end());
        } else {
            kind_from_name(name); // validate
            out.push_back(name);
        }
    }
    return out;
}

} // namespace

std::string RunConfig::config_line() const {
    std::vector<std::string> kv;
    auto add = [&](const char* key, const std::string& value) {
        kv.push_back(std::string(key) + "=" + csv_quote(value));
    };
    add("command", command);
    add("dist", dist);
    const bool wants_mc = command == "simulate" || command == "sweep";
    if (command != "generate") add("p", fmt_g(p));
    if (command == "simulate") add("strategy", strategy);
    if (command == "theory" || command == "sweep") add("strategies", join(strategies, ','));
    if (wants_mc || command == "generate") {
        add("n", std::to_string(n));
        if (wants_mc) add("replicates", std::to_string(replicates));
        add("seed", std::to_string(seed));
    }
    if (wants_mc) {
        add("threshold", threshold);
        add("model", graph_model);
    }
    if (wants_mc || command == "generate") add("max_attempts", std::to_string(max_attempts));
    if ((command == "theory" || command == "sweep") && !grid.empty()) add("grid", grid.to_string());
    if (!out.empty()) add("out", out);
    return "# config," + join(kv, ',');
}

RunConfig RunConfig::from_config_line(const std::string& line) {
    const auto fields = split_csv_line(line);
    if (fields.empty() || fields.front() != "# config")
        throw std::invalid_argument("not a config line: '" + line + "'");
    RunConfig cfg;
    auto whole = [](const std::string& text) {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad integer '" + text + "'");
        return v;
    };
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config entry '" + fields[i] + "' is not key=value");
        const std::string key = fields[i].substr(0, eq);
        const std::string value = fields[i].substr(eq + 1);
        if (key == "command") cfg.command = value;
        else if (key == "dist") cfg.dist = value;
        else if (key == "p") cfg.p = std::stod(value);
        else if (key == "strategy") cfg.strategy = value;
        else if (key == "strategies") {
            cfg.strategies.clear();
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.strategies.push_back(item);
        } else if (key == "n") cfg.n = whole(value);
        else if (key == "replicates") cfg.replicates = whole(value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "threshold") cfg.threshold = value;
        else if (key == "model") cfg.graph_model = value;
        else if (key == "max_attempts") cfg.max_attempts = whole(value);
        else if (key == "grid") cfg.grid = GridSpec::parse(value);
        else if (key == "out") cfg.out = value;
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return cfg;
}

namespace {

std::string theory_row(const std::string& name, const TheoryResult& r) {
    std::ostringstream os;
    os << name << ',' << fmt_g(r.strategy.param) << ',' << fmt_g(r.v) << ',' << fmt_g(r.R) << ','
       << fmt_g(r.pi_tilde) << ',' << fmt_g(r.pi) << ',' << fmt_g(r.tau) << ','
       << fmt_g(r.residual);
    return os.str();
}

} // namespace

void cmd_theory(const RunConfig& cfg, std::ostream& out) {
    const auto names = expand_strategies(cfg.strategies);
    if (names.empty()) throw std::invalid_argument("no strategies");
    const DegreeDistribution dist = parse_dist_spec(cfg.dist);

    out << cfg.config_line() << '\n';
    out << "strategy,param,v,R,pi_tilde,pi,tau,residual\n";
    if (!cfg.grid.empty()) {
        const auto vs = cfg.grid.points();
        for (const auto& name : names) {
            const StrategyKind kind = kind_from_name(name);
            const auto curve = tau_curve(dist, cfg.p, kind, vs);
            bool noted = false;
            for (const auto& pt : curve) {
                if (pt.achievable) {
                    out << theory_row(name, pt.result) << '\n';
                } else {
                    out << name << ",NA," << fmt_g(pt.v) << ",NA,NA,NA,NA,NA\n";
                    if (!noted) {
                        std::cerr << "note: coverage " << fmt_g(pt.v) << " and beyond exceeds what "
                                  << name << " vaccination can reach on this degree distribution\n";
                        noted = true;
                    }
                }
            }
        }
    }
    for (const auto& name : names) {
        const auto cc = critical_coverage(dist, cfg.p, kind_from_name(name));
        out << "# vc," << name << ',' << fmt_g(cc.vc) << '\n';
    }
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const DegreeDistribution dist = parse_dist_spec(cfg.dist);
    RunOptions opt;
    opt.p = cfg.p;
    opt.strategy = StrategySpec::parse(cfg.strategy);
    opt.graph_model = parse_graph_model(cfg.graph_model);
    opt.max_attempts = cfg.max_attempts;
    opt.policy = ThresholdPolicy::parse(cfg.threshold);
    const ReplicateSummary summary = run_replicates(dist, cfg.n, cfg.replicates, cfg.seed, opt);

    out << cfg.config_line() << '\n';
    out << "replicate,seed,n,n_unvacc,V,final_size,fraction,major\n";
    for (const auto& rec : summary.records) {
        out << rec.replicate << ',' << rec.seed << ',' << rec.n << ',' << rec.n_unvacc << ','
            << rec.V << ',' << rec.final_size << ',' << fmt_g(rec.fraction) << ','
            << (rec.major ? 1 : 0) << '\n';
    }
    for (const auto& f : summary.failures)
        out << "# failure," << f.replicate << ',' << csv_quote(f.message) << '\n';
    out << "# pmajor," << fmt_g(summary.p_major) << ",tauhat,"
        << (summary.has_tau_hat ? fmt_g(summary.tau_hat) : std::string("NA")) << '\n';
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto names = expand_strategies(cfg.strategies);
    if (names.empty()) throw std::invalid_argument("no strategies");
    if (cfg.grid.empty()) throw std::invalid_argument("sweep needs a --grid of coverages");
    const DegreeDistribution dist = parse_dist_spec(cfg.dist);
    const auto vs = cfg.grid.points();

    out << cfg.config_line() << '\n';
    out << "strategy,v,tau_theory,tau_hat,p_major,gap\n";
    std::int64_t cell = 0;
    for (const auto& name : names) {
        const StrategyKind kind = kind_from_name(name);
        bool noted = false;
        for (double v : vs) {
            const std::int64_t cell_index = cell++;
            double param = 0.0;
            bool achievable = true;
            try {
                param = invert_coverage(dist, kind, v);
            } catch (const std::invalid_argument&) {
                achievable = false;
            }
            if (!achievable) {
                out << name << ',' << fmt_g(v) << ",NA,NA,NA,NA\n";
                if (!noted) {
                    std::cerr << "note: coverage " << fmt_g(v) << " and beyond exceeds what " << name
                              << " vaccination can reach on this degree distribution\n";
                    noted = true;
                }
                continue;
            }
            const TheoryResult th = theory_for(dist, cfg.p, {kind, param});
            std::string tau_hat = "NA", p_major = "NA", gap = "NA";
            if (cfg.replicates > 0) {
                RunOptions opt;
                opt.p = cfg.p;
                opt.strategy = {kind, param};
                opt.graph_model = parse_graph_model(cfg.graph_model);
                opt.max_attempts = cfg.max_attempts;
                opt.policy = ThresholdPolicy::parse(cfg.threshold);
                const auto summary =
                    run_replicates(dist, cfg.n, cfg.replicates,
                                   derive_seed(cfg.seed, static_cast<std::uint64_t>(cell_index)), opt);
                p_major = fmt_g(summary.p_major);
                if (summary.has_tau_hat) {
                    tau_hat = fmt_g(summary.tau_hat);
                    gap = fmt_g(std::fabs(th.tau - summary.tau_hat));
                }
            }
            out << name << ',' << fmt_g(v) << ',' << fmt_g(th.tau) << ',' << tau_hat << ','
                << p_major << ',' << gap << '\n';
        }
    }
}

void cmd_generate(const RunConfig& cfg, std::ostream& out) {
    const DegreeDistribution dist = parse_dist_spec(cfg.dist);
    Rng rng(cfg.seed);
    const DegreeSequence seq = sample_degree_sequence(dist, cfg.n, rng);
    const SimpleGraphResult res = configuration_simple(seq, rng, cfg.max_attempts);
    out << cfg.config_line() << '\n';
    write_edge_list(res.graph, out);
}

void run_command(const RunConfig& cfg, std::ostream& out) {
    if (cfg.command == "theory") cmd_theory(cfg, out);
    else if (cfg.command == "simulate") cmd_simulate(cfg, out);
    else if (cfg.command == "sweep") cmd_sweep(cfg, out);
    else if (cfg.command == "generate") cmd_generate(cfg, out);
    else throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

} // namespace sirnet
