#include "iss/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "builders.hpp"
#include "iss/errors.hpp"
#include "iss/hilbert.hpp"
#include "iss/numerics.hpp"
#include "iss/schemes_gauss.hpp"
#include "iss/schemes_projective.hpp"
#include "iss/schemes_stat.hpp"
#include "iss/schemes_uniform.hpp"
#include "iss/schemes_wiener.hpp"
#include "suites.hpp"

namespace iss {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

double param_real(const ExperimentConfig& cfg, const std::string& key, double fallback) {
    auto it = cfg.params.find(key);
    if (it == cfg.params.end()) return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw BadParameter("parameter " + key + " is not a real number: " + it->second);
    }
}

long param_int(const ExperimentConfig& cfg, const std::string& key, long fallback) {
    auto it = cfg.params.find(key);
    if (it == cfg.params.end()) return fallback;
    try {
        std::size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw BadParameter("parameter " + key + " is not an integer: " + it->second);
    }
}

std::vector<double> param_reals(const ExperimentConfig& cfg, const std::string& key,
                                const std::vector<double>& fallback) {
    auto it = cfg.params.find(key);
    if (it == cfg.params.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw BadParameter("parameter " + key + " has a non-numeric entry: " + item);
        }
    }
    if (out.empty()) throw BadParameter("parameter " + key + " is empty");
    return out;
}

std::string param_str(const ExperimentConfig& cfg, const std::string& key,
                      const std::string& fallback) {
    auto it = cfg.params.find(key);
    return it == cfg.params.end() ? fallback : it->second;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", lineno);
        kv[key] = val;
    }
    return kv;
}

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_reports_csv(std::ostream& out, std::vector<TrialReport> reports) {
    std::sort(reports.begin(), reports.end(),
              [](const TrialReport& a, const TrialReport& b) { return a.check < b.check; });
    out << "check,expected,observed,tolerance,pass\n";
    for (const auto& r : reports) {
        out << r.check << "," << format17(r.expected) << "," << format17(r.observed) << ","
            << format17(r.tolerance) << "," << (r.pass ? 1 : 0) << "\n";
    }
}

void emit_dealings_csv(std::ostream& out, const std::vector<Dealing>& deals) {
    out << "trial,secret,participant_index,share_component_index,value\n";
    for (std::size_t t = 0; t < deals.size(); ++t) {
        const Dealing& d = deals[t];
        for (std::size_t p = 0; p < d.shares.size(); ++p) {
            for (std::size_t c = 0; c < d.shares[p].size(); ++c) {
                out << t << "," << format17(d.secret) << "," << p << "," << c << ","
                    << format17(d.shares[p][c]) << "\n";
            }
        }
    }
}

namespace {
const double kPi = std::acos(-1.0);
} // namespace

using namespace builders;

std::vector<Dealing> run_deal(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw BadParameter("trials must be at least 1");
    std::vector<Dealing> out;
    out.reserve(static_cast<std::size_t>(cfg.trials));
    auto each = [&](auto&& fn) {
        for (long t = 0; t < cfg.trials; ++t) {
            Stream rng = substream(cfg.seed, static_cast<std::uint64_t>(t));
            out.push_back(fn(rng));
        }
    };

    const std::string& s = cfg.scheme;
    if (s == "modsum") {
        ModSumScheme sch = modsum_from(cfg);
        each([&](Stream& r) { return modsum_deal(sch, r); });
    } else if (s == "composite") {
        CompositeScheme sch{structure_from(cfg)};
        each([&](Stream& r) { return composite_deal(sch, r); });
    } else if (s == "slope") {
        SlopeScheme sch = slope_from(cfg);
        each([&](Stream& r) { return slope_deal(sch, r); });
    } else if (s == "dyadic-ramp") {
        DyadicRampScheme sch = ramp_from(cfg);
        each([&](Stream& r) { return ramp_deal(sch, r); });
    } else if (s == "projective") {
        ProjectiveScheme sch = projective_from(cfg);
        each([&](Stream& r) { return proj_deal(sch, r); });
    } else if (s == "gauss-threshold") {
        GaussThresholdScheme sch = gauss_from(cfg);
        each([&](Stream& r) { return gauss_deal(sch, r); });
    } else if (s == "gauss-random-degree") {
        RandomDegreeScheme sch = random_degree_from(cfg);
        each([&](Stream& r) { return random_degree_deal(sch, r); });
    } else if (s == "gauss-l2") {
        L2Scheme sch = l2_from(cfg);
        each([&](Stream& r) { return l2_deal(sch, r); });
    } else if (s == "wiener-dense") {
        DenseScheme sch = dense_from(cfg);
        each([&](Stream& r) { return dense_deal(sch, r); });
    } else if (s == "wiener-tree") {
        DenseScheme sch = tree_dense_from(cfg);
        each([&](Stream& r) { return dense_deal(sch, r); });
    } else if (s == "wiener-limit") {
        LimitScheme sch = limit_from(cfg);
        each([&](Stream& r) { return limit_deal(sch, r); });
    } else if (s == "stat-noisy") {
        NoisyScheme sch = noisy_from(cfg);
        each([&](Stream& r) { return noisy_deal(sch, r); });
    } else if (s == "stat-obfuscated") {
        ObfuscatedScheme sch = obfuscated_from(cfg);
        each([&](Stream& r) { return obfuscated_deal(sch, r); });
    } else if (s == "hilbert") {
        HilbertProgram prog = program_from(cfg);
        each([&](Stream& r) { return compile_to_scheme(prog, r); });
    } else if (s == "stat-strip") {
        throw BadParameter("stat-strip is a qualification structure; it has no dealer");
    } else {
        throw UnknownScheme("no deal operation for scheme " + s);
    }
    return out;
}

double run_recover(const ExperimentConfig& cfg, std::istream& shares_csv) {
    // Rows are either participant_index,share_component_index,value or a
    // dealings row straight from `deal` (trial,secret,participant,component,value);
    // dealings input must hold exactly one trial.
    std::map<int, std::map<int, double>> rows;
    std::set<long> trials_seen;
    std::string line;
    int lineno = 0;
    while (std::getline(shares_csv, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (lineno == 1 && t.find("participant_index") != std::string::npos) continue;
        std::vector<std::string> f;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(trim(item));
        if (f.size() != 3 && f.size() != 5) {
            throw ParseError("expected participant_index,share_component_index,value", lineno);
        }
        try {
            std::size_t base = f.size() - 3;
            if (base != 0) trials_seen.insert(std::stol(f[0]));
            rows[std::stoi(f[base])][std::stoi(f[base + 1])] = std::stod(f[base + 2]);
        } catch (const std::exception&) {
            throw ParseError("malformed share row", lineno);
        }
    }
    if (trials_seen.size() > 1) {
        throw BadParameter("share CSV holds " + std::to_string(trials_seen.size()) +
                           " trials; recover reads exactly one");
    }
    if (rows.empty()) throw ParseError("no share rows", lineno);

    std::map<int, std::vector<double>> shares;
    for (const auto& [p, comps] : rows) {
        std::vector<double>& v = shares[p];
        for (const auto& [c, val] : comps) {
            if (c != static_cast<int>(v.size())) {
                throw BadParameter("share components of participant " + std::to_string(p) +
                                   " are not consecutive from 0");
            }
            v.push_back(val);
        }
    }
    auto first_components = [&]() {
        std::vector<double> v;
        for (const auto& [p, comps] : shares) v.push_back(comps.at(0));
        return v;
    };

    const std::string& s = cfg.scheme;
    if (s == "modsum") {
        ModSumScheme sch = modsum_from(cfg);
        return modsum_recover(sch, first_components());
    }
    if (s == "composite") {
        CompositeScheme sch{structure_from(cfg)};
        std::set<int> subset;
        int width = sch.structure.participants();
        std::vector<std::vector<double>> by_index(static_cast<std::size_t>(width));
        for (const auto& [p, comps] : shares) {
            if (p < 0 || p >= width) throw UnknownParticipant("index " + std::to_string(p));
            subset.insert(p);
            by_index[static_cast<std::size_t>(p)] = comps;
        }
        return composite_recover(sch, subset, by_index);
    }
    if (s == "slope") {
        SlopeScheme sch = slope_from(cfg);
        if (shares.size() != 2) throw WrongShareCount("slope recovery needs exactly 2 shares");
        std::vector<std::pair<double, double>> pts;
        for (const auto& [p, comps] : shares) {
            if (p < 0 || p >= static_cast<int>(sch.labels.size())) {
                throw UnknownParticipant("index " + std::to_string(p));
            }
            pts.emplace_back(sch.labels[static_cast<std::size_t>(p)], comps.at(0));
        }
        return slope_recover(sch, pts[0], pts[1]);
    }
    if (s == "dyadic-ramp") {
        DyadicRampScheme sch = ramp_from(cfg);
        return ramp_recover(sch, first_components());
    }
    if (s == "projective") {
        ProjectiveScheme sch = projective_from(cfg);
        if (shares.size() != 2) throw WrongShareCount("projective recovery needs exactly 2 shares");
        std::vector<ProjPoint> pts;
        for (const auto& [p, comps] : shares) {
            if (comps.size() != 3) throw WrongShareCount("projective shares have 3 components");
            pts.push_back(make_point({comps[0], comps[1], comps[2]}));
        }
        return arc_parameter(sch, proj_recover(sch, pts[0], pts[1]));
    }
    if (s == "gauss-threshold" || s == "gauss-random-degree") {
        std::vector<double> labels;
        GaussThresholdScheme sch;
        if (s == "gauss-threshold") {
            sch = gauss_from(cfg);
            labels = sch.labels;
            if (static_cast<long>(shares.size()) != sch.k) {
                throw WrongShareCount("threshold recovery needs exactly k shares");
            }
        } else {
            RandomDegreeScheme rd = random_degree_from(cfg);
            labels = rd.labels;
            if (shares.size() != labels.size()) {
                throw WrongShareCount("random-degree recovery needs every share");
            }
            // Interpolating through every label reproduces the dealt polynomial
            // whatever degree was drawn, since its degree stays below the count.
            sch = GaussThresholdScheme{static_cast<int>(labels.size()), 1.0, labels, true};
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& [p, comps] : shares) {
            if (p < 0 || p >= static_cast<int>(labels.size())) {
                throw UnknownParticipant("index " + std::to_string(p));
            }
            pts.emplace_back(labels[static_cast<std::size_t>(p)], comps.at(0));
        }
        return gauss_recover(sch, pts);
    }
    if (s == "gauss-l2") {
        L2Scheme sch = l2_from(cfg);
        return l2_recover(sch, first_components());
    }
    if (s == "wiener-dense" || s == "wiener-tree") {
        DenseScheme sch = s == "wiener-dense" ? dense_from(cfg) : tree_dense_from(cfg);
        std::vector<std::pair<double, double>> obs;
        std::vector<double> times;
        for (const auto& [p, comps] : shares) {
            if (p < 0 || p >= static_cast<int>(sch.participant_times.size())) {
                throw UnknownParticipant("index " + std::to_string(p));
            }
            obs.emplace_back(sch.participant_times[static_cast<std::size_t>(p)], comps.at(0));
            times.push_back(obs.back().first);
        }
        if (!dense_qualified(sch, times)) {
            throw NotQualified("largest uncovered gap " + format17(dense_max_gap(sch, times)) +
                               " exceeds epsilon_dense " + format17(sch.epsilon_dense));
        }
        return dense_recover(sch, obs).estimate;
    }
    if (s == "wiener-limit") {
        LimitScheme sch = limit_from(cfg);
        std::vector<std::pair<double, double>> obs;
        for (const auto& [p, comps] : shares) {
            if (p < 0 || p >= static_cast<int>(sch.participant_times.size())) {
                throw UnknownParticipant("index " + std::to_string(p));
            }
            obs.emplace_back(sch.participant_times[static_cast<std::size_t>(p)], comps.at(0));
        }
        return limit_recover(sch, obs).estimate;
    }
    if (s == "stat-noisy") {
        double sum = 0.0;
        for (const auto& [p, comps] : shares) sum += comps.at(0);
        return sum / (static_cast<double>(shares.size()) + 1.0);
    }
    if (s == "stat-obfuscated") {
        ObfuscatedScheme sch = obfuscated_from(cfg);
        std::size_t m = shares.size();
        GaussianVector joint;
        joint.mean.assign(m + 1, 0.0);
        joint.covariance = Matrix(m + 1);
        joint.covariance(0, 0) = 1.0;
        std::vector<double> values;
        std::vector<std::size_t> idx;
        std::size_t col = 1;
        std::vector<double> rs;
        for (const auto& [p, comps] : shares) {
            if (p < 0 || p >= static_cast<int>(sch.r_values.size())) {
                throw UnknownParticipant("index " + std::to_string(p));
            }
            rs.push_back(sch.r_values[static_cast<std::size_t>(p)]);
            values.push_back(comps.at(0));
            idx.push_back(col);
            ++col;
        }
        for (std::size_t i = 0; i < m; ++i) {
            joint.covariance(0, i + 1) = joint.covariance(i + 1, 0) = 1.0;
            for (std::size_t j = 0; j < m; ++j) {
                joint.covariance(i + 1, j + 1) = 1.0 + rs[i] * rs[j] + (i == j ? 1.0 : 0.0);
            }
        }
        return gaussian_condition(joint, idx, values, 0).mean;
    }
    if (s == "hilbert") {
        HilbertProgram prog = program_from(cfg);
        std::vector<int> subset;
        for (const auto& [p, comps] : shares) subset.push_back(p);
        return recover(prog, subset, shares);
    }
    if (s == "stat-strip") throw BadParameter("stat-strip is a qualification structure; it has no dealer");
    throw UnknownScheme("no recover operation for scheme " + s);
}

DensityCurve run_density(const ExperimentConfig& cfg) {
    DensityCurve curve;
    const std::string& s = cfg.scheme;
    if (s == "wrapped-normal") {
        double sigma = param_real(cfg, "sigma", 1.0);
        long bins = param_int(cfg, "bins", 512);
        if (bins < 2) throw BadParameter("need at least two bins");
        curve.x_name = "x";
        for (long i = 0; i < bins; ++i) {
            double x = (i + 0.5) / static_cast<double>(bins);
            curve.rows.emplace_back(x, wrapped_normal_density(x, sigma));
        }
        return curve;
    }
    if (s == "projective") {
        double d = param_real(cfg, "d", kPi / 4);
        if (!(d > 0.0) || d > kPi / 2) throw BadParameter("distance d must lie in (0, pi/2]");
        long bins = param_int(cfg, "bins", 64);
        long trials = std::max<long>(cfg.trials, 1000000);
        ProjectiveScheme sch = make_projective_scheme({kPi / 2});
        ProjPoint share = make_point({std::cos(d), 0.0, std::sin(d)});
        Stream rng = substream(cfg.seed, 0);
        std::vector<double> density =
            proj_conditional_density(sch, 0, share, static_cast<int>(bins), trials, rng);
        curve.x_name = "arc_parameter";
        for (std::size_t i = 0; i < density.size(); ++i) {
            curve.rows.emplace_back((i + 0.5) * kPi / static_cast<double>(bins), density[i]);
        }
        return curve;
    }
    if (s == "dyadic-ramp") {
        DyadicRampScheme sch = ramp_from(cfg);
        long bins = param_int(cfg, "bins", 64);
        if (bins < 2) throw BadParameter("need at least two bins");
        std::vector<long> counts = accumulate_trials(
            cfg.trials, cfg.threads, cfg.seed, std::vector<long>(static_cast<std::size_t>(bins), 0),
            [&](std::vector<long>& acc, long, Stream& rng) {
                double x = ramp_deal(sch, rng).secret;
                long b = std::min<long>(bins - 1, static_cast<long>(x * bins));
                acc[static_cast<std::size_t>(b)] += 1;
            },
            [](std::vector<long>& tot, const std::vector<long>& p) {
                for (std::size_t i = 0; i < tot.size(); ++i) tot[i] += p[i];
            });
        curve.x_name = "x";
        for (long i = 0; i < bins; ++i) {
            double dens = counts[static_cast<std::size_t>(i)] * static_cast<double>(bins) /
                          static_cast<double>(cfg.trials);
            curve.rows.emplace_back((i + 0.5) / static_cast<double>(bins), dens);
        }
        return curve;
    }
    throw UnknownScheme("density supports wrapped-normal, projective, dyadic-ramp");
}

void emit_density_csv(std::ostream& out, const DensityCurve& curve) {
    out << curve.x_name << ",density\n";
    for (const auto& [x, d] : curve.rows) {
        out << format17(x) << "," << format17(d) << "\n";
    }
}

std::vector<std::string> verify_suites() {
    return {"numerics",     "access",          "modsum",
            "composite",    "slope",           "dyadic-ramp",
            "projective",   "gauss-threshold", "gauss-random-degree",
            "gauss-l2",     "wiener-dense",    "wiener-tree",
            "wiener-limit", "stat-noisy",      "stat-obfuscated",
            "stat-strip",   "hilbert"};
}

std::vector<TrialReport> run_verify(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw BadParameter("trials must be at least 1");
    const std::string& s = cfg.scheme;
    if (s == "all") {
        std::vector<TrialReport> all;
        for (const std::string& name : verify_suites()) {
            ExperimentConfig sub = cfg;
            sub.scheme = name;
            for (TrialReport r : run_verify(sub)) {
                r.check = name + "/" + r.check;
                all.push_back(std::move(r));
            }
        }
        return all;
    }
    if (s == "numerics") return suites::numerics(cfg);
    if (s == "access") return suites::access(cfg);
    if (s == "modsum") return suites::modsum(cfg);
    if (s == "composite") return suites::composite(cfg);
    if (s == "slope") return suites::slope(cfg);
    if (s == "dyadic-ramp") return suites::dyadic_ramp(cfg);
    if (s == "projective") return suites::projective(cfg);
    if (s == "gauss-threshold") return suites::gauss_threshold(cfg);
    if (s == "gauss-random-degree") return suites::gauss_random_degree(cfg);
    if (s == "gauss-l2") return suites::gauss_l2(cfg);
    if (s == "wiener-dense") return suites::wiener_dense(cfg);
    if (s == "wiener-tree") return suites::wiener_tree(cfg);
    if (s == "wiener-limit") return suites::wiener_limit(cfg);
    if (s == "stat-noisy") return suites::stat_noisy(cfg);
    if (s == "stat-obfuscated") return suites::stat_obfuscated(cfg);
    if (s == "stat-strip") return suites::stat_strip(cfg);
    if (s == "hilbert") return suites::hilbert_suite(cfg);
    std::string names;
    for (const auto& n : verify_suites()) names += (names.empty() ? "" : ", ") + n;
    throw UnknownScheme("unknown verify suite " + s + "; available: " + names);
}

} // namespace iss
