#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "builders.hpp"
#include "iss/access.hpp"
#include "iss/errors.hpp"
#include "iss/hilbert.hpp"
#include "iss/numerics.hpp"
#include "iss/oracle.hpp"
#include "iss/rng.hpp"
#include "iss/schemes_gauss.hpp"
#include "iss/schemes_projective.hpp"
#include "iss/schemes_stat.hpp"
#include "iss/schemes_uniform.hpp"
#include "iss/schemes_wiener.hpp"

namespace iss::suites {

namespace {

using builders::default_l2_sigmas;

const double kPi = std::acos(-1.0);

// 0.1% two-sided Kolmogorov-Smirnov critical value, asymptotic form.
double ks_critical(long n) { return 1.95 / std::sqrt(static_cast<double>(n)); }

// Shared bookkeeping: per-check stream derivation and wall-time laps.
struct Ctx {
    const ExperimentConfig& cfg;
    std::vector<TrialReport> reports;
    std::uint64_t salt = 0;
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    explicit Ctx(const ExperimentConfig& c) : cfg(c) {}

    std::uint64_t seed() { return derive_seed(cfg.seed, salt++); }

    double lap() {
        auto now = std::chrono::steady_clock::now();
        double dt = std::chrono::duration<double>(now - mark).count();
        mark = now;
        return dt;
    }

    void abs_check(const std::string& name, double expected, double observed, double tol,
                   long trials = 0) {
        bool ok = std::isfinite(observed) && std::abs(observed - expected) <= tol;
        reports.push_back({name, expected, observed, tol, ok, trials, lap()});
    }

    void rel_check(const std::string& name, double expected, double observed, double rel_tol,
                   long trials = 0) {
        abs_check(name, expected, observed, rel_tol * std::abs(expected), trials);
    }

    // Pass when observed <= bound.
    void upper_check(const std::string& name, double observed, double bound, long trials = 0) {
        bool ok = std::isfinite(observed) && observed <= bound;
        reports.push_back({name, bound, observed, 0.0, ok, trials, lap()});
    }

    // Pass when observed > bound (strict floor).
    void lower_check(const std::string& name, double observed, double bound, long trials = 0) {
        bool ok = std::isfinite(observed) && observed > bound;
        reports.push_back({name, bound, observed, 0.0, ok, trials, lap()});
    }

    // Pass when a prior computation came out as it should (counts of
    // violations, error-path exercises).
    void flag_check(const std::string& name, bool ok, double observed = 0.0, long trials = 0) {
        reports.push_back({name, 0.0, observed, 0.0, ok, trials, lap()});
    }
};

struct Moments {
    long n = 0;
    double sum = 0.0;
    double sumsq = 0.0;
    void add(double x) {
        n += 1;
        sum += x;
        sumsq += x * x;
    }
    void merge(const Moments& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
    }
    double mean() const { return sum / n; }
    double variance() const { return (sumsq - sum * sum / n) / (n - 1); }
};

struct PairMoments {
    long n = 0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    void add(double x, double y) {
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    void merge(const PairMoments& o) {
        n += o.n;
        sx += o.sx;
        sy += o.sy;
        sxx += o.sxx;
        syy += o.syy;
        sxy += o.sxy;
    }
    double correlation() const {
        double cx = sxx - sx * sx / n;
        double cy = syy - sy * sy / n;
        double cxy = sxy - sx * sy / n;
        return cxy / std::sqrt(cx * cy);
    }
};

// Full sample table for the independence screens; rows concatenate in
// block order so the table is reproducible.
struct RowTable {
    std::size_t width = 0;
    std::vector<double> flat;
    std::vector<double> column(std::size_t c) const {
        std::vector<double> out;
        out.reserve(flat.size() / width);
        for (std::size_t i = c; i < flat.size(); i += width) out.push_back(flat[i]);
        return out;
    }
};

// Collects [secret, share components...] rows for deal_fn over N trials.
template <typename DealFn>
RowTable collect_rows(Ctx& ctx, long n, DealFn deal_fn) {
    RowTable init;
    {
        Stream probe = substream(0, 0);
        Dealing d = deal_fn(probe);
        init.width = 1;
        for (const auto& sh : d.shares) init.width += sh.size();
    }
    return accumulate_trials(
        n, ctx.cfg.threads, ctx.seed(), init,
        [&](RowTable& acc, long, Stream& rng) {
            Dealing d = deal_fn(rng);
            acc.flat.push_back(d.secret);
            for (const auto& sh : d.shares) {
                for (double v : sh) acc.flat.push_back(v);
            }
        },
        [](RowTable& tot, const RowTable& p) {
            tot.flat.insert(tot.flat.end(), p.flat.begin(), p.flat.end());
        });
}

// Flat component offsets per participant for a dealt share layout.
std::vector<std::size_t> component_offsets(const Dealing& probe) {
    std::vector<std::size_t> off;
    std::size_t at = 1; // column 0 is the secret
    for (const auto& sh : probe.shares) {
        off.push_back(at);
        at += sh.size();
    }
    off.push_back(at);
    return off;
}

// Independence screen over the maximal unqualified subsets: pairwise
// correlations across each subset's components plus the secret, and a
// 10x10 chi-square between every component and the secret. All screened
// values are uniform on [0,1), which is what the chi-square bins assume.
void unqualified_screens(Ctx& ctx, const std::string& prefix, const RowTable& table,
                         const std::vector<std::size_t>& offsets,
                         const std::vector<std::set<int>>& subsets) {
    long n = static_cast<long>(table.flat.size() / table.width);
    std::vector<double> secret = table.column(0);
    double max_corr = 0.0;
    double max_chi = 0.0;
    for (const auto& subset : subsets) {
        std::vector<std::size_t> cols{0};
        for (int p : subset) {
            for (std::size_t c = offsets[std::size_t(p)]; c < offsets[std::size_t(p) + 1]; ++c) {
                cols.push_back(c);
            }
        }
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::vector<double> a = table.column(cols[i]);
            for (std::size_t j = i + 1; j < cols.size(); ++j) {
                std::vector<double> b = table.column(cols[j]);
                max_corr = std::max(max_corr, std::abs(pearson_correlation(a, b)));
            }
            if (cols[i] != 0) max_chi = std::max(max_chi, chi_square_independence(a, secret, 10));
        }
    }
    ctx.upper_check(prefix + "-unqualified-correlation", max_corr,
                    3.0 / std::sqrt(static_cast<double>(n)), n);
    ctx.upper_check(prefix + "-unqualified-chi-square", max_chi, chi_square_quantile(0.999, 81), n);
}

double circular_gap(double a, double b, double period) {
    double d = std::abs(a - b);
    d = std::fmod(d, period);
    return std::min(d, period - d);
}

// Piecewise-linear value of sorted observations anchored at (0,0), flat
// after the last one.
double pl_value(const std::vector<std::pair<double, double>>& sorted_obs, double t) {
    if (t >= sorted_obs.back().first) return sorted_obs.back().second;
    std::size_t hi = 1;
    while (sorted_obs[hi].first < t) ++hi;
    const auto& [t0, v0] = sorted_obs[hi - 1];
    const auto& [t1, v1] = sorted_obs[hi];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

std::vector<double> random_r_list(Stream& rng, std::size_t min_len = 2, std::size_t max_len = 8) {
    std::size_t len = min_len + rng.next_u64() % (max_len - min_len + 1);
    std::vector<double> r(len);
    for (double& v : r) v = 1.0 + 9.0 * rng.uniform01() * 0.999;
    return r;
}

} // namespace

std::vector<TrialReport> numerics(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    const std::vector<double> sigmas{0.3, 0.5, 1.0, 3.0};

    double max_split = 0.0;
    for (double s : sigmas) {
        for (int i = 0; i <= 100; ++i) {
            double x = i / 100.0;
            max_split = std::max(max_split,
                                 std::abs(wrapped_normal_lattice(x, s) - wrapped_normal_theta(x, s)));
        }
    }
    ctx.upper_check("series-agreement", max_split, 1e-10);

    double worst_integral = 0.0;
    const int panels = 10000;
    for (double s : sigmas) {
        double acc = wrapped_normal_density(0.0, s) + wrapped_normal_density(1.0, s);
        for (int i = 1; i < panels; ++i) {
            acc += wrapped_normal_density(i / double(panels), s) * (i % 2 ? 4.0 : 2.0);
        }
        worst_integral = std::max(worst_integral, std::abs(acc / (3.0 * panels) - 1.0));
    }
    ctx.upper_check("density-integral", worst_integral, 1e-8);

    {
        Stream rng = substream(ctx.seed(), 0);
        double max_err = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            std::size_t k = 2 + inst % 7;
            std::vector<std::pair<double, double>> pts;
            while (pts.size() < k) {
                double x = -1.0 + 3.0 * rng.uniform01();
                bool clear = true;
                for (const auto& p : pts) clear = clear && std::abs(p.first - x) > 0.05;
                if (clear) pts.emplace_back(x, rng.normal());
            }
            for (const auto& p : pts) {
                max_err = std::max(max_err, std::abs(lagrange_eval(pts, p.first) - p.second));
            }
        }
        ctx.upper_check("interpolation-reproduction", max_err, 1e-10, 100);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        double max_err = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            double v0 = 0.3 + 1.7 * rng.uniform01();
            double v1 = 0.3 + 1.7 * rng.uniform01();
            double rho = 1.8 * rng.uniform01() - 0.9;
            double c = rho * std::sqrt(v0 * v1);
            GaussianVector joint;
            joint.mean.assign(2, 0.0);
            joint.covariance = Matrix(2);
            joint.covariance(0, 0) = v0;
            joint.covariance(1, 1) = v1;
            joint.covariance(0, 1) = joint.covariance(1, 0) = c;
            double y = 2.0 * rng.normal();
            NormalParams law = gaussian_condition(joint, {1}, {y}, 0);
            max_err = std::max(max_err, std::abs(law.mean - c / v1 * y));
            max_err = std::max(max_err, std::abs(law.variance - (v0 - c * c / v1)));
        }
        ctx.upper_check("conditioning-two-dim", max_err, 1e-12, 100);
    }

    {
        // Offsets keep x + n exactly representable, so the identity must be
        // bit-exact.
        double worst = 0.0;
        const double shifts[] = {1.0, -1.0, 1048576.0, -1048576.0, 1099511627776.0,
                                 -1099511627776.0};
        for (int j = 0; j < 4096; ++j) {
            double x = j * std::ldexp(1.0, -12);
            for (double nshift : shifts) {
                worst = std::max(worst, std::abs(mod1(x + nshift) - mod1(x)));
            }
        }
        ctx.upper_check("mod1-integer-shift", worst, 0.0);
    }

    {
        long n = 1000000;
        Moments m = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [](Moments& acc, long, Stream& rng) { acc.add(std::sqrt(19.0) * rng.normal()); },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.rel_check("normal-sample-variance", 19.0, m.variance(), 0.03, n);
    }

    {
        long n = 100000;
        std::vector<double> draws = accumulate_trials(
            n, cfg.threads, ctx.seed(), std::vector<double>{},
            [](std::vector<double>& acc, long, Stream& rng) { acc.push_back(rng.normal()); },
            [](std::vector<double>& tot, const std::vector<double>& p) {
                tot.insert(tot.end(), p.begin(), p.end());
            });
        std::sort(draws.begin(), draws.end());
        double d = ks_distance(draws, [](double x) { return normal_cdf(x); });
        ctx.upper_check("normal-sample-ks", d, ks_critical(n), n);
    }

    return ctx.reports;
}

std::vector<TrialReport> access(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    std::vector<AccessStructure> structures;
    structures.push_back(AccessStructure::threshold(5, 2));
    structures.push_back(AccessStructure::threshold(6, 3));
    structures.push_back(AccessStructure::min_size(6, 4));
    structures.push_back(AccessStructure::all_or_nothing(5));
    structures.push_back(AccessStructure::from_base(5, {{0, 1}, {1, 2}, {2, 3}}));
    structures.push_back(
        AccessStructure::from_base(12, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6, 7}, {1, 8}, {9, 10, 11}}));

    auto subset_of_mask = [](unsigned mask) {
        std::set<int> s;
        for (int i = 0; mask; ++i, mask >>= 1) {
            if (mask & 1) s.insert(i);
        }
        return s;
    };

    long mono_violations = 0;
    long sperner_violations = 0;
    long trivial_violations = 0;
    for (const auto& st : structures) {
        int n = st.participants();
        std::vector<char> qual(1u << n, 0);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            qual[mask] = st.is_qualified(subset_of_mask(mask)) ? 1 : 0;
        }
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (!qual[mask]) continue;
            for (int i = 0; i < n; ++i) {
                if (!qual[mask | (1u << i)]) mono_violations += 1;
            }
        }

        std::vector<std::set<int>> minimal = st.minimal_elements();
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            for (std::size_t j = 0; j < minimal.size(); ++j) {
                if (i == j) continue;
                if (std::includes(minimal[j].begin(), minimal[j].end(), minimal[i].begin(),
                                  minimal[i].end())) {
                    sperner_violations += 1;
                }
            }
        }
        AccessStructure rebuilt = AccessStructure::from_base(n, minimal);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (qual[mask] != (rebuilt.is_qualified(subset_of_mask(mask)) ? 1 : 0)) {
                sperner_violations += 1;
            }
        }

        if (qual[0]) trivial_violations += 1;
        for (int i = 0; i < n; ++i) {
            if (qual[1u << i]) trivial_violations += 1;
        }
    }
    ctx.flag_check("monotonicity", mono_violations == 0, double(mono_violations));
    ctx.flag_check("sperner-round-trip", sperner_violations == 0, double(sperner_violations));
    ctx.flag_check("no-trivial-qualified", trivial_violations == 0, double(trivial_violations));
    return ctx.reports;
}

std::vector<TrialReport> modsum(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    ModSumScheme sch = builders::modsum_from(cfg);

    {
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = modsum_deal(sch, rng);
                std::vector<double> all;
                for (const auto& sh : d.shares) all.push_back(sh.at(0));
                worst = std::max(worst, std::abs(modsum_recover(sch, all) - d.secret));
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("recovery-exact", max_err, 1e-9, n);
    }

    long n = 100000;
    RowTable table = collect_rows(ctx, n, [&](Stream& rng) { return modsum_deal(sch, rng); });
    Stream probe = substream(0, 0);
    Dealing d0 = modsum_deal(sch, probe);
    unqualified_screens(ctx, "modsum", table, component_offsets(d0),
                        AccessStructure::all_or_nothing(sch.n).maximal_unqualified());
    return ctx.reports;
}

std::vector<TrialReport> composite(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    CompositeScheme sch{builders::structure_from(cfg)};
    int width = sch.structure.participants();

    {
        std::vector<std::set<int>> qualified;
        for (unsigned mask = 1; mask < (1u << width); ++mask) {
            std::set<int> s;
            for (int i = 0; i < width; ++i) {
                if (mask & (1u << i)) s.insert(i);
            }
            if (sch.structure.is_qualified(s)) qualified.push_back(std::move(s));
        }
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = composite_deal(sch, rng);
                std::vector<std::vector<double>> by_index(static_cast<std::size_t>(width));
                for (int p = 0; p < width; ++p) by_index[std::size_t(p)] = d.shares[std::size_t(p)];
                for (const auto& q : qualified) {
                    worst = std::max(worst,
                                     std::abs(composite_recover(sch, q, by_index) - d.secret));
                }
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("recovery-exact", max_err, 1e-9, n);
    }

    long n = 100000;
    RowTable table = collect_rows(ctx, n, [&](Stream& rng) { return composite_deal(sch, rng); });
    Stream probe = substream(0, 0);
    Dealing d0 = composite_deal(sch, probe);
    unqualified_screens(ctx, "composite", table, component_offsets(d0),
                        sch.structure.maximal_unqualified());
    return ctx.reports;
}

std::vector<TrialReport> slope(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    SlopeScheme sch = builders::slope_from(cfg);
    std::size_t m = sch.labels.size();

    {
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = slope_deal(sch, rng);
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = i + 1; j < m; ++j) {
                        double rec = slope_recover(sch, {sch.labels[i], d.shares[i][0]},
                                                   {sch.labels[j], d.shares[j][0]});
                        worst = std::max(worst, std::abs(rec - d.secret));
                    }
                }
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("recovery-exact", max_err, 1e-9, n);
    }

    long n = 100000;
    RowTable table = collect_rows(ctx, n, [&](Stream& rng) { return slope_deal(sch, rng); });
    Stream probe = substream(0, 0);
    Dealing d0 = slope_deal(sch, probe);
    std::vector<std::set<int>> singletons;
    for (std::size_t i = 0; i < m; ++i) singletons.push_back({int(i)});
    unqualified_screens(ctx, "slope", table, component_offsets(d0), singletons);
    return ctx.reports;
}

std::vector<TrialReport> dyadic_ramp(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    DyadicRampScheme sch = builders::ramp_from(cfg);

    {
        long n = 100000;
        Moments m = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [&](Moments& acc, long, Stream& rng) { acc.add(ramp_deal(sch, rng).secret); },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.abs_check("secret-mean", 0.5, m.mean(), 0.005, n);
        double var = (1.0 / 36.0) * (1.0 - std::pow(0.25, sch.n));
        ctx.rel_check("secret-variance", var, m.variance(), 0.03, n);
    }

    {
        long n = 10000;
        struct Acc {
            double max_err = 0.0;
            long violations = 0;
        };
        std::vector<int> missing{0, 5, sch.n - 1};
        Acc out = accumulate_trials(
            n, cfg.threads, ctx.seed(), Acc{},
            [&](Acc& acc, long, Stream& rng) {
                Dealing d = ramp_deal(sch, rng);
                std::vector<double> all;
                for (const auto& sh : d.shares) all.push_back(sh.at(0));
                acc.max_err = std::max(acc.max_err, std::abs(ramp_recover(sch, all) - d.secret));
                for (int mi : missing) {
                    auto [lo, hi] = ramp_interval(sch, all, mi);
                    if (std::abs((hi - lo) - std::ldexp(1.0, -(mi + 1))) > 1e-12) {
                        acc.violations += 1;
                    }
                    if (d.secret < lo - 1e-12 || d.secret > hi + 1e-12) acc.violations += 1;
                }
            },
            [](Acc& tot, const Acc& p) {
                tot.max_err = std::max(tot.max_err, p.max_err);
                tot.violations += p.violations;
            });
        ctx.upper_check("recovery-exact", out.max_err, 1e-9, n);
        ctx.flag_check("interval-pins-secret", out.violations == 0, double(out.violations), n);
    }

    {
        long n = 100000;
        const int missing = 2;
        std::vector<double> unit = accumulate_trials(
            n, cfg.threads, ctx.seed(), std::vector<double>{},
            [&](std::vector<double>& acc, long, Stream& rng) {
                Dealing d = ramp_deal(sch, rng);
                std::vector<double> all;
                for (const auto& sh : d.shares) all.push_back(sh.at(0));
                auto [lo, hi] = ramp_interval(sch, all, missing);
                acc.push_back((d.secret - lo) / (hi - lo));
            },
            [](std::vector<double>& tot, const std::vector<double>& p) {
                tot.insert(tot.end(), p.begin(), p.end());
            });
        std::sort(unit.begin(), unit.end());
        double d = ks_distance(unit, [](double x) { return std::clamp(x, 0.0, 1.0); });
        ctx.upper_check("conditional-uniform-ks", d, ks_critical(n), n);
    }

    return ctx.reports;
}

std::vector<TrialReport> projective(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    ProjectiveScheme sch = builders::projective_from(cfg);
    std::size_t m = sch.participant_lines.size();

    {
        long n = 10000;
        struct Acc {
            double incidence = 0.0;
            double secret_err = 0.0;
            double recover_err = 0.0;
        };
        Acc out = accumulate_trials(
            n, cfg.threads, ctx.seed(), Acc{},
            [&](Acc& acc, long, Stream& rng) {
                Dealing d = proj_deal(sch, rng);
                std::vector<ProjPoint> pts;
                for (const auto& sh : d.shares) pts.push_back(make_point({sh[0], sh[1], sh[2]}));
                auto dotv = [](const Vec3& a, const Vec3& b) {
                    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
                };
                ProjLine t = join(pts.at(0), pts.at(1));
                for (std::size_t i = 0; i < m; ++i) {
                    acc.incidence = std::max(
                        acc.incidence, std::abs(dotv(pts[i].v, sch.participant_lines[i].n)));
                    acc.incidence = std::max(acc.incidence, std::abs(dotv(pts[i].v, t.n)));
                }
                acc.secret_err = std::max(
                    acc.secret_err,
                    circular_gap(arc_parameter(sch, meet(t, sch.ell)), d.secret, kPi));
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = i + 1; j < m; ++j) {
                        double rec = arc_parameter(sch, proj_recover(sch, pts[i], pts[j]));
                        acc.recover_err =
                            std::max(acc.recover_err, circular_gap(rec, d.secret, kPi));
                    }
                }
            },
            [](Acc& tot, const Acc& p) {
                tot.incidence = std::max(tot.incidence, p.incidence);
                tot.secret_err = std::max(tot.secret_err, p.secret_err);
                tot.recover_err = std::max(tot.recover_err, p.recover_err);
            });
        ctx.upper_check("share-incidence", out.incidence, 1e-9, n);
        ctx.upper_check("secret-on-line", out.secret_err, 1e-9, n);
        ctx.upper_check("recovery-exact", out.recover_err, 1e-9, n);
    }

    {
        long n = 10000;
        double worst = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& acc, long, Stream& rng) {
                auto draw_line = [&] {
                    return make_line({rng.normal(), rng.normal(), rng.normal()});
                };
                ProjLine a = draw_line();
                ProjLine b = draw_line();
                double cx = a.n[1] * b.n[2] - a.n[2] * b.n[1];
                double cy = a.n[2] * b.n[0] - a.n[0] * b.n[2];
                double cz = a.n[0] * b.n[1] - a.n[1] * b.n[0];
                if (cx * cx + cy * cy + cz * cz < 1e-4) return;
                ProjPoint p = meet(a, b);
                auto nrm = [](const Vec3& v) {
                    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                };
                double pa = p.v[0] * a.n[0] + p.v[1] * a.n[1] + p.v[2] * a.n[2];
                double pb = p.v[0] * b.n[0] + p.v[1] * b.n[1] + p.v[2] * b.n[2];
                acc = std::max(acc, std::abs(pa) / (nrm(p.v) * nrm(a.n)));
                acc = std::max(acc, std::abs(pb) / (nrm(p.v) * nrm(b.n)));
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("meet-incident-to-both", worst, 1e-10, n);
    }

    {
        long n = 100000;
        std::vector<double> secrets = accumulate_trials(
            n, cfg.threads, ctx.seed(), std::vector<double>{},
            [&](std::vector<double>& acc, long, Stream& rng) {
                acc.push_back(proj_deal(sch, rng).secret / kPi);
            },
            [](std::vector<double>& tot, const std::vector<double>& p) {
                tot.insert(tot.end(), p.begin(), p.end());
            });
        std::sort(secrets.begin(), secrets.end());
        double d = ks_distance(secrets, [](double x) { return std::clamp(x, 0.0, 1.0); });
        ctx.upper_check("secret-uniform-ks", d, ks_critical(n), n);
    }

    // Conditional density family. The single-participant instance at angle
    // pi/2 puts the share's nearest point of ell at arc parameter 0, so
    // mirrored bins pair up exactly.
    ProjectiveScheme family = make_projective_scheme({kPi / 2});
    const int bins = 64;
    auto density_for = [&](double dist, long trials) {
        ProjPoint share = make_point({std::cos(dist), 0.0, std::sin(dist)});
        Stream rng = substream(ctx.seed(), 0);
        return proj_conditional_density(family, 0, share, bins, trials, rng);
    };

    {
        long trials = 1000000;
        double family_min = 1e300;
        for (double dist : {kPi / 18, kPi / 9, kPi / 4, kPi / 2}) {
            std::vector<double> f = density_for(dist, trials);
            for (double v : f) family_min = std::min(family_min, v);
        }
        ctx.lower_check("density-family-min", family_min, 0.01, trials);
    }

    {
        long trials = 1000000;
        std::vector<double> flat = density_for(kPi / 2, trials);
        double lo = *std::min_element(flat.begin(), flat.end());
        double hi = *std::max_element(flat.begin(), flat.end());
        ctx.upper_check("density-flat-at-right-angle", hi / lo, 1.1, trials);
    }

    {
        long trials = 4000000;
        std::vector<double> f = density_for(kPi / 4, trials);
        std::size_t peak = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] > f[peak]) peak = i;
        }
        double center = (peak + 0.5) * kPi / bins;
        ctx.upper_check("density-peak-at-nearest-point", circular_gap(center, 0.0, kPi),
                        2.0 * kPi / bins, trials);

        double mirror = 0.0;
        for (int i = 0; i < bins / 2; ++i) {
            mirror = std::max(mirror, std::abs(f[std::size_t(i)] / f[std::size_t(bins - 1 - i)] - 1.0));
        }
        ctx.upper_check("density-mirror-symmetry", mirror, 0.10, trials);

        double d = kPi / 4;
        double rel = 0.0;
        for (int i = 0; i < bins; ++i) {
            double theta = (i + 0.5) * kPi / bins;
            double s = std::sin(theta);
            double exact = std::sin(d) / (kPi * (std::sin(d) * std::sin(d) +
                                                 std::cos(d) * std::cos(d) * s * s));
            rel = std::max(rel, std::abs(f[std::size_t(i)] - exact) / exact);
        }
        ctx.upper_check("density-matches-exact-law", rel, 0.05, trials);
    }

    return ctx.reports;
}

std::vector<TrialReport> gauss_threshold(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);

    {
        Stream rng = substream(ctx.seed(), 0);
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            int k = 2 + int(rng.next_u64() % 4);
            double sigma = 0.5 + 1.5 * rng.uniform01();
            std::vector<double> labels;
            while (labels.size() + 1 < std::size_t(k)) {
                double p = 0.2 + 2.8 * rng.uniform01();
                bool clear = true;
                for (double q : labels) clear = clear && std::abs(p - q) > 0.05;
                if (clear) labels.push_back(p);
            }
            GaussThresholdScheme sch = make_gauss_threshold(k, sigma, labels, false);
            std::vector<std::pair<double, double>> a, b;
            for (double p : labels) {
                a.emplace_back(p, 2.0 * rng.normal());
                b.emplace_back(p, 2.0 * rng.normal());
            }
            worst = std::max(worst, std::abs(gauss_conditional(sch, a).law.variance -
                                             gauss_conditional(sch, b).law.variance));
        }
        ctx.upper_check("conditional-variance-value-free", worst, 1e-12, 100);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            int k = 2 + int(rng.next_u64() % 4);
            double sigma = 0.5 + 1.5 * rng.uniform01();
            std::vector<double> labels;
            while (labels.size() + 1 < std::size_t(k)) {
                double p = 0.1 + 1.9 * rng.uniform01();
                bool clear = true;
                for (double q : labels) clear = clear && std::abs(p - q) > 0.1;
                if (clear) labels.push_back(p);
            }
            GaussThresholdScheme sch = make_gauss_threshold(k, sigma, labels, false);
            std::vector<std::pair<double, double>> obs;
            for (double p : labels) obs.emplace_back(p, 2.0 * rng.normal());
            GaussConditional fast = gauss_conditional(sch, obs);
            auto [mean, var] = oracle::gauss_conditional(k, sigma, obs);
            worst = std::max(worst, std::abs(fast.law.mean - mean));
            worst = std::max(worst, std::abs(fast.law.variance - var));
        }
        ctx.upper_check("conditional-matches-oracle", worst, 1e-9, 100);
    }

    for (int k : {2, 3, 4}) {
        long n = 1000000;
        std::uint64_t seed = ctx.seed();
        Moments m = accumulate_trials(
            n, cfg.threads, seed, Moments{},
            [&](Moments& acc, long, Stream& rng) {
                std::vector<std::pair<double, double>> anchors;
                for (int l = 1; l <= k; ++l) anchors.emplace_back(double(l) / k, rng.normal());
                acc.add(lagrange_eval(anchors, 0.0));
            },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        double b = 1.0;
        for (int i = 1; i <= k; ++i) b = b * (k + i) / i;
        ctx.rel_check("secret-variance-k" + std::to_string(k), b - 1.0, m.variance(), 0.03, n);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        double floor_ratio = 1e300;
        for (int inst = 0; inst < 100; ++inst) {
            int k = 2 + int(rng.next_u64() % 4);
            double sigma = 0.5 + 1.5 * rng.uniform01();
            std::vector<double> labels;
            while (labels.size() + 1 < std::size_t(k)) {
                double p = 1.0 + 5.0 * rng.uniform01() + 1e-6;
                bool clear = true;
                for (double q : labels) clear = clear && std::abs(p - q) > 0.01;
                if (clear) labels.push_back(p);
            }
            GaussThresholdScheme sch = make_gauss_threshold(k, sigma, labels, false);
            std::vector<std::pair<double, double>> obs;
            for (double p : labels) obs.emplace_back(p, rng.normal());
            double v = gauss_conditional(sch, obs).law.variance;
            floor_ratio = std::min(floor_ratio, v * k / (sigma * sigma));
        }
        ctx.lower_check("far-label-variance-floor", floor_ratio, 1.0, 100);
    }

    {
        double lambda = 0.5;
        GaussThresholdScheme sch =
            make_gauss_threshold(2, lambda * std::sqrt(2.0), {1.5, 2.5}, true);
        Stream rng = substream(ctx.seed(), 0);
        double gap = ajtai_secrecy_gap(sch, 1000, rng);
        ctx.upper_check("fractional-secrecy-gap", gap, 4.0 * std::exp(-kPi * kPi / 2.0));
    }

    {
        double lambda = 10.0;
        GaussThresholdScheme sch =
            make_gauss_threshold(2, lambda * std::sqrt(2.0), {1.5, 2.5}, true);
        Stream rng = substream(ctx.seed(), 0);
        double gap = ajtai_secrecy_gap(sch, 1000, rng);
        ctx.upper_check("fractional-secrecy-gap-wide", gap, 1e-70);
    }

    {
        GaussThresholdScheme sch = make_gauss_threshold(3, 1.0, {1.5, 2.5, 3.5}, false);
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = gauss_deal(sch, rng);
                std::vector<std::pair<double, double>> shares;
                for (std::size_t i = 0; i < sch.labels.size(); ++i) {
                    shares.emplace_back(sch.labels[i], d.shares[i][0]);
                }
                worst = std::max(worst, std::abs(gauss_recover(sch, shares) - d.secret));
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("recovery-exact", max_err, 1e-9, n);
    }

    return ctx.reports;
}

std::vector<TrialReport> gauss_random_degree(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    RandomDegreeScheme sch = builders::random_degree_from(cfg);

    {
        long n = 100000;
        long hits = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0L,
            [&](long& acc, long, Stream& rng) {
                if (random_degree_deal(sch, rng).realized_k == 2) acc += 1;
            },
            [](long& tot, const long& p) { tot += p; });
        ctx.abs_check("degree-two-frequency", 0.5 * sch.renorm(), double(hits) / double(n), 0.01,
                      n);
    }

    {
        // Interpolation through every label is exact for any realized
        // degree, but only numerically trustworthy when the label spread is
        // modest; the wide default instance is measured separately above.
        RandomDegreeScheme small =
            make_random_degree(sch.lambda, 5, {1.5, 2.5, 3.5, 4.5, 5.5});
        GaussThresholdScheme interp{5, 1.0, small.labels, true};
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = random_degree_deal(small, rng);
                std::vector<std::pair<double, double>> shares;
                for (std::size_t i = 0; i < small.labels.size(); ++i) {
                    shares.emplace_back(small.labels[i], d.shares[i][0]);
                }
                worst = std::max(worst,
                                 circular_gap(gauss_recover(interp, shares), d.secret, 1.0));
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("recovery-exact", max_err, 1e-9, n);
    }

    {
        double floor = random_degree_density_floor(sch, 3, 1000);
        ctx.lower_check("three-share-density-floor", floor, 0.125);
    }

    return ctx.reports;
}

std::vector<TrialReport> gauss_l2(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    L2Scheme sch = builders::l2_from(cfg);

    {
        long n = 100000;
        struct Acc {
            Moments secret;
            Moments resid;
        };
        Acc out = accumulate_trials(
            n, cfg.threads, ctx.seed(), Acc{},
            [&](Acc& acc, long, Stream& rng) {
                Dealing d = l2_deal(sch, rng);
                acc.secret.add(d.secret);
                double others = 0.0;
                for (std::size_t i = 1; i < d.shares.size(); ++i) others += d.shares[i][0];
                acc.resid.add(d.secret - others);
            },
            [](Acc& tot, const Acc& p) {
                tot.secret.merge(p.secret);
                tot.resid.merge(p.resid);
            });
        ctx.rel_check("secret-variance", sch.total_variance(), out.secret.variance(), 0.03, n);
        ctx.rel_check("excluded-share-residual-variance", sch.sigmas[0] * sch.sigmas[0],
                      out.resid.variance(), 0.03, n);
    }

    {
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = l2_deal(sch, rng);
                std::vector<double> all;
                for (const auto& sh : d.shares) all.push_back(sh.at(0));
                worst = std::max(worst, std::abs(l2_recover(sch, all) - d.secret));
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("recovery-exact", max_err, 1e-9, n);
    }

    {
        L2Scheme frac = make_l2(sch.sigmas, sch.tail_bound, true);
        Stream rng = substream(ctx.seed(), 0);
        double c = l2_fractional_gap(frac, 0, 1000, rng);
        ctx.flag_check("fractional-flatness-ratio", c > 0.0 && c <= 1.0, c);
    }

    {
        std::vector<double> sigmas = sch.sigmas;
        sigmas[0] = 4.0;
        L2Scheme wide = make_l2(sigmas, sch.tail_bound, true);
        Stream rng = substream(ctx.seed(), 0);
        double c = l2_fractional_gap(wide, 0, 1000, rng);
        ctx.lower_check("fractional-flatness-wide-share", c, 0.99);
    }

    return ctx.reports;
}

std::vector<TrialReport> wiener_dense(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    DenseScheme sch = builders::dense_from(cfg);

    {
        long n = 100000;
        const int m = 256;
        std::vector<PairMoments> pairs = accumulate_trials(
            n, cfg.threads, ctx.seed(), std::vector<PairMoments>(6),
            [&](std::vector<PairMoments>& acc, long, Stream& rng) {
                WienerPath p = wiener_sample(m, rng);
                double inc[4];
                for (int i = 0; i < 4; ++i) {
                    inc[i] = p.values[std::size_t((i + 1) * m / 4)] -
                             p.values[std::size_t(i * m / 4)];
                }
                int at = 0;
                for (int i = 0; i < 4; ++i) {
                    for (int j = i + 1; j < 4; ++j) acc[std::size_t(at++)].add(inc[i], inc[j]);
                }
            },
            [](std::vector<PairMoments>& tot, const std::vector<PairMoments>& p) {
                for (std::size_t i = 0; i < tot.size(); ++i) tot[i].merge(p[i]);
            });
        double worst = 0.0;
        for (const auto& pm : pairs) worst = std::max(worst, std::abs(pm.correlation()));
        ctx.upper_check("increment-independence", worst, 3.0 / std::sqrt(double(n)), n);
    }

    {
        long n = 30000;
        const int m = 1024;
        double t1 = std::round(0.3 * m) / m;
        double t2 = std::round(0.7 * m) / m;
        struct Acc {
            Moments w1, cross, integral;
        };
        Acc out = accumulate_trials(
            n, cfg.threads, ctx.seed(), Acc{},
            [&](Acc& acc, long, Stream& rng) {
                WienerPath p = wiener_sample(m, rng);
                acc.w1.add(p.values.back());
                acc.cross.add(path_value(p, t1) * path_value(p, t2));
                acc.integral.add(trapezoid_integral(p));
            },
            [](Acc& tot, const Acc& p) {
                tot.w1.merge(p.w1);
                tot.cross.merge(p.cross);
                tot.integral.merge(p.integral);
            });
        ctx.rel_check("endpoint-variance", 1.0, out.w1.variance(), 0.03, n);
        ctx.abs_check("two-time-covariance", t1, out.cross.mean(), 0.02, n);
        double iv = 1.0 / 3.0 - 1.0 / (12.0 * double(m) * double(m));
        ctx.rel_check("integral-variance", iv, out.integral.variance(), 0.03, n);
    }

    {
        // Twenty random observation subsets of the 1/64 grid; every gap is
        // then a multiple of 16 grid steps of the small lattice, where the
        // continuum gap constants hold to well under the tolerance.
        const int m = 1024;
        DenseScheme small = make_dense(m, sch.participant_times, sch.epsilon_dense);
        Stream cfg_rng = substream(ctx.seed(), 0);
        double worst_mean_sigmas = 0.0;
        double worst_var_rel = 0.0;
        long n = 20000;
        for (int config = 0; config < 20; ++config) {
            std::vector<double> times;
            for (double t : small.participant_times) {
                if (cfg_rng.uniform01() < 0.3) times.push_back(t);
            }
            if (times.empty()) times.push_back(0.5);
            std::vector<std::pair<double, double>> zeros;
            for (double t : times) zeros.emplace_back(t, 0.0);
            double expected = dense_recover(small, zeros).conditional_variance;

            Moments resid = accumulate_trials(
                n, cfg.threads, ctx.seed(), Moments{},
                [&](Moments& acc, long, Stream& rng) {
                    WienerPath p = wiener_sample(m, rng);
                    std::vector<std::pair<double, double>> obs;
                    for (double t : times) obs.emplace_back(t, path_value(p, t));
                    acc.add(trapezoid_integral(p) - dense_recover(small, obs).estimate);
                },
                [](Moments& tot, const Moments& p) { tot.merge(p); });
            double se = std::sqrt(resid.variance() / double(n));
            worst_mean_sigmas = std::max(worst_mean_sigmas, std::abs(resid.mean()) / se);
            worst_var_rel =
                std::max(worst_var_rel, std::abs(resid.variance() / expected - 1.0));
        }
        ctx.upper_check("estimate-unbiased", worst_mean_sigmas, 4.5, 20 * n);
        ctx.upper_check("estimate-variance-match", worst_var_rel, 0.05, 20 * n);
    }

    // One wide interior gap and one wide terminal gap carved out of the
    // full 1/64 comb. Removing 16 comb cells trades their bridge terms for
    // one wide-gap term, which pins the gap constants exactly; a Monte
    // Carlo pass then ties the formula to measured residuals. The sampled
    // grid is coarser than the default so the runs stay cheap; at 16 steps
    // per comb cell the discrete bridge already matches the formula to a
    // fraction of the tolerance.
    const int gap_m = 1024;
    DenseScheme gap_sch = make_dense(gap_m, sch.participant_times, sch.epsilon_dense);
    double comb_cell = std::pow(1.0 / 64, 3) / 12.0;
    double v_full;
    {
        std::vector<std::pair<double, double>> zeros;
        for (double t : gap_sch.participant_times) zeros.emplace_back(t, 0.0);
        v_full = dense_recover(gap_sch, zeros).conditional_variance;
        ctx.abs_check("full-comb-formula", 64.0 * comb_cell, v_full, 1e-18);
    }
    auto gap_study = [&](const std::string& stem, double lo_keep, double hi_keep,
                         double gap_term) {
        std::vector<double> times;
        for (double t : gap_sch.participant_times) {
            if (t <= lo_keep || t >= hi_keep) times.push_back(t);
        }
        std::vector<std::pair<double, double>> zeros;
        for (double t : times) zeros.emplace_back(t, 0.0);
        double expected = dense_recover(gap_sch, zeros).conditional_variance;
        ctx.abs_check(stem + "-formula", gap_term - 16.0 * comb_cell, expected - v_full, 1e-15);

        long n = 20000;
        Moments resid = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [&](Moments& acc, long, Stream& rng) {
                WienerPath p = wiener_sample(gap_m, rng);
                std::vector<std::pair<double, double>> obs;
                for (double t : times) obs.emplace_back(t, path_value(p, t));
                acc.add(trapezoid_integral(p) - dense_recover(gap_sch, obs).estimate);
            },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.rel_check(stem + "-variance", expected, resid.variance(), 0.05, n);
    };
    gap_study("interior-gap", 0.375, 0.625, std::pow(0.25, 3) / 12.0);
    gap_study("terminal-gap", 0.75, 2.0, std::pow(0.25, 3) / 3.0);

    {
        const int m = 1024;
        DenseScheme small = make_dense(m, sch.participant_times, sch.epsilon_dense);
        Stream rng = substream(ctx.seed(), 0);
        double worst = 0.0;
        for (int config = 0; config < 100; ++config) {
            WienerPath p = wiener_sample(m, rng);
            std::vector<std::pair<double, double>> obs;
            for (double t : small.participant_times) {
                if (rng.uniform01() < 0.25) obs.emplace_back(t, path_value(p, t));
            }
            if (obs.empty()) obs.emplace_back(0.5, path_value(p, 0.5));
            double base = dense_recover(small, obs).estimate;

            std::vector<std::pair<double, double>> sorted = obs;
            sorted.emplace_back(0.0, 0.0);
            std::sort(sorted.begin(), sorted.end());
            std::vector<std::pair<double, double>> refined = obs;
            int added = 0;
            for (double t : small.participant_times) {
                bool seen = false;
                for (const auto& o : obs) seen = seen || o.first == t;
                if (!seen && added < 5) {
                    refined.emplace_back(t, pl_value(sorted, t));
                    added += 1;
                }
            }
            worst = std::max(worst, std::abs(dense_recover(small, refined).estimate - base));
        }
        ctx.upper_check("refinement-consistency", worst, 1e-12, 100);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        std::vector<double> order = sch.participant_times;
        for (std::size_t i = order.size(); i > 1; --i) {
            std::size_t j = rng.next_u64() % i;
            std::swap(order[i - 1], order[j]);
        }
        long violations = 0;
        std::vector<std::pair<double, double>> obs;
        double prev = 1e300;
        for (double t : order) {
            obs.emplace_back(t, 0.0);
            double v = dense_recover(sch, obs).conditional_variance;
            if (v > prev + 1e-15) violations += 1;
            prev = v;
        }
        ctx.flag_check("variance-monotone", violations == 0, double(violations));
    }

    return ctx.reports;
}

std::vector<TrialReport> wiener_tree(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    TreeScheme tree = builders::tree_from(cfg);
    std::vector<double> times = tree_times(tree);

    {
        long violations = 0;
        if (tree_map({}) != 0.5) violations += 1;
        if (tree_map({1}) != 0.75) violations += 1;
        if (tree_map({-1, 1}) != 0.375) violations += 1;
        if (tree_map({1, -1, -1}) != 0.5625) violations += 1;
        ctx.flag_check("label-map-values", violations == 0, double(violations));

        bool threw = false;
        try {
            tree_map({1, 0});
        } catch (const BadLabel&) {
            threw = true;
        }
        ctx.flag_check("label-map-rejects-junk", threw);

        threw = false;
        try {
            make_tree(3, 100);
        } catch (const BadParameter&) {
            threw = true;
        }
        ctx.flag_check("grid-must-resolve-leaves", threw);
    }

    {
        long denom = 1L << (tree.depth + 1);
        long violations = 0;
        if (static_cast<long>(times.size()) != denom - 1) violations += 1;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] != double(i + 1) / double(denom)) violations += 1;
        }
        ctx.flag_check("node-times-fill-dyadic-grid", violations == 0, double(violations));
    }

    {
        double eps = std::ldexp(1.0, -(tree.depth + 1));
        DenseScheme at_eps = make_dense(tree.M, times, eps);
        DenseScheme below = make_dense(tree.M, times, eps * 0.999);
        bool ok = dense_qualified(at_eps, times) && !dense_qualified(below, times);
        ctx.flag_check("full-tree-qualification-edge", ok, dense_max_gap(at_eps, times));
    }

    {
        auto [lo, hi] = tree_subtree_interval({-1});
        std::vector<double> pruned;
        for (double t : times) {
            if (t <= lo || t >= hi) pruned.push_back(t);
        }
        DenseScheme d = make_dense(tree.M, times, 1.0 / 64);
        bool ok = !dense_qualified(d, pruned) && dense_max_gap(d, pruned) >= (hi - lo) - 1e-12;
        ctx.flag_check("missing-subtree-unqualified", ok, dense_max_gap(d, pruned));
    }

    {
        // Shallower tree on a proportionally finer grid: eight grid steps
        // per node gap keep the discrete bridge within two percent of the
        // formula while the sampling stays cheap.
        TreeScheme shallow = make_tree(6, 1024);
        std::vector<double> stimes = tree_times(shallow);
        DenseScheme d = make_dense(shallow.M, stimes, 1.0 / 64);
        std::vector<std::pair<double, double>> zeros;
        for (double t : stimes) zeros.emplace_back(t, 0.0);
        double expected = dense_recover(d, zeros).conditional_variance;
        long n = 30000;
        Moments resid = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [&](Moments& acc, long, Stream& rng) {
                WienerPath p = wiener_sample(d.M, rng);
                std::vector<std::pair<double, double>> obs;
                for (double t : stimes) obs.emplace_back(t, path_value(p, t));
                acc.add(trapezoid_integral(p) - dense_recover(d, obs).estimate);
            },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.rel_check("full-tree-residual-variance", expected, resid.variance(), 0.05, n);
    }

    return ctx.reports;
}

std::vector<TrialReport> wiener_limit(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    LimitScheme sch = builders::limit_from(cfg);
    double t_last = sch.participant_times.back();

    {
        Stream rng = substream(ctx.seed(), 0);
        Dealing d = limit_deal(sch, rng);
        std::vector<std::pair<double, double>> obs;
        for (std::size_t i = 0; i < sch.participant_times.size(); ++i) {
            obs.emplace_back(sch.participant_times[i], d.shares[i][0]);
        }
        WienerEstimate est = limit_recover(sch, obs);
        double err = std::max(std::abs(est.estimate - d.shares.back()[0]),
                              std::abs(est.conditional_variance - (1.0 - t_last)));
        ctx.upper_check("estimate-is-last-share", err, 1e-15, 1);
    }

    {
        long n = 100000;
        Moments resid = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [&](Moments& acc, long, Stream& rng) {
                Dealing d = limit_deal(sch, rng);
                acc.add(d.secret - d.shares.back()[0]);
            },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.rel_check("terminal-residual-variance", 1.0 - t_last, resid.variance(), 0.05, n);
    }

    {
        long violations = 0;
        double prev = 1e300;
        std::vector<std::pair<double, double>> obs;
        for (double t : sch.participant_times) {
            obs.emplace_back(t, 0.0);
            double v = limit_recover(sch, obs).conditional_variance;
            if (v >= prev) violations += 1;
            prev = v;
        }
        if (std::abs(prev - (1.0 - t_last)) > 1e-15) violations += 1;
        ctx.flag_check("variance-strictly-falls", violations == 0, double(violations));
    }

    {
        bool threw = false;
        try {
            limit_recover(sch, {});
        } catch (const EmptySubset&) {
            threw = true;
        }
        ctx.flag_check("empty-subset-rejected", threw);
    }

    return ctx.reports;
}

std::vector<TrialReport> stat_noisy(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    NoisyScheme sch = builders::noisy_from(cfg);

    {
        long n = 100000;
        std::vector<int> sizes{1, 10, sch.n};
        struct Acc {
            Moments m[3];
        };
        Acc out = accumulate_trials(
            n, cfg.threads, ctx.seed(), Acc{},
            [&](Acc& acc, long, Stream& rng) {
                Dealing d = noisy_deal(sch, rng);
                double run = 0.0;
                std::size_t next = 0;
                for (int i = 0; i < sch.n; ++i) {
                    run += d.shares[std::size_t(i)][0];
                    if (next < sizes.size() && i + 1 == sizes[next]) {
                        acc.m[next].add(d.secret - run / (sizes[next] + 1.0));
                        next += 1;
                    }
                }
            },
            [](Acc& tot, const Acc& p) {
                for (int i = 0; i < 3; ++i) tot.m[i].merge(p.m[i]);
            });
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            ctx.rel_check("residual-variance-m" + std::to_string(sizes[i]),
                          1.0 / (sizes[i] + 1.0), out.m[i].variance(), 0.03, n);
        }
        double se = std::sqrt(out.m[2].variance() / double(n));
        ctx.upper_check("estimate-unbiased", std::abs(out.m[2].mean()) / se, 4.5, n);
    }

    {
        NoisyScheme big = make_noisy(10000);
        long n = 5000;
        Moments resid = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [&](Moments& acc, long, Stream& rng) {
                Dealing d = noisy_deal(big, rng);
                double run = 0.0;
                for (const auto& sh : d.shares) run += sh[0];
                acc.add(d.secret - run / (big.n + 1.0));
            },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.rel_check("residual-variance-m10000", 1.0 / (big.n + 1.0), resid.variance(), 0.10, n);
    }

    return ctx.reports;
}

std::vector<TrialReport> stat_obfuscated(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    ObfuscatedScheme sch = builders::obfuscated_from(cfg);

    {
        double worst = std::abs(stat2_variance({1.0}) - 2.0 / 3.0);
        worst = std::max(worst, std::abs(stat2_variance({1.0, 1.0}) - 3.0 / 5.0));
        worst = std::max(worst, std::abs(stat2_variance({2.0, 2.0, 2.0}) - 13.0 / 16.0));
        ctx.upper_check("closed-form-spot-values", worst, 1e-12);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        double sym = 0.0;
        double min_v = 1e300;
        long mono_violations = 0;
        double oracle_gap = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            std::vector<double> r = random_r_list(rng);
            double v = stat2_variance(r);
            min_v = std::min(min_v, v);

            std::vector<double> perm = r;
            for (std::size_t i = perm.size(); i > 1; --i) {
                std::swap(perm[i - 1], perm[rng.next_u64() % i]);
            }
            sym = std::max(sym, std::abs(stat2_variance(perm) - v));

            std::vector<double> grown = r;
            grown.push_back(r[rng.next_u64() % r.size()]);
            if (stat2_variance(grown) > v + 1e-12) mono_violations += 1;

            oracle_gap = std::max(oracle_gap, std::abs(oracle::stat2_variance(r) - v));
        }
        ctx.upper_check("permutation-invariance", sym, 1e-12, 100);
        ctx.lower_check("strictly-positive", min_v, 0.0, 100);
        ctx.flag_check("copy-never-hurts", mono_violations == 0, double(mono_violations), 100);
        ctx.upper_check("closed-form-matches-oracle", oracle_gap, 1e-9, 100);
    }

    {
        // Conditional-mean weights are fixed by the multipliers, so they
        // are solved once and reused across trials.
        std::size_t m = sch.r_values.size();
        GaussianVector joint;
        joint.mean.assign(m + 1, 0.0);
        joint.covariance = Matrix(m + 1);
        joint.covariance(0, 0) = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            joint.covariance(0, i + 1) = joint.covariance(i + 1, 0) = 1.0;
            for (std::size_t j = 0; j < m; ++j) {
                joint.covariance(i + 1, j + 1) =
                    1.0 + sch.r_values[i] * sch.r_values[j] + (i == j ? 1.0 : 0.0);
            }
        }
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i + 1;
        std::vector<double> weights(m);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<double> unit(m, 0.0);
            unit[j] = 1.0;
            weights[j] = gaussian_condition(joint, idx, unit, 0).mean;
        }

        long n = 100000;
        Moments resid = accumulate_trials(
            n, cfg.threads, ctx.seed(), Moments{},
            [&](Moments& acc, long, Stream& rng) {
                Dealing d = obfuscated_deal(sch, rng);
                double est = 0.0;
                for (std::size_t j = 0; j < m; ++j) est += weights[j] * d.shares[j][0];
                acc.add(d.secret - est);
            },
            [](Moments& tot, const Moments& p) { tot.merge(p); });
        ctx.rel_check("conditional-variance-empirical", stat2_variance(sch.r_values),
                      resid.variance(), 0.03, n);
    }

    {
        // Two large equal-multiplier groups pin down (secret + r*eta) for
        // two r's; group means are sufficient, so they are drawn directly
        // with their exact group-size variance.
        const double r1 = 2.0, r2 = 5.0;
        const double group = 10000.0;
        GaussianVector joint;
        joint.mean.assign(3, 0.0);
        joint.covariance = Matrix(3);
        joint.covariance(0, 0) = 1.0;
        joint.covariance(0, 1) = joint.covariance(1, 0) = 1.0;
        joint.covariance(0, 2) = joint.covariance(2, 0) = 1.0;
        joint.covariance(1, 1) = 1.0 + r1 * r1 + 1.0 / group;
        joint.covariance(2, 2) = 1.0 + r2 * r2 + 1.0 / group;
        joint.covariance(1, 2) = joint.covariance(2, 1) = 1.0 + r1 * r2;
        double w1 = gaussian_condition(joint, {1, 2}, {1.0, 0.0}, 0).mean;
        double w2 = gaussian_condition(joint, {1, 2}, {0.0, 1.0}, 0).mean;

        long n = 500;
        long close = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0L,
            [&](long& acc, long, Stream& rng) {
                double s = rng.normal();
                double eta = rng.normal();
                double g1 = s + r1 * eta + rng.normal() / std::sqrt(group);
                double g2 = s + r2 * eta + rng.normal() / std::sqrt(group);
                if (std::abs(w1 * g1 + w2 * g2 - s) <= 0.1) acc += 1;
            },
            [](long& tot, const long& p) { tot += p; });
        ctx.lower_check("two-group-recovery-rate", double(close) / double(n), 0.95 - 1e-12, n);
    }

    return ctx.reports;
}

std::vector<TrialReport> stat_strip(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);
    StripScheme sch = builders::strip_from(cfg);

    {
        std::vector<StripPoint> members = strip_members(sch, kPi / 5, sch.d);
        StripQualification q = strip_qualification(sch, members);
        ctx.flag_check("single-strip-unqualified", q.verdict == StripVerdict::Unqualified,
                       q.limiting_variance, long(members.size()));
        ctx.lower_check("single-strip-variance-floor", q.limiting_variance, 0.0,
                        long(members.size()));
    }

    {
        std::vector<StripPoint> a = strip_members(sch, kPi / 6, sch.d);
        std::vector<StripPoint> b = strip_members(sch, kPi / 3, sch.d);
        std::set<std::pair<long, long>> seen;
        std::vector<StripPoint> joined;
        for (const auto& list : {a, b}) {
            for (const StripPoint& p : list) {
                if (seen.insert({p.x, p.y}).second) joined.push_back(p);
            }
        }
        StripQualification q = strip_qualification(sch, joined);
        ctx.flag_check("two-direction-union-qualified", q.verdict == StripVerdict::Qualified,
                       q.limiting_variance, long(joined.size()));
    }

    {
        double bound = 100.0 * sch.d * sch.d * sch.d * kPi * kPi / 6.0;
        double prev = -1.0;
        double at_full = 0.0;
        long mono_violations = 0;
        for (double radius : {100.0, 200.0, 300.0, sch.R}) {
            StripScheme cut = make_strip(radius, sch.d);
            double dev = strip_deviation_sum(strip_members(cut, kPi / 6, sch.d), kPi / 6);
            if (dev < prev) mono_violations += 1;
            prev = dev;
            at_full = dev;
        }
        ctx.flag_check("deviation-sum-monotone", mono_violations == 0, double(mono_violations));
        ctx.upper_check("deviation-sum-bounded", at_full, bound);
    }

    {
        std::vector<StripPoint> members = strip_members(sch, kPi / 6, sch.d);
        std::vector<long> annulus(std::size_t(sch.R) + 2, 0);
        for (const StripPoint& p : members) annulus[std::size_t(p.dist)] += 1;
        long worst = 0;
        for (long c : annulus) worst = std::max(worst, c);
        ctx.upper_check("annulus-count", double(worst), 100.0 * sch.d, long(members.size()));
    }

    {
        std::vector<StripPoint> members = strip_members(sch, kPi / 5, sch.d);
        long limit = std::min<long>(200, long(members.size()));
        long violations = 0;
        std::vector<double> rs;
        for (long i = 0; i < limit; ++i) {
            rs.push_back(members[std::size_t(i)].r);
            if (stat2_variance(rs) < 1.0 / double(i + 2) - 1e-12) violations += 1;
        }
        ctx.flag_check("finite-prefix-floor", violations == 0, double(violations), limit);
    }

    {
        std::vector<StripPoint> members = strip_members(sch, kPi / 5, sch.d);
        members.resize(5);
        StripQualification q = strip_qualification(sch, members);
        ctx.flag_check("short-prefix-inconclusive", q.verdict == StripVerdict::Inconclusive,
                       double(q.trace.size()), 5);
    }

    return ctx.reports;
}

std::vector<TrialReport> hilbert_suite(const ExperimentConfig& cfg) {
    Ctx ctx(cfg);

    auto random_program = [](Stream& rng) {
        std::size_t dim = 3 + rng.next_u64() % 8;
        int nparts = 2 + int(rng.next_u64() % 4);
        std::map<int, std::vector<std::vector<double>>> sub;
        for (int p = 0; p < nparts; ++p) {
            int nv = 1 + int(rng.next_u64() % 2);
            for (int v = 0; v < nv; ++v) {
                std::vector<double> vec(dim);
                for (double& x : vec) x = rng.normal();
                sub[p].push_back(std::move(vec));
            }
        }
        std::vector<double> goal(dim);
        for (double& x : goal) x = rng.normal();
        return make_program(dim, std::move(goal), std::move(sub));
    };

    auto random_subset = [](Stream& rng, int nparts) {
        std::vector<int> subset;
        for (int p = 0; p < nparts; ++p) {
            if (rng.uniform01() < 0.5) subset.push_back(p);
        }
        if (subset.empty()) subset.push_back(int(rng.next_u64() % std::uint64_t(nparts)));
        return subset;
    };

    {
        Stream rng = substream(ctx.seed(), 0);
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            HilbertProgram prog = random_program(rng);
            std::vector<int> subset = random_subset(rng, int(prog.subspaces.size()));
            ProjectionSplit split = qualify(prog, subset).second;
            double u2 = dot(prog.goal, prog.goal);
            double v2 = dot(split.v, split.v);
            double w2 = dot(split.w, split.w);
            worst = std::max(worst, std::abs(u2 - v2 - w2));
        }
        ctx.upper_check("projection-pythagoras", worst, 1e-10, 100);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        long violations = 0;
        for (int inst = 0; inst < 100; ++inst) {
            HilbertProgram prog = random_program(rng);
            int nparts = int(prog.subspaces.size());
            std::vector<int> order(static_cast<std::size_t>(nparts));
            for (int p = 0; p < nparts; ++p) order[std::size_t(p)] = p;
            for (std::size_t i = order.size(); i > 1; --i) {
                std::swap(order[i - 1], order[rng.next_u64() % i]);
            }
            std::vector<int> subset;
            double prev = 1e300;
            for (int p : order) {
                subset.push_back(p);
                double v = qualify(prog, subset).second.residual_variance;
                if (v > prev + 1e-12) violations += 1;
                prev = v;
            }
        }
        ctx.flag_check("residual-monotone", violations == 0, double(violations), 100);
    }

    {
        double worst = 0.0;
        const std::vector<double> pool{1.3, 2.1, 3.7, 0.6};
        for (int k : {2, 3, 4, 5}) {
            std::vector<double> labels(pool.begin(), pool.begin() + (k - 1));
            HilbertProgram prog = program_from_threshold(k, labels);
            std::vector<int> all;
            for (int p = 0; p + 1 < k; ++p) all.push_back(p);
            double residual = qualify(prog, all).second.residual_variance;
            GaussThresholdScheme sch = make_gauss_threshold(k, 1.0, labels, false);
            std::vector<std::pair<double, double>> zeros;
            for (double p : labels) zeros.emplace_back(p, 0.0);
            worst = std::max(worst,
                             std::abs(residual - gauss_conditional(sch, zeros).law.variance));
        }
        ctx.upper_check("threshold-unification", worst, 1e-8);
    }

    {
        std::vector<double> sigmas = default_l2_sigmas();
        sigmas.resize(8);
        HilbertProgram prog = program_from_l2(sigmas);
        std::vector<int> rest;
        for (std::size_t p = 1; p < sigmas.size(); ++p) rest.push_back(int(p));
        double residual = qualify(prog, rest).second.residual_variance;
        double worst = std::abs(residual - sigmas[0] * sigmas[0]);
        std::vector<int> all;
        for (std::size_t p = 0; p < sigmas.size(); ++p) all.push_back(int(p));
        worst = std::max(worst, qualify(prog, all).second.residual_variance);
        ctx.upper_check("sum-scheme-unification", worst, 1e-8);
    }

    {
        double worst = 0.0;
        for (int m : {1, 5, 40}) {
            HilbertProgram prog = program_from_noisy(m);
            std::vector<int> all;
            for (int p = 0; p < m; ++p) all.push_back(p);
            double residual = qualify(prog, all).second.residual_variance;
            worst = std::max(worst, std::abs(residual - 1.0 / (m + 1.0)));
        }
        ctx.upper_check("repetition-unification", worst, 1e-8);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        double worst = 0.0;
        for (int inst = 0; inst < 20; ++inst) {
            std::vector<double> r = random_r_list(rng, 2, 6);
            HilbertProgram prog = program_from_obfuscated(r);
            std::vector<int> all;
            for (std::size_t p = 0; p < r.size(); ++p) all.push_back(int(p));
            double residual = qualify(prog, all).second.residual_variance;
            worst = std::max(worst, std::abs(residual - stat2_variance(r)));
        }
        ctx.upper_check("obfuscation-unification", worst, 1e-8, 20);
    }

    {
        Stream rng = substream(ctx.seed(), 0);
        long violations = 0;
        for (int inst = 0; inst < 100; ++inst) {
            HilbertProgram prog = random_program(rng);
            HilbertProgram scaled = prog;
            for (auto& [p, vecs] : scaled.subspaces) {
                for (auto& v : vecs) {
                    double c = (rng.uniform01() < 0.5 ? -1.0 : 1.0) *
                               std::pow(10.0, 3.0 * (2.0 * rng.uniform01() - 1.0));
                    for (double& x : v) x *= c;
                }
            }
            std::vector<int> subset = random_subset(rng, int(prog.subspaces.size()));
            if (qualify(prog, subset).first != qualify(scaled, subset).first) violations += 1;
        }
        ctx.flag_check("rescaling-invariance", violations == 0, double(violations), 100);
    }

    {
        HilbertProgram prog = make_program(2, {1.0, 0.0}, {{0, {{1.0, 1.0}}}, {1, {{0.0, 1.0}}}});
        auto [alone_ok, alone] = qualify(prog, {0});
        auto [both_ok, both] = qualify(prog, {1, 0});
        double worst = std::abs(alone.residual_variance - 0.5);
        worst = std::max(worst, both.residual_variance);
        bool verdicts = !alone_ok && both_ok;

        Stream rng = substream(ctx.seed(), 0);
        Dealing d = compile_to_scheme(prog, rng);
        std::map<int, std::vector<double>> shares{{0, d.shares[0]}, {1, d.shares[1]}};
        worst = std::max(worst, std::abs(recover(prog, {0, 1}, shares) - d.secret));
        ctx.flag_check("plane-example", verdicts && worst <= 1e-12, worst, 1);
    }

    {
        std::vector<double> r_values = builders::obfuscated_from(cfg).r_values;
        HilbertProgram prog = program_from_obfuscated(r_values);
        long n = 100000;
        struct Acc {
            Moments secret;
            Moments resid;
        };
        std::vector<int> all;
        for (std::size_t p = 0; p < prog.subspaces.size(); ++p) all.push_back(int(p));
        Acc out = accumulate_trials(
            n, cfg.threads, ctx.seed(), Acc{},
            [&](Acc& acc, long, Stream& rng) {
                Dealing d = compile_to_scheme(prog, rng);
                acc.secret.add(d.secret);
                std::map<int, std::vector<double>> shares;
                for (std::size_t p = 0; p < d.shares.size(); ++p) shares[int(p)] = d.shares[p];
                acc.resid.add(d.secret - linear_estimate(prog, all, shares));
            },
            [](Acc& tot, const Acc& p) {
                tot.secret.merge(p.secret);
                tot.resid.merge(p.resid);
            });
        ctx.rel_check("compiled-secret-variance", dot(prog.goal, prog.goal),
                      out.secret.variance(), 0.03, n);
        ctx.rel_check("compiled-residual-variance", stat2_variance(r_values),
                      out.resid.variance(), 0.03, n);
    }

    {
        std::vector<double> sigmas = default_l2_sigmas();
        sigmas.resize(8);
        HilbertProgram prog = program_from_l2(sigmas);
        std::vector<int> all;
        for (std::size_t p = 0; p < sigmas.size(); ++p) all.push_back(int(p));
        long n = 10000;
        double max_err = accumulate_trials(
            n, cfg.threads, ctx.seed(), 0.0,
            [&](double& worst, long, Stream& rng) {
                Dealing d = compile_to_scheme(prog, rng);
                std::map<int, std::vector<double>> shares;
                for (std::size_t p = 0; p < d.shares.size(); ++p) shares[int(p)] = d.shares[p];
                worst = std::max(worst, std::abs(recover(prog, all, shares) - d.secret));
            },
            [](double& tot, const double& p) { tot = std::max(tot, p); });
        ctx.upper_check("qualified-recovery-exact", max_err, 1e-9, n);
    }

    return ctx.reports;
}

} // namespace iss::suites
