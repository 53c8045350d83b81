#include "iss/schemes_stat.hpp"

#include <algorithm>
#include <cmath>

#include "iss/errors.hpp"

namespace iss {

NoisyScheme make_noisy(int n) {
    if (n < 2) throw BadParameter("need at least two participants");
    return NoisyScheme{n};
}

Dealing noisy_deal(const NoisyScheme& s, Stream& rng) {
    Dealing d;
    d.secret = rng.normal();
    for (int i = 0; i < s.n; ++i) d.shares.push_back({d.secret + rng.normal()});
    return d;
}

ObfuscatedScheme make_obfuscated(std::vector<double> r_values) {
    if (r_values.empty()) throw BadParameter("need at least one participant");
    for (double r : r_values) {
        if (!(r >= 1.0) || !(r < 10.0)) throw BadParameter("obfuscating values lie in [1,10)");
    }
    return ObfuscatedScheme{std::move(r_values)};
}

Dealing obfuscated_deal(const ObfuscatedScheme& s, Stream& rng) {
    Dealing d;
    d.secret = rng.normal();
    double eta = rng.normal();
    for (double r : s.r_values) d.shares.push_back({d.secret + r * eta + rng.normal()});
    return d;
}

double stat2_variance(const std::vector<double>& r_values) {
    if (r_values.empty()) throw BadParameter("need at least one value");
    double n = static_cast<double>(r_values.size());
    double rbar = 0.0;
    for (double r : r_values) rbar += r;
    rbar /= n;
    double S = 0.0;
    for (double r : r_values) S += (r - rbar) * (r - rbar);
    double inv = 1.0 + (1.0 + S) / (rbar * rbar + (1.0 + S) / n);
    return 1.0 / inv;
}

StripScheme make_strip(double R, double d) {
    if (!(R >= 10.0)) throw BadParameter("radius too small to hold a strip");
    if (!(d > 5.0)) throw BadParameter("strip width must exceed 5");
    return StripScheme{R, d};
}

namespace {

StripPoint lattice_point(long x, long y) {
    StripPoint p;
    p.x = x;
    p.y = y;
    p.phi = std::atan2(static_cast<double>(y), static_cast<double>(x));
    p.r = 1.0 + p.phi;
    p.dist = std::hypot(static_cast<double>(x), static_cast<double>(y));
    return p;
}

void sort_by_dist(std::vector<StripPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const StripPoint& a, const StripPoint& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
}

} // namespace

std::vector<StripPoint> strip_participants(const StripScheme& s) {
    std::vector<StripPoint> pts;
    long limit = static_cast<long>(std::floor(s.R));
    for (long x = 1; x <= limit; ++x) {
        for (long y = 1; y <= limit; ++y) {
            StripPoint p = lattice_point(x, y);
            if (p.dist <= s.R) pts.push_back(p);
        }
    }
    sort_by_dist(pts);
    return pts;
}

std::vector<StripPoint> strip_members(const StripScheme& s, double direction_angle, double d) {
    if (!(direction_angle > 0.0) || !(direction_angle < std::acos(-1.0) / 2)) {
        throw BadParameter("direction must point into the open first quadrant");
    }
    if (!(d > 5.0)) throw BadParameter("strip width must exceed 5");
    double sn = std::sin(direction_angle);
    double cs = std::cos(direction_angle);
    std::vector<StripPoint> pts;
    long limit = static_cast<long>(std::floor(s.R));
    for (long x = 1; x <= limit; ++x) {
        for (long y = 1; y <= limit; ++y) {
            StripPoint p = lattice_point(x, y);
            if (p.dist > s.R) continue;
            if (std::abs(x * sn - y * cs) <= d / 2) pts.push_back(p);
        }
    }
    sort_by_dist(pts);
    return pts;
}

double strip_deviation_sum(const std::vector<StripPoint>& members, double direction_angle) {
    double target = 1.0 + direction_angle;
    double sum = 0.0;
    for (const StripPoint& p : members) sum += (p.r - target) * (p.r - target);
    return sum;
}

StripQualification strip_qualification(const StripScheme&, const std::vector<StripPoint>& subset) {
    if (subset.empty()) throw EmptySubset("cannot qualify an empty subset");

    std::vector<StripPoint> pts = subset;
    sort_by_dist(pts);

    // stat2_variance over prefixes, with the sufficient statistics (sum,
    // sum of squares) maintained incrementally.
    StripQualification q;
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sum += pts[i].r;
        sumsq += pts[i].r * pts[i].r;
        double n = static_cast<double>(i + 1);
        double rbar = sum / n;
        double S = std::max(0.0, sumsq - n * rbar * rbar);
        double inv = 1.0 + (1.0 + S) / (rbar * rbar + (1.0 + S) / n);
        q.trace.emplace_back(i + 1, 1.0 / inv);
    }
    q.limiting_variance = q.trace.back().second;

    // Largest full doubling within the data.
    std::size_t half = 1;
    while (half * 4 <= pts.size()) half *= 2;
    if (half * 2 > pts.size() || half < 8) {
        return q;
    }
    double v_half = q.trace[half - 1].second;
    double v_full = q.trace[half * 2 - 1].second;
    double ratio = v_full / v_half;
    double v_first = q.trace.front().second;

    if (ratio >= 0.95) {
        q.verdict = StripVerdict::Unqualified;
    } else if (ratio <= 0.75 && q.limiting_variance <= 0.05 * v_first) {
        q.verdict = StripVerdict::Qualified;
    }
    return q;
}

} // namespace iss
