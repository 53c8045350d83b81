#include "iss/schemes_projective.hpp"

#include <cmath>

#include "iss/errors.hpp"
#include "iss/numerics.hpp"

namespace iss {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

// Scale to unit length and flip so the first nonzero coordinate is
// positive; the two sphere representatives of a projective element then
// collapse to one.
Vec3 canonical(const Vec3& raw) {
    double n = norm3(raw);
    if (!(n > 1e-14)) throw CoincidentPoints("zero vector has no projective class");
    Vec3 v{raw[0] / n, raw[1] / n, raw[2] / n};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0) {
                v = {-v[0], -v[1], -v[2]};
            }
            break;
        }
    }
    return v;
}

} // namespace

ProjPoint make_point(const Vec3& raw) { return ProjPoint{canonical(raw)}; }

ProjLine make_line(const Vec3& raw_normal) { return ProjLine{canonical(raw_normal)}; }

ProjPoint meet(const ProjLine& a, const ProjLine& b) {
    Vec3 c = cross(a.n, b.n);
    if (norm3(c) < 1e-12) throw CoincidentPoints("lines coincide, no unique intersection");
    return ProjPoint{canonical(c)};
}

ProjLine join(const ProjPoint& a, const ProjPoint& b) {
    Vec3 c = cross(a.v, b.v);
    if (norm3(c) < 1e-12) throw CoincidentPoints("points coincide, no unique joining line");
    return ProjLine{canonical(c)};
}

bool incident(const ProjPoint& p, const ProjLine& l, double tol) {
    return std::abs(dot3(p.v, l.n)) < tol;
}

double proj_distance(const ProjPoint& a, const ProjPoint& b) {
    double c = std::abs(dot3(a.v, b.v));
    if (c > 1.0) c = 1.0;
    return std::acos(c);
}

ProjectiveScheme make_projective_scheme(const std::vector<double>& participant_angles) {
    // ell is the xy great circle and Q the x axis; each participant line
    // also passes through Q, its plane tilted out of ell by the given angle.
    ProjectiveScheme s;
    s.Q = make_point({1, 0, 0});
    s.ell = make_line({0, 0, 1});
    for (double g : participant_angles) {
        double m = std::fmod(std::fmod(g, std::acos(-1.0)) + std::acos(-1.0), std::acos(-1.0));
        if (m < 1e-9) throw BadParameter("participant angle collides with the public line");
        // line through Q whose plane is the xy plane rotated by g about x
        Vec3 n{0, -std::sin(g), std::cos(g)};
        ProjLine cand = make_line(n);
        for (const ProjLine& prev : s.participant_lines) {
            if (std::abs(std::abs(dot3(prev.n, cand.n)) - 1.0) < 1e-12) {
                throw BadParameter("duplicate participant angle");
            }
        }
        s.participant_lines.push_back(cand);
    }
    return s;
}

namespace {

// Uniform random projective line: a uniform sphere point as normal.
ProjLine random_line(Stream& rng) {
    for (;;) {
        double x = rng.normal();
        double y = rng.normal();
        double z = rng.normal();
        Vec3 v{x, y, z};
        if (norm3(v) > 1e-6) return make_line(v);
    }
}

} // namespace

Dealing proj_deal(const ProjectiveScheme& s, Stream& rng) {
    // Redraw until the dealt line avoids Q and is transversal to ell and
    // every participant line; the excluded set has measure zero.
    for (;;) {
        ProjLine t = random_line(rng);
        if (std::abs(dot3(t.n, s.Q.v)) < 1e-9) continue;
        if (std::abs(std::abs(dot3(t.n, s.ell.n)) - 1.0) < 1e-9) continue;
        bool ok = true;
        for (const ProjLine& p : s.participant_lines) {
            if (std::abs(std::abs(dot3(t.n, p.n)) - 1.0) < 1e-9) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        ProjPoint secret_pt = meet(t, s.ell);
        Dealing d;
        d.secret = arc_parameter(s, secret_pt);
        for (const ProjLine& p : s.participant_lines) {
            ProjPoint share = meet(t, p);
            d.shares.push_back({share.v[0], share.v[1], share.v[2]});
        }
        return d;
    }
}

ProjPoint proj_recover(const ProjectiveScheme& s, const ProjPoint& pt1, const ProjPoint& pt2) {
    ProjLine t = join(pt1, pt2);
    return meet(t, s.ell);
}

double arc_parameter(const ProjectiveScheme& s, const ProjPoint& on_ell) {
    if (!incident(on_ell, s.ell, 1e-8)) throw BadParameter("point does not lie on the public line");
    Vec3 e1 = s.Q.v;
    Vec3 e2 = canonical(cross(s.ell.n, s.Q.v));
    double th = std::atan2(dot3(on_ell.v, e2), dot3(on_ell.v, e1));
    double pi = std::acos(-1.0);
    th = std::fmod(std::fmod(th, pi) + pi, pi);
    return th;
}

std::vector<double> proj_conditional_density(const ProjectiveScheme& s, std::size_t participant,
                                             const ProjPoint& share_point, int bins, long trials,
                                             Stream& rng) {
    if (participant >= s.participant_lines.size()) throw UnknownParticipant("no such participant");
    if (bins < 18) throw BadParameter("need at least 18 bins");
    if (trials < 1000000) throw BadParameter("need at least 1e6 trials for a stable histogram");
    if (!incident(share_point, s.participant_lines[participant], 1e-8)) {
        throw BadParameter("share point does not lie on the participant line");
    }

    // Conditioned on the share, the dealt line is a uniformly rotated line
    // through the share point: pick an orthonormal basis of the plane of
    // normals perpendicular to the share point and spin a uniform angle.
    Vec3 r = share_point.v;
    Vec3 helper{1, 0, 0};
    if (std::abs(r[0]) > 0.9) helper = {0, 1, 0};
    Vec3 a = canonical(cross(r, helper));
    Vec3 b = canonical(cross(r, a));

    double pi = std::acos(-1.0);
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    long kept = 0;
    for (long i = 0; i < trials; ++i) {
        double u = rng.uniform01() * pi;
        Vec3 n{std::cos(u) * a[0] + std::sin(u) * b[0], std::cos(u) * a[1] + std::sin(u) * b[1],
               std::cos(u) * a[2] + std::sin(u) * b[2]};
        if (std::abs(dot3(n, s.Q.v)) < 1e-9) continue;
        if (std::abs(std::abs(dot3(n, s.ell.n)) - 1.0) < 1e-9) continue;
        ProjLine t = make_line(n);
        double th = arc_parameter(s, meet(t, s.ell));
        int bin = static_cast<int>(th / pi * bins);
        if (bin >= bins) bin = bins - 1;
        counts[static_cast<std::size_t>(bin)] += 1;
        kept += 1;
    }
    if (kept == 0) throw BadParameter("all trials rejected");

    double bin_width = pi / bins;
    std::vector<double> density(static_cast<std::size_t>(bins));
    for (std::size_t i = 0; i < density.size(); ++i) {
        density[i] = static_cast<double>(counts[i]) / (static_cast<double>(kept) * bin_width);
    }
    return density;
}

} // namespace iss
