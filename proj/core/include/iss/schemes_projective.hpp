#pragma once

#include <array>
#include <vector>

#include "iss/dealing.hpp"
#include "iss/rng.hpp"

namespace iss {

using Vec3 = std::array<double, 3>;

// Projective points and lines both live on the unit sphere: a point is a
// diagonal pair of sphere points, a line is a great circle held by its
// normal. Representatives are unit vectors with the first nonzero
// coordinate positive, so equality is plain comparison.
struct ProjPoint {
    Vec3 v{0, 0, 0};
};

struct ProjLine {
    Vec3 n{0, 0, 0};
};

ProjPoint make_point(const Vec3& raw);
ProjLine make_line(const Vec3& raw_normal);

// Intersection of two lines / connecting line of two points.
ProjPoint meet(const ProjLine& a, const ProjLine& b);
ProjLine join(const ProjPoint& a, const ProjPoint& b);

bool incident(const ProjPoint& p, const ProjLine& l, double tol = 1e-10);

// Angular distance between projective points, in [0, pi/2].
double proj_distance(const ProjPoint& a, const ProjPoint& b);

// 2-threshold scheme: the dealer draws a uniform random line t; the secret
// is t's intersection with ell and each participant line learns its own
// intersection with t.
struct ProjectiveScheme {
    ProjPoint Q;
    ProjLine ell;
    std::vector<ProjLine> participant_lines;
};

// Builds the scheme from a base point and line angles; angle 0 is reserved
// for ell and participant angles must be distinct and nonzero.
ProjectiveScheme make_projective_scheme(const std::vector<double>& participant_angles);

Dealing proj_deal(const ProjectiveScheme&, Stream& rng);

ProjPoint proj_recover(const ProjectiveScheme&, const ProjPoint& pt1, const ProjPoint& pt2);

// Arc parameter of a point of ell, in [0, pi): the angle around ell's great
// circle measured from Q.
double arc_parameter(const ProjectiveScheme&, const ProjPoint& on_ell);

// Histogram estimate of the secret's conditional density given that the
// named participant's share equals share_point. The dealer's line is drawn
// uniformly among lines through the share point (the rotationally symmetric
// conditional law); bins cover the arc parameter range [0, pi) and the
// returned values integrate to 1.
std::vector<double> proj_conditional_density(const ProjectiveScheme&,
                                             std::size_t participant,
                                             const ProjPoint& share_point,
                                             int bins, long trials, Stream& rng);

} // namespace iss
