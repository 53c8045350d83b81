#pragma once

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "iss/dealing.hpp"
#include "iss/rng.hpp"

namespace iss {

// Linear sharing program over a finite-dimensional real inner-product
// space: a goal vector and, per participant, a list of spanning vectors. A
// subset is qualified when the goal lies in the span of its vectors; the
// compiled scheme hands out the coordinates of an iid normal vector along
// the spanning vectors, making the residual norm the secrecy guarantee.
struct HilbertProgram {
    std::size_t dim = 0;
    std::vector<double> goal;
    std::map<int, std::vector<std::vector<double>>> subspaces;
};

HilbertProgram make_program(std::size_t dim, std::vector<double> goal,
                            std::map<int, std::vector<std::vector<double>>> subspaces);

struct ProjectionSplit {
    std::vector<double> v;
    std::vector<double> w;
    double residual_variance = 0.0;
};

// Projects the goal onto the span of the subset's vectors; qualified when
// the residual norm is at most tol * |goal|.
std::pair<bool, ProjectionSplit> qualify(const HilbertProgram&, const std::vector<int>& subset,
                                         double tol = 1e-8);

// Secret = <goal, xi> for xi iid standard normal; participant shares are
// <b, xi> per spanning vector, in ascending participant order.
Dealing compile_to_scheme(const HilbertProgram&, Stream& rng);

// Least-squares combination of the subset's spanning vectors reproducing
// the goal, applied to the share values.
double recover(const HilbertProgram&, const std::vector<int>& subset,
               const std::map<int, std::vector<double>>& shares, double tol = 1e-8);

// The same least-squares combination without the qualification gate: for
// unqualified subsets this is the best linear estimate of the secret, off
// by a normal of variance equal to the squared residual norm.
double linear_estimate(const HilbertProgram&, const std::vector<int>& subset,
                       const std::map<int, std::vector<double>>& shares);

// Text form: `dim m`, `goal v1 .. vm`, then one `participant_index v1 .. vm`
// line per spanning vector.
HilbertProgram parse_program(std::istream&);
void serialize_program(std::ostream&, const HilbertProgram&);

// The classic schemes as programs, for cross-checking their conditional
// variances against residual norms.

// Threshold scheme: coordinates are the anchor values, goal row evaluates
// the interpolant at 0, participant rows evaluate it at the labels.
HilbertProgram program_from_threshold(int k, const std::vector<double>& labels);

// Sum scheme: goal (s_1..s_N), participant i spans s_i * e_i.
HilbertProgram program_from_l2(const std::vector<double>& sigmas);

// Noisy measurements: goal e_1, participant i spans e_1 + e_{1+i}.
HilbertProgram program_from_noisy(int n);

// Obfuscated measurements: goal e_1, participant i spans e_1 + r_i e_2 + e_{i+2}.
HilbertProgram program_from_obfuscated(const std::vector<double>& r_values);

} // namespace iss
