#pragma once

#include <utility>
#include <vector>

// Reference implementations used only to cross-check the closed forms in
// the scheme modules. They rebuild each covariance matrix from scratch and
// run a direct Schur complement in extended precision, sharing no code
// with the production paths.
namespace iss::oracle {

// Conditional (mean, variance) of the value at 0 of a random polynomial
// with iid N(0, sigma^2) values at nodes 1/k..k/k, given (label, value)
// observation pairs.
std::pair<double, double> gauss_conditional(int k, double sigma,
                                            const std::vector<std::pair<double, double>>& shares);

// Residual variance of a unit normal secret s observed through shares
// s + r_i*eta + xi_i with eta, xi_i iid unit normals.
double stat2_variance(const std::vector<double>& r_values);

} // namespace iss::oracle
