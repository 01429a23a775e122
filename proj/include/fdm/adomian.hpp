#pragma once

#include <span>
#include <vector>

#include "fdm/jet.hpp"

namespace fdm {

// Adomian polynomials A_0..A_k of a nonlinearity N, given the jet of N in u
// about u_values[0] and the series coefficients u_values = u^(0)..u^(k).
// A_j is the t^j coefficient of N(sum_i t^i u^(i)); the x-dependence of N is
// carried by the jet, which is evaluated at one fixed x.
std::vector<double> adomian_polys(const Jet& n_jet, std::span<const double> u_values);

// A_{j+1}(N; u^(0),...,u^(j), 0): the tail polynomial with the (j+1)-th
// argument set to zero. Requires n_jet.order() >= u_values.size().
double adomian_tail(const Jet& n_jet, std::span<const double> u_values);

}  // namespace fdm
