#pragma once

#include <functional>
#include <vector>

#include "fdm/fdcore.hpp"

namespace fdm {

// Classical Adomian decomposition baseline. The nonlinearity is split as
// N(x,u)u = L u + R(x,u) u with R = N - L; corrections integrate the Adomian
// polynomials of the full product R(x,u) u. The grid is sampling only.
struct AdmSolution {
    std::vector<PiecewiseTerm> terms;
    std::vector<PiecewiseTerm> partial_sums;
    double L = 0.0;
};

AdmSolution adm_solve(const Problem& p, std::size_t m, const Grid& g, const Quadrature& q);

// Per-order sup errors of the ADM and FD partial sums against a truth
// function, over a window [a, b].
struct MethodComparison {
    std::vector<double> fd_sup;
    std::vector<double> adm_sup;
};

MethodComparison adm_compare(const Problem& p, std::size_t m, const Grid& g, const Quadrature& q,
                             double window_a, double window_b,
                             const std::function<double(double)>& truth);

}  // namespace fdm
