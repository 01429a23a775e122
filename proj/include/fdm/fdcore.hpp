#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdm/expr.hpp"
#include "fdm/mesh.hpp"

namespace fdm {

// Cauchy problem u' - N(x,u) u = phi(x), u(x0) = u0, on [x0, x_end].
struct Problem {
    Expression N;    // in (x, u)
    Expression phi;  // in x
    double x0 = 0.0;
    double u0 = 0.0;
    double x_end = 1.0;
    std::optional<Expression> exact;       // in x
    std::optional<double> adm_linear;      // linear split L for the ADM baseline
    std::optional<Expression> weight;      // discrepancy weight, default 1

    void validate() const;
    // True when N or phi cannot be evaluated at (x0, u0): the solvers then
    // sample the first subinterval in t = sqrt(x - x0).
    bool singular_at_start() const;
};

// Series terms u^(0)..u^(m) plus cumulative partial sums.
struct FdSolution {
    std::vector<PiecewiseTerm> terms;
    std::vector<PiecewiseTerm> partial_sums;
    Grid grid;
    std::vector<std::string> warnings;
};

// Base problem: on each subinterval the u-argument of N is frozen at the
// left-node value, giving a linear equation solved by integrating factor
// plus cumulative Simpson quadrature.
PiecewiseTerm solve_base(const Problem& p, const Grid& g, const Quadrature& q);

// Right-hand side F^(j+1) at the samples of subinterval i, combining Adomian
// polynomials at the live point x and at the frozen left node.
std::vector<double> assemble_F(std::size_t j, const std::vector<PiecewiseTerm>& terms,
                               const Problem& p, std::size_t i, const Quadrature& q);

// Correction term u^(j+1): zero initial value at x0, left-limit value carried
// forward at interior nodes.
PiecewiseTerm solve_correction(std::size_t j, const Problem& p, const Grid& g,
                               const std::vector<PiecewiseTerm>& terms, const Quadrature& q);

FdSolution fd_solve(const Problem& p, const Grid& g, std::size_t m, const Quadrature& q);

}  // namespace fdm
