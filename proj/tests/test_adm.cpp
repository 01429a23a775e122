#include <doctest.h>

#include <cmath>

#include "fdm/adm.hpp"
#include "fdm/analysis.hpp"

using fdm::adm_solve;
using fdm::Expression;
using fdm::Grid;
using fdm::Problem;
using fdm::Quadrature;

namespace {

Problem decay_cubic() {
    // u' = -(1+u^2) u, u(0) = 1; with L = -1 the nonlinear part is -u^3
    Problem p;
    p.N = Expression::parse("-(1+u^2)");
    p.phi = Expression::parse("0");
    p.x0 = 0.0;
    p.u0 = 1.0;
    p.x_end = 2.0;
    p.adm_linear = -1.0;
    return p;
}

Problem example1(double x_end) {
    Problem p;
    p.N = Expression::parse("-(1+u^2)");
    p.phi = Expression::parse("cos(x)+sin(x)+sin(x)^3");
    p.x0 = 0.0;
    p.u0 = 0.0;
    p.x_end = x_end;
    p.exact = Expression::parse("sin(x)");
    p.adm_linear = -1.0;
    return p;
}

}  // namespace

TEST_CASE("adm: closed-form first correction") {
    // u_A^(0) = e^{-x}; u_A^(1) solves u' + u = -e^{-3x}, u(0)=0
    // => u_A^(1)(x) = -(e^{-x} - e^{-3x})/2
    const Problem p = decay_cubic();
    const Grid g = Grid::uniform(0.0, 0.125, 16);
    const auto sol = adm_solve(p, 1, g, Quadrature{32});
    REQUIRE(sol.terms.size() == 2);
    CHECK(sol.L == -1.0);
    CHECK(sol.terms[0].eval(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    const double want = -(std::exp(-1.0) - std::exp(-3.0)) / 2.0;
    CHECK(sol.terms[1].eval(1.0) == doctest::Approx(want).epsilon(1e-8));
    for (double x = 0.0; x <= 2.0; x += 0.217) {
        const double w = -(std::exp(-x) - std::exp(-3.0 * x)) / 2.0;
        CHECK(sol.terms[1].eval(x) == doctest::Approx(w).epsilon(1e-8));
    }
}

TEST_CASE("adm: pure linear split has no corrections") {
    Problem p;
    p.N = Expression::parse("-1");
    p.phi = Expression::parse("0");
    p.x0 = 0.0;
    p.u0 = 1.0;
    p.x_end = 2.0;
    p.adm_linear = -1.0;  // R = N - L = 0
    const Grid g = Grid::uniform(0.0, 0.25, 8);
    const auto sol = adm_solve(p, 3, g, Quadrature{32});
    for (std::size_t i = 1; i <= 3; ++i) CHECK(sol.terms[i].sup_norm() <= 1e-12);
    CHECK(sol.partial_sums[0].eval(1.5) == doctest::Approx(std::exp(-1.5)).epsilon(1e-9));
}

TEST_CASE("adm: partial sums accumulate the terms") {
    const Problem p = example1(2.0);
    const Grid g = Grid::uniform(0.0, 0.25, 8);
    const auto sol = adm_solve(p, 3, g, Quadrature{16});
    for (double x = 0.0; x <= 2.0; x += 0.111) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= 3; ++j) {
            acc += sol.terms[j].eval(x);
            CHECK(std::fabs(sol.partial_sums[j].eval(x) - acc) <=
                  1e-13 * (1.0 + std::fabs(acc)));
        }
    }
}

TEST_CASE("adm: the grid is sampling only") {
    // identical sample density on two different grids: the results must be
    // the same up to floating-point reassociation
    const Problem p = example1(6.0);
    const Grid ga = Grid::uniform(0.0, 1.0 / 3.0, 18);
    const Grid gb = Grid::uniform(0.0, 1.0 / 6.0, 36);
    const auto a = adm_solve(p, 3, ga, Quadrature{64});
    const auto b = adm_solve(p, 3, gb, Quadrature{32});
    for (std::size_t j = 0; j <= 3; ++j) {
        // errors accumulate along x, so scale by the term's sup norm
        const double tol = 2e-8 * (1.0 + a.terms[j].sup_norm());
        for (std::size_t i = 0; i < ga.intervals(); ++i)
            for (int s = 0; s <= 64; ++s) {
                const double va = a.terms[j].interval_samples(i)[static_cast<std::size_t>(s)];
                const std::size_t k = 2 * i + (s >= 32 ? 1 : 0);
                const int sp = s >= 32 ? s - 32 : s;
                const double vb = b.terms[j].interval_samples(k)[static_cast<std::size_t>(sp)];
                CHECK(std::fabs(va - vb) <= tol);
            }
    }
}

TEST_CASE("adm: sampling refinement converges") {
    // S-doubling shifts the samples only by quadrature error; the m=3 term
    // on [0,6] carries ~1e-7 relative Simpson error at S=32
    const Problem p = example1(6.0);
    const Grid g = Grid::uniform(0.0, 1.0 / 3.0, 18);
    const auto a = adm_solve(p, 3, g, Quadrature{32});
    const auto b = adm_solve(p, 3, g, Quadrature{64});
    for (std::size_t j = 0; j <= 3; ++j) {
        const double tol = 5e-7 * (1.0 + a.terms[j].sup_norm());
        for (std::size_t i = 0; i < g.intervals(); ++i)
            for (int s = 0; s <= 32; ++s) {
                const double va = a.terms[j].interval_samples(i)[static_cast<std::size_t>(s)];
                const double vb = b.terms[j].interval_samples(i)[static_cast<std::size_t>(2 * s)];
                CHECK(std::fabs(va - vb) <= tol);
            }
    }
}

TEST_CASE("adm_compare: FD converges, ADM diverges on [0,6]") {
    const Problem p = example1(6.0);
    const Grid g = Grid::uniform(0.0, 1.0 / 3.0, 18);
    auto truth = [](double x) { return std::sin(x); };
    const auto cmp = fdm::adm_compare(p, 3, g, Quadrature{32}, 0.0, 6.0, truth);
    REQUIRE(cmp.fd_sup.size() == 4);
    REQUIRE(cmp.adm_sup.size() == 4);
    CHECK(cmp.fd_sup[3] < cmp.fd_sup[0]);
    CHECK(cmp.adm_sup[3] > cmp.adm_sup[0]);
}

TEST_CASE("adm_compare: degenerate window gives zero errors") {
    const Problem p = example1(2.0);
    const Grid g = Grid::uniform(0.0, 0.25, 8);
    auto truth = [](double x) { return std::sin(x); };
    const auto cmp = fdm::adm_compare(p, 2, g, Quadrature{16}, 0.0, 0.0, truth);
    for (double v : cmp.fd_sup) CHECK(v <= 1e-12);
    for (double v : cmp.adm_sup) CHECK(v <= 1e-12);
}

TEST_CASE("adm and fd both match the reference when N has no u") {
    Problem p;
    p.N = Expression::parse("-1-x^2");
    p.phi = Expression::parse("cos(x)");
    p.x0 = 0.0;
    p.u0 = 0.5;
    p.x_end = 1.0;
    p.adm_linear = -1.0;  // leaves R = -x^2, small enough for the series to settle
    const Grid g = Grid::uniform(0.0, 0.1, 10);
    const auto ref = fdm::reference_solve(p, 1e-10);
    const auto cmp =
        fdm::adm_compare(p, 8, g, Quadrature{32}, 0.0, 1.0, [&](double x) { return ref.eval(x); });
    CHECK(cmp.fd_sup[3] <= 1e-6);  // FD is exact at m=0 already (frozen arg is a no-op)
    CHECK(cmp.adm_sup[8] <= 1e-6);
}
