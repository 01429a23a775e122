#include "fdm/fdcore.hpp"

#include <cmath>
#include <stdexcept>

#include "fdm/adomian.hpp"
#include "fdm/errors.hpp"

namespace fdm {

void Problem::validate() const {
    if (!(x_end > x0)) throw std::invalid_argument("x_end must exceed x0");
    if (N.empty() || phi.empty()) throw std::invalid_argument("problem needs N and phi");
    if (exact) {
        const double v = exact->eval(x0, 0.0);
        if (std::fabs(v - u0) > 1e-10 * (1.0 + std::fabs(u0)))
            throw std::invalid_argument("exact solution does not match the initial value");
    }
}

bool Problem::singular_at_start() const {
    try {
        const double nv = N.eval(x0, u0);
        const double pv = phi.eval(x0, 0.0);
        return !std::isfinite(nv) || !std::isfinite(pv);
    } catch (const DomainError&) {
        return true;
    }
}

namespace {

std::vector<Spacing> spacing_plan(const Problem& p, const Grid& g) {
    std::vector<Spacing> plan(g.intervals(), Spacing::Uniform);
    if (p.singular_at_start()) plan[0] = Spacing::SqrtLeft;
    return plan;
}

[[noreturn]] void rethrow_at(const DomainError& e, double x) {
    throw SolveError(std::string(e.what()) + " at x=" + std::to_string(x));
}

}  // namespace

PiecewiseTerm solve_base(const Problem& p, const Grid& g, const Quadrature& q) {
    p.validate();
    const int S = q.samples;
    const auto plan = spacing_plan(p, g);
    std::vector<std::vector<double>> samples;
    std::vector<double> node_values{p.u0};
    double u_left = p.u0;

    for (std::size_t i = 0; i < g.intervals(); ++i) {
        const SampleLayout lay{g.nodes[i], g.nodes[i + 1] - g.nodes[i], S, plan[i]};
        const double c = u_left;  // frozen argument
        std::vector<double> n_int(S + 1), phi_int(S + 1);
        for (int s = 0; s <= S; ++s) {
            const double xe = lay.eval_position(s);
            try {
                n_int[s] = p.N.eval(xe, c) * lay.jacobian(s);
                phi_int[s] = p.phi.eval(xe, 0.0) * lay.jacobian(s);
            } catch (const DomainError& e) {
                rethrow_at(e, xe);
            }
        }
        const double step = lay.coord_step();
        const std::vector<double> M = cumulative_simpson(n_int, step);
        std::vector<double> gint(S + 1);
        for (int s = 0; s <= S; ++s) gint[s] = std::exp(-M[s]) * phi_int[s];
        const std::vector<double> I = cumulative_simpson(gint, step);
        std::vector<double> u(S + 1);
        for (int s = 0; s <= S; ++s) u[s] = std::exp(M[s]) * (u_left + I[s]);
        u_left = u[S];
        node_values.push_back(u_left);
        samples.push_back(std::move(u));
    }
    return PiecewiseTerm(g, S, plan, std::move(samples), std::move(node_values));
}

std::vector<double> assemble_F(std::size_t j, const std::vector<PiecewiseTerm>& terms,
                               const Problem& p, std::size_t i, const Quadrature& q) {
    if (terms.size() < j + 1) throw std::invalid_argument("assemble_F: missing earlier terms");
    const int S = q.samples;
    const SampleLayout lay = terms[0].layout(i);

    std::vector<double> u_left(j + 1);
    for (std::size_t t = 0; t <= j; ++t) u_left[t] = terms[t].node_value(i);

    std::vector<double> F(S + 1);
    std::vector<double> u_live(j + 1);
    for (int s = 0; s <= S; ++s) {
        const double xe = lay.eval_position(s);
        for (std::size_t t = 0; t <= j; ++t) u_live[t] = terms[t].interval_samples(i)[s];
        try {
            const Jet jet_left = p.N.jet_eval(xe, u_left[0], j + 1);
            const std::vector<double> A_left = adomian_polys(jet_left, u_left);
            const double tail = adomian_tail(jet_left, u_left);
            std::vector<double> A_live;
            if (s == 0) {
                A_live = A_left;  // identical arguments: difference sum vanishes termwise
            } else {
                const Jet jet_live = p.N.jet_eval(xe, u_live[0], j);
                A_live = adomian_polys(jet_live, u_live);
            }
            double f = tail * u_live[0];
            for (std::size_t pp = 1; pp <= j; ++pp) f += A_left[j + 1 - pp] * u_live[pp];
            for (std::size_t pp = 0; pp <= j; ++pp)
                f += (A_live[j - pp] - A_left[j - pp]) * u_live[pp];
            F[s] = f;
        } catch (const DomainError& e) {
            rethrow_at(e, xe);
        }
    }
    return F;
}

PiecewiseTerm solve_correction(std::size_t j, const Problem& p, const Grid& g,
                               const std::vector<PiecewiseTerm>& terms, const Quadrature& q) {
    const int S = q.samples;
    const PiecewiseTerm& base = terms[0];
    std::vector<Spacing> plan(g.intervals());
    for (std::size_t i = 0; i < g.intervals(); ++i) plan[i] = base.spacing(i);

    std::vector<std::vector<double>> samples;
    std::vector<double> node_values{0.0};
    double u_left = 0.0;  // u^(j+1)(x0) = 0

    for (std::size_t i = 0; i < g.intervals(); ++i) {
        const SampleLayout lay = base.layout(i);
        const double c = base.node_value(i);
        const auto& u0s = base.interval_samples(i);

        std::vector<double> n_int(S + 1), npr(S + 1);
        for (int s = 0; s <= S; ++s) {
            const double xe = lay.eval_position(s);
            try {
                const Jet nj = p.N.jet_eval(xe, c, 1);
                n_int[s] = nj[0] * lay.jacobian(s);
                npr[s] = nj[1];
            } catch (const DomainError& e) {
                rethrow_at(e, xe);
            }
        }
        const double step = lay.coord_step();
        const std::vector<double> M = cumulative_simpson(n_int, step);

        std::vector<double> carry_int(S + 1);
        for (int s = 0; s <= S; ++s)
            carry_int[s] = std::exp(-M[s]) * npr[s] * u0s[s] * lay.jacobian(s);
        const std::vector<double> Icarry = cumulative_simpson(carry_int, step);

        const std::vector<double> F = assemble_F(j, terms, p, i, q);
        std::vector<double> f_int(S + 1);
        for (int s = 0; s <= S; ++s) f_int[s] = std::exp(-M[s]) * F[s] * lay.jacobian(s);
        const std::vector<double> If = cumulative_simpson(f_int, step);

        std::vector<double> u(S + 1);
        for (int s = 0; s <= S; ++s) {
            const double E = std::exp(M[s]);
            u[s] = (E + E * Icarry[s]) * u_left + E * If[s];
        }
        u_left = u[S];
        node_values.push_back(u_left);
        samples.push_back(std::move(u));
    }
    return PiecewiseTerm(g, S, plan, std::move(samples), std::move(node_values));
}

FdSolution fd_solve(const Problem& p, const Grid& g, std::size_t m, const Quadrature& q) {
    FdSolution sol;
    sol.grid = g;
    sol.terms.push_back(solve_base(p, g, q));
    sol.partial_sums.push_back(sol.terms[0]);
    for (std::size_t j = 0; j + 1 <= m; ++j) {
        sol.terms.push_back(solve_correction(j, p, g, sol.terms, q));
        PiecewiseTerm sum = sol.partial_sums.back();
        sum += sol.terms.back();
        sol.partial_sums.push_back(std::move(sum));
    }
    for (std::size_t j = 2; j < sol.terms.size(); ++j) {
        const double s2 = sol.terms[j - 2].sup_norm();
        const double s1 = sol.terms[j - 1].sup_norm();
        const double s0 = sol.terms[j].sup_norm();
        if (s2 > 0.0 && s1 > 10.0 * s2 && s0 > 10.0 * s1)
            sol.warnings.push_back("series terms growing: ||u^(" + std::to_string(j) +
                                   ")|| exceeds 10x over two consecutive orders");
    }
    return sol;
}

}  // namespace fdm
