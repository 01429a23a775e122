#include "fdm/adm.hpp"

#include <cmath>

#include "fdm/adomian.hpp"
#include "fdm/errors.hpp"

namespace fdm {

namespace {

// Solve u' = L u + rhs(x), u(x_left) = u_left, on one subinterval by
// integrating factor, returning samples on the layout.
std::vector<double> linear_step(double L, double u_left, const SampleLayout& lay,
                                const std::vector<double>& rhs) {
    const int S = lay.S;
    const double step = lay.coord_step();
    std::vector<double> lin(S + 1), gint(S + 1);
    for (int s = 0; s <= S; ++s) lin[s] = L * lay.jacobian(s);
    const std::vector<double> M = cumulative_simpson(lin, step);
    for (int s = 0; s <= S; ++s) gint[s] = std::exp(-M[s]) * rhs[s] * lay.jacobian(s);
    const std::vector<double> I = cumulative_simpson(gint, step);
    std::vector<double> u(S + 1);
    for (int s = 0; s <= S; ++s) u[s] = std::exp(M[s]) * (u_left + I[s]);
    return u;
}

std::vector<Spacing> spacing_plan(const Problem& p, const Grid& g) {
    std::vector<Spacing> plan(g.intervals(), Spacing::Uniform);
    if (p.singular_at_start()) plan[0] = Spacing::SqrtLeft;
    return plan;
}

}  // namespace

AdmSolution adm_solve(const Problem& p, std::size_t m, const Grid& g, const Quadrature& q) {
    p.validate();
    const double L = p.adm_linear.value_or(0.0);
    const int S = q.samples;
    const auto plan = spacing_plan(p, g);

    AdmSolution sol;
    sol.L = L;

    // u_A^(0): u' = L u + phi
    {
        std::vector<std::vector<double>> samples;
        std::vector<double> node_values{p.u0};
        double u_left = p.u0;
        for (std::size_t i = 0; i < g.intervals(); ++i) {
            const SampleLayout lay{g.nodes[i], g.nodes[i + 1] - g.nodes[i], S, plan[i]};
            std::vector<double> rhs(S + 1);
            for (int s = 0; s <= S; ++s) rhs[s] = p.phi.eval(lay.eval_position(s), 0.0);
            std::vector<double> u = linear_step(L, u_left, lay, rhs);
            u_left = u[S];
            node_values.push_back(u_left);
            samples.push_back(std::move(u));
        }
        sol.terms.emplace_back(g, S, plan, std::move(samples), std::move(node_values));
        sol.partial_sums.push_back(sol.terms[0]);
    }

    for (std::size_t k = 0; k + 1 <= m; ++k) {
        // u_A^(k+1): u' = L u + A_k(R(x,u) u; uA^(0)..uA^(k)), u(x0) = 0
        std::vector<std::vector<double>> samples;
        std::vector<double> node_values{0.0};
        double u_left = 0.0;
        std::vector<double> uvals(k + 1);
        for (std::size_t i = 0; i < g.intervals(); ++i) {
            const SampleLayout lay = sol.terms[0].layout(i);
            std::vector<double> rhs(S + 1);
            for (int s = 0; s <= S; ++s) {
                const double xe = lay.eval_position(s);
                for (std::size_t t = 0; t <= k; ++t)
                    uvals[t] = sol.terms[t].interval_samples(i)[s];
                const Jet njet = p.N.jet_eval(xe, uvals[0], k);
                const Jet gjet = (njet - L) * Jet::variable(uvals[0], k);
                rhs[s] = adomian_polys(gjet, uvals)[k];
            }
            std::vector<double> u = linear_step(L, u_left, lay, rhs);
            u_left = u[S];
            node_values.push_back(u_left);
            samples.push_back(std::move(u));
        }
        sol.terms.emplace_back(g, S, plan, std::move(samples), std::move(node_values));
        PiecewiseTerm sum = sol.partial_sums.back();
        sum += sol.terms.back();
        sol.partial_sums.push_back(std::move(sum));
    }
    return sol;
}

MethodComparison adm_compare(const Problem& p, std::size_t m, const Grid& g, const Quadrature& q,
                             double window_a, double window_b,
                             const std::function<double(double)>& truth) {
    const FdSolution fd = fd_solve(p, g, m, q);
    const AdmSolution adm = adm_solve(p, m, g, q);

    MethodComparison cmp;
    for (std::size_t order = 0; order <= m; ++order) {
        double fd_sup = 0.0, adm_sup = 0.0;
        for (std::size_t i = 0; i < g.intervals(); ++i) {
            const SampleLayout lay = fd.terms[0].layout(i);
            for (int s = (i == 0 ? 0 : 1); s <= q.samples; ++s) {
                const double x = lay.position(s);
                if (x < window_a || x > window_b) continue;
                const double t = truth(x);
                fd_sup = std::max(fd_sup,
                                  std::fabs(fd.partial_sums[order].interval_samples(i)[s] - t));
                adm_sup = std::max(adm_sup,
                                   std::fabs(adm.partial_sums[order].interval_samples(i)[s] - t));
            }
        }
        cmp.fd_sup.push_back(fd_sup);
        cmp.adm_sup.push_back(adm_sup);
    }
    return cmp;
}

}  // namespace fdm
