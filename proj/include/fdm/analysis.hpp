#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fdm/fdcore.hpp"

namespace fdm {

// Outcome of the numerical check of the convergence-theorem hypotheses.
struct ConditionReport {
    double alpha = 0.0;  // certified decay rate: (N u)'_u <= -alpha on the box
    double k = 0.0;      // sup |phi|
    double mu = 0.0;     // max{|u0|, k/alpha}
    double u_box = 0.0;  // the sampling rectangle is [x0,x_end] x [-u_box,u_box]
    bool cond1_polynomial = false;  // N is polynomial in u (structural check)
    bool cond2_bounded = false;
    bool cond3_decay = false;
    bool passed = false;
};

ConditionReport check_conditions(const Problem& p, double u_box, std::size_t x_samples = 2001,
                                 std::size_t u_samples = 2001);

// Admissible step bound mu_1 = min{4/alpha, alpha/(2 Bbar + alpha^2)}.
double step_bound(double alpha, double Bbar);

// Degree of N as a polynomial in u, or nullopt when N is not polynomial.
std::optional<int> u_polynomial_degree(const Expression& e);

// Coefficient bounds B_i = sup_x |a_i(x)| of N(x,u) = sum a_i(x) u^i,
// sampled over [x0, x_end]. Requires N polynomial in u.
std::vector<double> majorant_coefficients(const Problem& p, std::size_t x_samples = 2001);

// Majorant nonlinearity Ntilde(u) = sum B_i u^i plus the normalization
// constants entering the V-sequence and the radius formula.
struct MajorantSpec {
    std::vector<double> B;  // all >= 0
    double V0 = 0.0;        // = mu
    double sigma = 0.0;
    double Sigma = 0.0;     // sigma / (1 + sigma V0 Ntilde'(V0))
    bool coefficients_truncated = false;

    double ntilde(double u) const;
    double ntilde_prime(double u) const;
    // Fills Sigma from sigma, V0 and B.
    void normalize();
};

// V_0 = mu, V_{j+1} from the scalar majorant recursion.
std::vector<double> majorant_sequence(const MajorantSpec& spec, std::size_t m);

struct RadiusReport {
    double g_max = 0.0;
    double R = 0.0;  // z(g_max): certified convergence radius
    double mu1 = 0.0;
    double admissible_h = 0.0;  // min{mu1, R}
    bool certified = false;
};

// Maximizes z(g) = (1/(g^2 Ntilde'(g))) { (g - V0)/Sigma - (Ntilde(g) -
// Ntilde(V0)) g } over an expanding bracket g in (V0, inf).
RadiusReport radius(const MajorantSpec& spec, double mu1);

// Constants in the convergence estimate's inequality chain, evaluated by
// dense sampling over |u| <= mu, x in [x0, x_end]. Q is not fixed by the
// theory and is exposed as a configuration value (default 0).
struct TheoryConstants {
    double Nmax = 0.0, B = 0.0, C = 0.0, pbar = 0.0, Dbar = 0.0, Bbar = 0.0;
    double mu1 = 0.0, sigma = 0.0, Q = 0.0;
};

TheoryConstants theory_constants(const Problem& p, const ConditionReport& rep, double h,
                                 double Q = 0.0, std::size_t samples = 501);

// Weighted residual of a trial function substituted into the ODE:
// w(x) (u' - N(x,u) u - phi).
double discrepancy(const Problem& p, const PiecewiseTerm& approx, double x);

// Adaptive Dormand-Prince 5(4) solution with cubic-Hermite dense output.
class ReferenceSolution {
public:
    double eval(double x) const;
    double derivative(double x) const;

private:
    friend ReferenceSolution reference_solve(const Problem& p, double tol);
    // With a singular left endpoint the integration runs in s = sqrt(x - x0);
    // xs_ and fs_ are then stored in that coordinate.
    std::vector<double> xs_, us_, fs_;
    bool sqrt_coord_ = false;
    double x0_ = 0.0;
    double coord(double x) const;
    std::size_t locate(double s) const;
};

ReferenceSolution reference_solve(const Problem& p, double tol);

struct ErrorReport {
    std::vector<double> sup_errors;  // per order m
    double rho = 0.0;                // fitted geometric ratio
    bool has_rho = false;
};

// Sup-norm errors of the partial sums against a truth function over
// [window_a, window_b], plus a least-squares geometric ratio fit.
ErrorReport error_report(const std::vector<PiecewiseTerm>& partial_sums,
                         const std::function<double(double)>& truth, double window_a,
                         double window_b);

}  // namespace fdm
