#include "fdm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdm/adomian.hpp"
#include "fdm/errors.hpp"

namespace fdm {

namespace {

// Parabolic refinement of a sampled maximum: fit through three neighbouring
// samples and evaluate the function at the vertex.
double refine_max(const std::function<double(double)>& f, double xm1, double x0, double xp1,
                  double fm1, double f0, double fp1) {
    const double denom = fm1 - 2.0 * f0 + fp1;
    double best = f0;
    if (denom < 0.0) {
        const double dx = 0.5 * (fm1 - fp1) / denom * (xp1 - x0);
        const double xv = x0 + dx;
        if (xv > xm1 && xv < xp1) best = std::max(best, f(xv));
    }
    return best;
}

}  // namespace

ConditionReport check_conditions(const Problem& p, double u_box, std::size_t x_samples,
                                 std::size_t u_samples) {
    if (!(u_box > 0.0) || x_samples < 2 || u_samples < 2)
        throw std::invalid_argument("check_conditions: bad sampling parameters");
    ConditionReport rep;
    rep.u_box = u_box;
    rep.cond1_polynomial = u_polynomial_degree(p.N).has_value();

    const bool singular = p.singular_at_start();
    auto x_at = [&](std::size_t i) {
        double x = p.x0 + (p.x_end - p.x0) * static_cast<double>(i) /
                              static_cast<double>(x_samples - 1);
        if (singular && i == 0) {
            const double nudge = (p.x_end - p.x0) * 1e-12;
            x += nudge;
        }
        return x;
    };

    // condition 2: k = sup |phi|
    auto abs_phi = [&](double x) { return std::fabs(p.phi.eval(x, 0.0)); };
    double k = 0.0;
    std::size_t k_arg = 0;
    std::vector<double> phis(x_samples);
    for (std::size_t i = 0; i < x_samples; ++i) {
        phis[i] = abs_phi(x_at(i));
        if (phis[i] > k) {
            k = phis[i];
            k_arg = i;
        }
    }
    if (k_arg > 0 && k_arg + 1 < x_samples)
        k = refine_max(abs_phi, x_at(k_arg - 1), x_at(k_arg), x_at(k_arg + 1), phis[k_arg - 1],
                       phis[k_arg], phis[k_arg + 1]);
    rep.k = k;
    rep.cond2_bounded = std::isfinite(k);

    // condition 3: (N u)'_u = N + u N'_u <= -alpha < 0 over the box
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x_samples; ++i) {
        const double x = x_at(i);
        for (std::size_t jU = 0; jU < u_samples; ++jU) {
            const double u = -u_box + 2.0 * u_box * static_cast<double>(jU) /
                                          static_cast<double>(u_samples - 1);
            const Jet nj = p.N.jet_eval(x, u, 1);
            worst = std::max(worst, nj[0] + u * nj[1]);
        }
    }
    rep.alpha = -worst;
    rep.cond3_decay = rep.alpha > 0.0;
    rep.passed = rep.cond2_bounded && rep.cond3_decay;
    rep.mu = rep.cond3_decay ? std::max(std::fabs(p.u0), rep.k / rep.alpha) : std::fabs(p.u0);
    return rep;
}

double step_bound(double alpha, double Bbar) {
    if (!(alpha > 0.0)) throw std::invalid_argument("step_bound requires alpha > 0");
    if (Bbar < 0.0) throw std::invalid_argument("step_bound requires Bbar >= 0");
    return std::min(4.0 / alpha, alpha / (2.0 * Bbar + alpha * alpha));
}

namespace {

std::optional<int> poly_degree(const Node& n) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number:
        case K::VarX: return 0;
        case K::VarU: return 1;
        case K::Add:
        case K::Sub: {
            auto a = poly_degree(*n.a), b = poly_degree(*n.b);
            if (!a || !b) return std::nullopt;
            return std::max(*a, *b);
        }
        case K::Mul: {
            auto a = poly_degree(*n.a), b = poly_degree(*n.b);
            if (!a || !b) return std::nullopt;
            return *a + *b;
        }
        case K::Div: {
            auto a = poly_degree(*n.a), b = poly_degree(*n.b);
            if (!a || !b || *b != 0) return std::nullopt;
            return *a;
        }
        case K::Neg: return poly_degree(*n.a);
        case K::Pow: {
            auto a = poly_degree(*n.a), b = poly_degree(*n.b);
            if (!a || !b || *b != 0) return std::nullopt;
            if (*a == 0) return 0;
            if (n.b->kind != K::Number) return std::nullopt;
            const double e = n.b->number;
            const double r = std::nearbyint(e);
            if (std::fabs(e - r) > 1e-12 || r < 0.0 || r > 64.0) return std::nullopt;
            return *a * static_cast<int>(r);
        }
        case K::Call: {
            auto a = poly_degree(*n.a);
            if (!a || *a != 0) return std::nullopt;
            return 0;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<int> u_polynomial_degree(const Expression& e) {
    if (e.empty()) return std::nullopt;
    return poly_degree(*e.root());
}

std::vector<double> majorant_coefficients(const Problem& p, std::size_t x_samples) {
    const auto deg = u_polynomial_degree(p.N);
    if (!deg) throw SolveError("N is not polynomial in u; supply majorant coefficients");
    const std::size_t d = static_cast<std::size_t>(*deg);
    const bool singular = p.singular_at_start();
    std::vector<double> B(d + 1, 0.0);
    for (std::size_t i = 0; i < x_samples; ++i) {
        double x = p.x0 + (p.x_end - p.x0) * static_cast<double>(i) /
                              static_cast<double>(x_samples - 1);
        if (singular && i == 0) x += (p.x_end - p.x0) * 1e-12;
        // for polynomial N the jet at u=0 is exactly the coefficient array a_i(x)
        const Jet cj = p.N.jet_eval(x, 0.0, d);
        for (std::size_t t = 0; t <= d; ++t) B[t] = std::max(B[t], std::fabs(cj[t]));
    }
    return B;
}

double MajorantSpec::ntilde(double u) const {
    double acc = 0.0;
    for (std::size_t i = B.size(); i-- > 0;) acc = acc * u + B[i];
    return acc;
}

double MajorantSpec::ntilde_prime(double u) const {
    double acc = 0.0;
    for (std::size_t i = B.size(); i-- > 1;) acc = acc * u + static_cast<double>(i) * B[i];
    return acc;
}

void MajorantSpec::normalize() {
    Sigma = sigma / (1.0 + sigma * V0 * ntilde_prime(V0));
}

std::vector<double> majorant_sequence(const MajorantSpec& spec, std::size_t m) {
    if (spec.V0 < 0.0 || spec.sigma <= 0.0)
        throw std::invalid_argument("majorant_sequence: invalid spec");
    const std::size_t degree = spec.B.empty() ? 0 : spec.B.size() - 1;
    if (spec.coefficients_truncated && m + 1 > degree)
        throw SolveError("majorant recursion needs Ntilde derivatives beyond the supplied degree");

    std::vector<double> V{spec.V0};
    if (m == 0) return V;

    // jets of Ntilde(u) and of Ntilde'(u) u about V0, to full recursion depth
    const std::size_t K = m + 1;
    const Jet uvar = Jet::variable(spec.V0, K);
    Jet njet = Jet::constant(0.0, K);
    Jet mjet = Jet::constant(0.0, K);  // Ntilde'(u) u has coefficients i * B_i
    for (std::size_t i = spec.B.size(); i-- > 0;) {
        njet = njet * uvar;
        njet += spec.B[i];
        mjet = mjet * uvar;
        mjet += static_cast<double>(i) * spec.B[i];
    }

    for (std::size_t j = 0; j + 1 <= m; ++j) {
        const std::vector<double> An = adomian_polys(njet, std::span(V.data(), j + 1));
        const std::vector<double> Am = adomian_polys(mjet, std::span(V.data(), j + 1));
        const double tail = adomian_tail(njet, std::span(V.data(), j + 1));
        double acc = tail * V[0];
        for (std::size_t pp = 1; pp <= j; ++pp) acc += An[j + 1 - pp] * V[pp];
        for (std::size_t pp = 0; pp <= j; ++pp) acc += Am[j - pp] * V[pp];
        V.push_back(spec.sigma * acc);
    }
    return V;
}

namespace {

double z_of_g(const MajorantSpec& spec, double g) {
    const double np = spec.ntilde_prime(g);
    return ((g - spec.V0) / spec.Sigma - (spec.ntilde(g) - spec.ntilde(spec.V0)) * g) /
           (g * g * np);
}

}  // namespace

RadiusReport radius(const MajorantSpec& spec, double mu1) {
    if (!(spec.Sigma > 0.0)) throw std::invalid_argument("radius: Sigma must be positive");
    RadiusReport rep;
    rep.mu1 = mu1;
    rep.admissible_h = mu1;

    const double V0 = spec.V0;
    // expand the probe range until z turns back down past a positive maximum
    double hi = 0.0;
    bool bracketed = false;
    double g_best = V0, z_best = 0.0;
    double g_lo = V0;
    for (int t = 1; t <= 40 && !bracketed; ++t) {
        const double reach = V0 * std::pow(2.0, t);
        const int probes = 512;
        for (int i = 1; i <= probes; ++i) {
            const double g = g_lo + (reach - g_lo) * static_cast<double>(i) / probes;
            const double z = z_of_g(spec, g);
            if (z > z_best) {
                z_best = z;
                g_best = g;
            } else if (z_best > 0.0) {
                bracketed = true;
                hi = g;
                break;
            }
        }
        g_lo = reach;
    }
    if (!bracketed || z_best <= 0.0) return rep;  // no certified radius

    // golden-section maximization around g_best
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(V0 * (1.0 + 1e-14), g_best - (hi - g_best));
    double b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = z_of_g(spec, c), fd = z_of_g(spec, d);
    while ((b - a) > 1e-10 * std::max(1.0, std::fabs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = z_of_g(spec, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = z_of_g(spec, d);
        }
    }
    rep.g_max = 0.5 * (a + b);
    rep.R = z_of_g(spec, rep.g_max);
    rep.certified = rep.R > 0.0;
    rep.admissible_h = std::min(mu1, rep.R);
    return rep;
}

TheoryConstants theory_constants(const Problem& p, const ConditionReport& rep, double h, double Q,
                                 std::size_t samples) {
    TheoryConstants c;
    c.Q = Q;
    const double mu = rep.mu;
    const double alpha = rep.alpha;
    if (!(alpha > 0.0)) throw SolveError("theory constants need a certified alpha > 0");
    const bool singular = p.singular_at_start();
    for (std::size_t i = 0; i < samples; ++i) {
        double x = p.x0 + (p.x_end - p.x0) * static_cast<double>(i) /
                              static_cast<double>(samples - 1);
        if (singular && i == 0) x += (p.x_end - p.x0) * 1e-12;
        for (std::size_t jU = 0; jU < samples; ++jU) {
            const double u =
                -mu + 2.0 * mu * static_cast<double>(jU) / static_cast<double>(samples - 1);
            const Jet nj = p.N.jet_eval(x, u, 1);
            const double absn = std::fabs(nj[0]);
            const double absnp = std::fabs(nj[1]);
            c.Nmax = std::max(c.Nmax, absn);
            c.B = std::max(c.B, absnp * (absn * mu + rep.k));
            c.C = std::max(c.C, absnp * mu);
        }
    }
    const double ehn = std::exp(c.Nmax * h);
    c.pbar = c.C + c.Nmax * ehn * (1.0 + h * c.C);
    c.Dbar = 1.0 + h * (c.C / 2.0) * (1.0 + c.Nmax * h * ehn);
    c.Bbar = c.B / 2.0 + c.C * c.pbar / 2.0;
    c.mu1 = step_bound(alpha, c.Bbar);
    const double first = (1.0 + c.Bbar * c.mu1 * c.mu1) * (2.0 / alpha) * c.Dbar + c.mu1 * c.Dbar;
    const double second = (c.pbar * c.Dbar * 2.0 / alpha + Q / alpha + 1.0) * std::exp(c.C / alpha);
    c.sigma = std::max(first, second);
    return c;
}

double discrepancy(const Problem& p, const PiecewiseTerm& approx, double x) {
    const double u = approx.eval(x);
    const double du = approx.eval_derivative(x);
    const double w = p.weight ? p.weight->eval(x, 0.0) : 1.0;
    return w * (du - p.N.eval(x, u) * u - p.phi.eval(x, 0.0));
}

// ------------------------------------------------------------- RK reference

namespace {

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace

ReferenceSolution reference_solve(const Problem& p, double tol) {
    p.validate();
    auto f = [&](double x, double u) { return p.N.eval(x, u) * u + p.phi.eval(x, 0.0); };

    ReferenceSolution ref;
    ref.sqrt_coord_ = p.singular_at_start();
    ref.x0_ = p.x0;
    // In the singular case x = x0 + s^2 turns du/dx into du/ds = 2 s f, which
    // stays finite at the endpoint for 1/sqrt(x - x0) type blowups.
    const double s_end = ref.sqrt_coord_ ? std::sqrt(p.x_end - p.x0) : p.x_end;
    const double s_eps = s_end * 1e-12;
    auto g = [&](double s, double u) {
        if (!ref.sqrt_coord_) return f(s, u);
        const double ss = std::max(s, s_eps);
        return 2.0 * ss * f(p.x0 + ss * ss, u);
    };

    double x = ref.sqrt_coord_ ? 0.0 : p.x0;
    double u = p.u0;
    double fx = g(x, u);
    ref.xs_.push_back(x);
    ref.us_.push_back(u);
    ref.fs_.push_back(fx);

    const double span = s_end - x;
    // the cap keeps the cubic-Hermite dense-output error below ~1e-9 for
    // solutions with O(1) fourth derivatives
    const double hmax = std::min(0.02, span / 10.0);
    double h = std::min(hmax, span * 1e-3);

    int rejects_in_a_row = 0;
    while (x < s_end) {
        if (x + h > s_end) h = s_end - x;
        const double k1 = fx;
        const double k2 = g(x + 0.2 * h, u + h * a21 * k1);
        const double k3 = g(x + 0.3 * h, u + h * (a31 * k1 + a32 * k2));
        const double k4 = g(x + 0.8 * h, u + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = g(x + 8.0 / 9.0 * h, u + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = g(x + h, u + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double u5 = u + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = g(x + h, u5);
        const double err =
            std::fabs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double scale = tol * (1.0 + std::max(std::fabs(u), std::fabs(u5)));
        if (err <= scale) {
            x += h;
            u = u5;
            fx = k7;
            ref.xs_.push_back(x);
            ref.us_.push_back(u);
            ref.fs_.push_back(fx);
            rejects_in_a_row = 0;
        } else if (++rejects_in_a_row > 60) {
            throw SolveError("reference integrator step-size underflow at x=" + std::to_string(x));
        }
        const double ratio = (err > 0.0) ? std::pow(scale / err, 0.2) : 5.0;
        h *= std::clamp(0.9 * ratio, 0.2, 5.0);
        h = std::min(h, hmax);
        if (!(h > 0.0) || x + h == x)
            throw SolveError("reference integrator step-size underflow at x=" + std::to_string(x));
    }
    return ref;
}

double ReferenceSolution::coord(double x) const {
    double s = sqrt_coord_ ? std::sqrt(std::max(x - x0_, 0.0)) : x;
    // absorb last-bit rounding at the right endpoint
    const double slack = 1e-9 * (1.0 + std::fabs(xs_.back()));
    if (s > xs_.back() && s < xs_.back() + slack) s = xs_.back();
    return s;
}

std::size_t ReferenceSolution::locate(double s) const {
    if (s < xs_.front() || s > xs_.back())
        throw SolveError("reference evaluated outside its domain");
    auto it = std::upper_bound(xs_.begin(), xs_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i == 0) return 0;
    if (i >= xs_.size()) return xs_.size() - 2;
    return i - 1;
}

double ReferenceSolution::eval(double x) const {
    x = coord(x);
    const std::size_t i = locate(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * us_[i] + h10 * h * fs_[i] + h01 * us_[i + 1] + h11 * h * fs_[i + 1];
}

double ReferenceSolution::derivative(double x) const {
    const double s = coord(x);
    const std::size_t i = locate(s);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (s - xs_[i]) / h;
    const double d00 = 6.0 * t * (t - 1.0);
    const double d10 = (1.0 - t) * (1.0 - 3.0 * t);
    const double d01 = -d00;
    const double d11 = t * (3.0 * t - 2.0);
    const double dds = (d00 * us_[i] + d01 * us_[i + 1]) / h + d10 * fs_[i] + d11 * fs_[i + 1];
    if (!sqrt_coord_) return dds;
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    return dds / (2.0 * s);  // chain rule through x = x0 + s^2
}

ErrorReport error_report(const std::vector<PiecewiseTerm>& partial_sums,
                         const std::function<double(double)>& truth, double window_a,
                         double window_b) {
    ErrorReport rep;
    for (const PiecewiseTerm& sum : partial_sums) {
        double sup = 0.0;
        const Grid& g = sum.grid();
        for (std::size_t i = 0; i < g.intervals(); ++i) {
            const SampleLayout lay = sum.layout(i);
            for (int s = (i == 0 ? 0 : 1); s <= sum.samples_per_interval(); ++s) {
                const double x = lay.position(s);
                if (x < window_a || x > window_b) continue;
                sup = std::max(sup, std::fabs(sum.interval_samples(i)[s] - truth(x)));
            }
        }
        rep.sup_errors.push_back(sup);
    }
    if (rep.sup_errors.size() >= 2) {
        // least squares on log sup-errors vs m
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t n = 0;
        for (std::size_t m = 0; m < rep.sup_errors.size(); ++m) {
            if (rep.sup_errors[m] <= 0.0) continue;
            const double xm = static_cast<double>(m);
            const double ym = std::log(rep.sup_errors[m]);
            sx += xm;
            sy += ym;
            sxx += xm * xm;
            sxy += xm * ym;
            ++n;
        }
        if (n >= 2) {
            const double denom = static_cast<double>(n) * sxx - sx * sx;
            rep.rho = std::exp((static_cast<double>(n) * sxy - sx * sy) / denom);
            rep.has_rho = true;
        }
    }
    return rep;
}

}  // namespace fdm
