#include "fdm/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fdm/errors.hpp"

namespace fdm {

Jet Jet::constant(double v, std::size_t order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
}

Jet Jet::variable(double v, std::size_t order) {
    Jet j(order);
    j.c_[0] = v;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& c : r.c_) c = -c;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    const std::size_t n = std::min(c_.size(), o.c_.size());
    for (std::size_t p = 0; p < n; ++p) c_[p] += o.c_[p];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    const std::size_t n = std::min(c_.size(), o.c_.size());
    for (std::size_t p = 0; p < n; ++p) c_[p] -= o.c_[p];
    return *this;
}

Jet& Jet::operator+=(double s) {
    c_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s) {
    c_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& c : c_) c *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t K = std::min(a.order(), b.order());
    Jet r(K);
    for (std::size_t p = 0; p <= K; ++p) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= p; ++i) acc += a.c_[i] * b.c_[p - i];
        r.c_[p] = acc;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b.value() == 0.0) throw DomainError("division by zero");
    const std::size_t K = std::min(a.order(), b.order());
    Jet r(K);
    for (std::size_t p = 0; p <= K; ++p) {
        double acc = (p < a.c_.size()) ? a.c_[p] : 0.0;
        for (std::size_t i = 1; i <= p; ++i) acc -= b.c_[i] * r.c_[p - i];
        r.c_[p] = acc / b.c_[0];
    }
    return r;
}

Jet jet_compose(std::span<const double> outer, const Jet& f) {
    const std::size_t K = f.order();
    Jet delta = f;
    delta[0] = 0.0;
    Jet r = Jet::constant(outer.back(), K);
    for (std::size_t p = outer.size() - 1; p-- > 0;) {
        r = r * delta;
        r += outer[p];
    }
    return r;
}

Jet jet_sin(const Jet& f) {
    const std::size_t K = f.order();
    const double s = std::sin(f.value());
    const double c = std::cos(f.value());
    std::vector<double> g(K + 1);
    double fact = 1.0;
    for (std::size_t p = 0; p <= K; ++p) {
        if (p > 0) fact *= static_cast<double>(p);
        // derivatives cycle sin, cos, -sin, -cos
        const double d = (p % 4 == 0) ? s : (p % 4 == 1) ? c : (p % 4 == 2) ? -s : -c;
        g[p] = d / fact;
    }
    return jet_compose(g, f);
}

Jet jet_cos(const Jet& f) {
    const std::size_t K = f.order();
    const double s = std::sin(f.value());
    const double c = std::cos(f.value());
    std::vector<double> g(K + 1);
    double fact = 1.0;
    for (std::size_t p = 0; p <= K; ++p) {
        if (p > 0) fact *= static_cast<double>(p);
        const double d = (p % 4 == 0) ? c : (p % 4 == 1) ? -s : (p % 4 == 2) ? -c : s;
        g[p] = d / fact;
    }
    return jet_compose(g, f);
}

Jet jet_exp(const Jet& f) {
    const std::size_t K = f.order();
    const double e = std::exp(f.value());
    std::vector<double> g(K + 1);
    double fact = 1.0;
    for (std::size_t p = 0; p <= K; ++p) {
        if (p > 0) fact *= static_cast<double>(p);
        g[p] = e / fact;
    }
    return jet_compose(g, f);
}

Jet jet_ln(const Jet& f) {
    const double a = f.value();
    if (a <= 0.0) throw DomainError("ln of a non-positive value");
    const std::size_t K = f.order();
    std::vector<double> g(K + 1);
    g[0] = std::log(a);
    double apow = a;
    for (std::size_t p = 1; p <= K; ++p) {
        g[p] = ((p % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(p) * apow);
        apow *= a;
    }
    return jet_compose(g, f);
}

Jet jet_sqrt(const Jet& f) {
    const double a = f.value();
    if (a < 0.0) throw DomainError("sqrt of a negative value");
    if (a == 0.0) {
        if (f.order() == 0) return Jet::constant(0.0, 0);
        throw DomainError("sqrt derivative at zero");
    }
    return jet_pow(f, 0.5);
}

Jet jet_abs(const Jet& f) {
    const double a = f.value();
    if (a == 0.0) {
        if (f.order() == 0) return Jet::constant(0.0, 0);
        throw DomainError("abs is not differentiable at zero");
    }
    return (a > 0.0) ? f : -f;
}

Jet jet_pow(const Jet& f, long n) {
    const std::size_t K = f.order();
    if (n == 0) return Jet::constant(1.0, K);
    const bool neg = n < 0;
    unsigned long e = static_cast<unsigned long>(neg ? -n : n);
    Jet base = f;
    Jet r = Jet::constant(1.0, K);
    while (e > 0) {
        if (e & 1UL) r = r * base;
        base = base * base;
        e >>= 1;
    }
    if (neg) r = Jet::constant(1.0, K) / r;
    return r;
}

Jet jet_pow(const Jet& f, double r) {
    const double a = f.value();
    if (a <= 0.0) throw DomainError("real power of a non-positive base");
    const std::size_t K = f.order();
    std::vector<double> g(K + 1);
    // binomial coefficients C(r,p) a^(r-p)
    double coef = 1.0;
    double apow = std::pow(a, r);
    for (std::size_t p = 0; p <= K; ++p) {
        g[p] = coef * apow;
        coef *= (r - static_cast<double>(p)) / static_cast<double>(p + 1);
        apow /= a;
    }
    return jet_compose(g, f);
}

}  // namespace fdm
