#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdm {

// Truncated Taylor coefficients c_0..c_K of a scalar quantity with respect to
// one formal parameter. All arithmetic is the exact truncation of formal
// power-series arithmetic to order K; c_p equals the p-th derivative divided
// by p!.
class Jet {
public:
    explicit Jet(std::size_t order) : c_(order + 1, 0.0) {}

    static Jet constant(double v, std::size_t order);
    // Jet of the expansion variable itself: [v, 1, 0, ...].
    static Jet variable(double v, std::size_t order);

    std::size_t order() const { return c_.size() - 1; }
    double value() const { return c_[0]; }
    double operator[](std::size_t p) const { return c_[p]; }
    double& operator[](std::size_t p) { return c_[p]; }
    std::span<const double> coeffs() const { return c_; }

    Jet operator-() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double b) { return a += b; }
    friend Jet operator-(Jet a, double b) { return a -= b; }
    friend Jet operator*(Jet a, double b) { return a *= b; }
    friend Jet operator*(double a, Jet b) { return b *= a; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

private:
    std::vector<double> c_;
};

// Composition of an outer Taylor expansion (coefficients about f.value())
// with the inner jet f. Used by all elementary-function rules.
Jet jet_compose(std::span<const double> outer, const Jet& f);

Jet jet_sin(const Jet& f);
Jet jet_cos(const Jet& f);
Jet jet_exp(const Jet& f);
Jet jet_ln(const Jet& f);
Jet jet_sqrt(const Jet& f);
Jet jet_abs(const Jet& f);
Jet jet_pow(const Jet& f, long n);
Jet jet_pow(const Jet& f, double r);  // real exponent, base must be positive

}  // namespace fdm
