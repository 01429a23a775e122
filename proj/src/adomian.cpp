#include "fdm/adomian.hpp"

#include <stdexcept>

namespace fdm {

namespace {

// Truncated product of polynomials in t (degree cap K).
void poly_mul(std::vector<double>& a, std::span<const double> b, std::size_t K) {
    std::vector<double> r(K + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && i <= K; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= K; ++j) r[i + j] += a[i] * b[j];
    }
    a = std::move(r);
}

}  // namespace

std::vector<double> adomian_polys(const Jet& n_jet, std::span<const double> u_values) {
    if (u_values.empty()) throw std::invalid_argument("adomian_polys: empty u_values");
    const std::size_t k = u_values.size() - 1;
    if (n_jet.order() < k)
        throw std::invalid_argument("adomian_polys: jet order shorter than u series");

    // delta(t) = sum_{i>=1} t^i u^(i); N(u0 + delta) by Horner in the jet
    // coefficients, truncated to t-order k.
    std::vector<double> delta(k + 1, 0.0);
    for (std::size_t i = 1; i <= k; ++i) delta[i] = u_values[i];

    std::vector<double> acc(k + 1, 0.0);
    acc[0] = n_jet[k];
    for (std::size_t p = k; p-- > 0;) {
        poly_mul(acc, delta, k);
        acc[0] += n_jet[p];
    }
    return acc;
}

double adomian_tail(const Jet& n_jet, std::span<const double> u_values) {
    std::vector<double> extended(u_values.begin(), u_values.end());
    extended.push_back(0.0);
    return adomian_polys(n_jet, extended).back();
}

}  // namespace fdm
