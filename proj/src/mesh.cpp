#include "fdm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdm/errors.hpp"

namespace fdm {

Grid Grid::uniform(double x0, double h, std::size_t n) {
    if (!(h > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (n < 1) throw std::invalid_argument("grid needs at least one subinterval");
    Grid g;
    g.nodes.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g.nodes[i] = x0 + static_cast<double>(i) * h;
    g.h = h;  // by construction; recomputing from nodes would lose last bits
    return g;
}

Grid Grid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("grid needs at least two nodes");
    Grid g;
    g.nodes = std::move(nodes);
    g.h = 0.0;
    for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        const double step = g.nodes[i] - g.nodes[i - 1];
        if (!(step > 0.0)) throw std::invalid_argument("grid nodes must be strictly increasing");
        g.h = std::max(g.h, step);
    }
    return g;
}

std::size_t Grid::locate(double x) const {
    if (x < nodes.front() || x > nodes.back())
        throw SolveError("x outside the grid domain: x=" + std::to_string(x));
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    if (i == 0) return 0;
    if (i > intervals()) return intervals() - 1;
    return i - 1;
}

double simpson(std::span<const double> values, double a, double b) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson needs an odd sample count");
    const double step = (b - a) / static_cast<double>(n - 1);
    double acc = values[0] + values[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) acc += values[i] * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * step / 3.0;
}

std::vector<double> cumulative_simpson(std::span<const double> values, double step) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("cumulative_simpson needs an odd sample count");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 2; i < n; i += 2)
        out[i] = out[i - 2] + step / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
    for (std::size_t i = 1; i < n; i += 2) {
        // last panel via the quadratic through samples i-2, i-1, i
        if (i == 1)
            out[i] = step / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2]);
        else
            out[i] = out[i - 1] +
                     step / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i]);
    }
    return out;
}

double SampleLayout::coord_step() const {
    const double span = (spacing == Spacing::Uniform) ? length : std::sqrt(length);
    return span / static_cast<double>(S);
}

double SampleLayout::coord(int s) const { return static_cast<double>(s) * coord_step(); }

double SampleLayout::position(int s) const {
    if (s == S) return x_left + length;
    if (spacing == Spacing::Uniform) return x_left + coord(s);
    const double t = coord(s);
    return x_left + t * t;
}

double SampleLayout::jacobian(int s) const {
    if (spacing == Spacing::Uniform) return 1.0;
    const double t = (s == 0) ? coord_step() * 1e-8 : coord(s);
    return 2.0 * t;
}

double SampleLayout::eval_position(int s) const {
    if (spacing == Spacing::SqrtLeft && s == 0) {
        const double t = coord_step() * 1e-8;
        return x_left + t * t;
    }
    return position(s);
}

PiecewiseTerm::PiecewiseTerm(Grid grid, int samples_per_interval, std::vector<Spacing> spacing,
                             std::vector<std::vector<double>> samples,
                             std::vector<double> node_values)
    : grid_(std::move(grid)),
      S_(samples_per_interval),
      spacing_(std::move(spacing)),
      samples_(std::move(samples)),
      node_values_(std::move(node_values)) {
    if (S_ < 2 || S_ % 2 != 0) throw std::invalid_argument("samples per interval must be even");
    const std::size_t n = grid_.intervals();
    if (samples_.size() != n || spacing_.size() != n || node_values_.size() != n + 1)
        throw std::invalid_argument("piecewise term shape mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (samples_[i].size() != static_cast<std::size_t>(S_) + 1)
            throw std::invalid_argument("piecewise term sample count mismatch");
        // matching condition at interior nodes
        if (i > 0) {
            const double jump = std::fabs(samples_[i][0] - samples_[i - 1][S_]);
            if (jump > 1e-10 * (1.0 + std::fabs(node_values_[i])))
                throw SolveError("continuity violated at node " + std::to_string(i));
        }
    }
}

SampleLayout PiecewiseTerm::layout(std::size_t i) const {
    return SampleLayout{grid_.nodes[i], grid_.nodes[i + 1] - grid_.nodes[i], S_, spacing_[i]};
}

namespace {

// Cubic Lagrange through four consecutive samples, in sample-index units.
double lagrange_cubic(std::span<const double> v, std::size_t i0, double r, bool derivative) {
    const double y0 = v[i0], y1 = v[i0 + 1], y2 = v[i0 + 2], y3 = v[i0 + 3];
    const double s = r - static_cast<double>(i0);
    const double l0n = (s - 1.0) * (s - 2.0) * (s - 3.0);
    const double l1n = s * (s - 2.0) * (s - 3.0);
    const double l2n = s * (s - 1.0) * (s - 3.0);
    const double l3n = s * (s - 1.0) * (s - 2.0);
    if (!derivative) return (-y0 * l0n + 3.0 * y1 * l1n - 3.0 * y2 * l2n + y3 * l3n) / 6.0;
    const double d0 = (s - 1.0) * (s - 2.0) + (s - 2.0) * (s - 3.0) + (s - 1.0) * (s - 3.0);
    const double d1 = (s - 2.0) * (s - 3.0) + s * (s - 3.0) + s * (s - 2.0);
    const double d2 = (s - 1.0) * (s - 3.0) + s * (s - 3.0) + s * (s - 1.0);
    const double d3 = (s - 1.0) * (s - 2.0) + s * (s - 2.0) + s * (s - 1.0);
    return (-y0 * d0 + 3.0 * y1 * d1 - 3.0 * y2 * d2 + y3 * d3) / 6.0;
}

}  // namespace

double PiecewiseTerm::eval(double x) const {
    auto it = std::lower_bound(grid_.nodes.begin(), grid_.nodes.end(), x);
    if (it != grid_.nodes.end() && *it == x)
        return node_values_[static_cast<std::size_t>(it - grid_.nodes.begin())];
    const std::size_t i = grid_.locate(x);
    const SampleLayout lay = layout(i);
    const double c = (spacing_[i] == Spacing::Uniform) ? (x - lay.x_left)
                                                       : std::sqrt(x - lay.x_left);
    const double r = c / lay.coord_step();
    std::size_t i0 = 0;
    if (r > 1.0) i0 = std::min(static_cast<std::size_t>(r) - 1,
                               static_cast<std::size_t>(S_) - 3);
    return lagrange_cubic(samples_[i], i0, r, false);
}

double PiecewiseTerm::eval_derivative(double x) const {
    const std::size_t i = grid_.locate(x);
    const SampleLayout lay = layout(i);
    double c, dcdx;
    if (spacing_[i] == Spacing::Uniform) {
        c = x - lay.x_left;
        dcdx = 1.0;
    } else {
        const double t = std::sqrt(x - lay.x_left);
        c = t;
        dcdx = (t > 0.0) ? 1.0 / (2.0 * t)
                         : std::numeric_limits<double>::infinity();
    }
    const double r = c / lay.coord_step();
    std::size_t i0 = 0;
    if (r > 1.0) i0 = std::min(static_cast<std::size_t>(r) - 1,
                               static_cast<std::size_t>(S_) - 3);
    const double dr = lagrange_cubic(samples_[i], i0, r, true);
    return dr / lay.coord_step() * dcdx;
}

double PiecewiseTerm::sup_norm() const {
    double m = 0.0;
    for (const auto& block : samples_)
        for (double v : block) m = std::max(m, std::fabs(v));
    return m;
}

double PiecewiseTerm::max_node_jump() const {
    double m = 0.0;
    for (std::size_t i = 1; i < grid_.intervals(); ++i) {
        const double jump = std::fabs(samples_[i][0] - samples_[i - 1][S_]);
        m = std::max(m, jump / (1.0 + std::fabs(node_values_[i])));
    }
    return m;
}

PiecewiseTerm& PiecewiseTerm::operator+=(const PiecewiseTerm& other) {
    if (samples_.size() != other.samples_.size() || S_ != other.S_)
        throw std::invalid_argument("piecewise term shape mismatch in +=");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (spacing_[i] != other.spacing_[i])
            throw std::invalid_argument("piecewise term spacing mismatch in +=");
        for (std::size_t s = 0; s < samples_[i].size(); ++s)
            samples_[i][s] += other.samples_[i][s];
    }
    for (std::size_t i = 0; i < node_values_.size(); ++i) node_values_[i] += other.node_values_[i];
    return *this;
}

}  // namespace fdm
