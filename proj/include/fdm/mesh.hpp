#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdm {

// Strictly increasing node array x_0 < ... < x_n with the maximum step h.
struct Grid {
    std::vector<double> nodes;
    double h = 0.0;

    static Grid uniform(double x0, double h, std::size_t n);
    static Grid from_nodes(std::vector<double> nodes);

    std::size_t intervals() const { return nodes.size() - 1; }
    double x0() const { return nodes.front(); }
    double x_end() const { return nodes.back(); }
    // Index of the subinterval containing x (right-closed at x_n).
    std::size_t locate(double x) const;
};

// Composite-Simpson sampling density: S+1 uniform samples per subinterval.
struct Quadrature {
    int samples = 32;  // S, must be even
};

// Composite Simpson estimate of the integral over [a,b] of a function
// sampled at S+1 uniform nodes (S even).
double simpson(std::span<const double> values, double a, double b);

// Running integral at every sample node; out[0] = 0, out[S] = simpson total.
// Odd nodes use the quadratic through the three trailing samples.
std::vector<double> cumulative_simpson(std::span<const double> values, double step);

// Sample placement inside one subinterval. SqrtLeft spaces samples uniformly
// in t = sqrt(x - x_left), which regularizes integrands with a 1/sqrt
// singularity at the left endpoint.
enum class Spacing { Uniform, SqrtLeft };

// Geometry of the samples of one subinterval plus the change-of-variable
// factors needed to integrate in the sampling coordinate.
struct SampleLayout {
    double x_left = 0.0;
    double length = 0.0;
    int S = 32;
    Spacing spacing = Spacing::Uniform;

    double coord(int s) const;      // sampling coordinate of sample s
    double coord_step() const;      // uniform step of the sampling coordinate
    double position(int s) const;   // x of sample s
    double jacobian(int s) const;   // dx/dcoord at sample s
    // x to hand to expression evaluation; nudged off a singular left endpoint
    // for SqrtLeft layouts.
    double eval_position(int s) const;
};

// One series term stored as per-subinterval sample arrays with shared
// endpoint values. Immutable after construction; interpolation is local
// cubic through the four nearest samples.
class PiecewiseTerm {
public:
    PiecewiseTerm(Grid grid, int samples_per_interval, std::vector<Spacing> spacing,
                  std::vector<std::vector<double>> samples, std::vector<double> node_values);

    double eval(double x) const;
    double eval_derivative(double x) const;

    const Grid& grid() const { return grid_; }
    int samples_per_interval() const { return S_; }
    double node_value(std::size_t i) const { return node_values_[i]; }
    const std::vector<double>& interval_samples(std::size_t i) const { return samples_[i]; }
    Spacing spacing(std::size_t i) const { return spacing_[i]; }
    SampleLayout layout(std::size_t i) const;
    double sample_position(std::size_t i, int s) const { return layout(i).position(s); }

    double sup_norm() const;
    // Largest interior-node jump relative to 1 + |value|.
    double max_node_jump() const;

    PiecewiseTerm& operator+=(const PiecewiseTerm& other);

private:
    Grid grid_;
    int S_;
    std::vector<Spacing> spacing_;
    std::vector<std::vector<double>> samples_;
    std::vector<double> node_values_;
};

}  // namespace fdm
