#ifndef UCLAB_ROTATION_LAB_HPP
#define UCLAB_ROTATION_LAB_HPP

#include "uclab/index_sequences.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace uclab {

// Rotation x -> x + rho on the circle R/Z.
class RotationNumber {
  public:
    explicit RotationNumber(double rho);
    static RotationNumber golden();

    double value() const { return rho_; }
    // Fractional part of j * rho, computed from an exact integer product.
    long double shift(std::int64_t j) const;

  private:
    double rho_;
    std::int64_t mantissa_ = 0;
    int exponent_ = 0; // rho = mantissa * 2^-exponent
};

inline constexpr double kBreakpointMergeTolerance = 1e-13;
inline constexpr double kBreakpointBudget = 1e7;
inline constexpr std::size_t kSampledGridPoints = std::size_t{1} << 16;

// Continuous piecewise-linear function on R/Z, linear between consecutive breakpoints and
// across the wrap from the last breakpoint to the first. Breakpoints are held in extended
// precision so translates of steep tents line up.
class PiecewiseLinearCircleFn {
  public:
    PiecewiseLinearCircleFn() = default;
    // Points are reduced mod 1; points closer than the merge tolerance are merged.
    PiecewiseLinearCircleFn(std::vector<long double> breakpoints, std::vector<double> values);
    static PiecewiseLinearCircleFn constant(double value);
    static PiecewiseLinearCircleFn tent(long double centre, long double width, double height);

    const std::vector<long double> &breakpoints() const { return breakpoints_; }
    const std::vector<double> &values() const { return values_; }
    std::size_t size() const { return breakpoints_.size(); }
    bool is_zero() const;

    double operator()(long double x) const;
    // Slope of the piece containing [x, x + dx) for small dx.
    double right_slope(long double x) const;
    double sup_norm() const;
    double mean() const;

    PiecewiseLinearCircleFn operator+(const PiecewiseLinearCircleFn &other) const;
    PiecewiseLinearCircleFn operator-(const PiecewiseLinearCircleFn &other) const;
    PiecewiseLinearCircleFn scaled(double factor) const;
    PiecewiseLinearCircleFn abs() const;

  private:
    std::size_t piece_index(long double x) const;
    long double piece_length(std::size_t i) const;
    double piece_slope(std::size_t i) const;

    std::vector<long double> breakpoints_;
    std::vector<double> values_;
};

// x -> f(x + a).
PiecewiseLinearCircleFn translate(const PiecewiseLinearCircleFn &f, long double a);

// (1/n) sum_{j=v+1}^{v+n} f(x + j rho), exact; BreakpointBudget when n * breakpoints > 1e7.
PiecewiseLinearCircleFn rotation_average(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                         std::uint64_t n, std::uint64_t v = 0);

// The same average interpolated through an even sample grid; exact at the grid points only.
PiecewiseLinearCircleFn sampled_rotation_average(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                                 std::uint64_t n, std::uint64_t v = 0,
                                                 std::size_t points = kSampledGridPoints);

struct RotationAverage {
    PiecewiseLinearCircleFn fn;
    bool sampled = false;
};

// Exact when within the breakpoint budget, otherwise sampled with the flag set.
RotationAverage rotation_average_with_fallback(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                               std::uint64_t n, std::uint64_t v = 0);

// Minimal circle distance among {l rho mod 1 : |l| <= 2L}.
double min_orbit_gap(const RotationNumber &rho, std::size_t L);

struct TentPairConfig {
    std::size_t L = 0;
    long double arc_length = 0.0;
    long double centre_first = 0.0;
    long double centre_second = 0.0;
    std::vector<double> ladder; // s_1..s_{2L}
};

struct TentPair {
    PiecewiseLinearCircleFn f;
    TentPairConfig config;
};

TentPair build_tent_pair(const RotationNumber &rho, std::size_t L);
// Centres of the 2(4L+1) arcs l rho + c_i, |l| <= 2L.
std::vector<long double> tent_arc_centres(const TentPairConfig &config, const RotationNumber &rho);

// sup |f(x + j rho) - f(x)|.
double invariance_deficit(const PiecewiseLinearCircleFn &f, const RotationNumber &rho, std::int64_t j);

// F - F(. + rho).
PiecewiseLinearCircleFn coboundary(const PiecewiseLinearCircleFn &F, const RotationNumber &rho);

struct SeriesRow {
    std::size_t k = 0;
    std::uint64_t n = 0;
    double sup_norm = 0.0;
    double absolute_sum = 0.0;      // A_k
    double unconditional_sum = 0.0; // U_k
    bool sampled = false;

    double ratio() const { return unconditional_sum > 0.0 ? absolute_sum / unconditional_sum : 1.0; }
};

std::vector<SeriesRow> series_diagnostics(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                          const IndexSequence &seq, std::size_t K);

} // namespace uclab

#endif
