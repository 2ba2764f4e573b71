#ifndef UCLAB_DISCRETE_MODELS_HPP
#define UCLAB_DISCRETE_MODELS_HPP

#include "uclab/coefficients.hpp"
#include "uclab/index_sequences.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace uclab {

// Finitely supported real function on the integers, stored densely between its first and
// last nonzero entries.
class GridFunctionZ {
  public:
    GridFunctionZ() = default;
    GridFunctionZ(std::int64_t origin, std::vector<double> values);
    static GridFunctionZ delta(std::int64_t at, double value = 1.0);
    static GridFunctionZ from_entries(const std::map<std::int64_t, double> &entries);

    bool empty() const { return values_.empty(); }
    std::int64_t first() const { return origin_; }
    std::int64_t last() const { return origin_ + static_cast<std::int64_t>(values_.size()) - 1; }
    const std::vector<double> &values() const { return values_; }
    double at(std::int64_t m) const;
    std::vector<std::pair<std::int64_t, double>> entries() const;

    GridFunctionZ operator+(const GridFunctionZ &other) const;
    GridFunctionZ operator-(const GridFunctionZ &other) const;
    GridFunctionZ scaled(double factor) const;

  private:
    void trim();

    std::int64_t origin_ = 0;
    std::vector<double> values_;
};

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

// m -> (1/n) sum_{k=1}^{n} phi(m + k).
GridFunctionZ cesaro_average_Z(const GridFunctionZ &phi, std::uint64_t n);
// M_{n_{k+1}} phi - M_{n_k} phi.
GridFunctionZ difference_on_Z(const GridFunctionZ &phi, const IndexSequence &seq, std::size_t k);
double lp_norm_Z(const GridFunctionZ &phi, double p);

// sum_{j<=J} (n_{j+1} - n_j) / n_{j+1}.
double delta0_sup_sum(const IndexSequence &seq, std::size_t J);

struct Delta0Blocks {
    double formula = 0.0;
    // sum over -m in (n_1, n_{J+1}] of max_{k<=J} |Delta_k delta_0 (m)|
    double block_sum = 0.0;
    // the same over the whole support
    double full_sum = 0.0;
};

Delta0Blocks delta0_block_check(const IndexSequence &seq, std::size_t J);

// Piecewise constant function on R with compact support.
class StepFunctionR {
  public:
    StepFunctionR() = default;
    // values[i] holds on [breakpoints[i], breakpoints[i+1]).
    StepFunctionR(std::vector<double> breakpoints, std::vector<double> values);
    static StepFunctionR indicator(double lo, double hi, double height);

    const std::vector<double> &breakpoints() const { return breakpoints_; }
    const std::vector<double> &values() const { return values_; }
    double at(double x) const;
    double integral() const;
    double l2_squared() const;

    StepFunctionR operator+(const StepFunctionR &other) const;
    StepFunctionR operator-(const StepFunctionR &other) const;
    StepFunctionR scaled(double factor) const;

  private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// g = 1_{(-a,a)}/(2a) - 1_{(-b,b)}/(2b) for scales a > b.
StepFunctionR scale_difference(double a, double b);

struct GkIdentity {
    double numeric = 0.0;     // integral of |2g|^2 from the step representation
    double closed_form = 0.0; // 2 (1/b - 1/a)
    double g_l2_squared = 0.0;
};

GkIdentity g_k_l2_identity(double eps_k, double eps_k1);

// || sum_{k<=K} c_k Delta_k phi ||_p / ||phi||_p for a sequence with growth ratio >= 2.
double lacunary_lp_ratio(const IndexSequence &seq, double p, const GridFunctionZ &phi,
                         const CoefficientFamily &coefficients, std::size_t K);

} // namespace uclab

#endif
