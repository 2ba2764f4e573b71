#ifndef UCLAB_SIGN_ORACLE_HPP
#define UCLAB_SIGN_ORACLE_HPP

#include "uclab/coefficients.hpp"
#include "uclab/criterion_engine.hpp"
#include "uclab/discrete_models.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace uclab {

class FourierProfile {
  public:
    FourierProfile() = default;
    explicit FourierProfile(std::map<std::int64_t, std::complex<double>> entries);

    void set(std::int64_t z, std::complex<double> amplitude);
    const std::map<std::int64_t, std::complex<double>> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    double l2_norm() const;

  private:
    std::map<std::int64_t, std::complex<double>> entries_;
};

// Complex differences Delta_k(z) for k = 1..K at a set of frequencies z.
class DifferenceTable {
  public:
    explicit DifferenceTable(std::size_t K) : K_(K) {}

    std::size_t K() const { return K_; }
    void set(std::size_t k, std::int64_t z, std::complex<double> value);
    std::complex<double> at(std::size_t k, std::int64_t z) const;

  private:
    std::size_t K_;
    std::map<std::pair<std::size_t, std::int64_t>, std::complex<double>> entries_;
};

// Kernel value at the k-th index (n_k or eps_k) of seq.
std::complex<double> kernel_value(const KernelSpec &kernel, const IndexSequence &seq, std::size_t k,
                                  const Frequency &x);

// Delta_k(z) = Kernel(n_{k+1}, z theta) - Kernel(n_k, z theta) on the torus.
DifferenceTable torus_difference_table(const KernelSpec &kernel, const IndexSequence &seq, std::size_t K,
                                       const Angle &theta, const std::vector<std::int64_t> &frequencies);

// sqrt( sum_z (sum_k |Delta_k(z)|)^2 |f(z)|^2 ).
double aligned_coefficient_norm(const DifferenceTable &diffs, const FourierProfile &profile);
// || sum_k c_k Delta_k f ||_{l2}.
double coefficient_norm(const DifferenceTable &diffs, const FourierProfile &profile, const CoefficientFamily &c);
// Max of coefficient_norm over all m^K tuples of m-th roots of unity (m = 2 or 8, K <= 8).
double brute_force_sign_norm(const DifferenceTable &diffs, const FourierProfile &profile, unsigned m,
                             unsigned threads = 0);
// c_k = conj(Delta_k(z)) / |Delta_k(z)|, or 1 where Delta_k(z) = 0.
CoefficientFamily phase_conjugate_coefficients(const DifferenceTable &diffs, std::int64_t z);

struct RademacherComparison {
    double mean_l1 = 0.0;
    double square_fn_l1 = 0.0;
};

RademacherComparison rademacher_square_function(const std::vector<GridFunctionZ> &diffs, std::size_t trials,
                                                std::uint64_t seed, unsigned threads = 0);
// Differences Delta_k phi for k = 1..K.
std::vector<GridFunctionZ> difference_family(const GridFunctionZ &phi, const IndexSequence &seq, std::size_t K);

} // namespace uclab

#endif
