#ifndef UCLAB_COEFFICIENTS_HPP
#define UCLAB_COEFFICIENTS_HPP

#include <complex>
#include <vector>

namespace uclab {

// Coefficients c_1..c_K with |c_k| <= 1.
class CoefficientFamily {
  public:
    explicit CoefficientFamily(std::vector<std::complex<double>> entries);
    static CoefficientFamily signs(const std::vector<int> &signs);
    static CoefficientFamily constant(std::size_t K, std::complex<double> value);

    const std::vector<std::complex<double>> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::complex<double> operator[](std::size_t i) const { return entries_[i]; }

  private:
    std::vector<std::complex<double>> entries_;
};

} // namespace uclab

#endif
