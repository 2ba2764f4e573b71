#ifndef UCLAB_NUMERIC_HPP
#define UCLAB_NUMERIC_HPP

#include <cmath>
#include <cstdint>

namespace uclab {

// Neumaier's variant of compensated summation; robust when a term exceeds the running sum.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

inline constexpr double kPi = 3.141592653589793;
inline constexpr double kTwoPi = 6.283185307179586;

// Exact product a*b = hi + lo.
struct TwoProduct {
    double hi;
    double lo;
};

inline TwoProduct two_product(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Reduces hi + lo (with |lo| <= ulp(hi)) modulo 2 pi into (-pi, pi].
double reduce_two_pi(double hi, double lo = 0.0);

// Reduces the angle pi * num / den into (-pi, pi] using exact integer arithmetic.
double reduce_pi_fraction(__int128 num, std::int64_t den);

} // namespace uclab

#endif
