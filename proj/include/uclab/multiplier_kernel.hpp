#ifndef UCLAB_MULTIPLIER_KERNEL_HPP
#define UCLAB_MULTIPLIER_KERNEL_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uclab {

using Complex = std::complex<double>;

// A point e^{i theta} on the unit circle. theta is kept in (-pi, pi]; when built from
// pi * p / q the rational form is retained so integer multiples reduce exactly.
class Angle {
  public:
    Angle() = default;
    static Angle radians(double x);
    static Angle pi_fraction(std::int64_t num, std::int64_t den);

    double value() const { return value_; }
    bool has_exact() const { return den_ != 0; }
    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    // m * theta (or m * theta / 2 when half is set) reduced into (-pi, pi].
    double multiple(std::int64_t m, bool half = false) const;
    Angle negated() const;

  private:
    double value_ = 0.0;
    std::int64_t num_ = 0;
    std::int64_t den_ = 0;
};

class FiniteMeasureZ {
  public:
    struct Atom {
        std::int64_t offset;
        double weight;
    };

    // Weights must be nonnegative and sum to 1 within 1e-12; they are renormalised exactly.
    explicit FiniteMeasureZ(std::vector<Atom> atoms);
    static FiniteMeasureZ point_mass(std::int64_t offset);

    const std::vector<Atom> &atoms() const { return atoms_; }
    bool strictly_aperiodic() const { return aperiodic_; }
    // Symmetric about a centre c with 2c integer; then the transform is e^{ic theta} times a real.
    bool symmetric() const { return symmetric_; }
    std::int64_t twice_centre() const { return twice_centre_; }
    std::string describe() const;

  private:
    std::vector<Atom> atoms_;
    bool aperiodic_ = false;
    bool symmetric_ = false;
    std::int64_t twice_centre_ = 0;
};

std::complex<double> cesaro_multiplier(std::uint64_t n, const Angle &theta);
double sinc(double x);
std::complex<double> measure_transform(const FiniteMeasureZ &mu, const Angle &theta);
std::complex<double> measure_power_transform(const FiniteMeasureZ &mu, std::uint64_t n,
                                             const Angle &theta);
double smoothed_multiplier(double eps, double x);

// The transform of mu at one angle, prepared for taking many powers.
class MeasurePowers {
  public:
    MeasurePowers(const FiniteMeasureZ &mu, const Angle &theta);

    Complex base() const { return value_; }
    double modulus() const { return modulus_; }
    // 1 - |mu^|^2, computed without cancellation.
    double modulus_sq_deficit() const { return sq_deficit_; }
    // 1 - mu^, computed without cancellation.
    Complex one_minus() const { return one_minus_; }

    Complex power(std::uint64_t n) const;
    // |mu^^a - mu^^b| for a >= b, accurate even when both powers are close to 1.
    double power_gap(std::uint64_t a, std::uint64_t b) const;

  private:
    double phase_of_power(std::uint64_t n) const;

    const FiniteMeasureZ *mu_;
    Angle theta_;
    Complex value_;
    double modulus_ = 0.0;
    double log_modulus_ = 0.0;
    double sq_deficit_ = 0.0;
    Complex one_minus_;
    double real_part_ = 0.0; // signed real factor for symmetric measures
};

enum class KernelFamily { Cesaro, SincZ, SincR, MeasurePower, Smoothed };
enum class FrequencyDomain { Torus, Integer, Real };

std::string to_string(FrequencyDomain domain);

struct KernelSpec {
    KernelFamily family = KernelFamily::Cesaro;
    std::optional<FiniteMeasureZ> measure;

    static KernelSpec cesaro() { return {KernelFamily::Cesaro, std::nullopt}; }
    static KernelSpec sinc_z() { return {KernelFamily::SincZ, std::nullopt}; }
    static KernelSpec sinc_r() { return {KernelFamily::SincR, std::nullopt}; }
    static KernelSpec smoothed() { return {KernelFamily::Smoothed, std::nullopt}; }
    static KernelSpec measure_power(FiniteMeasureZ mu) {
        return {KernelFamily::MeasurePower, std::move(mu)};
    }

    FrequencyDomain domain() const;
    // Sinc-type kernels are indexed by a decreasing scale, the others by an increasing count.
    bool scale_indexed() const;
    std::string name() const;
};

class Frequency {
  public:
    static Frequency torus(const Angle &theta) { return {FrequencyDomain::Torus, theta.value(), theta}; }
    static Frequency integer(std::int64_t ell) {
        return {FrequencyDomain::Integer, static_cast<double>(ell), {}};
    }
    static Frequency real(double t) { return {FrequencyDomain::Real, t, {}}; }

    FrequencyDomain domain() const { return domain_; }
    double value() const { return value_; }
    const Angle &angle() const { return angle_; }

  private:
    Frequency(FrequencyDomain d, double v, Angle a) : domain_(d), value_(v), angle_(a) {}
    FrequencyDomain domain_;
    double value_;
    Angle angle_;
};

namespace testing {
// Test hook: moves the switch point of the sinc series branch. Negative restores the default.
void set_sinc_series_threshold(double threshold);
double sinc_series_threshold();
} // namespace testing

} // namespace uclab

#endif
