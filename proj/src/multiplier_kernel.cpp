#include "uclab/multiplier_kernel.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

namespace uclab {

namespace {

constexpr double kDefaultSincThreshold = 1e-4;
std::atomic<double> g_sinc_threshold{kDefaultSincThreshold};

constexpr double kChordSwitch = 1e-6;

Complex unit(double phase) { return {std::cos(phase), std::sin(phase)}; }

std::int64_t checked_index(std::uint64_t n) {
    if (n > (std::uint64_t{1} << 62))
        throw OverflowGuard("index too large for phase reduction");
    return static_cast<std::int64_t>(n);
}

} // namespace

namespace testing {
void set_sinc_series_threshold(double threshold) {
    g_sinc_threshold.store(threshold < 0.0 ? kDefaultSincThreshold : threshold);
}
double sinc_series_threshold() { return g_sinc_threshold.load(std::memory_order_relaxed); }
} // namespace testing

Angle Angle::radians(double x) {
    Angle a;
    a.value_ = reduce_two_pi(x);
    return a;
}

Angle Angle::pi_fraction(std::int64_t num, std::int64_t den) {
    if (den <= 0)
        throw BadParameter("angle denominator must be positive");
    const std::int64_t period = 2 * den;
    std::int64_t r = num % period;
    if (r <= -den)
        r += period;
    else if (r > den)
        r -= period;
    const std::int64_t g = std::gcd(r, den);
    Angle a;
    a.num_ = r / g;
    a.den_ = den / g;
    a.value_ = reduce_pi_fraction(a.num_, a.den_);
    return a;
}

double Angle::multiple(std::int64_t m, bool half) const {
    if (has_exact())
        return reduce_pi_fraction(static_cast<__int128>(m) * num_, half ? 2 * den_ : den_);
    if (std::abs(m) > (std::int64_t{1} << 53))
        throw OverflowGuard("multiple exceeds exact double range");
    const double x = half ? 0.5 * value_ : value_;
    const TwoProduct p = two_product(static_cast<double>(m), x);
    return reduce_two_pi(p.hi, p.lo);
}

Angle Angle::negated() const {
    if (has_exact())
        return pi_fraction(-num_, den_);
    return radians(-value_);
}

FiniteMeasureZ::FiniteMeasureZ(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty())
        throw BadParameter("measure needs at least one atom");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom &a, const Atom &b) { return a.offset < b.offset; });
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!(atoms_[i].weight >= 0.0) || !std::isfinite(atoms_[i].weight))
            throw BadParameter("measure weights must be nonnegative");
        if (i > 0 && atoms_[i].offset == atoms_[i - 1].offset)
            throw BadParameter("measure offsets must be distinct");
        if (std::abs(atoms_[i].offset) > (std::int64_t{1} << 30))
            throw BadParameter("measure offset out of range");
        total += atoms_[i].weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw BadParameter("measure weights must sum to 1");
    std::erase_if(atoms_, [](const Atom &a) { return a.weight == 0.0; });
    for (auto &a : atoms_)
        a.weight /= total;

    std::int64_t g = 0;
    for (const auto &a : atoms_)
        g = std::gcd(g, a.offset - atoms_.front().offset);
    aperiodic_ = g == 1;

    twice_centre_ = atoms_.front().offset + atoms_.back().offset;
    symmetric_ = true;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const auto &a = atoms_[i];
        const auto &b = atoms_[atoms_.size() - 1 - i];
        if (a.offset + b.offset != twice_centre_ ||
            std::abs(a.weight - b.weight) > 1e-15 * std::max(a.weight, b.weight)) {
            symmetric_ = false;
            break;
        }
    }
}

FiniteMeasureZ FiniteMeasureZ::point_mass(std::int64_t offset) { return FiniteMeasureZ({{offset, 1.0}}); }

std::string FiniteMeasureZ::describe() const {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        out << (i ? "," : "") << atoms_[i].offset << ':' << atoms_[i].weight;
    return out.str();
}

Complex cesaro_multiplier(std::uint64_t n, const Angle &theta) {
    if (n == 0)
        throw BadParameter("Cesaro index must be positive");
    if (theta.value() == 0.0)
        return 1.0;
    const double half = 0.5 * theta.value();
    const double chord = 2.0 * std::abs(std::sin(half));
    if (chord < kChordSwitch && n <= 64) {
        Complex sum = 0.0;
        for (std::uint64_t k = 1; k <= n; ++k)
            sum += unit(theta.multiple(static_cast<std::int64_t>(k)));
        return sum / static_cast<double>(n);
    }
    const double denom_sin = chord < kChordSwitch ? half * (1.0 - half * half / 6.0) : std::sin(half);
    const std::int64_t m = checked_index(n);
    const double amplitude =
        std::sin(theta.multiple(m, true)) / (static_cast<double>(n) * denom_sin);
    return amplitude * unit(theta.multiple(m + 1, true));
}

double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < testing::sinc_series_threshold()) {
        const double x2 = ax * ax;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(ax) / ax;
}

double smoothed_multiplier(double eps, double x) {
    if (!(eps > 0.0))
        throw BadParameter("scale must be positive");
    const double s = sinc(eps * x);
    return s * s;
}

MeasurePowers::MeasurePowers(const FiniteMeasureZ &mu, const Angle &theta) : mu_(&mu), theta_(theta) {
    const auto &atoms = mu.atoms();
    CompensatedSum re, im, om_re, om_im, deficit, real_factor;
    for (const auto &a : atoms) {
        const double phase = theta.multiple(a.offset);
        re.add(a.weight * std::cos(phase));
        im.add(a.weight * std::sin(phase));
        const double s = std::sin(theta.multiple(a.offset, true));
        om_re.add(2.0 * a.weight * s * s);
        om_im.add(-a.weight * std::sin(phase));
        if (mu.symmetric())
            real_factor.add(a.weight * std::cos(theta.multiple(2 * a.offset - mu.twice_centre(), true)));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            const double s = std::sin(theta.multiple(atoms[i].offset - atoms[j].offset, true));
            deficit.add(4.0 * atoms[i].weight * atoms[j].weight * s * s);
        }
    value_ = {re.value(), im.value()};
    one_minus_ = {om_re.value(), om_im.value()};
    sq_deficit_ = std::clamp(deficit.value(), 0.0, 1.0);
    modulus_ = sq_deficit_ < 0.5 ? std::sqrt(1.0 - sq_deficit_) : std::abs(value_);
    log_modulus_ = modulus_ == 0.0 ? -INFINITY
                   : sq_deficit_ < 0.5 ? 0.5 * std::log1p(-sq_deficit_)
                                       : std::log(modulus_);
    real_part_ = real_factor.value();
}

double MeasurePowers::phase_of_power(std::uint64_t n) const {
    const std::int64_t m = checked_index(n);
    if (mu_->symmetric()) {
        const __int128 steps = static_cast<__int128>(m) * mu_->twice_centre();
        if (steps > (__int128{1} << 62) || steps < -(__int128{1} << 62))
            throw OverflowGuard("phase multiple too large");
        double phase = theta_.multiple(static_cast<std::int64_t>(steps), true);
        if (real_part_ < 0.0 && (n & 1U))
            phase = reduce_two_pi(phase + kPi);
        return phase;
    }
    const double arg = std::arg(value_);
    const double nd = static_cast<double>(n);
    const double error_bound = nd * (std::abs(arg) * 0x1p-51 + 0x1p-51 / modulus_);
    if (error_bound >= 1e-8 && nd * log_modulus_ > -745.0)
        throw OverflowGuard("phase of power cannot be reduced to 1e-8");
    const TwoProduct p = two_product(nd, arg);
    return reduce_two_pi(p.hi, p.lo);
}

Complex MeasurePowers::power(std::uint64_t n) const {
    if (n == 0)
        return 1.0;
    if (modulus_ == 0.0)
        return 0.0;
    const double r = std::exp(static_cast<double>(n) * log_modulus_);
    if (r == 0.0)
        return 0.0;
    return r * unit(phase_of_power(n));
}

double MeasurePowers::power_gap(std::uint64_t a, std::uint64_t b) const {
    if (a < b)
        std::swap(a, b);
    if (a == b)
        return 0.0;
    if (modulus_ == 0.0)
        return b == 0 ? 1.0 : 0.0;
    const double scale = std::exp(static_cast<double>(b) * log_modulus_);
    if (scale == 0.0)
        return 0.0;
    const double exponent = static_cast<double>(a - b) * log_modulus_;
    const double rho = std::exp(exponent);
    const double one_minus_rho = -std::expm1(exponent);
    const double s = rho == 0.0 ? 0.0 : std::sin(0.5 * phase_of_power(a - b));
    return scale * std::sqrt(one_minus_rho * one_minus_rho + 4.0 * rho * s * s);
}

Complex measure_transform(const FiniteMeasureZ &mu, const Angle &theta) {
    return MeasurePowers(mu, theta).base();
}

Complex measure_power_transform(const FiniteMeasureZ &mu, std::uint64_t n, const Angle &theta) {
    if (n == 0)
        throw BadParameter("power must be positive");
    return MeasurePowers(mu, theta).power(n);
}

std::string to_string(FrequencyDomain domain) {
    switch (domain) {
    case FrequencyDomain::Torus:
        return "torus-angle";
    case FrequencyDomain::Integer:
        return "integer-frequency";
    case FrequencyDomain::Real:
        return "real-frequency";
    }
    return "unknown";
}

FrequencyDomain KernelSpec::domain() const {
    switch (family) {
    case KernelFamily::Cesaro:
    case KernelFamily::MeasurePower:
        return FrequencyDomain::Torus;
    case KernelFamily::SincZ:
    case KernelFamily::Smoothed:
        return FrequencyDomain::Integer;
    case KernelFamily::SincR:
        return FrequencyDomain::Real;
    }
    return FrequencyDomain::Torus;
}

bool KernelSpec::scale_indexed() const {
    return family == KernelFamily::SincZ || family == KernelFamily::SincR ||
           family == KernelFamily::Smoothed;
}

std::string KernelSpec::name() const {
    switch (family) {
    case KernelFamily::Cesaro:
        return "cesaro";
    case KernelFamily::SincZ:
        return "sinc-z";
    case KernelFamily::SincR:
        return "sinc-r";
    case KernelFamily::Smoothed:
        return "smoothed";
    case KernelFamily::MeasurePower:
        return "measure-power[" + (measure ? measure->describe() : std::string{}) + "]";
    }
    return "unknown";
}

} // namespace uclab
