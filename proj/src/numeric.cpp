#include "uclab/numeric.hpp"

#include "uclab/errors.hpp"

#include <cmath>

namespace uclab {

namespace {
// 2 pi split into three doubles whose leading parts multiply exactly by small integers.
constexpr double kTwoPiHi = 6.283185307179586;
constexpr double kTwoPiMid = 2.4492935982947064e-16;
constexpr double kTwoPiLo = -5.989539619436679e-33;
} // namespace

double reduce_two_pi(double hi, double lo) {
    if (!std::isfinite(hi) || !std::isfinite(lo))
        throw OverflowGuard("non-finite phase");
    const double k = std::nearbyint(hi / kTwoPiHi);
    if (std::abs(k) > 0x1p52)
        throw OverflowGuard("phase too large to reduce accurately");
    double r = std::fma(-k, kTwoPiHi, hi);
    r = std::fma(-k, kTwoPiMid, r);
    r += lo;
    r = std::fma(-k, kTwoPiLo, r);
    while (r > kPi)
        r -= kTwoPi;
    while (r <= -kPi)
        r += kTwoPi;
    return r;
}

double reduce_pi_fraction(__int128 num, std::int64_t den) {
    if (den <= 0)
        throw BadParameter("denominator must be positive");
    const __int128 period = static_cast<__int128>(den) * 2;
    __int128 r = num % period;
    if (r <= -static_cast<__int128>(den))
        r += period;
    else if (r > den)
        r -= period;
    constexpr long double pi = 3.141592653589793238462643383279502884L;
    return static_cast<double>(pi * static_cast<long double>(r) / static_cast<long double>(den));
}

} // namespace uclab
