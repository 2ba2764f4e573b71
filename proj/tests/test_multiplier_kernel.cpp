#include "oracles.hpp"

#include <uclab/errors.hpp>
#include <uclab/multiplier_kernel.hpp>
#include <uclab/numeric.hpp>
#include <uclab/rng.hpp>

#include <doctest.h>

#include <cmath>

using namespace uclab;

TEST_CASE("angles reduce into (-pi, pi] and keep their rational form") {
    CHECK(Angle::pi_fraction(7, 1).value() == kPi);
    CHECK(Angle::pi_fraction(3, 2).value() == doctest::Approx(-kPi / 2).epsilon(1e-16));
    CHECK(Angle::pi_fraction(-1, 1).value() == kPi);
    CHECK(Angle::radians(7 * kPi).value() == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(Angle::radians(-kPi).value() > 0.0);

    const Angle q = Angle::pi_fraction(2, 6);
    CHECK(q.numerator() == 1);
    CHECK(q.denominator() == 3);
    CHECK(std::abs(q.value() - kPi / 3) <= std::nextafter(kPi / 3, 4.0) - kPi / 3);

    // n * theta for huge n: the rational path is exact, the compensated path close to it.
    const Angle exact = Angle::pi_fraction(1, 1000003);
    const Angle approx = Angle::radians(exact.value());
    for (std::int64_t n : {std::int64_t{1} << 20, std::int64_t{1} << 32, (std::int64_t{1} << 40) + 12345}) {
        const long double want = std::remainder(static_cast<long double>(n % 2000006), 2000006.0L) * oracle::pi / 1000003.0L;
        CHECK(exact.multiple(n) == doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
        CHECK(std::abs(approx.multiple(n) - exact.multiple(n)) < 1e-16 * static_cast<double>(n) + 1e-15);
    }
    CHECK(exact.multiple(3, true) == doctest::Approx(1.5 * exact.value()).epsilon(1e-15));
}

TEST_CASE("Cesaro multiplier special values") {
    const Angle theta = Angle::radians(0.7);
    const Complex m1 = cesaro_multiplier(1, theta);
    CHECK(m1.real() == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
    CHECK(m1.imag() == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
    CHECK(cesaro_multiplier(12345, Angle::radians(0.0)) == Complex(1.0));
    CHECK(std::abs(cesaro_multiplier(4, Angle::pi_fraction(1, 1))) < 1e-16);
    CHECK(std::abs(cesaro_multiplier(4, Angle::radians(kPi))) < 1e-15);
    CHECK_THROWS_AS(cesaro_multiplier(0, theta), BadParameter);
}

TEST_CASE("Cesaro closed form agrees with direct summation") {
    CounterRng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = 1 + rng.below(10000);
        const double t = rng.uniform(-kPi, kPi);
        const auto got = cesaro_multiplier(n, Angle::radians(t));
        const auto want = oracle::cesaro(n, t);
        worst = std::max(worst, static_cast<double>(std::abs(oracle::CL(got.real(), got.imag()) - want)));
    }
    CHECK(worst < 1e-10);

    // Chords below the switch point, with n theta anywhere from tiny to many turns.
    for (std::uint64_t n : {5ULL, 64ULL, 65ULL, 1000ULL, 100000ULL}) {
        for (double t : {3e-7, 1e-8, 4e-9}) {
            const auto got = cesaro_multiplier(n, Angle::radians(t));
            const auto want = oracle::cesaro(n, t);
            CHECK(std::abs(oracle::CL(got.real(), got.imag()) - want) < 1e-12);
        }
    }
}

TEST_CASE("Cesaro multiplier bounds hold on sampled points") {
    CounterRng rng(7);
    for (int trial = 0; trial < 20000; ++trial) {
        const auto n = 1 + rng.below(1ULL << (1 + rng.below(40)));
        const double t = kPi * std::exp2(-rng.uniform(0.0, 45.0)) * (rng.sign());
        const Complex m = cesaro_multiplier(n, Angle::radians(t));
        const double chord = 2.0 * std::abs(std::sin(t / 2));
        const double nd = static_cast<double>(n);
        CHECK(std::abs(m) <= 1.0 + 1e-15);
        CHECK(std::abs(m) <= 2.0 / (nd * chord) * (1 + 1e-12));
        CHECK(std::abs(m - 1.0) <= nd * chord * (1 + 1e-12) + 1e-15);
    }
}

TEST_CASE("sinc values, evenness and series branch") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(kPi)) < 1e-16);
    CHECK(sinc(kPi / 2) == doctest::Approx(static_cast<double>(oracle::sinc(oracle::pi / 2))).epsilon(1e-15));
    CHECK(sinc(kPi / 2) == doctest::Approx(0.6366197723675814).epsilon(1e-15));
    CounterRng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.uniform(-50, 50) * std::exp2(-rng.uniform(0, 30));
        CHECK(sinc(x) == sinc(-x));
        CHECK(sinc(x) == doctest::Approx(static_cast<double>(oracle::sinc(x))).epsilon(1e-14));
    }
    CHECK(sinc(0.99e-4) == doctest::Approx(static_cast<double>(oracle::sinc(0.99e-4L))).epsilon(1e-16));
    CHECK(sinc(1.01e-4) == doctest::Approx(static_cast<double>(oracle::sinc(1.01e-4L))).epsilon(1e-16));
}

TEST_CASE("smoothed multiplier") {
    CHECK(smoothed_multiplier(3.5, 0.0) == 1.0);
    CHECK(smoothed_multiplier(1.0, kPi) < 1e-32);
    CHECK(smoothed_multiplier(1.0, kPi / 2) == doctest::Approx(0.40528473456935109).epsilon(1e-15));
    CHECK_THROWS_AS(smoothed_multiplier(0.0, 1.0), BadParameter);
}

TEST_CASE("finite measures validate and classify") {
    CHECK_THROWS_AS(FiniteMeasureZ({{0, 0.5}, {1, 0.4}}), BadParameter);
    CHECK_THROWS_AS(FiniteMeasureZ({{0, 1.2}, {1, -0.2}}), BadParameter);
    CHECK_THROWS_AS(FiniteMeasureZ({{0, 0.5}, {0, 0.5}}), BadParameter);
    CHECK(FiniteMeasureZ({{0, 0.5}, {1, 0.5}}).strictly_aperiodic());
    CHECK_FALSE(FiniteMeasureZ({{0, 0.5}, {2, 0.5}}).strictly_aperiodic());
    CHECK_FALSE(FiniteMeasureZ({{0, 0.25}, {2, 0.5}, {4, 0.25}}).strictly_aperiodic());
    CHECK(FiniteMeasureZ({{-1, 0.25}, {0, 0.5}, {1, 0.25}}).strictly_aperiodic());
    CHECK_FALSE(FiniteMeasureZ::point_mass(3).strictly_aperiodic());
    CHECK(FiniteMeasureZ({{0, 0.5}, {1, 0.5}}).symmetric());
    CHECK_FALSE(FiniteMeasureZ({{0, 0.5}, {1, 0.3}, {3, 0.2}}).symmetric());
}

TEST_CASE("measure transforms match direct summation") {
    const FiniteMeasureZ fair({{0, 0.5}, {1, 0.5}});
    const FiniteMeasureZ stolz({{-1, 0.25}, {0, 0.5}, {1, 0.25}});
    const FiniteMeasureZ skew({{0, 0.5}, {1, 0.3}, {3, 0.2}});
    CounterRng rng(11);
    for (int i = 0; i < 500; ++i) {
        const double t = rng.uniform(-kPi, kPi);
        const Angle a = Angle::radians(t);
        CHECK(std::abs(measure_transform(FiniteMeasureZ::point_mass(0), a) - 1.0) < 1e-16);
        const Complex half = std::polar(std::cos(t / 2), t / 2);
        CHECK(std::abs(measure_transform(fair, a) - half) < 1e-15);
        CHECK(std::abs(measure_transform(stolz, a) - Complex((1 + std::cos(t)) / 2, 0)) < 1e-15);
        const auto want = oracle::transform({{0, 0.5L}, {1, 0.3L}, {3, 0.2L}}, t);
        const auto got = measure_transform(skew, a);
        CHECK(std::abs(oracle::CL(got.real(), got.imag()) - want) < 1e-15);
    }
}

TEST_CASE("measure powers") {
    const FiniteMeasureZ fair({{0, 0.5}, {1, 0.5}});
    const FiniteMeasureZ stolz({{-1, 0.25}, {0, 0.5}, {1, 0.25}});
    const FiniteMeasureZ skew({{0, 0.5}, {1, 0.3}, {3, 0.2}});

    const Angle quarter = Angle::pi_fraction(1, 2);
    const Complex base = measure_transform(fair, quarter);
    CHECK(std::abs(measure_power_transform(fair, 1, quarter) - base) < 1e-15);
    CHECK(std::abs(measure_power_transform(fair, 2, quarter) - base * base) < 1e-15);
    CHECK_THROWS_AS(measure_power_transform(fair, 0, quarter), BadParameter);

    CounterRng rng(5);
    for (int i = 0; i < 300; ++i) {
        const double t = rng.uniform(-kPi, kPi);
        const Angle a = Angle::radians(t);
        for (const auto *mu : {&fair, &stolz, &skew}) {
            const Complex z = measure_transform(*mu, a);
            for (unsigned n : {1u, 2u, 7u, 30u}) {
                const auto want = oracle::power_by_multiplication(oracle::CL(z.real(), z.imag()), n);
                const auto got = measure_power_transform(*mu, n, a);
                CHECK(std::abs(oracle::CL(got.real(), got.imag()) - want) < 1e-13);
                if (std::abs(z) > 1e-3) {
                    const double modulus = std::pow(std::abs(z), n);
                    CHECK(std::abs(got) == doctest::Approx(modulus).epsilon(1e-12));
                }
            }
        }
        double previous = 1.0;
        for (std::uint64_t n = 1; n < (1ULL << 40); n *= 3) {
            const Complex p = measure_power_transform(stolz, n, a);
            CHECK(p.real() >= 0.0);
            CHECK(p.real() <= previous);
            CHECK(std::abs(p.imag()) < 1e-15);
            previous = p.real();
        }
    }
}

TEST_CASE("measure powers at huge exponents use exact phases") {
    const FiniteMeasureZ fair({{0, 0.5}, {1, 0.5}});
    const std::uint64_t n = 1ULL << 32;
    // theta = pi / 2^33: n theta / 2 = pi / 4 and |mu^|^n = cos(pi / 2^34)^(2^32).
    const Angle theta = Angle::pi_fraction(1, std::int64_t{1} << 33);
    const Complex p = measure_power_transform(fair, n, theta);
    const long double s = std::sin(oracle::pi / 34359738368.0L);
    const long double modulus = std::exp(static_cast<long double>(n) * std::log1p(-2 * s * s));
    CHECK(std::abs(p) == doctest::Approx(static_cast<double>(modulus)).epsilon(1e-12));
    CHECK(std::arg(p) == doctest::Approx(kPi / 4).epsilon(1e-14));
    const Complex q = measure_power_transform(fair, n, Angle::radians(theta.value()));
    CHECK(std::abs(p - q) < 1e-14);

    const FiniteMeasureZ skew({{0, 0.5}, {1, 0.3}, {3, 0.2}});
    CHECK_THROWS_AS(measure_power_transform(skew, 1ULL << 50, Angle::radians(1e-9)), OverflowGuard);
    CHECK(measure_power_transform(skew, 1ULL << 50, Angle::radians(1.0)) == Complex(0.0));
}

TEST_CASE("power gaps are accurate near the spectrum at one") {
    const FiniteMeasureZ fair({{0, 0.5}, {1, 0.5}});
    for (double t : {1e-3, 1e-6, 2e-9}) {
        const MeasurePowers mp(fair, Angle::radians(t));
        for (std::uint64_t b : {1ULL, 16ULL, 65536ULL}) {
            const std::uint64_t a = 2 * b;
            const oracle::CL z(std::cos(t / 2.0L) * std::cos(t / 2.0L), std::cos(t / 2.0L) * std::sin(t / 2.0L));
            const oracle::CL za = std::pow(std::abs(z), static_cast<long double>(a)) * std::exp(oracle::CL(0, a * t / 2.0L));
            const oracle::CL zb = std::pow(std::abs(z), static_cast<long double>(b)) * std::exp(oracle::CL(0, b * t / 2.0L));
            const double want = static_cast<double>(std::abs(za - zb));
            CHECK(mp.power_gap(a, b) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("kernel specs report their frequency domains") {
    CHECK(KernelSpec::cesaro().domain() == FrequencyDomain::Torus);
    CHECK(KernelSpec::sinc_z().domain() == FrequencyDomain::Integer);
    CHECK(KernelSpec::sinc_r().domain() == FrequencyDomain::Real);
    CHECK(KernelSpec::smoothed().domain() == FrequencyDomain::Integer);
    const auto mp = KernelSpec::measure_power(FiniteMeasureZ({{0, 0.5}, {1, 0.5}}));
    CHECK(mp.domain() == FrequencyDomain::Torus);
    CHECK(mp.name() == "measure-power[0:0.5,1:0.5]");
    CHECK(KernelSpec::sinc_z().scale_indexed());
    CHECK_FALSE(KernelSpec::cesaro().scale_indexed());
}
