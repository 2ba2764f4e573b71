#include "oracles.hpp"

#include <uclab/errors.hpp>
#include <uclab/rng.hpp>
#include <uclab/sign_oracle.hpp>

#include <doctest.h>

#include <cmath>

using namespace uclab;

namespace {

DifferenceTable random_table(std::uint64_t seed, std::size_t K, const std::vector<std::int64_t> &zs) {
    CounterRng rng(seed, 1);
    DifferenceTable t(K);
    for (auto z : zs)
        for (std::size_t k = 1; k <= K; ++k)
            t.set(k, z, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    return t;
}

FourierProfile random_profile(std::uint64_t seed, const std::vector<std::int64_t> &zs) {
    CounterRng rng(seed, 2);
    FourierProfile p;
    for (auto z : zs)
        p.set(z, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    return p;
}

// Exhaustive maximum over the phase grid with nested counting, no pruning or fixed digits.
long double enumeration_oracle(const DifferenceTable &t, const FourierProfile &p, unsigned m) {
    const std::size_t K = t.K();
    std::size_t total = 1;
    for (std::size_t i = 0; i < K; ++i)
        total *= m;
    long double best = 0;
    for (std::size_t code = 0; code < total; ++code) {
        long double energy = 0;
        for (const auto &[z, f] : p.entries()) {
            oracle::CL v = 0;
            std::size_t c = code;
            for (std::size_t k = 1; k <= K; ++k) {
                const long double a = 2 * oracle::pi * static_cast<long double>(c % m) / m;
                c /= m;
                const auto d = t.at(k, z);
                v += oracle::CL(std::cos(a), std::sin(a)) * oracle::CL(d.real(), d.imag());
            }
            energy += std::norm(v * oracle::CL(f.real(), f.imag()));
        }
        best = std::max(best, energy);
    }
    return std::sqrt(best);
}

// Exact sign average of ||sum r_k d_k||_1 over all 2^K patterns.
long double exact_khintchine_mean(const std::vector<GridFunctionZ> &diffs) {
    const std::size_t K = diffs.size();
    std::int64_t lo = diffs[0].first(), hi = diffs[0].last();
    for (const auto &d : diffs) {
        lo = std::min(lo, d.first());
        hi = std::max(hi, d.last());
    }
    std::vector<std::vector<long double>> columns;
    for (std::int64_t m = lo; m <= hi; ++m) {
        std::vector<long double> column(K);
        for (std::size_t k = 0; k < K; ++k)
            column[k] = diffs[k].at(m);
        columns.push_back(std::move(column));
    }
    long double total = 0;
    for (std::size_t code = 0; code < (std::size_t{1} << K); ++code)
        for (const auto &column : columns) {
            long double v = 0;
            for (std::size_t k = 0; k < K; ++k)
                v += (code >> k) & 1 ? column[k] : -column[k];
            total += std::fabs(v);
        }
    return total / static_cast<long double>(std::size_t{1} << K);
}

} // namespace

TEST_CASE("coefficient families") {
    CHECK(CoefficientFamily::signs({1, -1, 1}).entries() ==
          std::vector<std::complex<double>>{1.0, -1.0, 1.0});
    CHECK(CoefficientFamily::constant(3, {0.0, 1.0}).size() == 3);
    CHECK_NOTHROW(CoefficientFamily({std::polar(1.0, 0.3)}));
    CHECK_THROWS_AS(CoefficientFamily({1.001}), BadParameter);
}

TEST_CASE("aligned norm") {
    DifferenceTable one(3);
    one.set(1, 5, 0.5);
    one.set(2, 5, -0.25);
    one.set(3, 5, 0.125);
    FourierProfile unit;
    unit.set(5, 1.0);
    CHECK(aligned_coefficient_norm(one, unit) == doctest::Approx(0.875));
    CHECK(aligned_coefficient_norm(one, FourierProfile{}) == 0.0);

    const std::vector<std::int64_t> zs{-3, 7};
    const auto t = random_table(5, 4, zs);
    FourierProfile equal;
    equal.set(-3, 1.0);
    equal.set(7, 1.0);
    long double a1 = 0, a2 = 0;
    for (std::size_t k = 1; k <= 4; ++k) {
        a1 += std::abs(t.at(k, -3));
        a2 += std::abs(t.at(k, 7));
    }
    CHECK(aligned_coefficient_norm(t, equal) == doctest::Approx(static_cast<double>(std::sqrt(a1 * a1 + a2 * a2))));

    FourierProfile stray;
    stray.set(100, 1.0);
    CHECK_THROWS_AS(aligned_coefficient_norm(t, stray), MissingEntry);
}

TEST_CASE("brute force sign norm") {
    const std::vector<std::int64_t> single{2};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto t = random_table(seed, 4, single);
        const auto p = random_profile(seed, single);
        const double aligned = aligned_coefficient_norm(t, p);
        const double grid8 = brute_force_sign_norm(t, p, 8);
        CHECK(grid8 <= aligned + 1e-12);
        CHECK(grid8 >= aligned * (1 - 0.08));
        CHECK(coefficient_norm(t, p, phase_conjugate_coefficients(t, 2)) == doctest::Approx(aligned).epsilon(1e-12));
    }

    const std::vector<std::int64_t> several{-4, 0, 3, 9};
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        for (std::size_t K : {1u, 3u, 5u}) {
            const auto t = random_table(seed, K, several);
            const auto p = random_profile(seed, several);
            const double g2 = brute_force_sign_norm(t, p, 2, 1);
            const double g8 = brute_force_sign_norm(t, p, 8, 3);
            CHECK(g2 <= g8 + 1e-12);
            CHECK(g8 <= aligned_coefficient_norm(t, p) + 1e-12);
            CHECK(g2 == doctest::Approx(static_cast<double>(enumeration_oracle(t, p, 2))).epsilon(1e-12));
            CHECK(g8 == doctest::Approx(static_cast<double>(enumeration_oracle(t, p, 8))).epsilon(1e-12));
            if (K == 1)
                CHECK(g8 == doctest::Approx(coefficient_norm(t, p, CoefficientFamily::constant(1, 1.0))));
        }
    }

    DifferenceTable positive(5);
    FourierProfile flat;
    for (std::int64_t z : {1, 2, 3}) {
        flat.set(z, 0.5);
        for (std::size_t k = 1; k <= 5; ++k)
            positive.set(k, z, 0.1 * static_cast<double>(k + z));
    }
    CHECK(brute_force_sign_norm(positive, flat, 2) == doctest::Approx(aligned_coefficient_norm(positive, flat)));

    const auto eight = random_table(1, 8, single);
    CHECK_NOTHROW(brute_force_sign_norm(eight, random_profile(1, single), 2));
    CHECK_THROWS_AS(brute_force_sign_norm(eight, random_profile(1, single), 4), BadParameter);
    const auto nine = random_table(1, 9, single);
    CHECK_THROWS_AS(brute_force_sign_norm(nine, random_profile(1, single), 8), BudgetExceeded);
    CHECK_THROWS_AS(brute_force_sign_norm(nine, random_profile(1, single), 2), BadParameter);
}

TEST_CASE("torus difference tables") {
    const auto seq = build_sequence(SequenceSpec::geometric(2), 6);
    const Angle theta = Angle::pi_fraction(1, 7);
    const auto t = torus_difference_table(KernelSpec::cesaro(), seq, 5, theta, {1, 3});
    for (std::size_t k = 1; k <= 5; ++k) {
        const auto expect = oracle::cesaro(seq.index(k + 1), 3 * oracle::pi / 7) - oracle::cesaro(seq.index(k), 3 * oracle::pi / 7);
        CHECK(std::abs(t.at(k, 3) - std::complex<double>(expect.real(), expect.imag())) < 1e-14);
    }
    CHECK_THROWS_AS(t.at(6, 1), MissingEntry);
    CHECK_THROWS_AS(t.at(1, 2), MissingEntry);
    CHECK_THROWS_AS(torus_difference_table(KernelSpec::sinc_r(), seq, 5, theta, {1}), DomainMismatch);
}

TEST_CASE("rademacher square function") {
    const auto geo = build_sequence(SequenceSpec::geometric(2), 8);
    const auto delta = GridFunctionZ::delta(0);

    const auto single = rademacher_square_function(difference_family(delta, geo, 1), 100, 3);
    const double l1 = lp_norm_Z(difference_on_Z(delta, geo, 1), 1.0);
    CHECK(single.mean_l1 == doctest::Approx(l1).epsilon(1e-15));
    CHECK(single.square_fn_l1 == doctest::Approx(l1).epsilon(1e-15));

    const auto six = rademacher_square_function(difference_family(delta, geo, 6), 10000, 7);
    CHECK(six.square_fn_l1 >= delta0_sup_sum(geo, 5));
    CHECK(six.mean_l1 >= 0.2 * six.square_fn_l1);
    CHECK(six.mean_l1 <= six.square_fn_l1);
    const auto exact = exact_khintchine_mean(difference_family(delta, geo, 6));
    CHECK(six.mean_l1 == doctest::Approx(static_cast<double>(exact)).epsilon(0.02));

    const std::vector<GridFunctionZ> apart{cesaro_average_Z(delta, 4), cesaro_average_Z(GridFunctionZ::delta(100), 3).scaled(-2.0)};
    const auto disjoint = rademacher_square_function(apart, 64, 9);
    CHECK(disjoint.mean_l1 == doctest::Approx(disjoint.square_fn_l1).epsilon(1e-15));

    const auto again = rademacher_square_function(difference_family(delta, geo, 6), 10000, 7, 4);
    CHECK(again.mean_l1 == six.mean_l1);
    CHECK_THROWS_AS(rademacher_square_function(apart, 0, 1), BadParameter);
}

TEST_CASE("khintchine sandwich against exhaustive sign averages") {
    for (const auto &spec : {SequenceSpec::geometric(2), SequenceSpec::identity(), SequenceSpec::power(2),
                             SequenceSpec::power(3)}) {
        const auto seq = build_sequence(spec, 13);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            CounterRng rng(seed, 5);
            std::map<std::int64_t, double> entries;
            for (int i = 0; i < 6; ++i)
                entries[static_cast<std::int64_t>(rng.below(30))] = rng.uniform(-1.0, 1.0);
            const auto phi = GridFunctionZ::from_entries(entries);
            const auto diffs = difference_family(phi, seq, 12);
            const auto mc = rademacher_square_function(diffs, 1, 0);
            const auto exact = static_cast<double>(exact_khintchine_mean(diffs));
            CHECK(exact >= 0.2 * mc.square_fn_l1);
            CHECK(exact <= mc.square_fn_l1 * (1 + 1e-12));
        }
    }
}
