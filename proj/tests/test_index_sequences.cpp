#include <uclab/errors.hpp>
#include <uclab/index_sequences.hpp>

#include <doctest.h>

#include <cmath>

using namespace uclab;

namespace {
std::vector<double> ints(std::initializer_list<double> v) { return v; }
}

TEST_CASE("closed-form integer families") {
    CHECK(build_sequence(SequenceSpec::geometric(2), 5).terms() == ints({2, 4, 8, 16, 32}));
    CHECK(build_sequence(SequenceSpec::double_exp(2), 4).terms() == ints({4, 16, 256, 65536}));
    CHECK(build_sequence(SequenceSpec::double_exp(2, 0), 6).terms() == ints({2, 4, 16, 256, 65536, 4294967296.0}));
    CHECK(build_sequence(SequenceSpec::identity(), 4).terms() == ints({1, 2, 3, 4}));
    CHECK(build_sequence(SequenceSpec::power(2), 4).terms() == ints({1, 4, 9, 16}));
    CHECK(build_sequence(SequenceSpec::double_exp(2), 5).index(5) == 4294967296ULL);
}

TEST_CASE("parameter and clamp errors") {
    CHECK_THROWS_AS(build_sequence(SequenceSpec::power(1.0), 3), BadParameter);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::geometric(1.5), 3), BadParameter);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::reciprocal_ratio(1.0), 3), BadParameter);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::double_exp(2), 6), Overflow);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::double_exp(3), 4), Overflow);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::explicit_reals({1.0, 2.0}), 2), BadParameter);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::explicit_integers({3, 2}), 2), BadParameter);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::geometric(2), 60).index(60), Overflow);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::dyadic_blocks({BlockRule::Shape::Constant, 3.0}), 4), BadParameter);
}

TEST_CASE("dyadic blocks place equally spaced rounded terms") {
    const auto seq = build_sequence(SequenceSpec::dyadic_blocks({BlockRule::Shape::Linear, 1.0}), 6);
    CHECK(seq.terms() == ints({2, 4, 6, 8, 11, 13}));
    // Spacing inside each block stays within one of 2^k / phi(k).
    const auto longer = build_sequence(SequenceSpec::dyadic_blocks({BlockRule::Shape::Linear, 1.0}), 200);
    for (std::size_t k = 1; k < longer.count(); ++k) {
        const double a = longer.term(k), b = longer.term(k + 1);
        const int block = static_cast<int>(std::floor(std::log2(a)));
        if (std::floor(std::log2(b)) != block)
            continue;
        const double spacing = std::ldexp(1.0, block) / block;
        CHECK(std::abs((b - a) - spacing) <= 1.0);
    }
}

TEST_CASE("real families") {
    const auto dyadic = build_sequence(SequenceSpec::reciprocal_dyadic(), 4);
    CHECK(dyadic.terms() == ints({0.5, 0.25, 0.125, 0.0625}));
    CHECK(build_sequence(SequenceSpec::reciprocal_identity(), 3).scale(3) == doctest::Approx(1.0 / 3));
    CHECK(build_sequence(SequenceSpec::reciprocal_ratio(0.9), 3).scale(2) == doctest::Approx(0.81));
    CHECK_THROWS_AS(dyadic.index(1), DomainMismatch);
    CHECK_THROWS_AS(build_sequence(SequenceSpec::identity(), 3).scale(1), DomainMismatch);
}

TEST_CASE("ratio deficit sums") {
    CHECK(ratio_deficit_sum(build_sequence(SequenceSpec::geometric(2), 11), 10) == 5.0);
    CHECK(ratio_deficit_sum(build_sequence(SequenceSpec::reciprocal_dyadic(), 11), 10) == 5.0);
    double harmonic = 0.0;
    for (int k = 1; k <= 10; ++k)
        harmonic += 1.0 / (k + 1);
    CHECK(ratio_deficit_sum(build_sequence(SequenceSpec::identity(), 11), 10) == doctest::Approx(harmonic).epsilon(1e-15));
    CHECK(harmonic == doctest::Approx(2.0198773448773446).epsilon(1e-15));
    CHECK_THROWS_AS(ratio_deficit_sum(build_sequence(SequenceSpec::identity(), 10), 10), BadParameter);

    // Unbounded growth for every family that tends to infinity (or zero).
    for (const auto &spec : {SequenceSpec::identity(), SequenceSpec::power(2), SequenceSpec::geometric(3),
                             SequenceSpec::reciprocal_identity(), SequenceSpec::reciprocal_ratio(0.9)}) {
        const auto seq = build_sequence(spec, 10001);
        CHECK(ratio_deficit_sum(seq, 10000) > ratio_deficit_sum(seq, 100) + 0.5);
    }
}

TEST_CASE("product of ratios telescopes to n_1 / n_{K+1}") {
    for (const auto &spec : {SequenceSpec::identity(), SequenceSpec::power(2), SequenceSpec::geometric(2)}) {
        const auto seq = build_sequence(spec, 41);
        double log_product = 0.0;
        for (std::size_t k = 1; k <= 40; ++k)
            log_product += std::log1p(-seq.ratio_deficit(k));
        CHECK(log_product == doctest::Approx(std::log(seq.term(1) / seq.term(41))).epsilon(1e-12));
    }
}

TEST_CASE("lacunarity constants") {
    CHECK(lacunarity_constant(build_sequence(SequenceSpec::geometric(3), 8), 8) == 3.0);
    CHECK(lacunarity_constant(build_sequence(SequenceSpec::identity(), 100), 100) == doctest::Approx(100.0 / 99));
    CHECK(lacunarity_constant(build_sequence(SequenceSpec::identity(), 100), 100) <= 1.02);
    CHECK(lacunarity_constant(build_sequence(SequenceSpec::power(2), 50), 50) == doctest::Approx(2500.0 / 2401));
    CHECK(lacunarity_constant(build_sequence(SequenceSpec::reciprocal_dyadic(), 9), 9) == 2.0);
}

TEST_CASE("weight presets") {
    const auto seq = build_sequence(SequenceSpec::identity().with_weights(WeightPreset::Log), 5);
    CHECK(seq.weight(1) == doctest::Approx(std::log(2.0)));
    CHECK(seq.weight(4) == doctest::Approx(std::log(5.0)));
    CHECK(build_sequence(SequenceSpec::identity(), 5).weight(3) == 1.0);
    auto spec = SequenceSpec::identity();
    spec.weights = WeightPreset::Explicit;
    spec.explicit_weights = {1.0, 0.5};
    CHECK_THROWS_AS(build_sequence(spec, 2), BadParameter);
}
