#include <uclab/errors.hpp>
#include <uclab/rng.hpp>
#include <uclab/rotation_lab.hpp>

#include <doctest.h>

#include <cmath>

using namespace uclab;

namespace {

// Independent evaluation of a circle PL function from its raw breakpoint lists by scanning all pieces.
long double evaluate_oracle(const std::vector<long double> &xs, const std::vector<double> &vs, long double x) {
    const std::size_t B = xs.size();
    if (B == 0)
        return 0;
    if (B == 1)
        return vs[0];
    x -= std::floor(x);
    for (std::size_t i = 0; i < B; ++i) {
        long double a = xs[i], b = i + 1 < B ? xs[i + 1] : xs[0] + 1;
        for (long double y : {x, x + 1}) {
            if (y >= a && y < b)
                return vs[i] + (vs[(i + 1) % B] - vs[i]) * (y - a) / (b - a);
        }
    }
    return 0;
}

long double average_oracle(const PiecewiseLinearCircleFn &f, long double rho, std::uint64_t n, std::uint64_t v,
                           long double x) {
    long double s = 0;
    for (std::uint64_t j = v + 1; j <= v + n; ++j)
        s += evaluate_oracle(f.breakpoints(), f.values(), x + std::fmod(static_cast<long double>(j) * rho, 1.0L));
    return s / n;
}

PiecewiseLinearCircleFn random_pl(std::uint64_t seed, std::size_t B) {
    CounterRng rng(seed, 0);
    std::vector<long double> xs;
    std::vector<double> vs;
    for (std::size_t i = 0; i < B; ++i) {
        xs.push_back(rng.uniform());
        vs.push_back(rng.uniform(-1.0, 1.0));
    }
    return {xs, vs};
}

double max_gap_to_oracle(const PiecewiseLinearCircleFn &got, const PiecewiseLinearCircleFn &f, double rho,
                         std::uint64_t n, std::uint64_t v, std::uint64_t seed) {
    CounterRng rng(seed, 3);
    double worst = 0;
    std::vector<long double> probes(got.breakpoints());
    for (int i = 0; i < 200; ++i)
        probes.push_back(rng.uniform());
    for (long double x : probes)
        worst = std::max(worst, static_cast<double>(std::fabs(got(x) - average_oracle(f, rho, n, v, x))));
    return worst;
}

} // namespace

TEST_CASE("rotation numbers") {
    const auto golden = RotationNumber::golden();
    CHECK(golden.value() == doctest::Approx(0.6180339887498949));
    CHECK(golden.shift(0) == 0.0L);
    CHECK(static_cast<double>(golden.shift(1)) == golden.value());
    CHECK(static_cast<double>(golden.shift(-1)) == doctest::Approx(1 - golden.value()));
    CHECK(static_cast<double>(golden.shift(1000003)) ==
          doctest::Approx(std::fmod(1000003.0L * golden.value(), 1.0L)).epsilon(1e-15));
    CHECK_THROWS_AS(RotationNumber(0.0), BadParameter);
    CHECK_THROWS_AS(RotationNumber(1.0), BadParameter);
}

TEST_CASE("piecewise linear basics") {
    const auto t = PiecewiseLinearCircleFn::tent(0.25, 0.1, 2.0);
    CHECK(t(0.25) == 2.0);
    CHECK(t(0.225) == doctest::Approx(1.0));
    CHECK(t(0.5) == 0.0);
    CHECK(t.sup_norm() == 2.0);
    CHECK(t.mean() == doctest::Approx(0.1));
    CHECK(PiecewiseLinearCircleFn::constant(3.0).mean() == 3.0);
    CHECK(PiecewiseLinearCircleFn::constant(3.0)(0.77) == 3.0);
    CHECK(PiecewiseLinearCircleFn().sup_norm() == 0.0);

    const auto wrap = PiecewiseLinearCircleFn::tent(0.98, 0.1, 1.0);
    CHECK(wrap(0.02) == doctest::Approx(0.2));
    CHECK(wrap(0.0) == doctest::Approx(0.6));

    const auto f = random_pl(1, 9);
    for (int i = 0; i < 100; ++i) {
        const long double x = i / 100.0L;
        CHECK(f(x) == doctest::Approx(static_cast<double>(evaluate_oracle(f.breakpoints(), f.values(), x))));
    }
    const auto g = random_pl(2, 5);
    const auto sum = f + g;
    const auto a = (f - g).abs();
    for (int i = 0; i < 100; ++i) {
        const long double x = (i + 0.5L) / 100;
        CHECK(sum(x) == doctest::Approx(f(x) + g(x)).epsilon(1e-12));
        CHECK(a(x) == doctest::Approx(std::abs(f(x) - g(x))).epsilon(1e-12).scale(1.0));
    }
    CHECK((f - f).is_zero());
    CHECK_THROWS_AS(PiecewiseLinearCircleFn({0.1L}, {}), BadParameter);
}

TEST_CASE("translation") {
    const auto f = random_pl(3, 12);
    const auto same = translate(f, 0.0L);
    CHECK(same.breakpoints() == f.breakpoints());
    CHECK(same.values() == f.values());

    const auto back = translate(translate(f, 0.3137L), -0.3137L);
    REQUIRE(back.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(std::fabs(back.breakpoints()[i] - f.breakpoints()[i]) < 1e-15L);
        CHECK(back.values()[i] == f.values()[i]);
    }

    const auto moved = translate(PiecewiseLinearCircleFn::tent(0.25, 0.1, 1.0), 0.5L);
    CHECK(moved(0.75) == 1.0);
    CHECK(moved(0.25) == 0.0);

    const auto rho = RotationNumber::golden();
    for (std::int64_t v : {1, 7, 1000, 123456789})
        CHECK(translate(f, rho.shift(v)).sup_norm() == f.sup_norm());
}

TEST_CASE("rotation averages against pointwise sums") {
    const auto rho = RotationNumber::golden();
    const auto f = random_pl(4, 7);
    const auto one = rotation_average(f, rho, 1, 0);
    const auto shifted = translate(f, rho.shift(1));
    for (int i = 0; i < 50; ++i)
        CHECK(one(i / 50.0L) == doctest::Approx(shifted(i / 50.0L)).epsilon(1e-13));

    for (auto [n, v] : {std::pair<std::uint64_t, std::uint64_t>{3, 0}, {37, 0}, {200, 5}, {1000, 0}}) {
        const auto avg = rotation_average(f, rho, n, v);
        CHECK(max_gap_to_oracle(avg, f, rho.value(), n, v, n) < 1e-12);
        CHECK(avg.mean() == doctest::Approx(f.mean()).epsilon(1e-12).scale(1.0));
        CHECK(avg.sup_norm() <= f.sup_norm() + 1e-12);
    }

    const auto other = RotationNumber(std::sqrt(2.0) - 1);
    const auto g = random_pl(5, 30);
    const auto avg = rotation_average(g, other, 500, 3);
    CHECK(max_gap_to_oracle(avg, g, other.value(), 500, 3, 9) < 1e-12);

    const auto moving = rotation_average(g, rho, 40, 9);
    const auto commuted = translate(rotation_average(g, rho, 40, 0), rho.shift(9));
    CHECK((moving - commuted).sup_norm() < 1e-12);

    CHECK_THROWS_AS(rotation_average(g, rho, 400000, 0), BreakpointBudget);
    const auto fallback = rotation_average_with_fallback(g, rho, 400000, 0);
    CHECK(fallback.sampled);
    CHECK(fallback.fn.size() == kSampledGridPoints);
    for (std::size_t i : {0u, 1u, 4095u, 4097u, 40000u, 65535u}) {
        const long double x = fallback.fn.breakpoints()[i];
        CHECK(fallback.fn.values()[i] ==
              doctest::Approx(static_cast<double>(average_oracle(g, rho.value(), 400000, 0, x))).epsilon(1e-10).scale(1.0));
    }
    CHECK_FALSE(rotation_average_with_fallback(g, rho, 1000, 0).sampled);
    const auto sampled = sampled_rotation_average(g, rho, 300, 0, 4096);
    const auto exact = rotation_average(g, rho, 300, 0);
    for (std::size_t i = 0; i < 4096; i += 97)
        CHECK(sampled.values()[i] == doctest::Approx(exact(sampled.breakpoints()[i])).epsilon(1e-12).scale(1.0));
}

TEST_CASE("orbit gaps") {
    const auto rho = RotationNumber::golden();
    std::vector<long double> pts;
    for (int l = -2; l <= 2; ++l)
        pts.push_back(std::fmod(l * static_cast<long double>(rho.value()) + 10, 1.0L));
    long double direct = 1;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const long double d = std::fabs(pts[i] - pts[j]);
            direct = std::min(direct, std::min(d, 1 - d));
        }
    CHECK(min_orbit_gap(rho, 1) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-14));
    for (std::size_t L : {1u, 3u, 10u, 25u, 100u})
        CHECK(min_orbit_gap(rho, 2 * L) <= min_orbit_gap(rho, L));
    CHECK(min_orbit_gap(rho, 50) > 1.0 / (2.0 * 201 * 201));
    CHECK_THROWS_AS(min_orbit_gap(rho, 0), BadParameter);
}

TEST_CASE("tent pairs") {
    const auto rho = RotationNumber::golden();
    for (std::size_t L : {2u, 10u, 100u}) {
        const auto [f, cfg] = build_tent_pair(rho, L);
        CHECK(f.sup_norm() == 1.0);
        CHECK(std::abs(f.mean()) < 1e-12);
        REQUIRE(cfg.ladder.size() == 2 * L);
        for (std::size_t l = 1; l <= 2 * L; ++l)
            CHECK(cfg.ladder[l - 1] == doctest::Approx(static_cast<double>(std::min(l, 2 * L + 1 - l)) / L));
        const auto centres = tent_arc_centres(cfg, rho);
        CHECK(centres.size() == 2 * (4 * L + 1));
        for (std::size_t i = 0; i < centres.size(); ++i)
            for (std::size_t j = i + 1; j < centres.size(); ++j) {
                const long double d = std::fabs(centres[i] - centres[j]);
                CHECK(std::min(d, 1 - d) > cfg.arc_length);
            }
        CHECK(f.size() == 6 * 2 * L);
    }

    const auto ten = build_tent_pair(rho, 10).f;
    CHECK(invariance_deficit(ten, rho, 0) == 0.0);
    CHECK(invariance_deficit(ten, rho, 3) <= 0.3 + 1e-12);
    CHECK(invariance_deficit(ten, rho, 3) >= 0.3 - 1e-9);
    CHECK(invariance_deficit(ten, rho, 400) <= 2.0);
    const auto hundred = build_tent_pair(rho, 100).f;
    CHECK(invariance_deficit(hundred, rho, 5) <= 0.05 + 1e-12);
    CHECK_THROWS_AS(build_tent_pair(rho, 1), BadParameter);

    double previous = ten.sup_norm();
    for (std::uint64_t n : {10u, 100u, 1000u, 10000u}) {
        const double s = rotation_average(ten, rho, n, 0).sup_norm();
        if (n >= 100)
            CHECK(s < previous);
        previous = s;
    }
    CHECK(previous < 0.05);
}

TEST_CASE("coboundaries telescope") {
    const auto rho = RotationNumber::golden();
    CHECK(coboundary(PiecewiseLinearCircleFn::constant(2.5), rho).is_zero());
    const auto single = coboundary(PiecewiseLinearCircleFn::tent(0.4, 0.2, 1.0), rho);
    CHECK(single.size() <= 6);
    CHECK(std::abs(single.mean()) < 1e-12);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto F = random_pl(seed + 20, 4 + seed);
        const std::uint64_t n = seed == 0 ? 37 : 1 + 13 * seed;
        const auto lhs = rotation_average(coboundary(F, rho), rho, n, 0);
        const auto rhs = (translate(F, rho.shift(1)) - translate(F, rho.shift(static_cast<std::int64_t>(n) + 1)))
                             .scaled(1.0 / static_cast<double>(n));
        CHECK((lhs - rhs).sup_norm() < 1e-12);
    }
}

TEST_CASE("series diagnostics") {
    const auto rho = RotationNumber::golden();
    const auto F = PiecewiseLinearCircleFn::tent(0.3, 0.2, 1.0);
    const auto cob = coboundary(F, rho);
    const auto rows = series_diagnostics(cob, rho, build_sequence(SequenceSpec::power(2), 20), 20);
    REQUIRE(rows.size() == 20);
    CHECK(rows[0].absolute_sum == rows[0].unconditional_sum);
    for (const auto &r : rows)
        CHECK(r.unconditional_sum <= r.absolute_sum);
    double bound = 0;
    for (int k = 1; k <= 20; ++k)
        bound += 2.0 * F.sup_norm() / (k * k);
    CHECK(rows.back().absolute_sum <= bound + 1e-12);
    CHECK(rows.back().absolute_sum < std::pow(std::acos(-1.0), 2) / 3 * F.sup_norm());

    const auto tent = build_tent_pair(rho, 1000).f;
    const auto trows = series_diagnostics(tent, rho, build_sequence(SequenceSpec::identity(), 10), 10);
    CHECK(trows.back().absolute_sum >= 9.9);
    for (const auto &r : trows) {
        CHECK(r.unconditional_sum <= r.absolute_sum);
        CHECK_FALSE(r.sampled);
    }
}
