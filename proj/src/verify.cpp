#include "uclab/verify.hpp"

#include "uclab/criterion_engine.hpp"
#include "uclab/discrete_models.hpp"
#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"
#include "uclab/rng.hpp"
#include "uclab/rotation_lab.hpp"
#include "uclab/sign_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace uclab {

namespace {

using Checks = std::vector<CheckLine>;

CheckLine at_most(std::string label, double measured, double bound) { return {std::move(label), measured, bound, true}; }
CheckLine at_least(std::string label, double measured, double bound) { return {std::move(label), measured, bound, false}; }
CheckLine holds(std::string label, bool ok) { return {std::move(label), ok ? 1.0 : 0.0, 1.0, false}; }

std::string with_index(const std::string &label, double value) {
    std::ostringstream os;
    os << label << value;
    return os.str();
}

const FiniteMeasureZ &fair() {
    static const FiniteMeasureZ mu({{0, 0.5}, {1, 0.5}});
    return mu;
}

const FiniteMeasureZ &stolz() {
    static const FiniteMeasureZ mu({{-1, 0.25}, {0, 0.5}, {1, 0.25}});
    return mu;
}

ScanOptions scan_options(const VerifyContext &ctx) {
    ScanOptions o;
    o.threads = ctx.threads;
    return o;
}

Checks lacunary_cesaro_bounded(const VerifyContext &ctx) {
    const auto seq = build_sequence(SequenceSpec::geometric(2), 21);
    const DifferenceSumQuery q20(KernelSpec::cesaro(), seq, 20);
    const TorusSampling sampling{0, 1000000};
    const auto s20 = estimate_supremum(q20, sampling, scan_options(ctx));
    const auto s15 = estimate_supremum(q20.truncated(15), sampling, scan_options(ctx));
    const auto partial = q20.partial_sums(s20.argmax);
    return {at_most("sup S_20", s20.value, 20.0),
            at_most("|sup S_20 - sup S_15|", std::abs(s20.value - s15.value), 0.05),
            at_most("S_20 - S_15 at the S_20 argmax", partial[19] - partial[14], 0.05)};
}

Checks identity_cesaro_divergent(const VerifyContext &ctx) {
    const std::size_t K = 10000;
    const DifferenceSumQuery q(KernelSpec::cesaro(), build_sequence(SequenceSpec::identity(), K + 1), K);
    const auto profile = divergence_profile(q, {{100, TorusSampling{4000, 4000}}, {K, TorusSampling{4000, 4000}}},
                                            scan_options(ctx));
    // Direct summation of m_n(pi) = (1/n) sum_{j<=n} (-1)^j.
    const auto partial = q.partial_sums(Frequency::torus(Angle::pi_fraction(1, 1)));
    std::vector<long double> m(K + 2);
    for (std::size_t n = 1; n <= K + 1; ++n) {
        long double s = 0;
        for (std::size_t j = 1; j <= n; ++j)
            s += (j % 2 == 1) ? -1.0L : 1.0L;
        m[n] = s / static_cast<long double>(n);
    }
    long double running = 0;
    double worst = 0;
    for (std::size_t k = 1; k <= K; ++k) {
        running += std::fabs(m[k + 1] - m[k]);
        worst = std::max(worst, static_cast<double>(std::fabs(running - partial[k - 1])));
    }
    return {at_least("sup S_10000 - sup S_100", profile[1].value - profile[0].value, 1.0),
            at_most("max |S_k(pi) - direct|", worst, 1e-10)};
}

Checks pairwise_average_gap(const VerifyContext &) {
    Checks out;
    for (auto [n, m] : {std::pair<std::uint64_t, std::uint64_t>{1, 2}, {5, 10}, {7, 8}}) {
        const auto r = pairwise_lower_bound(n, m);
        out.push_back(at_least("sup |m_" + std::to_string(n) + " - m_" + std::to_string(m) + "|", r.sup_estimate,
                               r.lower_bound - 1e-9));
    }
    return out;
}

Checks sinc_pair_gap(const VerifyContext &ctx) {
    Checks out;
    for (auto [a, b] : {std::pair{0.25, 0.5}, std::pair{0.9, 1.0}}) {
        const DifferenceSumQuery q(KernelSpec::sinc_r(), build_sequence(SequenceSpec::explicit_reals({b, a}), 2), 1);
        const auto est = estimate_supremum(q, RealSampling{1000.0 / a, 200000, 20000, 1e-3 / b}, scan_options(ctx));
        std::ostringstream label;
        label << "sup |sinc(" << a << " t) - sinc(" << b << " t)|";
        out.push_back(at_least(label.str(), est.value, (2.0 / kPi) * (1.0 - a / b) - 1e-9));
    }
    return out;
}

Checks sampling_inequality(const VerifyContext &ctx) {
    Checks out;
    CounterRng rng(ctx.seed, 5);
    for (int i = 0; i < 20; ++i) {
        double a = rng.uniform(0.01, 0.99), b = rng.uniform(0.01, 0.99);
        if (a > b)
            std::swap(a, b);
        if (a == b)
            b = std::min(0.99, a + 1e-3);
        const auto r = sampling_comparison(a, b);
        std::ostringstream label;
        label << "sup_R (a=" << a << ", b=" << b << ")";
        out.push_back(at_most(label.str(), r.sup_real, r.sup_integer / (1.0 - b) + 1e-6));
    }
    return out;
}

Checks geometric_tail(const VerifyContext &ctx) {
    CounterRng rng(ctx.seed, 6);
    double worst = 0;
    std::size_t accepted = 0;
    while (accepted < 1000) {
        const double theta = rng.uniform(-kPi, kPi);
        const Angle angle = Angle::radians(theta);
        const double r = std::abs(measure_transform(fair(), angle));
        if (!(r < 0.999) || theta == 0.0)
            continue;
        ++accepted;
        // Truncate once the remaining tail |mu^ - 1| r^{K+1} / (1 - r) is below 1e-12 relative.
        const auto K = static_cast<std::size_t>(std::ceil(std::log(1e-13 * (1 - r)) / std::log(r))) + 2;
        const DifferenceSumQuery q(KernelSpec::measure_power(fair()), build_sequence(SequenceSpec::identity(), K + 1), K);
        const double exact = geometric_tail_closed_form(fair(), angle);
        const double truncated = q.sum(Frequency::torus(angle));
        worst = std::max(worst, std::abs(truncated - exact) / exact);
    }
    double sup = 0;
    for (int j = 1; j <= 30; ++j) {
        try {
            sup = std::max(sup, geometric_tail_closed_form(fair(), Angle::pi_fraction(1, std::int64_t{1} << j)));
        } catch (const SpectrumAtOne &) {
        }
    }
    return {at_most("max relative error, 1000 angles", worst, 1e-8),
            at_least("sup closed form over pi 2^-j", sup, 1e3)};
}

Checks stolz_bounded(const VerifyContext &ctx) {
    struct Case {
        SequenceSpec spec;
        std::size_t K;
    };
    const std::vector<Case> cases{{SequenceSpec::identity(), 200},
                                  {SequenceSpec::power(2), 100},
                                  {SequenceSpec::geometric(2), 40},
                                  {SequenceSpec::double_exp(2, 0), 5}};
    std::vector<Angle> grid;
    for (std::int64_t i = 1; i <= 100000; ++i)
        grid.push_back(Angle::pi_fraction(i, 100000));
    Checks out;
    for (const auto &c : cases) {
        const auto seq = build_sequence(c.spec, c.K + 1);
        const DifferenceSumQuery q(KernelSpec::measure_power(stolz()), seq, c.K);
        double worst = -1e300;
        for (const auto &theta : grid) {
            const double bound = spectral_region_ratios(stolz(), theta).stolz *
                                 std::pow(std::abs(measure_transform(stolz(), theta)), static_cast<double>(seq.index(1)));
            worst = std::max(worst, q.sum(Frequency::torus(theta)) - bound);
        }
        out.push_back(at_most(c.spec.id() + ": max S_K - Stolz bound", worst, 1e-9));
        // The double-exponential case has only five usable terms; it is compared at lag one.
        const std::size_t lag = c.K > 5 ? 5 : 1;
        const auto top = estimate_supremum(q, TorusSampling{20000, 20000}, scan_options(ctx));
        const auto lower = estimate_supremum(q.truncated(c.K - lag), TorusSampling{20000, 20000}, scan_options(ctx));
        out.push_back(at_most(c.spec.id() + ": |sup S_" + std::to_string(c.K) + " - sup S_" + std::to_string(c.K - lag) + "|",
                              std::abs(top.value - lower.value), 1e-2));
    }
    return out;
}

Checks geometric_measure_divergent(const VerifyContext &ctx) {
    const DifferenceSumQuery q(KernelSpec::measure_power(fair()), build_sequence(SequenceSpec::geometric(2), 41), 40);
    const TorusSampling sampling{20000, 200000};
    const auto profile = divergence_profile(q, {{10, sampling}, {20, sampling}, {40, sampling}}, scan_options(ctx));
    return {at_least("sup S_20 - sup S_10", profile[1].value - profile[0].value, 0.1),
            at_least("sup S_40 - sup S_20", profile[2].value - profile[1].value, 0.1)};
}

Checks double_exp_bounded(const VerifyContext &ctx) {
    const DifferenceSumQuery q(KernelSpec::measure_power(fair()), build_sequence(SequenceSpec::double_exp(2, 0), 6), 5);
    const TorusSampling sampling{1000000, 1000000};
    const auto s5 = estimate_supremum(q, sampling, scan_options(ctx));
    const auto s4 = estimate_supremum(q.truncated(4), sampling, scan_options(ctx));
    return {at_most("|sup S_5 - sup S_4|", std::abs(s5.value - s4.value), 1e-2)};
}

Checks growth_window(const VerifyContext &ctx) {
    const auto seq = build_sequence(SequenceSpec::double_exp(2, 0), 6);
    Checks out;
    for (std::size_t k : {3u, 4u})
        out.push_back(at_least("window probe k=" + std::to_string(k), growth_window_probe(fair(), seq, 2.0, k), 0.2));
    const auto weighted_seq = build_sequence(SequenceSpec::double_exp(2, 0).with_weights(WeightPreset::Log), 6);
    const DifferenceSumQuery plain(KernelSpec::measure_power(fair()), seq, 5);
    const DifferenceSumQuery weighted(KernelSpec::measure_power(fair()), weighted_seq, 5);
    const TorusSampling sampling{200000, 200000};
    const auto u = estimate_supremum(plain, sampling, scan_options(ctx));
    const auto w = estimate_supremum(weighted, sampling, scan_options(ctx));
    // Gain from the weights at the unweighted maximiser: sum_k (w_k - 1) |Delta_k|.
    double margin = 0;
    for (std::size_t k = 1; k <= 5; ++k)
        margin += (weighted_seq.weight(k) - 1.0) * plain.term(k, u.argmax);
    out.push_back(at_least("weighted sup - unweighted sup", w.value - u.value, margin));
    return out;
}

Checks dyadic_sinc_bounded(const VerifyContext &ctx) {
    const DifferenceSumQuery q(KernelSpec::sinc_z(), build_sequence(SequenceSpec::reciprocal_dyadic(), 41), 40);
    const auto est = estimate_supremum(q, IntegerSampling{10000, 4000, 1000000}, scan_options(ctx));
    return {at_most("sup S_40", est.value, 8.0 + 2.0 / 9.0 + 1e-9)};
}

// S(ell) for eps_k = 1/k summed directly up to K.
double harmonic_sinc_sum(double ell, std::size_t K) {
    CompensatedSum sum;
    double previous = sinc(ell);
    for (std::size_t k = 1; k <= K; ++k) {
        const double next = sinc(ell / static_cast<double>(k + 1));
        sum.add(std::abs(next - previous));
        previous = next;
    }
    return sum.value();
}

Checks harmonic_sinc_divergent(const VerifyContext &) {
    const std::size_t K = 10000000;
    const double high = harmonic_sinc_sum(1e6, K), low = harmonic_sinc_sum(1e3, K);
    return {at_least("S(10^6) - S(10^3)", high - low, 0.5)};
}

Checks smoothed_kernel_bounded(const VerifyContext &ctx) {
    const double bound = 2.0 * (1.0 - std::sin(1.0)) + 16.0 + 1e-9;
    Checks out;
    for (auto [spec, K] : {std::pair{SequenceSpec::reciprocal_ratio(0.9), std::size_t{300}},
                           std::pair{SequenceSpec::reciprocal_dyadic(), std::size_t{40}}}) {
        const DifferenceSumQuery q(KernelSpec::smoothed(), build_sequence(spec, K + 1), K);
        const auto est = estimate_supremum(q, IntegerSampling{10000, 4000, 1000000}, scan_options(ctx));
        out.push_back(at_most(spec.id() + ": sup S_" + std::to_string(K), est.value, bound));
    }
    return out;
}

Checks step_kernel_identity(const VerifyContext &ctx) {
    CounterRng rng(ctx.seed, 14);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double a = std::exp(rng.uniform(-20.0, 20.0));
        const double b = a * rng.uniform(1e-6, 1.0);
        const auto r = g_k_l2_identity(a, b);
        worst = std::max(worst, r.closed_form == 0.0 ? std::abs(r.numeric) : std::abs(r.numeric - r.closed_form) / r.closed_form);
    }
    const std::size_t K = 80;
    CompensatedSum lhs;
    for (std::size_t k = 1; k <= K; ++k) {
        const auto r = g_k_l2_identity(std::ldexp(1.0, -static_cast<int>(k)), std::ldexp(1.0, -static_cast<int>(k + 1)));
        lhs.add(std::sqrt(r.closed_form / 2.0) / std::sqrt(2.0));
    }
    // For eps_k = 2^-k the sum is (2^{K/2} - 1) / (2 - sqrt 2) while sqrt(1/eps_{K+1} - 1/eps_1)
    // behaves like 2^{(K+1)/2}; their ratio tends to 1 / (2 - sqrt 2).
    const double growth = std::sqrt(std::ldexp(1.0, static_cast<int>(K + 1)) - 2.0);
    const double ratio = lhs.value() / growth;
    const double limit = 1.0 / (2.0 - std::sqrt(2.0));
    return {at_most("max relative gap, 1000 pairs", worst, 1e-12),
            at_most("|ratio to sqrt(1/eps_{K+1} - 1/eps_1) - 1/(2 - sqrt 2)| / limit", std::abs(ratio - limit) / limit, 1e-9)};
}

Checks delta_block_divergence(const VerifyContext &) {
    Checks out;
    for (const auto &spec : {SequenceSpec::identity(), SequenceSpec::geometric(2), SequenceSpec::power(2)}) {
        const auto seq = build_sequence(spec, 10001);
        out.push_back(at_least(spec.id() + ": sum at J=10^4 minus J=10^2",
                               delta0_sup_sum(seq, 10000) - delta0_sup_sum(seq, 100), 1.0));
        const auto blocks = delta0_block_check(build_sequence(spec, 7), 6);
        out.push_back(at_most(spec.id() + ": |grid block sum - formula| at J=6", std::abs(blocks.block_sum - blocks.formula), 1e-12));
    }
    return out;
}

struct SignInstance {
    DifferenceTable diffs;
    FourierProfile profile;
    std::vector<std::int64_t> frequencies;
};

SignInstance random_sign_instance(CounterRng &rng) {
    static const std::vector<SequenceSpec> specs{SequenceSpec::identity(), SequenceSpec::power(2),
                                                 SequenceSpec::geometric(2), SequenceSpec::geometric(3)};
    const auto &spec = specs[rng.below(specs.size())];
    const std::size_t K = 1 + rng.below(8);
    const std::size_t F = 1 + rng.below(4);
    std::vector<std::int64_t> zs;
    while (zs.size() < F) {
        const auto z = static_cast<std::int64_t>(rng.below(17)) - 8;
        if (z != 0 && std::find(zs.begin(), zs.end(), z) == zs.end())
            zs.push_back(z);
    }
    const Angle theta = Angle::radians(rng.uniform(1e-3, kPi));
    SignInstance out{torus_difference_table(KernelSpec::cesaro(), build_sequence(spec, K + 1), K, theta, zs), {}, zs};
    for (auto z : zs)
        out.profile.set(z, std::polar(rng.uniform(0.1, 1.0), rng.uniform(-kPi, kPi)));
    return out;
}

Checks sign_oracle_criterion(const VerifyContext &ctx) {
    CounterRng rng(ctx.seed, 16);
    double worst_low = 1e300, worst_high = -1e300, worst_single = 0;
    for (int i = 0; i < 100; ++i) {
        const auto inst = random_sign_instance(rng);
        const double aligned = aligned_coefficient_norm(inst.diffs, inst.profile);
        const double grid = brute_force_sign_norm(inst.diffs, inst.profile, 8, ctx.threads);
        worst_low = std::min(worst_low, aligned > 0 ? grid / aligned : 1.0);
        worst_high = std::max(worst_high, grid - aligned);
        FourierProfile single;
        single.set(inst.frequencies.front(), inst.profile.entries().at(inst.frequencies.front()));
        const double conjugate = coefficient_norm(inst.diffs, single, phase_conjugate_coefficients(inst.diffs, inst.frequencies.front()));
        worst_single = std::max(worst_single, std::abs(conjugate - aligned_coefficient_norm(inst.diffs, single)));
    }
    return {at_least("min brute force / aligned", worst_low, 0.92),
            at_most("max brute force - aligned", worst_high, 1e-12),
            at_most("max |phase conjugate - aligned| single frequency", worst_single, 1e-12)};
}

Checks khintchine_comparison(const VerifyContext &ctx) {
    struct Entry {
        std::string label;
        GridFunctionZ phi;
        SequenceSpec spec;
        std::size_t K;
    };
    CounterRng rng(ctx.seed, 17);
    std::vector<double> signs(32), smooth(16);
    for (auto &s : signs)
        s = rng.sign();
    for (auto &s : smooth)
        s = rng.uniform(-1.0, 1.0);
    const std::vector<Entry> corpus{
        {"delta_0, 2^k", GridFunctionZ::delta(0), SequenceSpec::geometric(2), 6},
        {"delta_0, k", GridFunctionZ::delta(0), SequenceSpec::identity(), 12},
        {"signs on [0,32), k^2", GridFunctionZ(0, signs), SequenceSpec::power(2), 10},
        {"uniform on [0,16), 3^k", GridFunctionZ(0, smooth), SequenceSpec::geometric(3), 8},
        {"three atoms, k", GridFunctionZ::from_entries({{0, 1.0}, {5, 1.0}, {9, -1.0}}), SequenceSpec::identity(), 20},
    };
    Checks out;
    for (const auto &e : corpus) {
        const auto seq = build_sequence(e.spec, e.K + 1);
        const auto r = rademacher_square_function(difference_family(e.phi, seq, e.K), 10000, ctx.seed, ctx.threads);
        out.push_back(at_least(e.label + ": mean_l1 vs 0.2 square", r.mean_l1, 0.2 * r.square_fn_l1));
        out.push_back(at_most(e.label + ": mean_l1 vs square", r.mean_l1, r.square_fn_l1));
    }
    return out;
}

PiecewiseLinearCircleFn random_circle_fn(CounterRng &rng) {
    const std::size_t B = 2 + rng.below(11);
    std::vector<long double> xs;
    std::vector<double> vs;
    for (std::size_t i = 0; i < B; ++i) {
        xs.push_back(rng.uniform());
        vs.push_back(rng.uniform(-1.0, 1.0));
    }
    return {std::move(xs), std::move(vs)};
}

Checks rotation_lab_criterion(const VerifyContext &ctx) {
    const auto rho = RotationNumber::golden();
    CounterRng rng(ctx.seed, 18);
    double telescoping = 0, isometry = 0;
    bool ordered = true;
    for (int i = 0; i < 20; ++i) {
        const auto F = random_circle_fn(rng);
        const std::uint64_t n = 1 + rng.below(500);
        const auto lhs = rotation_average(coboundary(F, rho), rho, n, 0);
        const auto rhs = (translate(F, rho.shift(1)) - translate(F, rho.shift(static_cast<std::int64_t>(n) + 1)))
                             .scaled(1.0 / static_cast<double>(n));
        telescoping = std::max(telescoping, (lhs - rhs).sup_norm());
        const auto v = static_cast<std::int64_t>(rng.below(1u << 30));
        isometry = std::max(isometry, std::abs(translate(F, rho.shift(v)).sup_norm() - F.sup_norm()));
        for (const auto &row : series_diagnostics(coboundary(F, rho), rho, build_sequence(SequenceSpec::power(2), 8), 8))
            ordered = ordered && row.unconditional_sum <= row.absolute_sum;
    }
    const std::size_t L = 1000;
    const auto pair = build_tent_pair(rho, L);
    const auto rows = series_diagnostics(pair.f, rho, build_sequence(SequenceSpec::identity(), 10), 10);
    for (const auto &row : rows)
        ordered = ordered && row.unconditional_sum <= row.absolute_sum;
    double deficit_excess = -1e300;
    for (std::int64_t j = 0; j <= 20; ++j)
        deficit_excess = std::max(deficit_excess, invariance_deficit(pair.f, rho, j) - static_cast<double>(j) / L);
    return {at_most("max telescoping error, 20 pairs", telescoping, 1e-12),
            at_least("A_10 for the L=1000 tent pair", rows.back().absolute_sum, 9.9),
            at_most("max deficit(j) - j/L for j <= 20", deficit_excess, 1e-12),
            holds("U_k <= A_k in every run", ordered),
            at_most("translation sup-norm drift", isometry, 0.0)};
}

Checks lacunary_lp_uniform(const VerifyContext &ctx) {
    const auto seq = build_sequence(SequenceSpec::geometric(2), 10);
    const std::size_t K = 8;
    Checks out;
    for (double p : {1.5, 3.0}) {
        double small = 0, large = 0;
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
            CounterRng rng(ctx.seed, 1000 + trial);
            std::vector<int> coefficient_signs(K);
            for (auto &s : coefficient_signs)
                s = rng.sign();
            const auto c = CoefficientFamily::signs(coefficient_signs);
            auto random_phi = [&](std::size_t width) {
                std::vector<double> values(width);
                for (auto &v : values)
                    v = rng.sign();
                return GridFunctionZ(0, values);
            };
            small = std::max(small, lacunary_lp_ratio(seq, p, random_phi(64), c, K));
            large = std::max(large, lacunary_lp_ratio(seq, p, random_phi(4096), c, K));
        }
        out.push_back(at_most(with_index("max/min of the two support ratios, p=", p),
                              std::max(small, large) / std::min(small, large), 2.0 - 1e-15));
    }
    return out;
}

Checks polynomial_blocks_divergent(const VerifyContext &ctx) {
    struct Case {
        SequenceSpec spec;
        std::size_t K0;
    };
    const std::vector<Case> cases{{SequenceSpec::power(2), 25},
                                  {SequenceSpec::dyadic_blocks(BlockRule{BlockRule::Shape::Linear, 1.0}), 50}};
    Checks out;
    for (const auto &c : cases) {
        const std::size_t levels = 4;
        const std::size_t top = c.K0 << (levels - 1);
        const DifferenceSumQuery q(KernelSpec::cesaro(), build_sequence(c.spec, top + 1), top);
        std::vector<Probe> probes;
        for (std::size_t i = 0; i < levels; ++i)
            probes.push_back({c.K0 << i, TorusSampling{std::size_t{2000} << i, std::size_t{2000} << i}});
        const auto profile = divergence_profile(q, probes, scan_options(ctx));
        for (std::size_t i = 1; i < levels; ++i)
            out.push_back(at_least(c.spec.id() + ": sup S_" + std::to_string(probes[i].K) + " - sup S_" +
                                       std::to_string(probes[i - 1].K),
                                   profile[i].value - profile[i - 1].value, 0.3));
    }
    return out;
}

} // namespace

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {1, "lacunary-cesaro-bounded", "Cesaro averages along 2^k: sup S_20 <= 20 and stable from K=15", lacunary_cesaro_bounded},
        {2, "identity-cesaro-divergent", "Cesaro averages along k: sup grows by 1 from K=100 to 10^4; S_k(pi) exact", identity_cesaro_divergent},
        {3, "pairwise-average-gap", "sup |m_n - m_m| >= (2/pi)(1 - n/m)", pairwise_average_gap},
        {4, "sinc-pair-gap", "sup |sinc(at) - sinc(bt)| >= (2/pi)(1 - a/b)", sinc_pair_gap},
        {5, "sampling-inequality", "real sup <= integer sup / (1 - b) on 20 random pairs", sampling_inequality},
        {6, "geometric-tail", "tail sum for (d0+d1)/2 matches its closed form; unbounded near 0", geometric_tail},
        {7, "stolz-bounded", "Stolz measure powers: pointwise bound and stable sups", stolz_bounded},
        {8, "geometric-measure-divergent", "(d0+d1)/2 along 2^k: sups grow by 0.1 per doubling of K", geometric_measure_divergent},
        {9, "double-exp-bounded", "(d0+d1)/2 along 2^(2^k): sup S_5 within 0.01 of sup S_4", double_exp_bounded},
        {10, "growth-window-probe", "window probe >= 0.2 and log weights raise the sup", growth_window},
        {11, "dyadic-sinc-bounded", "integer sinc along 2^-k: sup S_40 <= 8 + 2/9", dyadic_sinc_bounded},
        {12, "harmonic-sinc-divergent", "integer sinc along 1/k: S(10^6) - S(10^3) >= 0.5", harmonic_sinc_divergent},
        {13, "smoothed-kernel-bounded", "smoothed kernel: sup <= 2(1 - sin 1) + 16", smoothed_kernel_bounded},
        {14, "step-kernel-identity", "L2 identity for scale differences and its growth rate", step_kernel_identity},
        {15, "delta-block-divergence", "delta_0 sums diverge and match the grid computation", delta_block_divergence},
        {16, "sign-oracle", "brute-force sign norms against the aligned bound", sign_oracle_criterion},
        {17, "khintchine-comparison", "Rademacher l1 mean within [0.2, 1] of the square function", khintchine_comparison},
        {18, "rotation-lab", "telescoping, tent pair lower bound, invariance deficit, A/U ordering", rotation_lab_criterion},
        {19, "lacunary-lp-uniform", "l_p ratios for 2^k stable across support sizes", lacunary_lp_uniform},
        {20, "polynomial-blocks-divergent", "k^2 and dyadic blocks: sups grow by 0.3 per level", polynomial_blocks_divergent},
    };
    return all;
}

const Criterion *find_criterion(const std::string &name_or_id) {
    for (const auto &c : criteria())
        if (c.name == name_or_id || std::to_string(c.id) == name_or_id)
            return &c;
    return nullptr;
}

CriterionResult run_criterion(const Criterion &criterion, const VerifyContext &context) {
    CriterionResult result;
    result.id = criterion.id;
    result.name = criterion.name;
    const auto start = std::chrono::steady_clock::now();
    try {
        result.checks = criterion.run(context);
        result.passed = !result.checks.empty();
        double tightest = 1e300;
        for (const auto &c : result.checks) {
            result.passed = result.passed && c.passed();
            const double relative = c.margin() / std::max(1.0, std::abs(c.bound));
            if (relative < tightest) {
                tightest = relative;
                result.measured = c.measured;
                result.bound = c.bound;
                result.margin = c.margin();
            }
        }
    } catch (const std::exception &e) {
        result.passed = false;
        result.error = e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<CriterionResult> run_criteria(const VerifyContext &context, const std::string &only) {
    std::vector<CriterionResult> out;
    if (!only.empty()) {
        const Criterion *c = find_criterion(only);
        if (!c)
            throw MissingEntry("unknown criterion '" + only + "'");
        out.push_back(run_criterion(*c, context));
        return out;
    }
    for (const auto &c : criteria())
        out.push_back(run_criterion(c, context));
    return out;
}

std::string format_result(const CriterionResult &r) {
    char line[512];
    if (!r.error.empty()) {
        std::snprintf(line, sizeof line, "%s %2d %-28s error: %s (%.2fs)", r.passed ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.error.c_str(), r.seconds);
        return line;
    }
    std::snprintf(line, sizeof line, "%s %2d %-28s measured=%.10g bound=%.10g margin=%.3g (%.2fs)",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured, r.bound, r.margin, r.seconds);
    return line;
}

} // namespace uclab
