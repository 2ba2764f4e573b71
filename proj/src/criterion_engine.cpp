#include "uclab/criterion_engine.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"
#include "uclab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace uclab {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr int kGoldenIterations = 60;

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

void require_domain(FrequencyDomain expected, FrequencyDomain got) {
    if (expected != got)
        throw DomainMismatch("kernel expects " + to_string(expected) + " but got " + to_string(got));
}

// Golden-section ascent on [lo, hi]; returns the best (x, f(x)) seen.
template <class F> std::pair<double, double> golden_ascent(double lo, double hi, F &&f) {
    double a = lo, b = hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    std::pair<double, double> best = fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
    for (int it = 0; it < kGoldenIterations; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
            if (fc > best.second)
                best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
            if (fd > best.second)
                best = {d, fd};
        }
    }
    return best;
}

template <class F> std::pair<std::int64_t, double> integer_ascent(std::int64_t lo, std::int64_t hi, F &&f) {
    while (hi - lo > 6) {
        const std::int64_t m1 = lo + (hi - lo) / 3;
        const std::int64_t m2 = hi - (hi - lo) / 3;
        if (f(m1) >= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    std::pair<std::int64_t, double> best{lo, f(lo)};
    for (std::int64_t x = lo + 1; x <= hi; ++x) {
        const double v = f(x);
        if (v > best.second)
            best = {x, v};
    }
    return best;
}

} // namespace

DifferenceSumQuery::DifferenceSumQuery(KernelSpec kernel, IndexSequence seq, std::size_t K, double p)
    : kernel_(std::move(kernel)), seq_(std::move(seq)), K_(K), p_(p) {
    if (K_ < 1)
        throw BadParameter("truncation K must be at least 1");
    if (!(p_ > 0.0) || !std::isfinite(p_))
        throw BadParameter("exponent p must be positive");
    if (seq_.count() < K_ + 1)
        throw BadParameter("sequence holds " + std::to_string(seq_.count()) + " terms but K = " +
                           std::to_string(K_) + " needs " + std::to_string(K_ + 1));
    if (kernel_.scale_indexed() == seq_.integer_kind())
        throw DomainMismatch(kernel_.name() + " cannot be indexed by " + seq_.spec().id());
    if (kernel_.family == KernelFamily::MeasurePower && !kernel_.measure)
        throw BadParameter("measure-power kernel needs a measure");
    for (std::size_t k = 1; k <= K_ + 1; ++k) {
        if (seq_.integer_kind())
            counts_.push_back(seq_.index(k));
        else
            scales_.push_back(seq_.scale(k));
    }
    for (std::size_t k = 1; k <= K_; ++k)
        weights_.push_back(seq_.weight(k));
}

DifferenceSumQuery DifferenceSumQuery::truncated(std::size_t K) const { return {kernel_, seq_, K, p_}; }

void DifferenceSumQuery::check_domain(const Frequency &x) const { require_domain(domain(), x.domain()); }

void DifferenceSumQuery::differences(const Frequency &x, std::vector<double> &out) const {
    check_domain(x);
    out.resize(K_);
    switch (kernel_.family) {
    case KernelFamily::Cesaro: {
        Complex prev = cesaro_multiplier(counts_[0], x.angle());
        for (std::size_t k = 0; k < K_; ++k) {
            if (counts_[k + 1] == counts_[k]) {
                out[k] = 0.0;
                continue;
            }
            const Complex cur = cesaro_multiplier(counts_[k + 1], x.angle());
            out[k] = std::abs(cur - prev);
            prev = cur;
        }
        break;
    }
    case KernelFamily::MeasurePower: {
        const MeasurePowers powers(*kernel_.measure, x.angle());
        for (std::size_t k = 0; k < K_; ++k)
            out[k] = powers.power_gap(counts_[k + 1], counts_[k]);
        break;
    }
    case KernelFamily::SincZ:
    case KernelFamily::SincR:
    case KernelFamily::Smoothed: {
        const bool squared = kernel_.family == KernelFamily::Smoothed;
        auto eval = [&](double eps) {
            const double s = sinc(eps * x.value());
            return squared ? s * s : s;
        };
        double prev = eval(scales_[0]);
        for (std::size_t k = 0; k < K_; ++k) {
            const double cur = eval(scales_[k + 1]);
            out[k] = std::abs(cur - prev);
            prev = cur;
        }
        break;
    }
    }
}

double DifferenceSumQuery::term(std::size_t k, const Frequency &x) const {
    if (k < 1 || k > K_)
        throw BadParameter("difference index outside 1..K");
    std::vector<double> d;
    truncated(k).differences(x, d);
    return d[k - 1];
}

double DifferenceSumQuery::sum(const Frequency &x) const {
    thread_local std::vector<double> d;
    differences(x, d);
    CompensatedSum total;
    for (std::size_t k = 0; k < K_; ++k)
        total.add(weights_[k] * (p_ == 1.0 ? d[k] : std::pow(d[k], p_)));
    return total.value();
}

std::vector<double> DifferenceSumQuery::partial_sums(const Frequency &x) const {
    std::vector<double> d;
    differences(x, d);
    std::vector<double> out(K_);
    CompensatedSum total;
    for (std::size_t k = 0; k < K_; ++k) {
        total.add(weights_[k] * (p_ == 1.0 ? d[k] : std::pow(d[k], p_)));
        out[k] = total.value();
    }
    return out;
}

double difference_term(const DifferenceSumQuery &q, std::size_t k, const Frequency &x) { return q.term(k, x); }

double difference_sum(const DifferenceSumQuery &q, const Frequency &x) { return q.sum(x); }

std::vector<Frequency> sample_frequencies(const DifferenceSumQuery &q, const Sampling &sampling) {
    std::vector<Frequency> out;
    std::visit(
        Overloaded{
            [&](const TorusSampling &s) {
                require_domain(q.domain(), FrequencyDomain::Torus);
                for (std::size_t i = 1; i <= s.uniform; ++i)
                    out.push_back(Frequency::torus(
                        Angle::pi_fraction(static_cast<std::int64_t>(i), static_cast<std::int64_t>(s.uniform))));
                const double top = q.sequence().term(q.K() + 1);
                const double span = std::log2(top) + 2.0;
                for (std::size_t j = 0; j < s.log_uniform; ++j) {
                    const double u = s.log_uniform == 1 ? 0.0 : span * static_cast<double>(j) / static_cast<double>(s.log_uniform - 1);
                    out.push_back(Frequency::torus(Angle::radians(kPi * std::exp2(-u))));
                }
            },
            [&](const IntegerSampling &s) {
                require_domain(q.domain(), FrequencyDomain::Integer);
                for (std::int64_t l = 1; l <= s.dense_max; ++l)
                    out.push_back(Frequency::integer(l));
                if (s.log_count > 0 && s.log_max > 0) {
                    const double lo = std::log(static_cast<double>(std::max<std::int64_t>(1, s.dense_max)));
                    const double hi = std::log(static_cast<double>(s.log_max));
                    for (std::size_t j = 0; j < s.log_count; ++j) {
                        const double f = s.log_count == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(s.log_count - 1);
                        out.push_back(Frequency::integer(std::llround(std::exp(lo + f * (hi - lo)))));
                    }
                }
            },
            [&](const RealSampling &s) {
                require_domain(q.domain(), FrequencyDomain::Real);
                if (!(s.t_max > 0.0))
                    throw BadParameter("real sampling needs t_max > 0");
                for (std::size_t i = 1; i <= s.uniform; ++i)
                    out.push_back(Frequency::real(s.t_max * static_cast<double>(i) / static_cast<double>(s.uniform)));
                if (s.log_uniform > 0) {
                    if (!(s.t_min > 0.0 && s.t_min < s.t_max))
                        throw BadParameter("real sampling needs 0 < t_min < t_max");
                    const double lo = std::log(s.t_min), hi = std::log(s.t_max);
                    for (std::size_t j = 0; j < s.log_uniform; ++j) {
                        const double f = s.log_uniform == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(s.log_uniform - 1);
                        out.push_back(Frequency::real(std::exp(lo + f * (hi - lo))));
                    }
                }
            },
            [&](const PointSampling &s) {
                require_domain(q.domain(), s.at.domain());
                out.push_back(s.at);
            },
        },
        sampling);
    std::stable_sort(out.begin(), out.end(),
                     [](const Frequency &a, const Frequency &b) { return a.value() < b.value(); });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Frequency &a, const Frequency &b) { return a.value() == b.value(); }),
              out.end());
    return out;
}

SupremumEstimate estimate_supremum(const DifferenceSumQuery &q, const Sampling &sampling, const ScanOptions &options) {
    std::vector<Frequency> samples = sample_frequencies(q, sampling);
    if (samples.empty() || options.max_evaluations == 0)
        throw BadParameter("sampling budget must be at least 1");
    SupremumEstimate est;
    est.domain = q.domain();
    est.K = q.K();
    if (samples.size() > options.max_evaluations) {
        std::vector<Frequency> kept;
        const std::size_t n = samples.size(), m = options.max_evaluations;
        for (std::size_t i = 0; i < m; ++i)
            kept.push_back(samples[i * n / m]);
        samples = std::move(kept);
        est.budget_exhausted = true;
    }
    std::vector<double> values(samples.size());
    parallel_for(samples.size(), options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            values[i] = q.sum(samples[i]);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = i;
    est.value = values[best];
    est.argmax = samples[best];
    est.samples_used = samples.size();

    const bool point = std::holds_alternative<PointSampling>(sampling);
    if (options.refine && !point) {
        const double before = est.value;
        const double lo = best > 0 ? samples[best - 1].value() : 0.0;
        switch (q.domain()) {
        case FrequencyDomain::Torus: {
            const double hi = best + 1 < samples.size() ? samples[best + 1].value() : kPi;
            auto [x, v] = golden_ascent(lo, hi, [&](double t) { return q.sum(Frequency::torus(Angle::radians(t))); });
            if (v > est.value) {
                est.value = v;
                est.argmax = Frequency::torus(Angle::radians(x));
            }
            break;
        }
        case FrequencyDomain::Real: {
            const double hi = best + 1 < samples.size() ? samples[best + 1].value() : samples[best].value();
            if (hi > lo) {
                auto [x, v] = golden_ascent(lo, hi, [&](double t) { return q.sum(Frequency::real(t)); });
                if (v > est.value) {
                    est.value = v;
                    est.argmax = Frequency::real(x);
                }
            }
            break;
        }
        case FrequencyDomain::Integer: {
            const auto ilo = std::max<std::int64_t>(1, static_cast<std::int64_t>(lo));
            const auto ihi = static_cast<std::int64_t>(best + 1 < samples.size() ? samples[best + 1].value() : samples[best].value());
            if (ihi - ilo > 2) {
                auto [x, v] = integer_ascent(ilo, ihi, [&](std::int64_t l) { return q.sum(Frequency::integer(l)); });
                if (v > est.value) {
                    est.value = v;
                    est.argmax = Frequency::integer(x);
                }
            }
            break;
        }
        }
        est.refinement_gain = est.value - before;
    }
    return est;
}

std::vector<SupremumEstimate> divergence_profile(const DifferenceSumQuery &tmpl, const std::vector<Probe> &probes,
                                                 const ScanOptions &options) {
    if (probes.empty())
        throw BadParameter("divergence profile needs at least one probe");
    std::vector<SupremumEstimate> out;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (i > 0 && probes[i].K < probes[i - 1].K)
            throw BadParameter("probes must be nondecreasing in K");
        out.push_back(estimate_supremum(tmpl.truncated(probes[i].K), probes[i].sampling, options));
    }
    return out;
}

double geometric_tail_closed_form(const FiniteMeasureZ &mu, const Angle &theta) {
    const MeasurePowers mp(mu, theta);
    const double r = mp.modulus();
    if (r >= 1.0 - 1e-14)
        throw SpectrumAtOne("|mu^| = " + std::to_string(r));
    const double one_minus_r = mp.modulus_sq_deficit() / (1.0 + r);
    return std::abs(mp.one_minus()) * r / one_minus_r;
}

SpectralRatios spectral_region_ratios(const FiniteMeasureZ &mu, const Angle &theta) {
    const MeasurePowers mp(mu, theta);
    const double r = mp.modulus();
    if (r >= 1.0 - 1e-14)
        throw SpectrumAtOne("|mu^| = " + std::to_string(r));
    const double gap = std::abs(mp.one_minus());
    const double deficit = mp.modulus_sq_deficit();
    return {gap * (1.0 + r) / deficit, gap * gap / deficit};
}

SpectralRatioScan scan_spectral_ratios(const FiniteMeasureZ &mu, const std::vector<Angle> &angles) {
    SpectralRatioScan scan;
    for (const Angle &theta : angles) {
        if (std::abs(theta.value()) < 1e-9)
            continue;
        SpectralRatios r;
        try {
            r = spectral_region_ratios(mu, theta);
        } catch (const SpectrumAtOne &) {
            continue;
        }
        ++scan.points;
        if (r.stolz > scan.stolz_sup) {
            scan.stolz_sup = r.stolz;
            scan.stolz_argmax = theta;
        }
        if (r.horocycle > scan.horocycle_sup) {
            scan.horocycle_sup = r.horocycle;
            scan.horocycle_argmax = theta;
        }
    }
    return scan;
}

std::vector<Angle> torus_grid(std::size_t uniform, std::size_t dyadic) {
    std::vector<Angle> out;
    for (std::size_t i = 1; i <= uniform; ++i)
        out.push_back(Angle::pi_fraction(static_cast<std::int64_t>(i), static_cast<std::int64_t>(uniform)));
    for (std::size_t j = 1; j <= std::min<std::size_t>(dyadic, 62); ++j)
        out.push_back(Angle::pi_fraction(1, std::int64_t{1} << j));
    return out;
}

double growth_window_point(const IndexSequence &seq, std::size_t k) {
    const double a = seq.term(k), b = seq.term(k + 1);
    if (!(b > a))
        throw WindowViolation("terms must strictly increase");
    return 0.5 * (kPi / b + kPi / (b - a));
}

double growth_window_probe(const FiniteMeasureZ &mu, const IndexSequence &seq, double p, std::size_t k) {
    if (!seq.integer_kind())
        throw DomainMismatch("growth window needs an integer sequence");
    if (k < 1 || k + 1 > seq.count())
        throw BadParameter("probe index needs terms k and k+1");
    for (std::size_t j = 1; j <= k; ++j) {
        const double lo = p * std::log(seq.term(j));
        const double up = std::log(seq.term(j + 1));
        if (up < lo - 1e-12 || up > std::log(2.0) + lo + 1e-12)
            throw WindowViolation("n_" + std::to_string(j + 1) + " outside [n_j^p, 2 n_j^p] at j = " + std::to_string(j));
    }
    const Angle t = Angle::radians(growth_window_point(seq, k));
    return MeasurePowers(mu, t).power_gap(seq.index(k + 1), seq.index(k));
}

SamplingComparison sampling_comparison(double a, double b, std::size_t real_samples, std::int64_t integer_max) {
    if (!(a > 0.0 && a < b && b < 1.0))
        throw BadParameter("sampling comparison needs 0 < a < b < 1");
    const IndexSequence pair = build_sequence(SequenceSpec::explicit_reals({b, a}), 2);
    const DifferenceSumQuery real_q(KernelSpec::sinc_r(), pair, 1);
    const DifferenceSumQuery int_q(KernelSpec::sinc_z(), pair, 1);
    const auto r = estimate_supremum(real_q, RealSampling{1000.0 / a, real_samples, real_samples / 10, 1e-3 / b});
    const auto z = estimate_supremum(int_q, IntegerSampling{integer_max, 0, 0});
    return {r.value, z.value, r.argmax.value(), static_cast<std::int64_t>(z.argmax.value())};
}

PairwiseBound pairwise_lower_bound(std::uint64_t n, std::uint64_t m, std::size_t budget) {
    if (n < 1 || n >= m)
        throw BadParameter("pairwise bound needs 1 <= n < m");
    const DifferenceSumQuery q(KernelSpec::cesaro(), build_sequence(SequenceSpec::explicit_integers({n, m}), 2), 1);
    const auto est = estimate_supremum(q, TorusSampling{budget, budget});
    PairwiseBound out;
    out.sup_estimate = est.value;
    out.lower_bound = (2.0 / kPi) * (1.0 - static_cast<double>(n) / static_cast<double>(m));
    out.argmax = est.argmax.angle();
    out.holds = out.sup_estimate >= out.lower_bound - 1e-9;
    return out;
}

} // namespace uclab
