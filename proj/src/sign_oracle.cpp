#include "uclab/sign_oracle.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"
#include "uclab/parallel.hpp"
#include "uclab/rng.hpp"

#include <algorithm>
#include <cmath>

namespace uclab {

CoefficientFamily::CoefficientFamily(std::vector<std::complex<double>> entries) : entries_(std::move(entries)) {
    for (const auto &c : entries_)
        if (!(std::abs(c) <= 1.0 + 1e-12))
            throw BadParameter("coefficients must satisfy |c_k| <= 1");
}

CoefficientFamily CoefficientFamily::signs(const std::vector<int> &signs) {
    std::vector<std::complex<double>> out;
    for (int s : signs)
        out.emplace_back(s >= 0 ? 1.0 : -1.0);
    return CoefficientFamily(std::move(out));
}

CoefficientFamily CoefficientFamily::constant(std::size_t K, std::complex<double> value) {
    return CoefficientFamily(std::vector<std::complex<double>>(K, value));
}

FourierProfile::FourierProfile(std::map<std::int64_t, std::complex<double>> entries) : entries_(std::move(entries)) {}

void FourierProfile::set(std::int64_t z, std::complex<double> amplitude) { entries_[z] = amplitude; }

double FourierProfile::l2_norm() const {
    CompensatedSum sum;
    for (const auto &[z, a] : entries_)
        sum.add(std::norm(a));
    return std::sqrt(sum.value());
}

void DifferenceTable::set(std::size_t k, std::int64_t z, std::complex<double> value) {
    if (k < 1 || k > K_)
        throw BadParameter("difference index outside 1..K");
    entries_[{k, z}] = value;
}

std::complex<double> DifferenceTable::at(std::size_t k, std::int64_t z) const {
    const auto it = entries_.find({k, z});
    if (it == entries_.end())
        throw MissingEntry("no difference for k = " + std::to_string(k) + " at frequency " + std::to_string(z));
    return it->second;
}

std::complex<double> kernel_value(const KernelSpec &kernel, const IndexSequence &seq, std::size_t k,
                                  const Frequency &x) {
    if (x.domain() != kernel.domain())
        throw DomainMismatch("kernel expects " + to_string(kernel.domain()));
    switch (kernel.family) {
    case KernelFamily::Cesaro:
        return cesaro_multiplier(seq.index(k), x.angle());
    case KernelFamily::MeasurePower:
        return MeasurePowers(*kernel.measure, x.angle()).power(seq.index(k));
    case KernelFamily::SincZ:
    case KernelFamily::SincR:
        return sinc(seq.scale(k) * x.value());
    case KernelFamily::Smoothed:
        return smoothed_multiplier(seq.scale(k), x.value());
    }
    return 0.0;
}

DifferenceTable torus_difference_table(const KernelSpec &kernel, const IndexSequence &seq, std::size_t K,
                                       const Angle &theta, const std::vector<std::int64_t> &frequencies) {
    if (kernel.domain() != FrequencyDomain::Torus)
        throw DomainMismatch("torus table needs a torus kernel");
    if (K + 1 > seq.count())
        throw BadParameter("table needs K+1 terms");
    DifferenceTable table(K);
    for (std::int64_t z : frequencies) {
        const Angle at = theta.has_exact() ? Angle::pi_fraction(theta.numerator() * z, theta.denominator())
                                           : Angle::radians(theta.multiple(z));
        const Frequency x = Frequency::torus(at);
        for (std::size_t k = 1; k <= K; ++k)
            table.set(k, z, kernel_value(kernel, seq, k + 1, x) - kernel_value(kernel, seq, k, x));
    }
    return table;
}

double aligned_coefficient_norm(const DifferenceTable &diffs, const FourierProfile &profile) {
    CompensatedSum total;
    for (const auto &[z, amplitude] : profile.entries()) {
        CompensatedSum inner;
        for (std::size_t k = 1; k <= diffs.K(); ++k)
            inner.add(std::abs(diffs.at(k, z)));
        total.add(inner.value() * inner.value() * std::norm(amplitude));
    }
    return std::sqrt(total.value());
}

double coefficient_norm(const DifferenceTable &diffs, const FourierProfile &profile, const CoefficientFamily &c) {
    if (c.size() < diffs.K())
        throw BadParameter("need one coefficient per difference");
    CompensatedSum total;
    for (const auto &[z, amplitude] : profile.entries()) {
        std::complex<double> v = 0.0;
        for (std::size_t k = 1; k <= diffs.K(); ++k)
            v += c[k - 1] * diffs.at(k, z);
        total.add(std::norm(v * amplitude));
    }
    return std::sqrt(total.value());
}

double brute_force_sign_norm(const DifferenceTable &diffs, const FourierProfile &profile, unsigned m,
                             unsigned threads) {
    const std::size_t K = diffs.K();
    if (m != 2 && m != 8)
        throw BadParameter("phase grid must have 2 or 8 points");
    if (std::pow(static_cast<double>(m), static_cast<double>(K)) > 0x1p24)
        throw BudgetExceeded("m^K exceeds 2^24");
    if (K > 8)
        throw BadParameter("brute force limited to K <= 8");
    if (profile.empty() || K == 0)
        return 0.0;

    // Weighted columns w[k][z] = Delta_k(z) f(z); the first coefficient is fixed to 1 because
    // a common unimodular factor leaves the norm unchanged.
    const std::size_t F = profile.entries().size();
    std::vector<std::vector<std::complex<double>>> w(K, std::vector<std::complex<double>>(F));
    std::size_t col = 0;
    for (const auto &[z, amplitude] : profile.entries()) {
        for (std::size_t k = 0; k < K; ++k)
            w[k][col] = diffs.at(k + 1, z) * amplitude;
        ++col;
    }
    std::vector<std::complex<double>> roots(m);
    for (unsigned j = 0; j < m; ++j)
        roots[j] = std::polar(1.0, kTwoPi * j / m);
    if (m == 2)
        roots[1] = -1.0;
    else
        for (auto &r : roots) {
            // Exact values on the axes and diagonals keep the enumeration symmetric.
            r = {std::abs(r.real()) < 1e-15 ? 0.0 : r.real(), std::abs(r.imag()) < 1e-15 ? 0.0 : r.imag()};
        }

    // Split the free digits 2..K: the leading `split` digits choose a work item.
    const std::size_t free_digits = K - 1;
    const std::size_t split = std::min<std::size_t>(free_digits, m == 2 ? 4 : 2);
    std::size_t items = 1;
    for (std::size_t i = 0; i < split; ++i)
        items *= m;
    std::vector<double> best(items, 0.0);

    parallel_for(items, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::vector<std::complex<double>>> partial(K + 1, std::vector<std::complex<double>>(F));
        for (std::size_t item = begin; item < end; ++item) {
            partial[1] = w[0];
            std::size_t code = item;
            for (std::size_t d = 1; d <= split; ++d) {
                const auto &r = roots[code % m];
                code /= m;
                for (std::size_t f = 0; f < F; ++f)
                    partial[d + 1][f] = partial[d][f] + r * w[d][f];
            }
            double local = 0.0;
            // Depth-first over the remaining digits.
            auto descend = [&](auto &&self, std::size_t depth) -> void {
                if (depth == K) {
                    double s = 0.0;
                    for (std::size_t f = 0; f < F; ++f)
                        s += std::norm(partial[depth][f]);
                    local = std::max(local, s);
                    return;
                }
                for (unsigned j = 0; j < m; ++j) {
                    for (std::size_t f = 0; f < F; ++f)
                        partial[depth + 1][f] = partial[depth][f] + roots[j] * w[depth][f];
                    self(self, depth + 1);
                }
            };
            descend(descend, split + 1);
            best[item] = local;
        }
    });
    return std::sqrt(*std::max_element(best.begin(), best.end()));
}

CoefficientFamily phase_conjugate_coefficients(const DifferenceTable &diffs, std::int64_t z) {
    std::vector<std::complex<double>> c;
    for (std::size_t k = 1; k <= diffs.K(); ++k) {
        const auto d = diffs.at(k, z);
        c.push_back(std::abs(d) == 0.0 ? std::complex<double>(1.0) : std::conj(d) / std::abs(d));
    }
    return CoefficientFamily(std::move(c));
}

std::vector<GridFunctionZ> difference_family(const GridFunctionZ &phi, const IndexSequence &seq, std::size_t K) {
    std::vector<GridFunctionZ> out;
    for (std::size_t k = 1; k <= K; ++k)
        out.push_back(difference_on_Z(phi, seq, k));
    return out;
}

RademacherComparison rademacher_square_function(const std::vector<GridFunctionZ> &diffs, std::size_t trials,
                                                std::uint64_t seed, unsigned threads) {
    if (trials == 0)
        throw BadParameter("need at least one trial");
    RademacherComparison out;
    std::int64_t lo = 0, hi = -1;
    for (const auto &d : diffs) {
        if (d.empty())
            continue;
        if (hi < lo) {
            lo = d.first();
            hi = d.last();
        } else {
            lo = std::min(lo, d.first());
            hi = std::max(hi, d.last());
        }
    }
    if (hi < lo)
        return out;
    const auto width = static_cast<std::size_t>(hi - lo + 1);
    const std::size_t K = diffs.size();
    std::vector<double> dense(K * width, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        for (auto [m, v] : diffs[k].entries())
            dense[k * width + static_cast<std::size_t>(m - lo)] = v;

    CompensatedSum square;
    for (std::size_t i = 0; i < width; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            s += dense[k * width + i] * dense[k * width + i];
        square.add(std::sqrt(s));
    }
    out.square_fn_l1 = square.value();

    std::vector<double> norms(trials);
    parallel_for(trials, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> acc(width);
        std::vector<double> signs(K);
        for (std::size_t t = begin; t < end; ++t) {
            CounterRng rng(seed, t);
            for (auto &s : signs)
                s = rng.sign();
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t i = 0; i < width; ++i)
                    acc[i] += signs[k] * dense[k * width + i];
            CompensatedSum l1;
            for (double v : acc)
                l1.add(std::abs(v));
            norms[t] = l1.value();
        }
    });
    CompensatedSum mean;
    for (double v : norms)
        mean.add(v);
    out.mean_l1 = mean.value() / static_cast<double>(trials);
    return out;
}

} // namespace uclab
