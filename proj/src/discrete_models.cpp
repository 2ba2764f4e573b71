#include "uclab/discrete_models.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace uclab {

namespace {
constexpr std::int64_t kMaxGridWidth = std::int64_t{1} << 27;
}

GridFunctionZ::GridFunctionZ(std::int64_t origin, std::vector<double> values)
    : origin_(origin), values_(std::move(values)) {
    trim();
}

GridFunctionZ GridFunctionZ::delta(std::int64_t at, double value) { return {at, {value}}; }

GridFunctionZ GridFunctionZ::from_entries(const std::map<std::int64_t, double> &entries) {
    if (entries.empty())
        return {};
    const std::int64_t lo = entries.begin()->first, hi = entries.rbegin()->first;
    if (hi - lo >= kMaxGridWidth)
        throw BudgetExceeded("grid function support too wide");
    std::vector<double> values(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (auto [m, v] : entries)
        values[static_cast<std::size_t>(m - lo)] = v;
    return {lo, std::move(values)};
}

void GridFunctionZ::trim() {
    auto nonzero = [](double v) { return v != 0.0; };
    const auto head = std::find_if(values_.begin(), values_.end(), nonzero);
    if (head == values_.end()) {
        values_.clear();
        origin_ = 0;
        return;
    }
    const auto tail = std::find_if(values_.rbegin(), values_.rend(), nonzero).base();
    origin_ += head - values_.begin();
    values_ = std::vector<double>(head, tail);
}

double GridFunctionZ::at(std::int64_t m) const {
    if (empty() || m < first() || m > last())
        return 0.0;
    return values_[static_cast<std::size_t>(m - origin_)];
}

std::vector<std::pair<std::int64_t, double>> GridFunctionZ::entries() const {
    std::vector<std::pair<std::int64_t, double>> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] != 0.0)
            out.emplace_back(origin_ + static_cast<std::int64_t>(i), values_[i]);
    return out;
}

GridFunctionZ GridFunctionZ::operator+(const GridFunctionZ &other) const {
    if (empty())
        return other;
    if (other.empty())
        return *this;
    const std::int64_t lo = std::min(first(), other.first()), hi = std::max(last(), other.last());
    std::vector<double> values(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t m = lo; m <= hi; ++m)
        values[static_cast<std::size_t>(m - lo)] = at(m) + other.at(m);
    return {lo, std::move(values)};
}

GridFunctionZ GridFunctionZ::operator-(const GridFunctionZ &other) const { return *this + other.scaled(-1.0); }

GridFunctionZ GridFunctionZ::scaled(double factor) const {
    std::vector<double> values = values_;
    for (double &v : values)
        v *= factor;
    return {origin_, std::move(values)};
}

GridFunctionZ cesaro_average_Z(const GridFunctionZ &phi, std::uint64_t n) {
    if (n == 0)
        throw BadParameter("average length must be positive");
    if (phi.empty())
        return {};
    const auto width = static_cast<std::int64_t>(phi.values().size());
    if (n > static_cast<std::uint64_t>(kMaxGridWidth) || width + static_cast<std::int64_t>(n) > kMaxGridWidth)
        throw BudgetExceeded("averaged grid function too wide");
    const auto len = static_cast<std::int64_t>(n);
    std::vector<long double> prefix(static_cast<std::size_t>(width) + 1, 0.0L);
    for (std::int64_t i = 0; i < width; ++i)
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + phi.values()[static_cast<std::size_t>(i)];
    const std::int64_t a = phi.first();
    const std::int64_t lo = a - len, hi = phi.last() - 1;
    std::vector<double> values(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t m = lo; m <= hi; ++m) {
        const std::int64_t from = std::clamp<std::int64_t>(m + 1 - a, 0, width);
        const std::int64_t to = std::clamp<std::int64_t>(m + len + 1 - a, 0, width);
        values[static_cast<std::size_t>(m - lo)] =
            static_cast<double>((prefix[static_cast<std::size_t>(to)] - prefix[static_cast<std::size_t>(from)]) / static_cast<long double>(len));
    }
    return {lo, std::move(values)};
}

GridFunctionZ difference_on_Z(const GridFunctionZ &phi, const IndexSequence &seq, std::size_t k) {
    if (k < 1 || k + 1 > seq.count())
        throw BadParameter("difference needs terms k and k+1");
    const auto a = seq.index(k), b = seq.index(k + 1);
    if (a == b)
        return {};
    return cesaro_average_Z(phi, b) - cesaro_average_Z(phi, a);
}

double lp_norm_Z(const GridFunctionZ &phi, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : phi.values())
            m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0))
        throw BadParameter("p must be at least 1");
    CompensatedSum sum;
    for (double v : phi.values())
        sum.add(p == 2.0 ? v * v : std::pow(std::abs(v), p));
    return std::pow(sum.value(), 1.0 / p);
}

double delta0_sup_sum(const IndexSequence &seq, std::size_t J) {
    if (!seq.integer_kind())
        throw DomainMismatch("delta_0 sums need an integer sequence");
    if (J + 1 > seq.count())
        throw BadParameter("delta_0 sum needs J+1 terms");
    CompensatedSum sum;
    for (std::size_t j = 1; j <= J; ++j)
        sum.add(seq.ratio_deficit(j));
    return sum.value();
}

Delta0Blocks delta0_block_check(const IndexSequence &seq, std::size_t J) {
    Delta0Blocks out;
    out.formula = delta0_sup_sum(seq, J);
    const GridFunctionZ delta = GridFunctionZ::delta(0);
    const auto top = static_cast<std::int64_t>(seq.index(J + 1));
    std::vector<double> best(static_cast<std::size_t>(top) + 1, 0.0); // indexed by -m
    for (std::size_t k = 1; k <= J; ++k) {
        const GridFunctionZ d = difference_on_Z(delta, seq, k);
        for (auto [m, v] : d.entries()) {
            auto &slot = best.at(static_cast<std::size_t>(-m));
            slot = std::max(slot, std::abs(v));
        }
    }
    const auto first = static_cast<std::int64_t>(seq.index(1));
    CompensatedSum block, full;
    for (std::int64_t neg = 0; neg <= top; ++neg) {
        const double v = best[static_cast<std::size_t>(neg)];
        full.add(v);
        if (neg > first)
            block.add(v);
    }
    out.block_sum = block.value();
    out.full_sum = full.value();
    return out;
}

StepFunctionR::StepFunctionR(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() && values_.empty())
        return;
    if (breakpoints_.size() != values_.size() + 1)
        throw BadParameter("step function needs one more breakpoint than values");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] > breakpoints_[i - 1]))
            throw BadParameter("step breakpoints must strictly increase");
}

StepFunctionR StepFunctionR::indicator(double lo, double hi, double height) { return {{lo, hi}, {height}}; }

double StepFunctionR::at(double x) const {
    if (breakpoints_.empty() || x < breakpoints_.front() || x >= breakpoints_.back())
        return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunctionR::integral() const {
    CompensatedSum sum;
    for (std::size_t i = 0; i < values_.size(); ++i)
        sum.add(values_[i] * (breakpoints_[i + 1] - breakpoints_[i]));
    return sum.value();
}

double StepFunctionR::l2_squared() const {
    CompensatedSum sum;
    for (std::size_t i = 0; i < values_.size(); ++i)
        sum.add(values_[i] * values_[i] * (breakpoints_[i + 1] - breakpoints_[i]));
    return sum.value();
}

StepFunctionR StepFunctionR::operator+(const StepFunctionR &other) const {
    std::vector<double> points = breakpoints_;
    points.insert(points.end(), other.breakpoints_.begin(), other.breakpoints_.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 2)
        return {};
    std::vector<double> values;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        values.push_back(at(points[i]) + other.at(points[i]));
    return {std::move(points), std::move(values)};
}

StepFunctionR StepFunctionR::operator-(const StepFunctionR &other) const { return *this + other.scaled(-1.0); }

StepFunctionR StepFunctionR::scaled(double factor) const {
    std::vector<double> values = values_;
    for (double &v : values)
        v *= factor;
    return {breakpoints_, std::move(values)};
}

StepFunctionR scale_difference(double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw BadParameter("scales must be positive");
    return StepFunctionR::indicator(-a, a, 0.5 / a) - StepFunctionR::indicator(-b, b, 0.5 / b);
}

GkIdentity g_k_l2_identity(double eps_k, double eps_k1) {
    if (!(eps_k1 > 0.0) || eps_k1 > eps_k)
        throw BadParameter("need 0 < eps_{k+1} <= eps_k");
    const StepFunctionR g = scale_difference(eps_k, eps_k1);
    GkIdentity out;
    out.g_l2_squared = g.l2_squared();
    out.numeric = g.scaled(2.0).l2_squared();
    out.closed_form = 2.0 * (eps_k - eps_k1) / (eps_k * eps_k1);
    return out;
}

double lacunary_lp_ratio(const IndexSequence &seq, double p, const GridFunctionZ &phi,
                         const CoefficientFamily &coefficients, std::size_t K) {
    if (!(p >= 1.0) || std::isinf(p))
        throw BadParameter("p must be finite and at least 1");
    if (K < 1 || K + 1 > seq.count() || coefficients.size() < K)
        throw BadParameter("need K+1 terms and K coefficients");
    if (lacunarity_constant(seq, K + 1) < 2.0)
        throw NonLacunary("growth ratio below 2");
    const double base = lp_norm_Z(phi, p);
    if (base == 0.0)
        throw BadParameter("phi must be nonzero");
    const std::int64_t lo = phi.first() - static_cast<std::int64_t>(seq.index(K + 1));
    const std::int64_t hi = phi.last();
    std::vector<std::complex<double>> total(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 1; k <= K; ++k) {
        const auto c = coefficients[k - 1];
        if (c == 0.0)
            continue;
        const GridFunctionZ d = difference_on_Z(phi, seq, k);
        for (std::size_t i = 0; i < d.values().size(); ++i)
            total[static_cast<std::size_t>(d.first() - lo) + i] += c * d.values()[i];
    }
    CompensatedSum sum;
    for (const auto &v : total)
        sum.add(std::pow(std::abs(v), p));
    return std::pow(sum.value(), 1.0 / p) / base;
}

} // namespace uclab
