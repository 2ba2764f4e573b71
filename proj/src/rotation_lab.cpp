#include "uclab/rotation_lab.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uclab {

namespace {

long double frac(long double x) {
    long double r = x - std::floor(x);
    return r >= 1.0L ? 0.0L : r;
}

constexpr std::size_t kPlacementCandidates = 10000;
constexpr double kSampledBudget = 0x1p32;

} // namespace

RotationNumber::RotationNumber(double rho) : rho_(rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw BadParameter("rotation number must lie in (0, 1)");
    if (rho < 0x1p-60)
        throw BadParameter("rotation number too small");
    int e = 0;
    const double mant = std::frexp(rho, &e);
    mantissa_ = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exponent_ = 53 - e;
}

RotationNumber RotationNumber::golden() { return RotationNumber((std::sqrt(5.0) - 1.0) / 2.0); }

long double RotationNumber::shift(std::int64_t j) const {
    const __int128 modulus = static_cast<__int128>(1) << exponent_;
    __int128 r = (static_cast<__int128>(j) * mantissa_) % modulus;
    if (r < 0)
        r += modulus;
    return std::ldexp(static_cast<long double>(r), -exponent_);
}

PiecewiseLinearCircleFn::PiecewiseLinearCircleFn(std::vector<long double> breakpoints, std::vector<double> values) {
    if (breakpoints.size() != values.size())
        throw BadParameter("one value per breakpoint required");
    std::vector<std::size_t> order(breakpoints.size());
    for (auto &x : breakpoints) {
        if (!std::isfinite(x))
            throw BadParameter("breakpoints must be finite");
        x = frac(x);
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return breakpoints[a] < breakpoints[b]; });
    for (auto i : order) {
        if (!breakpoints_.empty() && breakpoints[i] - breakpoints_.back() < kBreakpointMergeTolerance)
            continue;
        breakpoints_.push_back(breakpoints[i]);
        values_.push_back(values[i]);
    }
    if (breakpoints_.size() > 1 && breakpoints_.front() + 1.0L - breakpoints_.back() < kBreakpointMergeTolerance) {
        breakpoints_.pop_back();
        values_.pop_back();
    }
}

PiecewiseLinearCircleFn PiecewiseLinearCircleFn::constant(double value) {
    if (value == 0.0)
        return {};
    return {{0.0L}, {value}};
}

PiecewiseLinearCircleFn PiecewiseLinearCircleFn::tent(long double centre, long double width, double height) {
    if (!(width > 0.0L && width < 1.0L))
        throw BadParameter("tent width must lie in (0, 1)");
    return {{centre - width / 2, centre, centre + width / 2}, {0.0, height, 0.0}};
}

bool PiecewiseLinearCircleFn::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::size_t PiecewiseLinearCircleFn::piece_index(long double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.begin())
        return breakpoints_.size() - 1;
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

long double PiecewiseLinearCircleFn::piece_length(std::size_t i) const {
    if (i + 1 < breakpoints_.size())
        return breakpoints_[i + 1] - breakpoints_[i];
    return breakpoints_.front() + 1.0L - breakpoints_.back();
}

double PiecewiseLinearCircleFn::piece_slope(std::size_t i) const {
    if (breakpoints_.size() < 2)
        return 0.0;
    const double next = values_[(i + 1) % values_.size()];
    return static_cast<double>((next - values_[i]) / piece_length(i));
}

double PiecewiseLinearCircleFn::operator()(long double x) const {
    if (breakpoints_.empty())
        return 0.0;
    if (breakpoints_.size() == 1)
        return values_.front();
    x = frac(x);
    const std::size_t i = piece_index(x);
    long double offset = x - breakpoints_[i];
    if (offset < 0.0L)
        offset += 1.0L;
    const double next = values_[(i + 1) % values_.size()];
    return static_cast<double>(values_[i] + (next - values_[i]) * (offset / piece_length(i)));
}

double PiecewiseLinearCircleFn::right_slope(long double x) const {
    if (breakpoints_.size() < 2)
        return 0.0;
    return piece_slope(piece_index(frac(x)));
}

double PiecewiseLinearCircleFn::sup_norm() const {
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

double PiecewiseLinearCircleFn::mean() const {
    if (breakpoints_.empty())
        return 0.0;
    if (breakpoints_.size() == 1)
        return values_.front();
    CompensatedSum sum;
    for (std::size_t i = 0; i < values_.size(); ++i)
        sum.add(static_cast<double>(0.5L * (values_[i] + values_[(i + 1) % values_.size()]) * piece_length(i)));
    return sum.value();
}

PiecewiseLinearCircleFn PiecewiseLinearCircleFn::operator+(const PiecewiseLinearCircleFn &other) const {
    if (breakpoints_.empty())
        return other;
    if (other.breakpoints_.empty())
        return *this;
    std::vector<long double> points;
    points.reserve(breakpoints_.size() + other.breakpoints_.size());
    std::merge(breakpoints_.begin(), breakpoints_.end(), other.breakpoints_.begin(), other.breakpoints_.end(),
               std::back_inserter(points));
    std::vector<long double> merged;
    for (long double x : points)
        if (merged.empty() || x - merged.back() >= kBreakpointMergeTolerance)
            merged.push_back(x);
    std::vector<double> values;
    values.reserve(merged.size());
    for (long double x : merged)
        values.push_back((*this)(x) + other(x));
    return {std::move(merged), std::move(values)};
}

PiecewiseLinearCircleFn PiecewiseLinearCircleFn::operator-(const PiecewiseLinearCircleFn &other) const {
    return *this + other.scaled(-1.0);
}

PiecewiseLinearCircleFn PiecewiseLinearCircleFn::scaled(double factor) const {
    PiecewiseLinearCircleFn out = *this;
    for (double &v : out.values_)
        v *= factor;
    return out;
}

PiecewiseLinearCircleFn PiecewiseLinearCircleFn::abs() const {
    std::vector<long double> points;
    std::vector<double> values;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double a = values_[i], b = values_[(i + 1) % values_.size()];
        points.push_back(breakpoints_[i]);
        values.push_back(std::abs(a));
        if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
            points.push_back(breakpoints_[i] + piece_length(i) * (a / (a - b)));
            values.push_back(0.0);
        }
    }
    return {std::move(points), std::move(values)};
}

PiecewiseLinearCircleFn translate(const PiecewiseLinearCircleFn &f, long double a) {
    std::vector<long double> points = f.breakpoints();
    for (auto &x : points)
        x -= a;
    return {std::move(points), f.values()};
}

PiecewiseLinearCircleFn rotation_average(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                         std::uint64_t n, std::uint64_t v) {
    if (n == 0)
        throw BadParameter("average length must be positive");
    const std::size_t B = f.size();
    if (B < 2)
        return f;
    if (static_cast<double>(n) * static_cast<double>(B) > kBreakpointBudget)
        throw BreakpointBudget("n * breakpoints = " + std::to_string(static_cast<double>(n) * static_cast<double>(B)) +
                               " exceeds 1e7");

    std::vector<long double> shifts(n);
    for (std::uint64_t j = 0; j < n; ++j)
        shifts[j] = rho.shift(static_cast<std::int64_t>(v + j + 1));

    // Slope jump of f at each of its breakpoints.
    const auto &xs = f.breakpoints();
    std::vector<double> jumps(B);
    for (std::size_t i = 0; i < B; ++i)
        jumps[i] = f.right_slope(xs[i]) - f.right_slope(xs[(i + B - 1) % B]);

    struct Event {
        long double at;
        std::uint32_t breakpoint;
    };
    std::vector<Event> events;
    events.reserve(n * B);
    for (long double t : shifts)
        for (std::size_t i = 0; i < B; ++i)
            events.push_back({frac(xs[i] - t), static_cast<std::uint32_t>(i)});
    std::sort(events.begin(), events.end(), [](const Event &a, const Event &b) {
        return a.at < b.at || (a.at == b.at && a.breakpoint < b.breakpoint);
    });

    std::vector<long double> points;
    std::vector<double> cluster_jump;
    for (const auto &e : events) {
        if (points.empty() || e.at - points.back() >= kBreakpointMergeTolerance) {
            points.push_back(e.at);
            cluster_jump.push_back(0.0);
        }
        cluster_jump.back() += jumps[e.breakpoint];
    }

    auto direct_value = [&](long double x) {
        long double s = 0.0L;
        for (long double t : shifts)
            s += f(x + t);
        return s;
    };
    auto direct_slope = [&](long double x) {
        long double s = 0.0L;
        for (long double t : shifts)
            s += f.right_slope(x + t);
        return s;
    };

    const std::size_t M = points.size();
    const std::size_t anchor_every = std::max<std::size_t>(64, n);
    std::vector<double> values(M);
    long double value = 0.0L, slope = 0.0L;
    for (std::size_t m = 0; m < M; ++m) {
        const long double next = m + 1 < M ? points[m + 1] : points.front() + 1.0L;
        if (m % anchor_every == 0) {
            value = direct_value(points[m]);
            slope = direct_slope((points[m] + next) / 2);
        } else {
            value += slope * (points[m] - points[m - 1]);
            slope += cluster_jump[m];
        }
        values[m] = static_cast<double>(value / static_cast<long double>(n));
    }
    return {std::move(points), std::move(values)};
}

PiecewiseLinearCircleFn sampled_rotation_average(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                                 std::uint64_t n, std::uint64_t v, std::size_t points) {
    if (n == 0 || points < 2)
        throw BadParameter("sampled average needs n >= 1 and at least two grid points");
    if (static_cast<double>(n) * static_cast<double>(f.size()) > kSampledBudget)
        throw BreakpointBudget("sampled average exceeds 2^32 breakpoint events");
    std::vector<long double> grid(points);
    for (std::size_t m = 0; m < points; ++m)
        grid[m] = static_cast<long double>(m) / static_cast<long double>(points);
    if (f.size() < 2) {
        std::vector<double> flat(points, f(0.0L));
        return {std::move(grid), std::move(flat)};
    }

    std::vector<long double> shifts(n);
    for (std::uint64_t j = 0; j < n; ++j)
        shifts[j] = rho.shift(static_cast<std::int64_t>(v + j + 1));
    const auto &xs = f.breakpoints();
    const std::size_t B = xs.size();

    // Each slope jump at p changes the sum at later grid points x_m by jump * (x_m - p);
    // deposit it at the first grid point at or after p.
    std::vector<long double> slope_jump(points, 0.0L), value_shift(points, 0.0L);
    const auto G = static_cast<long double>(points);
    for (std::size_t i = 0; i < B; ++i) {
        const long double jump = f.right_slope(xs[i]) - f.right_slope(xs[(i + B - 1) % B]);
        for (long double t : shifts) {
            const long double p = frac(xs[i] - t);
            const auto m = static_cast<std::size_t>(std::ceil(p * G));
            if (m == 0 || m >= points)
                continue;
            slope_jump[m] += jump;
            value_shift[m] += jump * (grid[m] - p);
        }
    }

    auto direct_value = [&](long double x) {
        long double s = 0.0L;
        for (long double t : shifts)
            s += f(x + t);
        return s;
    };
    auto direct_slope = [&](long double x) {
        long double s = 0.0L;
        for (long double t : shifts)
            s += f.right_slope(x + t);
        return s;
    };

    constexpr std::size_t kAnchorEvery = 4096;
    std::vector<double> values(points);
    long double value = 0.0L, slope = 0.0L;
    for (std::size_t m = 0; m < points; ++m) {
        if (m % kAnchorEvery == 0) {
            value = direct_value(grid[m]);
            slope = direct_slope(grid[m]);
        } else {
            value += slope / G + value_shift[m];
            slope += slope_jump[m];
        }
        values[m] = static_cast<double>(value / static_cast<long double>(n));
    }
    return {std::move(grid), std::move(values)};
}

RotationAverage rotation_average_with_fallback(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                               std::uint64_t n, std::uint64_t v) {
    if (static_cast<double>(n) * static_cast<double>(f.size()) <= kBreakpointBudget)
        return {rotation_average(f, rho, n, v), false};
    return {sampled_rotation_average(f, rho, n, v, kSampledGridPoints), true};
}

double min_orbit_gap(const RotationNumber &rho, std::size_t L) {
    if (L < 1)
        throw BadParameter("L must be at least 1");
    const auto reach = static_cast<std::int64_t>(2 * L);
    std::vector<long double> points;
    for (std::int64_t l = -reach; l <= reach; ++l)
        points.push_back(rho.shift(l));
    std::sort(points.begin(), points.end());
    long double gap = points.front() + 1.0L - points.back();
    for (std::size_t i = 1; i < points.size(); ++i)
        gap = std::min(gap, points[i] - points[i - 1]);
    return static_cast<double>(gap);
}

std::vector<long double> tent_arc_centres(const TentPairConfig &config, const RotationNumber &rho) {
    const auto reach = static_cast<std::int64_t>(2 * config.L);
    std::vector<long double> centres;
    for (long double c : {config.centre_first, config.centre_second})
        for (std::int64_t l = -reach; l <= reach; ++l)
            centres.push_back(frac(c + rho.shift(l)));
    return centres;
}

namespace {

bool arcs_disjoint(std::vector<long double> centres, long double arc) {
    std::sort(centres.begin(), centres.end());
    const long double clearance = arc + kBreakpointMergeTolerance;
    if (centres.front() + 1.0L - centres.back() <= clearance)
        return false;
    for (std::size_t i = 1; i < centres.size(); ++i)
        if (centres[i] - centres[i - 1] <= clearance)
            return false;
    return true;
}

} // namespace

TentPair build_tent_pair(const RotationNumber &rho, std::size_t L) {
    if (L < 2)
        throw BadParameter("tent pair needs L >= 2");
    TentPairConfig cfg;
    cfg.L = L;
    cfg.arc_length = static_cast<long double>(min_orbit_gap(rho, L)) / 8;
    cfg.centre_first = 0.0L;
    for (std::size_t l = 1; l <= 2 * L; ++l)
        cfg.ladder.push_back(static_cast<double>(l <= L ? l : 2 * L + 1 - l) / static_cast<double>(L));

    bool placed = false;
    for (std::size_t i = 0; i < kPlacementCandidates && !placed; ++i) {
        cfg.centre_second = static_cast<long double>(i + 1) / static_cast<long double>(kPlacementCandidates + 1);
        placed = arcs_disjoint(tent_arc_centres(cfg, rho), cfg.arc_length);
    }
    if (!placed)
        throw PlacementFailure("no disjoint placement among " + std::to_string(kPlacementCandidates) + " candidates");

    std::vector<long double> points;
    std::vector<double> values;
    const long double half = cfg.arc_length / 2;
    for (std::size_t l = 1; l <= 2 * L; ++l) {
        const double s = cfg.ladder[l - 1];
        const long double t = rho.shift(static_cast<std::int64_t>(l));
        for (auto [c, sign] : {std::pair{cfg.centre_first, 1.0}, std::pair{cfg.centre_second, -1.0}}) {
            points.insert(points.end(), {c + t - half, c + t, c + t + half});
            values.insert(values.end(), {0.0, sign * s, 0.0});
        }
    }
    return {PiecewiseLinearCircleFn(std::move(points), std::move(values)), std::move(cfg)};
}

double invariance_deficit(const PiecewiseLinearCircleFn &f, const RotationNumber &rho, std::int64_t j) {
    if (j < 0)
        throw BadParameter("shift count must be nonnegative");
    if (j == 0)
        return 0.0;
    return (translate(f, rho.shift(j)) - f).sup_norm();
}

PiecewiseLinearCircleFn coboundary(const PiecewiseLinearCircleFn &F, const RotationNumber &rho) {
    return F - translate(F, rho.shift(1));
}

std::vector<SeriesRow> series_diagnostics(const PiecewiseLinearCircleFn &f, const RotationNumber &rho,
                                          const IndexSequence &seq, std::size_t K) {
    if (!seq.integer_kind())
        throw DomainMismatch("rotation averages need an integer sequence");
    if (K < 1 || K > seq.count())
        throw BadParameter("need 1 <= K <= sequence length");
    std::vector<SeriesRow> rows;
    CompensatedSum absolute;
    PiecewiseLinearCircleFn pointwise;
    for (std::size_t k = 1; k <= K; ++k) {
        SeriesRow row;
        row.k = k;
        row.n = seq.index(k);
        const auto avg = rotation_average_with_fallback(f, rho, row.n, 0);
        row.sampled = avg.sampled;
        row.sup_norm = avg.fn.sup_norm();
        absolute.add(row.sup_norm);
        pointwise = pointwise + avg.fn.abs();
        row.absolute_sum = absolute.value();
        row.unconditional_sum = pointwise.sup_norm();
        rows.push_back(row);
    }
    return rows;
}

} // namespace uclab
