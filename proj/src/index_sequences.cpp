#include "uclab/index_sequences.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uclab {

namespace {

constexpr double kExactLimit = 0x1p53;

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

std::string number(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

} // namespace

std::int64_t BlockRule::count(int block) const {
    double c = 0.0;
    switch (shape) {
    case Shape::Linear:
        c = scale * block;
        break;
    case Shape::Constant:
        c = scale;
        break;
    case Shape::Sqrt:
        c = scale * std::sqrt(static_cast<double>(block));
        break;
    case Shape::Log:
        c = scale * std::log2(static_cast<double>(block) + 1.0);
        break;
    }
    return std::max<std::int64_t>(1, std::llround(c));
}

std::string BlockRule::name() const {
    const char *base = "linear";
    switch (shape) {
    case Shape::Linear:
        base = "linear";
        break;
    case Shape::Constant:
        base = "constant";
        break;
    case Shape::Sqrt:
        base = "sqrt";
        break;
    case Shape::Log:
        base = "log";
        break;
    }
    return scale == 1.0 ? std::string(base) : std::string(base) + "*" + number(scale);
}

SequenceSpec SequenceSpec::identity() { return {}; }

SequenceSpec SequenceSpec::power(double p) {
    SequenceSpec s;
    s.kind = SequenceKind::Power;
    s.parameter = p;
    return s;
}

SequenceSpec SequenceSpec::geometric(double q) {
    SequenceSpec s;
    s.kind = SequenceKind::Geometric;
    s.parameter = q;
    return s;
}

SequenceSpec SequenceSpec::double_exp(double q, int first_exponent) {
    SequenceSpec s;
    s.kind = SequenceKind::DoubleExp;
    s.parameter = q;
    s.first_exponent = first_exponent;
    return s;
}

SequenceSpec SequenceSpec::dyadic_blocks(BlockRule rule, int first_block) {
    SequenceSpec s;
    s.kind = SequenceKind::DyadicBlocks;
    s.blocks = rule;
    s.first_exponent = first_block;
    return s;
}

SequenceSpec SequenceSpec::explicit_integers(std::vector<std::uint64_t> terms) {
    SequenceSpec s;
    s.kind = SequenceKind::ExplicitIntegers;
    s.integers = std::move(terms);
    return s;
}

SequenceSpec SequenceSpec::reciprocal_dyadic() {
    SequenceSpec s;
    s.kind = SequenceKind::ReciprocalDyadic;
    return s;
}

SequenceSpec SequenceSpec::reciprocal_identity() {
    SequenceSpec s;
    s.kind = SequenceKind::ReciprocalIdentity;
    return s;
}

SequenceSpec SequenceSpec::reciprocal_ratio(double r) {
    SequenceSpec s;
    s.kind = SequenceKind::ReciprocalRatio;
    s.parameter = r;
    return s;
}

SequenceSpec SequenceSpec::explicit_reals(std::vector<double> terms) {
    SequenceSpec s;
    s.kind = SequenceKind::ExplicitReals;
    s.reals = std::move(terms);
    return s;
}

SequenceSpec SequenceSpec::with_weights(WeightPreset preset) const {
    SequenceSpec s = *this;
    s.weights = preset;
    return s;
}

bool SequenceSpec::integer_kind() const {
    switch (kind) {
    case SequenceKind::ReciprocalDyadic:
    case SequenceKind::ReciprocalIdentity:
    case SequenceKind::ReciprocalRatio:
    case SequenceKind::ExplicitReals:
        return false;
    default:
        return true;
    }
}

std::string SequenceSpec::id() const {
    std::string base;
    switch (kind) {
    case SequenceKind::Identity:
        base = "identity";
        break;
    case SequenceKind::Power:
        base = "power(" + number(parameter) + ")";
        break;
    case SequenceKind::Geometric:
        base = "geometric(" + number(parameter) + ")";
        break;
    case SequenceKind::DoubleExp:
        base = "double-exp(" + number(parameter) + (first_exponent != 1 ? ";from=" + std::to_string(first_exponent) : "") + ")";
        break;
    case SequenceKind::DyadicBlocks:
        base = "dyadic-blocks(" + blocks.name() + (first_exponent != 1 ? ";from=" + std::to_string(first_exponent) : "") + ")";
        break;
    case SequenceKind::ExplicitIntegers:
        base = "integers(" + std::to_string(integers.size()) + ")";
        break;
    case SequenceKind::ReciprocalDyadic:
        base = "reciprocal-dyadic";
        break;
    case SequenceKind::ReciprocalIdentity:
        base = "reciprocal-identity";
        break;
    case SequenceKind::ReciprocalRatio:
        base = "reciprocal-ratio(" + number(parameter) + ")";
        break;
    case SequenceKind::ExplicitReals:
        base = "reals(" + std::to_string(reals.size()) + ")";
        break;
    }
    if (weights == WeightPreset::Log)
        base += "+log-weights";
    else if (weights == WeightPreset::Explicit)
        base += "+weights";
    return base;
}

IndexSequence::IndexSequence(SequenceSpec spec, std::size_t count) : spec_(std::move(spec)), count_(count) {
    if (count_ == 0)
        throw BadParameter("sequence needs at least one term");
    const double q = spec_.parameter;
    switch (spec_.kind) {
    case SequenceKind::Identity:
        break;
    case SequenceKind::Power:
        if (!(q > 1.0) || !std::isfinite(q))
            throw BadParameter("power exponent must exceed 1");
        break;
    case SequenceKind::Geometric:
        if (!(q >= 2.0) || !is_integer(q))
            throw BadParameter("geometric ratio must be an integer >= 2");
        break;
    case SequenceKind::DoubleExp: {
        if (!(q >= 2.0) || !is_integer(q))
            throw BadParameter("double-exponential base must be an integer >= 2");
        if (spec_.first_exponent < 0)
            throw BadParameter("double-exponential start must be nonnegative");
        const double top = std::pow(q, static_cast<double>(spec_.first_exponent + count_ - 1));
        if (!(top * std::log2(q) < 53.0))
            throw Overflow("double-exponential term exceeds 2^53; at most " +
                           std::to_string(count_ - 1) + " terms fit below the clamp");
        break;
    }
    case SequenceKind::DyadicBlocks: {
        if (spec_.first_exponent < 0)
            throw BadParameter("first dyadic block must be nonnegative");
        for (int block = spec_.first_exponent; materialised_.size() < count_; ++block) {
            if (block > 52)
                throw Overflow("dyadic block beyond 2^53");
            const std::int64_t phi = spec_.blocks.count(block);
            const double width = std::ldexp(1.0, block);
            if (static_cast<double>(phi) > width)
                throw BadParameter("block " + std::to_string(block) + " asks for " + std::to_string(phi) +
                                   " terms but holds only " + number(width) + " integers");
            for (std::int64_t j = 0; j < phi && materialised_.size() < count_; ++j) {
                const double t = std::nearbyint(width + static_cast<double>(j) * width / static_cast<double>(phi));
                if (materialised_.empty() || t > materialised_.back())
                    materialised_.push_back(t);
            }
        }
        break;
    }
    case SequenceKind::ExplicitIntegers:
        if (spec_.integers.size() < count_)
            throw BadParameter("explicit sequence has fewer terms than requested");
        for (std::size_t i = 0; i < count_; ++i) {
            const auto t = spec_.integers[i];
            if (t < 1 || static_cast<double>(t) > kExactLimit)
                throw BadParameter("explicit integer terms must lie in [1, 2^53]");
            if (i > 0 && t < spec_.integers[i - 1])
                throw BadParameter("explicit integer terms must be nondecreasing");
            materialised_.push_back(static_cast<double>(t));
        }
        break;
    case SequenceKind::ReciprocalDyadic:
    case SequenceKind::ReciprocalIdentity:
        break;
    case SequenceKind::ReciprocalRatio:
        if (!(q > 0.0 && q < 1.0))
            throw BadParameter("scale ratio must lie in (0, 1)");
        break;
    case SequenceKind::ExplicitReals:
        if (spec_.reals.size() < count_)
            throw BadParameter("explicit scale sequence has fewer terms than requested");
        for (std::size_t i = 0; i < count_; ++i) {
            const double e = spec_.reals[i];
            if (!(e > 0.0) || !std::isfinite(e))
                throw BadParameter("scales must be positive");
            if (i > 0 && e > spec_.reals[i - 1])
                throw BadParameter("scales must be nonincreasing");
            materialised_.push_back(e);
        }
        break;
    }
    if (spec_.weights == WeightPreset::Explicit) {
        if (spec_.explicit_weights.size() < count_)
            throw BadParameter("fewer weights than terms");
        for (std::size_t i = 0; i < count_; ++i) {
            if (!(spec_.explicit_weights[i] > 0.0))
                throw BadParameter("weights must be positive");
            if (i > 0 && spec_.explicit_weights[i] < spec_.explicit_weights[i - 1])
                throw BadParameter("weights must be nondecreasing");
        }
    }
}

void IndexSequence::check(std::size_t k) const {
    if (k < 1 || k > count_)
        throw BadParameter("sequence index " + std::to_string(k) + " outside 1.." + std::to_string(count_));
}

double IndexSequence::term(std::size_t k) const {
    check(k);
    const double kd = static_cast<double>(k);
    const double q = spec_.parameter;
    switch (spec_.kind) {
    case SequenceKind::Identity:
        return kd;
    case SequenceKind::Power:
        return std::nearbyint(std::pow(kd, q));
    case SequenceKind::Geometric:
        return std::pow(q, kd);
    case SequenceKind::DoubleExp:
        return std::pow(q, std::pow(q, static_cast<double>(spec_.first_exponent) + kd - 1.0));
    case SequenceKind::DyadicBlocks:
    case SequenceKind::ExplicitIntegers:
    case SequenceKind::ExplicitReals:
        return materialised_[k - 1];
    case SequenceKind::ReciprocalDyadic:
        return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(k, 2000)));
    case SequenceKind::ReciprocalIdentity:
        return 1.0 / kd;
    case SequenceKind::ReciprocalRatio:
        return std::pow(q, kd);
    }
    return 0.0;
}

std::uint64_t IndexSequence::index(std::size_t k) const {
    if (!integer_kind())
        throw DomainMismatch("scale sequence has no integer terms");
    const double t = term(k);
    if (!(t <= kExactLimit))
        throw Overflow("term " + std::to_string(k) + " of " + spec_.id() + " exceeds 2^53");
    return static_cast<std::uint64_t>(t);
}

double IndexSequence::scale(std::size_t k) const {
    if (integer_kind())
        throw DomainMismatch("integer sequence has no scales");
    return term(k);
}

double IndexSequence::growth(std::size_t k) const {
    check(k + 1);
    const double kd = static_cast<double>(k);
    switch (spec_.kind) {
    case SequenceKind::Identity:
    case SequenceKind::ReciprocalIdentity:
        return (kd + 1.0) / kd;
    case SequenceKind::Geometric:
        return spec_.parameter;
    case SequenceKind::ReciprocalDyadic:
        return 2.0;
    case SequenceKind::ReciprocalRatio:
        return 1.0 / spec_.parameter;
    case SequenceKind::Power: {
        const double a = term(k), b = term(k + 1);
        if (b <= kExactLimit)
            return b / a;
        return std::pow((kd + 1.0) / kd, spec_.parameter);
    }
    default:
        if (integer_kind())
            return term(k + 1) / term(k);
        return term(k) / term(k + 1);
    }
}

double IndexSequence::ratio_deficit(std::size_t k) const {
    check(k + 1);
    const double kd = static_cast<double>(k);
    switch (spec_.kind) {
    case SequenceKind::Identity:
    case SequenceKind::ReciprocalIdentity:
        return 1.0 / (kd + 1.0);
    case SequenceKind::Geometric:
        return 1.0 - 1.0 / spec_.parameter;
    case SequenceKind::ReciprocalDyadic:
        return 0.5;
    case SequenceKind::ReciprocalRatio:
        return 1.0 - spec_.parameter;
    case SequenceKind::Power: {
        const double a = term(k), b = term(k + 1);
        if (b <= kExactLimit)
            return (b - a) / b;
        return -std::expm1(spec_.parameter * std::log1p(-1.0 / (kd + 1.0)));
    }
    default: {
        const double a = term(k), b = term(k + 1);
        if (integer_kind())
            return (b - a) / b;
        return (a - b) / a;
    }
    }
}

double IndexSequence::weight(std::size_t k) const {
    check(k);
    switch (spec_.weights) {
    case WeightPreset::Unit:
        return 1.0;
    case WeightPreset::Log:
        return std::log(static_cast<double>(k) + 1.0);
    case WeightPreset::Explicit:
        return spec_.explicit_weights[k - 1];
    }
    return 1.0;
}

std::vector<double> IndexSequence::terms() const {
    std::vector<double> out;
    out.reserve(count_);
    for (std::size_t k = 1; k <= count_; ++k)
        out.push_back(term(k));
    return out;
}

IndexSequence build_sequence(const SequenceSpec &spec, std::size_t count) { return IndexSequence(spec, count); }

double ratio_deficit_sum(const IndexSequence &seq, std::size_t K) {
    if (K + 1 > seq.count())
        throw BadParameter("ratio deficit sum needs K+1 terms");
    CompensatedSum sum;
    for (std::size_t k = 1; k <= K; ++k)
        sum.add(seq.ratio_deficit(k));
    return sum.value();
}

double lacunarity_constant(const IndexSequence &seq, std::size_t K) {
    if (K < 2 || K > seq.count())
        throw BadParameter("lacunarity constant needs 2 <= K <= count");
    double best = INFINITY;
    for (std::size_t k = 1; k + 1 <= K; ++k)
        best = std::min(best, seq.growth(k));
    return best;
}

} // namespace uclab
