#ifndef UCLAB_INDEX_SEQUENCES_HPP
#define UCLAB_INDEX_SEQUENCES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace uclab {

enum class SequenceKind {
    Identity,
    Power,
    Geometric,
    DoubleExp,
    DyadicBlocks,
    ExplicitIntegers,
    ReciprocalDyadic,
    ReciprocalIdentity,
    ReciprocalRatio,
    ExplicitReals,
};

enum class WeightPreset { Unit, Log, Explicit };

// How many terms the dyadic block [2^k, 2^{k+1}) receives.
struct BlockRule {
    enum class Shape { Linear, Constant, Sqrt, Log };
    Shape shape = Shape::Linear;
    double scale = 1.0;

    std::int64_t count(int block) const;
    std::string name() const;
};

struct SequenceSpec {
    SequenceKind kind = SequenceKind::Identity;
    double parameter = 0.0;  // p for Power, q for Geometric/DoubleExp, r for ReciprocalRatio
    int first_exponent = 1;  // DoubleExp starts at q^{q^first}; DyadicBlocks starts at block 2^first
    BlockRule blocks;
    std::vector<std::uint64_t> integers;
    std::vector<double> reals;
    WeightPreset weights = WeightPreset::Unit;
    std::vector<double> explicit_weights;

    static SequenceSpec identity();
    static SequenceSpec power(double p);
    static SequenceSpec geometric(double q);
    static SequenceSpec double_exp(double q, int first_exponent = 1);
    static SequenceSpec dyadic_blocks(BlockRule rule, int first_block = 1);
    static SequenceSpec explicit_integers(std::vector<std::uint64_t> terms);
    static SequenceSpec reciprocal_dyadic();
    static SequenceSpec reciprocal_identity();
    static SequenceSpec reciprocal_ratio(double r);
    static SequenceSpec explicit_reals(std::vector<double> terms);

    SequenceSpec with_weights(WeightPreset preset) const;
    bool integer_kind() const;
    std::string id() const;
};

// The first count() terms of an index family (n_k) or scale family (eps_k), 1-based.
// Closed-form kinds are evaluated on demand so ratio sums work far past 2^53.
class IndexSequence {
  public:
    IndexSequence(SequenceSpec spec, std::size_t count);

    const SequenceSpec &spec() const { return spec_; }
    std::size_t count() const { return count_; }
    bool integer_kind() const { return spec_.integer_kind(); }

    // Term as a double (may be inexact or infinite past 2^53 for integer kinds).
    double term(std::size_t k) const;
    // Exact integer term; Overflow when it exceeds 2^53.
    std::uint64_t index(std::size_t k) const;
    // Scale eps_k for real kinds.
    double scale(std::size_t k) const;
    // n_{k+1}/n_k for integer kinds, eps_k/eps_{k+1} for real kinds.
    double growth(std::size_t k) const;
    // 1 - n_k/n_{k+1} (or 1 - eps_{k+1}/eps_k), without cancellation.
    double ratio_deficit(std::size_t k) const;
    double weight(std::size_t k) const;
    std::vector<double> terms() const;

  private:
    void check(std::size_t k) const;

    SequenceSpec spec_;
    std::size_t count_;
    std::vector<double> materialised_;
};

IndexSequence build_sequence(const SequenceSpec &spec, std::size_t count);
double ratio_deficit_sum(const IndexSequence &seq, std::size_t K);
double lacunarity_constant(const IndexSequence &seq, std::size_t K);

} // namespace uclab

#endif
