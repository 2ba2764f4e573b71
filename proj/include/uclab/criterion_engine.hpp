#ifndef UCLAB_CRITERION_ENGINE_HPP
#define UCLAB_CRITERION_ENGINE_HPP

#include "uclab/index_sequences.hpp"
#include "uclab/multiplier_kernel.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace uclab {

// S_K(x) = sum_{k<=K} w_k |Kernel(n_{k+1}, x) - Kernel(n_k, x)|^p.
class DifferenceSumQuery {
  public:
    DifferenceSumQuery(KernelSpec kernel, IndexSequence seq, std::size_t K, double p = 1.0);

    const KernelSpec &kernel() const { return kernel_; }
    const IndexSequence &sequence() const { return seq_; }
    std::size_t K() const { return K_; }
    double exponent() const { return p_; }
    FrequencyDomain domain() const { return kernel_.domain(); }

    DifferenceSumQuery truncated(std::size_t K) const;

    // |Kernel(n_{k+1}) - Kernel(n_k)| without weight or power.
    double term(std::size_t k, const Frequency &x) const;
    double sum(const Frequency &x) const;
    // S_1(x), ..., S_K(x).
    std::vector<double> partial_sums(const Frequency &x) const;

  private:
    void check_domain(const Frequency &x) const;
    // Raw differences for k = 1..K written into out.
    void differences(const Frequency &x, std::vector<double> &out) const;

    KernelSpec kernel_;
    IndexSequence seq_;
    std::size_t K_;
    double p_;
    std::vector<std::uint64_t> counts_; // n_1..n_{K+1}
    std::vector<double> scales_;        // eps_1..eps_{K+1}
    std::vector<double> weights_;
};

double difference_term(const DifferenceSumQuery &q, std::size_t k, const Frequency &x);
double difference_sum(const DifferenceSumQuery &q, const Frequency &x);

// theta = pi i / uniform for i = 1..uniform, plus theta = pi 2^{-u} on an even grid of
// log_uniform values of u in [0, log2(n_K) + 2].
struct TorusSampling {
    std::size_t uniform = 0;
    std::size_t log_uniform = 0;
};

// Every ell in [1, dense_max], plus log_count log-spaced integers up to log_max.
struct IntegerSampling {
    std::int64_t dense_max = 0;
    std::size_t log_count = 0;
    std::int64_t log_max = 0;
};

// t = t_max i / uniform, plus log_uniform log-spaced points in [t_min, t_max].
struct RealSampling {
    double t_max = 1.0;
    std::size_t uniform = 0;
    std::size_t log_uniform = 0;
    double t_min = 1e-6;
};

struct PointSampling {
    Frequency at;
};

using Sampling = std::variant<TorusSampling, IntegerSampling, RealSampling, PointSampling>;

struct ScanOptions {
    bool refine = true;
    std::size_t max_evaluations = std::numeric_limits<std::size_t>::max();
    unsigned threads = 0;
};

// A value attained at argmax, hence a lower bound for the true supremum of S_K.
struct SupremumEstimate {
    double value = 0.0;
    Frequency argmax = Frequency::real(0.0);
    std::size_t samples_used = 0;
    double refinement_gain = 0.0;
    FrequencyDomain domain = FrequencyDomain::Torus;
    bool budget_exhausted = false;
    std::size_t K = 0;
};

std::vector<Frequency> sample_frequencies(const DifferenceSumQuery &q, const Sampling &sampling);

SupremumEstimate estimate_supremum(const DifferenceSumQuery &q, const Sampling &sampling,
                                   const ScanOptions &options = {});

struct Probe {
    std::size_t K;
    Sampling sampling;
};

std::vector<SupremumEstimate> divergence_profile(const DifferenceSumQuery &tmpl, const std::vector<Probe> &probes,
                                                 const ScanOptions &options = {});

// Exact value of sum_{k>=1} |mu^^{k+1} - mu^^k| = |mu^ - 1| |mu^| / (1 - |mu^|).
double geometric_tail_closed_form(const FiniteMeasureZ &mu, const Angle &theta);

struct SpectralRatios {
    double stolz = 0.0;     // |1 - mu^| / (1 - |mu^|)
    double horocycle = 0.0; // |mu^ - 1|^2 / (1 - |mu^|^2)
};

SpectralRatios spectral_region_ratios(const FiniteMeasureZ &mu, const Angle &theta);

struct SpectralRatioScan {
    double stolz_sup = 0.0;
    double horocycle_sup = 0.0;
    Angle stolz_argmax;
    Angle horocycle_argmax;
    std::size_t points = 0;
};

// Sup of both ratios over the angles, skipping |theta| < 1e-9 and points where |mu^| hits 1.
SpectralRatioScan scan_spectral_ratios(const FiniteMeasureZ &mu, const std::vector<Angle> &angles);

// Uniform grid pi i / uniform (i = 1..uniform) followed by pi 2^{-j} for j = 1..dyadic.
std::vector<Angle> torus_grid(std::size_t uniform, std::size_t dyadic);

// |mu^^{n_{k+1}} - mu^^{n_k}| at the midpoint of (pi / n_{k+1}, pi / (n_{k+1} - n_k)),
// after checking n_j^p <= n_{j+1} <= 2 n_j^p for every j <= k.
double growth_window_probe(const FiniteMeasureZ &mu, const IndexSequence &seq, double p, std::size_t k);
double growth_window_point(const IndexSequence &seq, std::size_t k);

struct SamplingComparison {
    double sup_real = 0.0;
    double sup_integer = 0.0;
    double argmax_real = 0.0;
    std::int64_t argmax_integer = 0;
};

// Sup of |sinc(a t) - sinc(b t)| over 0 < t <= 1000/a and over integers 1 <= ell <= 10^6.
SamplingComparison sampling_comparison(double a, double b, std::size_t real_samples = 200000,
                                       std::int64_t integer_max = 1000000);

struct PairwiseBound {
    double sup_estimate = 0.0;
    double lower_bound = 0.0; // (2/pi)(1 - n/m)
    Angle argmax;
    bool holds = false;
};

PairwiseBound pairwise_lower_bound(std::uint64_t n, std::uint64_t m, std::size_t budget = 20000);

} // namespace uclab

#endif
