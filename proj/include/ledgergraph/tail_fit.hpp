#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ledgergraph/graph.hpp"

namespace ledgergraph {

// Degrees of one partition's nodes. Isolated nodes carry no tail
// information and are excluded up front (count recorded).
struct DegreeSequence {
    std::vector<std::uint64_t> values; // all >= 1
    Partition partition = Partition::FA;
    std::size_t excluded_isolated = 0;
};

DegreeSequence degree_sequence_for(const BipartiteGraph& graph, Partition partition);

// Hurwitz zeta, sum over k >= 0 of (q + k)^-s, for s > 1 and q >= 1.
// Direct summation plus an Euler-Maclaurin tail; absolute error < 1e-12
// over the parameter ranges used here (s <= 25).
double hurwitz_zeta(double s, double q);

struct TailFitOptions {
    double significance = 0.1;
    std::size_t min_tail = 10;   // smallest usable tail at any cutoff
    double alpha_max = 25.0;     // upper bracket for the exponent search
};

struct PowerLawFit {
    std::uint64_t x_min = 1;
    double alpha = 0.0;
    double log_likelihood = 0.0;
    std::size_t n_tail = 0;
    double ks_distance = 0.0;
};

struct ExponentialFit {
    std::uint64_t x_min = 1;
    double lambda = 0.0;
    double log_likelihood = 0.0;
    std::size_t n_tail = 0;
};

// Discrete power law on integers x >= x_min: p(x) = x^-alpha / zeta(alpha, x_min).
// x_min minimizes the Kolmogorov-Smirnov distance between the empirical tail
// and the fitted model; alpha is the maximum-likelihood exponent at that
// cutoff. Throws DataError when no cutoff leaves a usable tail.
PowerLawFit fit_power_law(const DegreeSequence& seq, const TailFitOptions& options = {});

// Same fit with the cutoff pinned; diagnostic hook, skips the min-tail rule.
PowerLawFit fit_power_law_at(const DegreeSequence& seq, std::uint64_t x_min,
                             const TailFitOptions& options = {});

// Discrete exponential on integers x >= x_min:
// p(x) = (1 - e^-lambda) e^(-lambda (x - x_min)); closed-form MLE
// lambda = ln(1 + 1/(mean - x_min)). Throws DataError on a degenerate tail.
ExponentialFit fit_exponential(const DegreeSequence& seq, std::uint64_t x_min);

enum class TailVerdict : std::uint8_t { PowerLawPreferred, ExponentialPreferred, Inconclusive };

struct TailFitResult {
    std::uint64_t x_min = 1;
    double alpha = 0.0;
    double lambda = 0.0;
    std::size_t n_tail = 0;
    double log_likelihood_ratio = 0.0; // power-law minus exponential, shared tail
    double p_value = 1.0;
    double sigma = 0.0; // stddev of the per-point log-ratio terms
    double significance = 0.1;
    TailVerdict verdict = TailVerdict::Inconclusive;
};

struct LrStat {
    double r = 0.0;
    double sigma = 0.0;
    double p = 1.0;
};

// Normalized ratio statistic from per-observation log-likelihood
// differences: p = erfc(|R| / (sigma * sqrt(2 n))). Sign-symmetric by
// construction: negating the terms negates R and leaves p unchanged.
LrStat lr_from_terms(std::span<const double> terms);

// Fits both models on the power law's tail and decides which the data
// prefer. The ratio only makes sense over one shared support, so the
// exponential is conditioned on the same cutoff.
TailFitResult likelihood_ratio_test(const DegreeSequence& seq,
                                    const TailFitOptions& options = {});

struct CurveRow {
    std::uint64_t x = 0;
    double emp_pdf = 0, emp_cdf = 0, emp_ccdf = 0;
    double pl_pdf = 0, pl_cdf = 0, pl_ccdf = 0;
    double exp_pdf = 0, exp_cdf = 0, exp_ccdf = 0;
};

// Empirical and fitted distribution curves over the tail, one row per
// distinct observed value. CDF is P(X < x) and CCDF is P(X >= x), so the
// two sum to one and the empirical CCDF at x_min is exactly 1.
std::vector<CurveRow> distribution_curves(const DegreeSequence& seq, const TailFitResult& fit);

std::string curves_to_csv(std::span<const CurveRow> rows);
std::string fit_to_json(const TailFitResult& fit, const DegreeSequence& seq);
const char* verdict_name(TailVerdict verdict);

} // namespace ledgergraph
