#pragma once

// Independent oracles for the test and acceptance suites. Everything here
// recomputes results from first principles (exhaustive enumeration, direct
// summation, grid search) without touching the library's algorithm paths.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ledgergraph/graph.hpp"

namespace oracles {

inline constexpr int kUnreachable = -1;

// All-pairs shortest paths by Floyd-Warshall; intended for graphs of at
// most a few dozen nodes.
std::vector<std::vector<int>> floyd_warshall(const ledgergraph::BipartiteGraph& graph);

// Geodesic-fraction betweenness by explicit enumeration of every shortest
// path between every pair.
std::vector<double> betweenness_exhaustive(const ledgergraph::BipartiteGraph& graph);

struct ClosenessOracle {
    std::vector<double> raw;        // 1 / farness within the component
    std::vector<double> normalized; // component-local theoretical minimum / farness
};
ClosenessOracle closeness_exhaustive(const ledgergraph::BipartiteGraph& graph);

// Hurwitz zeta by direct summation with a midpoint-rule tail; `terms`
// controls accuracy (error roughly s/24 * (q+terms)^-(s+1)).
double zeta_direct(double s, double q, std::size_t terms);

// zeta(alpha, q) for every alpha in the grid, sharing the per-k logs so a
// fine grid stays affordable. Grid must be ascending and evenly spaced.
std::vector<double> zeta_grid(double q, std::span<const double> alphas, std::size_t terms);

// Brute-force discrete power-law MLE: evaluates the tail log-likelihood on
// an evenly spaced alpha grid and returns the argmax.
double alpha_grid_mle(std::span<const std::uint64_t> tail, std::uint64_t x_min,
                      double alpha_lo, double alpha_hi, double step);

// Numeric MLE for the discrete exponential rate by golden-section search.
double lambda_numeric_mle(std::span<const std::uint64_t> tail, std::uint64_t x_min);

// Seeded sampler for the discrete power law p(x) ~ x^-alpha on x >= x_min,
// via inverse transform on a lazily extended CCDF table.
class PowerLawSampler {
public:
    PowerLawSampler(double alpha, std::uint64_t x_min);
    std::uint64_t draw(std::mt19937_64& rng);

private:
    double alpha_;
    std::uint64_t x_min_;
    double z_;
    std::vector<double> ccdf_; // ccdf_[k] = P(X >= x_min + k)
};

// Seeded sampler for the discrete exponential (geometric on x >= x_min).
std::uint64_t draw_discrete_exponential(double lambda, std::uint64_t x_min,
                                        std::mt19937_64& rng);

} // namespace oracles
