#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracles {

using ledgergraph::BipartiteGraph;

std::vector<std::vector<int>> floyd_warshall(const BipartiteGraph& graph) {
    const std::uint32_t n = graph.node_count();
    const int inf = 1 << 29;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (std::uint32_t v = 0; v < n; ++v) {
        d[v][v] = 0;
        for (std::uint32_t w : graph.neighbors(v)) d[v][w] = 1;
    }
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (auto& row : d)
        for (int& x : row)
            if (x >= inf) x = kUnreachable;
    return d;
}

namespace {

// Enumerates every shortest s-t path (as node lists) by walking the
// distance gradient backwards from t.
void enumerate_geodesics(const BipartiteGraph& graph, const std::vector<int>& dist_from_s,
                         std::uint32_t t, std::vector<std::uint32_t>& partial,
                         std::vector<std::vector<std::uint32_t>>& out) {
    partial.push_back(t);
    if (dist_from_s[t] == 0) {
        out.emplace_back(partial.rbegin(), partial.rend());
    } else {
        for (std::uint32_t prev : graph.neighbors(t))
            if (dist_from_s[prev] == dist_from_s[t] - 1)
                enumerate_geodesics(graph, dist_from_s, prev, partial, out);
    }
    partial.pop_back();
}

} // namespace

std::vector<double> betweenness_exhaustive(const BipartiteGraph& graph) {
    const std::uint32_t n = graph.node_count();
    auto dist = floyd_warshall(graph);
    std::vector<double> raw(n, 0.0);
    for (std::uint32_t s = 0; s < n; ++s) {
        for (std::uint32_t t = s + 1; t < n; ++t) {
            if (dist[s][t] == kUnreachable || dist[s][t] < 2) continue;
            std::vector<std::vector<std::uint32_t>> paths;
            std::vector<std::uint32_t> partial;
            enumerate_geodesics(graph, dist[s], t, partial, paths);
            std::vector<double> through(n, 0.0);
            for (const auto& path : paths)
                for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
            for (std::uint32_t v = 0; v < n; ++v)
                raw[v] += through[v] / static_cast<double>(paths.size());
        }
    }
    return raw;
}

ClosenessOracle closeness_exhaustive(const BipartiteGraph& graph) {
    const std::uint32_t n = graph.node_count();
    auto dist = floyd_warshall(graph);
    ClosenessOracle oracle;
    oracle.raw.assign(n, 0.0);
    oracle.normalized.assign(n, 0.0);
    for (std::uint32_t v = 0; v < n; ++v) {
        double farness = 0.0;
        std::uint32_t bp_local = 0, fa_local = 0;
        for (std::uint32_t w = 0; w < n; ++w) {
            if (dist[v][w] == kUnreachable) continue;
            farness += dist[v][w];
            if (graph.is_bp(w))
                ++bp_local;
            else
                ++fa_local;
        }
        if (farness <= 0.0) continue;
        double numerator = graph.is_bp(v)
                               ? static_cast<double>(fa_local) + 2.0 * (bp_local - 1)
                               : static_cast<double>(bp_local) + 2.0 * (fa_local - 1);
        oracle.raw[v] = 1.0 / farness;
        oracle.normalized[v] = numerator / farness;
    }
    return oracle;
}

double zeta_direct(double s, double q, std::size_t terms) {
    long double sum = 0.0L;
    for (std::size_t k = 0; k < terms; ++k)
        sum += std::pow(static_cast<long double>(q) + k, -static_cast<long double>(s));
    long double edge = static_cast<long double>(q) + terms - 0.5L;
    sum += std::pow(edge, 1.0L - static_cast<long double>(s)) / (s - 1.0L);
    return static_cast<double>(sum);
}

std::vector<double> zeta_grid(double q, std::span<const double> alphas, std::size_t terms) {
    std::vector<double> out(alphas.size(), 0.0);
    if (alphas.empty()) return out;
    const double step = alphas.size() > 1 ? alphas[1] - alphas[0] : 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        double log_base = std::log(q + static_cast<double>(k));
        double w = std::exp(-alphas[0] * log_base);
        double ratio = std::exp(-step * log_base);
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            out[j] += w;
            w *= ratio;
        }
    }
    double edge = q + static_cast<double>(terms) - 0.5;
    for (std::size_t j = 0; j < alphas.size(); ++j)
        out[j] += std::pow(edge, 1.0 - alphas[j]) / (alphas[j] - 1.0);
    return out;
}

double alpha_grid_mle(std::span<const std::uint64_t> tail, std::uint64_t x_min,
                      double alpha_lo, double alpha_hi, double step) {
    double sum_log = 0.0;
    for (std::uint64_t v : tail) sum_log += std::log(static_cast<double>(v));
    const double n = static_cast<double>(tail.size());

    std::vector<double> alphas;
    for (std::size_t k = 0;; ++k) {
        double a = alpha_lo + static_cast<double>(k) * step;
        if (a > alpha_hi + 1e-12) break;
        alphas.push_back(a);
    }
    std::vector<double> zetas = zeta_grid(static_cast<double>(x_min), alphas, 2000);

    double best_alpha = alphas.front();
    double best_ll = -1e300;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        double ll = -alphas[j] * sum_log - n * std::log(zetas[j]);
        if (ll > best_ll) {
            best_ll = ll;
            best_alpha = alphas[j];
        }
    }
    return best_alpha;
}

double lambda_numeric_mle(std::span<const std::uint64_t> tail, std::uint64_t x_min) {
    double shifted_sum = 0.0;
    for (std::uint64_t v : tail) shifted_sum += static_cast<double>(v - x_min);
    const double n = static_cast<double>(tail.size());
    auto ll = [&](double lambda) {
        return n * std::log1p(-std::exp(-lambda)) - lambda * shifted_sum;
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 1e-8, hi = 30.0;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = ll(x1), f2 = ll(x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = ll(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = ll(x1);
        }
    }
    return 0.5 * (lo + hi);
}

PowerLawSampler::PowerLawSampler(double alpha, std::uint64_t x_min)
    : alpha_(alpha), x_min_(x_min) {
    z_ = zeta_direct(alpha_, static_cast<double>(x_min_), 2000);
    ccdf_.push_back(1.0);
}

std::uint64_t PowerLawSampler::draw(std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    // Extend the CCDF table until it drops below u.
    while (ccdf_.back() > u) {
        std::size_t k = ccdf_.size();
        ccdf_.push_back(
            zeta_direct(alpha_, static_cast<double>(x_min_ + k), 2000) / z_);
        if (ccdf_.size() > 1u << 22) break; // safety valve
    }
    // Largest k with ccdf_[k] > u; the draw is x_min + k.
    auto it = std::lower_bound(ccdf_.begin(), ccdf_.end(), u,
                               [](double c, double target) { return c > target; });
    std::size_t k = static_cast<std::size_t>(it - ccdf_.begin());
    if (k > 0) --k;
    return x_min_ + k;
}

std::uint64_t draw_discrete_exponential(double lambda, std::uint64_t x_min,
                                        std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double k = std::floor(std::log1p(-u) / -lambda);
    return x_min + static_cast<std::uint64_t>(k);
}

} // namespace oracles
