#include "ledgergraph/tail_fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "ledgergraph/errors.hpp"
#include "ledgergraph/format.hpp"

namespace ledgergraph {

DegreeSequence degree_sequence_for(const BipartiteGraph& graph, Partition partition) {
    DegreeSequence seq;
    seq.partition = partition;
    for (std::uint64_t d : degree_sequence(graph, partition)) {
        if (d == 0)
            ++seq.excluded_isolated;
        else
            seq.values.push_back(d);
    }
    return seq;
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0)) throw std::invalid_argument("hurwitz_zeta requires s > 1");
    if (!(q >= 1.0)) throw std::invalid_argument("hurwitz_zeta requires q >= 1");

    // B_{2j} / (2j)! for the Euler-Maclaurin correction.
    static constexpr double kCoeff[] = {
        1.0 / 12.0,          -1.0 / 720.0,        1.0 / 30240.0,
        -1.0 / 1209600.0,    1.0 / 47900160.0,    -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
    };

    // Sum directly until the argument is large enough that the asymptotic
    // correction converges fast (a >= 36 keeps the truncation error below
    // 1e-15 for s up to ~25).
    double a = q;
    long double direct = 0.0L;
    while (a < 36.0) {
        direct += std::pow(static_cast<long double>(a), -static_cast<long double>(s));
        a += 1.0;
    }

    long double tail = std::pow(static_cast<long double>(a), 1.0L - s) / (s - 1.0L);
    tail += 0.5L * std::pow(static_cast<long double>(a), -static_cast<long double>(s));
    long double rising = s; // s (s+1) ... (s + 2j - 2)
    long double power = std::pow(static_cast<long double>(a), -static_cast<long double>(s) - 1.0L);
    for (std::size_t j = 0; j < std::size(kCoeff); ++j) {
        tail += kCoeff[j] * rising * power;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        power /= static_cast<long double>(a) * a;
    }
    return static_cast<double>(direct + tail);
}

namespace {

struct Tail {
    std::vector<std::uint64_t> values; // sorted ascending, all >= x_min
    double sum_log = 0.0;
    double sum = 0.0;
};

Tail tail_at(const std::vector<std::uint64_t>& sorted, std::uint64_t x_min) {
    Tail t;
    auto from = std::lower_bound(sorted.begin(), sorted.end(), x_min);
    t.values.assign(from, sorted.end());
    for (std::uint64_t v : t.values) {
        t.sum_log += std::log(static_cast<double>(v));
        t.sum += static_cast<double>(v);
    }
    return t;
}

double power_law_log_likelihood(const Tail& tail, double alpha, std::uint64_t x_min) {
    return -alpha * tail.sum_log -
           static_cast<double>(tail.values.size()) *
               std::log(hurwitz_zeta(alpha, static_cast<double>(x_min)));
}

// The log-likelihood is strictly concave in alpha, so a golden-section
// search over a fixed bracket finds the global maximum.
double maximize_alpha(const Tail& tail, std::uint64_t x_min, double alpha_max) {
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 1.0 + 1e-8;
    double hi = alpha_max;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = power_law_log_likelihood(tail, x1, x_min);
    double f2 = power_law_log_likelihood(tail, x2, x_min);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = power_law_log_likelihood(tail, x2, x_min);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = power_law_log_likelihood(tail, x1, x_min);
        }
    }
    return 0.5 * (lo + hi);
}

// Kolmogorov-Smirnov distance between the empirical tail CDF and the
// fitted model CDF, evaluated at the distinct observed values.
double ks_distance(const Tail& tail, double alpha, std::uint64_t x_min) {
    const double n = static_cast<double>(tail.values.size());
    const double z = hurwitz_zeta(alpha, static_cast<double>(x_min));
    double worst = 0.0;
    std::size_t i = 0;
    while (i < tail.values.size()) {
        std::uint64_t v = tail.values[i];
        std::size_t j = i;
        while (j < tail.values.size() && tail.values[j] == v) ++j;
        double empirical = static_cast<double>(j) / n; // P(X <= v)
        double model = 1.0 - hurwitz_zeta(alpha, static_cast<double>(v) + 1.0) / z;
        worst = std::max(worst, std::abs(empirical - model));
        i = j;
    }
    return worst;
}

std::size_t distinct_count(const std::vector<std::uint64_t>& sorted_values) {
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < sorted_values.size(); ++i)
        if (i == 0 || sorted_values[i] != sorted_values[i - 1]) ++distinct;
    return distinct;
}

} // namespace

PowerLawFit fit_power_law(const DegreeSequence& seq, const TailFitOptions& options) {
    if (seq.values.size() < options.min_tail)
        throw DataError("insufficient tail data: " + std::to_string(seq.values.size()) +
                        " values, need at least " + std::to_string(options.min_tail));
    std::vector<std::uint64_t> sorted = seq.values;
    std::sort(sorted.begin(), sorted.end());
    if (distinct_count(sorted) < 2)
        throw DataError("degenerate degree sequence: all values identical");

    PowerLawFit best;
    bool found = false;
    for (std::size_t i = 0; i < sorted.size();) {
        std::uint64_t x_min = sorted[i];
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == x_min) ++j;
        std::size_t n_tail = sorted.size() - i;
        if (n_tail < options.min_tail) break;
        if (distinct_count({sorted.begin() + static_cast<std::ptrdiff_t>(i), sorted.end()}) >= 2) {
            Tail tail = tail_at(sorted, x_min);
            double alpha = maximize_alpha(tail, x_min, options.alpha_max);
            double d = ks_distance(tail, alpha, x_min);
            if (!found || d < best.ks_distance) {
                best.x_min = x_min;
                best.alpha = alpha;
                best.log_likelihood = power_law_log_likelihood(tail, alpha, x_min);
                best.n_tail = n_tail;
                best.ks_distance = d;
                found = true;
            }
        }
        i = j;
    }
    if (!found)
        throw DataError("insufficient tail data: no cutoff leaves a fittable tail of " +
                        std::to_string(options.min_tail) + "+ values");
    return best;
}

PowerLawFit fit_power_law_at(const DegreeSequence& seq, std::uint64_t x_min,
                             const TailFitOptions& options) {
    std::vector<std::uint64_t> sorted = seq.values;
    std::sort(sorted.begin(), sorted.end());
    Tail tail = tail_at(sorted, x_min);
    if (tail.values.empty()) throw DataError("empty tail at the requested cutoff");
    if (distinct_count(tail.values) < 2)
        throw DataError("degenerate degree sequence: all tail values identical");
    PowerLawFit fit;
    fit.x_min = x_min;
    fit.alpha = maximize_alpha(tail, x_min, options.alpha_max);
    fit.log_likelihood = power_law_log_likelihood(tail, fit.alpha, x_min);
    fit.n_tail = tail.values.size();
    fit.ks_distance = ks_distance(tail, fit.alpha, x_min);
    return fit;
}

ExponentialFit fit_exponential(const DegreeSequence& seq, std::uint64_t x_min) {
    std::vector<std::uint64_t> sorted = seq.values;
    std::sort(sorted.begin(), sorted.end());
    Tail tail = tail_at(sorted, x_min);
    if (tail.values.empty()) throw DataError("empty tail at the requested cutoff");

    const double n = static_cast<double>(tail.values.size());
    const double mean = tail.sum / n;
    const double excess = mean - static_cast<double>(x_min);
    if (excess <= 0.0)
        throw DataError("degenerate tail: all values equal the cutoff, rate diverges");

    ExponentialFit fit;
    fit.x_min = x_min;
    fit.lambda = std::log1p(1.0 / excess);
    fit.n_tail = tail.values.size();
    fit.log_likelihood = n * std::log1p(-std::exp(-fit.lambda)) -
                         fit.lambda * (tail.sum - n * static_cast<double>(x_min));
    return fit;
}

LrStat lr_from_terms(std::span<const double> terms) {
    LrStat stat;
    const double n = static_cast<double>(terms.size());
    if (terms.empty()) return stat;
    double sum = 0.0;
    for (double t : terms) sum += t;
    stat.r = sum;
    double mean = sum / n;
    double var = 0.0;
    for (double t : terms) var += (t - mean) * (t - mean);
    var /= n;
    stat.sigma = std::sqrt(var);
    double denom = stat.sigma * std::sqrt(2.0 * n);
    stat.p = denom > 0.0 ? std::erfc(std::abs(stat.r) / denom) : 1.0;
    return stat;
}

TailFitResult likelihood_ratio_test(const DegreeSequence& seq, const TailFitOptions& options) {
    PowerLawFit pl = fit_power_law(seq, options);
    ExponentialFit ex = fit_exponential(seq, pl.x_min);

    std::vector<std::uint64_t> sorted = seq.values;
    std::sort(sorted.begin(), sorted.end());
    Tail tail = tail_at(sorted, pl.x_min);

    const double log_zeta = std::log(hurwitz_zeta(pl.alpha, static_cast<double>(pl.x_min)));
    const double log_norm = std::log1p(-std::exp(-ex.lambda));
    std::vector<double> terms;
    terms.reserve(tail.values.size());
    for (std::uint64_t v : tail.values) {
        double x = static_cast<double>(v);
        double lp = -pl.alpha * std::log(x) - log_zeta;
        double le = log_norm - ex.lambda * (x - static_cast<double>(pl.x_min));
        terms.push_back(lp - le);
    }
    LrStat stat = lr_from_terms(terms);

    TailFitResult result;
    result.x_min = pl.x_min;
    result.alpha = pl.alpha;
    result.lambda = ex.lambda;
    result.n_tail = pl.n_tail;
    result.log_likelihood_ratio = stat.r;
    result.p_value = stat.p;
    result.sigma = stat.sigma;
    result.significance = options.significance;
    if (stat.p < options.significance && stat.r > 0.0)
        result.verdict = TailVerdict::PowerLawPreferred;
    else if (stat.p < options.significance && stat.r < 0.0)
        result.verdict = TailVerdict::ExponentialPreferred;
    else
        result.verdict = TailVerdict::Inconclusive;
    return result;
}

std::vector<CurveRow> distribution_curves(const DegreeSequence& seq, const TailFitResult& fit) {
    std::vector<std::uint64_t> sorted = seq.values;
    std::sort(sorted.begin(), sorted.end());
    Tail tail = tail_at(sorted, fit.x_min);
    if (tail.values.empty()) throw DataError("empty tail at the fitted cutoff");
    const double n = static_cast<double>(tail.values.size());

    const double zeta_at_xmin = hurwitz_zeta(fit.alpha, static_cast<double>(fit.x_min));
    const double exp_norm = -std::expm1(-fit.lambda); // 1 - e^-lambda

    std::vector<CurveRow> rows;
    // Model CDFs accumulate pdf mass over every integer from the cutoff up;
    // the CCDFs come from closed forms, so CDF + CCDF = 1 is a real
    // consistency check rather than an identity.
    std::uint64_t cursor = fit.x_min;
    double pl_mass = 0.0, exp_mass = 0.0;
    std::size_t i = 0, below = 0;
    while (i < tail.values.size()) {
        std::uint64_t v = tail.values[i];
        std::size_t j = i;
        while (j < tail.values.size() && tail.values[j] == v) ++j;

        for (; cursor < v; ++cursor) {
            double x = static_cast<double>(cursor);
            pl_mass += std::pow(x, -fit.alpha) / zeta_at_xmin;
            exp_mass += exp_norm * std::exp(-fit.lambda * (x - static_cast<double>(fit.x_min)));
        }

        CurveRow row;
        row.x = v;
        row.emp_pdf = static_cast<double>(j - i) / n;
        row.emp_cdf = static_cast<double>(below) / n;      // P(X < x)
        row.emp_ccdf = static_cast<double>(tail.values.size() - below) / n; // P(X >= x)
        double x = static_cast<double>(v);
        row.pl_pdf = std::pow(x, -fit.alpha) / zeta_at_xmin;
        row.pl_cdf = pl_mass;
        row.pl_ccdf = hurwitz_zeta(fit.alpha, x) / zeta_at_xmin;
        row.exp_pdf = exp_norm * std::exp(-fit.lambda * (x - static_cast<double>(fit.x_min)));
        row.exp_cdf = exp_mass;
        row.exp_ccdf = std::exp(-fit.lambda * (x - static_cast<double>(fit.x_min)));
        rows.push_back(row);

        below = j;
        i = j;
    }
    return rows;
}

std::string curves_to_csv(std::span<const CurveRow> rows) {
    std::string out =
        "x,empirical_pdf,empirical_cdf,empirical_ccdf,pl_pdf,pl_cdf,pl_ccdf,exp_pdf,exp_cdf,exp_ccdf\n";
    for (const CurveRow& r : rows) {
        out += std::to_string(r.x);
        for (double v : {r.emp_pdf, r.emp_cdf, r.emp_ccdf, r.pl_pdf, r.pl_cdf, r.pl_ccdf,
                         r.exp_pdf, r.exp_cdf, r.exp_ccdf}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

const char* verdict_name(TailVerdict verdict) {
    switch (verdict) {
        case TailVerdict::PowerLawPreferred: return "power_law_preferred";
        case TailVerdict::ExponentialPreferred: return "exponential_preferred";
        case TailVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string fit_to_json(const TailFitResult& fit, const DegreeSequence& seq) {
    nlohmann::json j;
    j["partition"] = seq.partition == Partition::BP ? "bp" : "fa";
    j["n_values"] = seq.values.size();
    j["excluded_isolated"] = seq.excluded_isolated;
    j["x_min"] = fit.x_min;
    j["alpha"] = fit.alpha;
    j["lambda"] = fit.lambda;
    j["n_tail"] = fit.n_tail;
    j["log_likelihood_ratio"] = fit.log_likelihood_ratio;
    j["p_value"] = fit.p_value;
    j["sigma"] = fit.sigma;
    j["significance"] = fit.significance;
    j["verdict"] = verdict_name(fit.verdict);
    return j.dump();
}

} // namespace ledgergraph
