#include "ledgergraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "ledgergraph/errors.hpp"
#include "ledgergraph/fsn.hpp"

namespace ledgergraph {

namespace {

// Fenwick tree over per-account weights so degree-biased draws stay
// O(log n) as weights change.
class WeightedPicker {
public:
    explicit WeightedPicker(std::size_t n) : tree_(n + 1, 0.0), weights_(n, 0.0) {}

    void set(std::size_t i, double w) {
        double delta = w - weights_[i];
        weights_[i] = w;
        for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
    }

    double total() const {
        double t = 0.0;
        for (std::size_t k = tree_.size() - 1; k > 0; k -= k & (~k + 1)) t += tree_[k];
        return t;
    }

    // Largest index whose prefix sum is <= target.
    std::size_t pick(double target) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while (mask * 2 < tree_.size()) mask *= 2;
        for (; mask > 0; mask /= 2) {
            std::size_t next = pos + mask;
            if (next < tree_.size() && tree_[next] < target) {
                target -= tree_[next];
                pos = next;
            }
        }
        return pos < weights_.size() ? pos : weights_.size() - 1;
    }

private:
    std::vector<double> tree_;
    std::vector<double> weights_;
};

std::string account_label(std::uint32_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "acct%05u", i);
    return buf;
}

// Splits total minor units across n lines with random proportions; the last
// line absorbs the rounding remainder so every entry balances exactly.
std::vector<std::int64_t> split_amount(std::int64_t total, std::size_t n,
                                       std::mt19937_64& rng) {
    std::vector<std::int64_t> parts(n, 0);
    if (n == 1) {
        parts[0] = total;
        return parts;
    }
    std::vector<double> cuts(n);
    double sum = 0.0;
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (double& c : cuts) {
        c = unit(rng);
        sum += c;
    }
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        parts[i] = static_cast<std::int64_t>(static_cast<double>(total) * cuts[i] / sum);
        if (parts[i] < 1) parts[i] = 1;
        assigned += parts[i];
    }
    parts[n - 1] = total - assigned;
    if (parts[n - 1] < 1) {
        // Degenerate rounding; fall back to an even split.
        std::int64_t base = total / static_cast<std::int64_t>(n);
        assigned = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            parts[i] = base;
            assigned += base;
        }
        parts[n - 1] = total - assigned;
    }
    return parts;
}

} // namespace

std::vector<JournalEntry> generate_company(const SynthConfig& config) {
    if (config.n_accounts < 1) throw DataError("synth: n_accounts must be >= 1");
    if (config.n_entries < 1) throw DataError("synth: n_entries must be >= 1");
    if (config.accounts_per_entry_min < 1 ||
        config.accounts_per_entry_max < config.accounts_per_entry_min)
        throw DataError("synth: invalid accounts_per_entry range");
    if (config.accounts_per_entry_max > config.n_accounts)
        throw DataError("synth: accounts_per_entry upper bound exceeds n_accounts");
    if (config.pattern_mutation_rate < 0.0 || config.pattern_mutation_rate > 1.0)
        throw DataError("synth: pattern_mutation_rate must be in [0,1]");
    if (config.attachment_bias < 0.0)
        throw DataError("synth: attachment_bias must be >= 0");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::lognormal_distribution<double> total_dist(4.0, 1.0);

    // Pattern degree per account; accounts enter with weight (0 + 1)^bias.
    std::vector<std::uint32_t> degree(config.n_accounts, 0);
    WeightedPicker picker(config.n_accounts);
    for (std::uint32_t a = 0; a < config.n_accounts; ++a) picker.set(a, 1.0);

    struct StoredPattern {
        std::vector<std::uint32_t> debits;
        std::vector<std::uint32_t> credits;
    };
    std::vector<StoredPattern> patterns; // distinct, in first-seen order
    std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, std::size_t>
        seen;

    auto draw_account = [&](const std::vector<std::uint32_t>& exclude) {
        while (true) {
            double target = coin(rng) * picker.total();
            std::uint32_t a = static_cast<std::uint32_t>(picker.pick(target));
            if (std::find(exclude.begin(), exclude.end(), a) == exclude.end()) return a;
            if (exclude.size() >= config.n_accounts) return a; // nothing left to exclude
        }
    };

    auto register_pattern = [&](StoredPattern p) -> std::size_t {
        std::sort(p.debits.begin(), p.debits.end());
        std::sort(p.credits.begin(), p.credits.end());
        auto key = std::make_pair(p.debits, p.credits);
        auto [it, inserted] = seen.try_emplace(std::move(key), patterns.size());
        if (inserted) {
            std::vector<std::uint32_t> touched = p.debits;
            touched.insert(touched.end(), p.credits.begin(), p.credits.end());
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (std::uint32_t a : touched) {
                ++degree[a];
                picker.set(a, std::pow(degree[a] + 1.0, config.attachment_bias));
            }
            patterns.push_back(std::move(p));
        }
        // A mutation can land on an already-known pattern; reuse it then.
        return it->second;
    };

    std::vector<JournalEntry> entries;
    entries.reserve(config.n_entries);
    const int date_span = 364;

    for (std::uint64_t i = 0; i < config.n_entries; ++i) {
        double u = coin(rng);
        std::size_t chosen_index;
        if (patterns.empty() || u < config.pattern_mutation_rate) {
            StoredPattern p;
            if (patterns.empty()) {
                std::uint32_t k = config.accounts_per_entry_min;
                if (config.accounts_per_entry_max > config.accounts_per_entry_min)
                    k = std::uniform_int_distribution<std::uint32_t>(
                        config.accounts_per_entry_min, config.accounts_per_entry_max)(rng);
                std::vector<std::uint32_t> drawn;
                for (std::uint32_t c = 0; c < k; ++c) drawn.push_back(draw_account(drawn));
                if (k == 1) {
                    p.debits = drawn;
                    p.credits = drawn;
                } else {
                    std::uint32_t split =
                        std::uniform_int_distribution<std::uint32_t>(1, k - 1)(rng);
                    p.debits.assign(drawn.begin(), drawn.begin() + split);
                    p.credits.assign(drawn.begin() + split, drawn.end());
                }
            } else {
                std::size_t base = std::uniform_int_distribution<std::size_t>(
                    0, patterns.size() - 1)(rng);
                p = patterns[base];
                std::vector<std::uint32_t> all = p.debits;
                all.insert(all.end(), p.credits.begin(), p.credits.end());
                std::size_t pos =
                    std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng);
                std::uint32_t replacement = draw_account(all);
                if (pos < p.debits.size())
                    p.debits[pos] = replacement;
                else
                    p.credits[pos - p.debits.size()] = replacement;
            }
            chosen_index = register_pattern(std::move(p));
        } else {
            chosen_index =
                std::uniform_int_distribution<std::size_t>(0, patterns.size() - 1)(rng);
        }
        const StoredPattern* chosen = &patterns[chosen_index];

        std::int64_t total_cents =
            std::max<std::int64_t>(100, static_cast<std::int64_t>(
                                            std::llround(total_dist(rng) * 100.0)));
        std::vector<std::int64_t> debit_parts = split_amount(total_cents, chosen->debits.size(), rng);
        std::vector<std::int64_t> credit_parts =
            split_amount(total_cents, chosen->credits.size(), rng);

        JournalEntry entry;
        char id_buf[24];
        std::snprintf(id_buf, sizeof id_buf, "E%08llu",
                      static_cast<unsigned long long>(i + 1));
        entry.entry_id = id_buf;
        Date date = config.start_date.plus_days(
            static_cast<int>((i * date_span) / std::max<std::uint64_t>(1, config.n_entries)));

        auto add_line = [&](std::uint32_t account, std::int64_t cents, Side side) {
            JournalEntryLine line;
            line.company_id = config.company_id;
            line.entry_id = entry.entry_id;
            line.date = date;
            line.account_id = account_label(account);
            line.account_name = "Account " + std::to_string(account);
            line.amount = Decimal::from_units(cents, 2);
            line.side = side;
            entry.lines.push_back(std::move(line));
        };
        for (std::size_t k = 0; k < chosen->debits.size(); ++k)
            add_line(chosen->debits[k], debit_parts[k], Side::Debit);
        for (std::size_t k = 0; k < chosen->credits.size(); ++k)
            add_line(chosen->credits[k], credit_parts[k], Side::Credit);
        entry.balanced = true;
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<std::filesystem::path> generate_cohort(const CohortSynthConfig& config,
                                                   const std::filesystem::path& dir) {
    if (config.n_companies < 1) throw DataError("synth: cohort needs at least one company");
    if (config.entries_min < 1 || config.entries_max < config.entries_min)
        throw DataError("synth: invalid cohort entry bounds");
    if (config.industries.empty()) throw DataError("synth: industry label list is empty");

    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> outputs;
    std::ofstream map_file(dir / "industry_map.csv", std::ios::binary);
    if (!map_file) throw DataError("synth: cannot write industry map in " + dir.string());
    map_file << "company_id,industry_code\n";

    const double log_min = std::log(static_cast<double>(config.entries_min));
    const double log_max = std::log(static_cast<double>(config.entries_max));
    for (std::uint32_t i = 0; i < config.n_companies; ++i) {
        double f = config.n_companies == 1
                       ? 0.0
                       : static_cast<double>(i) / (config.n_companies - 1);
        auto entries = static_cast<std::uint64_t>(
            std::llround(std::exp(log_min + f * (log_max - log_min))));
        entries = std::clamp(entries, config.entries_min, config.entries_max);

        SynthConfig company = config.base;
        company.seed = config.base.seed * 1000003ULL + i;
        company.n_entries = entries;
        char name[24];
        std::snprintf(name, sizeof name, "synth%04u", i + 1);
        company.company_id = name;

        std::vector<JournalEntry> journal = generate_company(company);
        std::filesystem::path file = dir / (std::string(name) + ".csv");
        std::ofstream out(file, std::ios::binary);
        if (!out) throw DataError("synth: cannot write " + file.string());
        write_journal_csv(out, journal);
        outputs.push_back(file);

        map_file << name << ',' << config.industries[i % config.industries.size()] << '\n';
    }
    return outputs;
}

} // namespace ledgergraph
