#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ledgergraph/journal.hpp"

namespace ledgergraph {

// Seeded generator for one company's journal. Accounts are drawn with
// probability proportional to (pattern degree + 1)^attachment_bias, and a
// new entry either reuses a previously seen pattern verbatim or mutates one
// account of it, which reproduces the qualitative shape of real ledgers:
// heavy-tailed account degrees and many near-duplicate patterns.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::uint32_t n_accounts = 100;
    std::uint64_t n_entries = 1000;
    double attachment_bias = 1.0;
    double pattern_mutation_rate = 0.3;   // probability an entry perturbs a pattern
    std::uint32_t accounts_per_entry_min = 2;
    std::uint32_t accounts_per_entry_max = 4;
    std::string company_id = "synthco";
    Date start_date{2024, 1, 1};
};

// Deterministic for a fixed config; the first N entries of a longer run
// with the same seed are identical to a shorter run's output.
std::vector<JournalEntry> generate_company(const SynthConfig& config);

struct CohortSynthConfig {
    SynthConfig base;                 // per-company template; seed is the cohort seed
    std::uint32_t n_companies = 10;
    std::uint64_t entries_min = 100;  // per-company entry counts spread
    std::uint64_t entries_max = 10000; // log-uniformly between these bounds
    std::vector<std::string> industries = {"CRS", "HLP", "LE", "PF", "RTL"};
};

// Writes one CSV per company plus industry_map.csv into dir; industry
// labels are assigned round-robin. Returns the dataset paths in order.
std::vector<std::filesystem::path> generate_cohort(const CohortSynthConfig& config,
                                                   const std::filesystem::path& dir);

} // namespace ledgergraph
