#include "ledgergraph/fsn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "ledgergraph/errors.hpp"

namespace ledgergraph {

using nlohmann::json;

Pattern Pattern::from_entry(const JournalEntry& entry, PatternMode mode) {
    std::set<std::string> debit, credit;
    for (const JournalEntryLine& line : entry.lines) {
        if (mode == PatternMode::Undirected || line.side == Side::Debit)
            debit.insert(line.account_id);
        else
            credit.insert(line.account_id);
    }
    Pattern p;
    p.debit_accounts.assign(debit.begin(), debit.end());
    p.credit_accounts.assign(credit.begin(), credit.end());
    return p;
}

FinancialStatementsNetwork build_network(std::span<const JournalEntry> entries,
                                         const FsnBuildOptions& options) {
    if (entries.empty()) throw DataError("empty network: no journal entries");

    struct PatternInfo {
        std::uint64_t count = 0;
        std::map<std::string, Decimal> account_flow;
    };
    std::map<Pattern, PatternInfo> patterns;
    std::map<std::string, std::string> accounts; // id -> name

    const std::string& company = entries.front().company_id();
    std::uint64_t unbalanced = 0;
    for (const JournalEntry& entry : entries) {
        if (entry.lines.empty()) throw DataError("journal entry with no lines");
        if (entry.company_id() != company)
            throw DataError("entries span multiple companies: '" + company + "' and '" +
                            entry.company_id() + "'");
        if (!entry.balanced) ++unbalanced;

        Pattern key = Pattern::from_entry(entry, options.pattern_mode);
        PatternInfo& info = patterns[key];
        ++info.count;
        for (const JournalEntryLine& line : entry.lines) {
            info.account_flow[line.account_id] += line.amount;
            auto [it, inserted] = accounts.try_emplace(line.account_id, line.account_name);
            if (!inserted && it->second.empty() && !line.account_name.empty())
                it->second = line.account_name;
        }
        if (!options.no_cap && patterns.size() + accounts.size() > options.node_cap)
            throw DataError("node cap exceeded: network needs more than " +
                            std::to_string(options.node_cap) + " nodes");
    }

    FinancialStatementsNetwork net;
    net.company_id = company;
    net.entry_count = entries.size();
    net.unbalanced_entries = unbalanced;
    net.pattern_mode = options.pattern_mode;

    std::unordered_map<std::string, std::uint32_t> fa_index;
    net.fa.reserve(accounts.size());
    for (const auto& [id, name] : accounts) {
        fa_index.emplace(id, static_cast<std::uint32_t>(net.fa.size()));
        net.fa.push_back({id, name});
    }

    net.bp.reserve(patterns.size());
    for (const auto& [pattern, info] : patterns) {
        std::uint32_t bp_idx = static_cast<std::uint32_t>(net.bp.size());
        net.bp.push_back({pattern, info.count});
        for (const auto& [account, flow] : info.account_flow) {
            net.edges.emplace_back(bp_idx, fa_index.at(account));
            net.edge_amounts.push_back(flow);
        }
    }
    // std::map iteration already yields edges sorted by (bp, fa): patterns in
    // canonical order, accounts sorted within each pattern.
    return net;
}

namespace {

json pattern_to_json(const Pattern& p) {
    return json{{"debit", p.debit_accounts}, {"credit", p.credit_accounts}};
}

Pattern pattern_from_json(const json& j) {
    Pattern p;
    p.debit_accounts = j.at("debit").get<std::vector<std::string>>();
    p.credit_accounts = j.at("credit").get<std::vector<std::string>>();
    return p;
}

} // namespace

std::string network_to_json(const FinancialStatementsNetwork& net) {
    json j;
    j["schema"] = "fsn/1";
    j["company"] = net.company_id;
    j["entries"] = net.entry_count;
    j["unbalanced_entries"] = net.unbalanced_entries;
    j["pattern_mode"] = net.pattern_mode == PatternMode::Directed ? "directed" : "undirected";
    json fa = json::array();
    for (const FaNode& node : net.fa) {
        json item{{"id", node.id}};
        if (!node.name.empty()) item["name"] = node.name;
        fa.push_back(std::move(item));
    }
    j["fa"] = std::move(fa);
    json bp = json::array();
    for (const BpNode& node : net.bp)
        bp.push_back(json{{"pattern", pattern_to_json(node.pattern)}, {"count", node.count}});
    j["bp"] = std::move(bp);
    json edges = json::array();
    for (const auto& [b, f] : net.edges) edges.push_back(json::array({b, f}));
    j["edges"] = std::move(edges);
    if (!net.edge_amounts.empty()) {
        json amounts = json::array();
        for (const Decimal& d : net.edge_amounts) amounts.push_back(d.str());
        j["edge_amounts"] = std::move(amounts);
    }
    return j.dump();
}

FinancialStatementsNetwork network_from_json(std::string_view bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid network JSON: ") + e.what());
    }
    try {
        if (!j.contains("schema") || j.at("schema").get<std::string>() != "fsn/1")
            throw DataError("unsupported network schema (expected \"fsn/1\")");

        FinancialStatementsNetwork net;
        net.company_id = j.value("company", std::string());
        net.entry_count = j.value("entries", std::uint64_t{0});
        net.unbalanced_entries = j.value("unbalanced_entries", std::uint64_t{0});
        std::string mode = j.value("pattern_mode", std::string("directed"));
        if (mode == "directed") {
            net.pattern_mode = PatternMode::Directed;
        } else if (mode == "undirected") {
            net.pattern_mode = PatternMode::Undirected;
        } else {
            throw DataError("unknown pattern_mode '" + mode + "'");
        }

        for (const json& item : j.at("fa")) {
            FaNode node;
            node.id = item.at("id").get<std::string>();
            node.name = item.value("name", std::string());
            net.fa.push_back(std::move(node));
        }
        for (const json& item : j.at("bp")) {
            BpNode node;
            node.pattern = pattern_from_json(item.at("pattern"));
            node.count = item.at("count").get<std::uint64_t>();
            net.bp.push_back(std::move(node));
        }

        for (std::size_t i = 1; i < net.fa.size(); ++i)
            if (!(net.fa[i - 1].id < net.fa[i].id))
                throw DataError("fa nodes not in canonical order (sorted unique ids)");
        for (std::size_t i = 1; i < net.bp.size(); ++i)
            if (!(net.bp[i - 1].pattern < net.bp[i].pattern))
                throw DataError("bp nodes not in canonical order (sorted unique patterns)");

        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const json& item : j.at("edges")) {
            if (!item.is_array() || item.size() != 2)
                throw DataError("edge must be a [bp_index, fa_index] pair");
            std::uint64_t b = item.at(0).get<std::uint64_t>();
            std::uint64_t f = item.at(1).get<std::uint64_t>();
            if (b >= net.bp.size() || f >= net.fa.size())
                throw DataError("edge [" + std::to_string(b) + "," + std::to_string(f) +
                                "] violates bipartite index ranges");
            auto edge = std::make_pair(static_cast<std::uint32_t>(b),
                                       static_cast<std::uint32_t>(f));
            if (!seen.insert(edge).second)
                throw DataError("duplicate edge [" + std::to_string(b) + "," +
                                std::to_string(f) + "]");
            net.edges.push_back(edge);
        }
        if (!std::is_sorted(net.edges.begin(), net.edges.end()))
            throw DataError("edges not in canonical (bp, fa) order");

        if (j.contains("edge_amounts")) {
            const json& amounts = j.at("edge_amounts");
            if (amounts.size() != net.edges.size())
                throw DataError("edge_amounts length does not match edges");
            for (const json& a : amounts) {
                auto d = Decimal::parse(a.get<std::string>());
                if (!d) throw DataError("invalid decimal in edge_amounts");
                net.edge_amounts.push_back(*d);
            }
        }
        return net;
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid network JSON: ") + e.what());
    }
}

} // namespace ledgergraph
