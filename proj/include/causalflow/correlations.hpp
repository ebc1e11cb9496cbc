#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "causalflow/digraph.hpp"
#include "causalflow/error.hpp"

namespace causalflow {

/// Deterministic input-output behavior of a set of agents: one joint result
/// per joint setting. Joint settings are indexed in mixed radix over the
/// agents in order, first agent most significant.
struct DeterministicCorrelation {
    std::vector<VertexId> agents; // sorted
    std::vector<int> setting_cards;
    std::vector<int> result_cards;
    std::vector<std::vector<int>> table; // joint setting index -> per-agent results

    int agent_count() const { return static_cast<int>(agents.size()); }

    long long setting_count() const {
        long long total = 1;
        for (int c : setting_cards) total *= c;
        return total;
    }

    int agent_index(const VertexId& v) const {
        auto it = std::lower_bound(agents.begin(), agents.end(), v);
        if (it == agents.end() || *it != v)
            throw DomainError("unknown agent '" + v + "'");
        return static_cast<int>(it - agents.begin());
    }

    /// Decode one agent's setting from a joint setting index.
    int setting_of(long long joint, int agent) const {
        long long stride = 1;
        for (int k = agent_count() - 1; k > agent; --k) stride *= setting_cards[k];
        return static_cast<int>(joint / stride % setting_cards[agent]);
    }

    void validate() const {
        const auto n = agents.size();
        if (!std::is_sorted(agents.begin(), agents.end()) ||
            std::adjacent_find(agents.begin(), agents.end()) != agents.end())
            throw DomainError("agent list must be sorted and duplicate-free");
        if (setting_cards.size() != n || result_cards.size() != n)
            throw DomainError("cardinality lists must cover every agent");
        for (std::size_t k = 0; k < n; ++k)
            if (setting_cards[k] < 1 || result_cards[k] < 1)
                throw DomainError("cardinalities must be at least 1");
        if (static_cast<long long>(table.size()) != setting_count())
            throw DomainError("behavior table must cover every joint setting");
        for (const auto& row : table) {
            if (row.size() != n)
                throw DomainError("behavior row must list one result per agent");
            for (std::size_t k = 0; k < n; ++k)
                if (row[k] < 0 || row[k] >= result_cards[k])
                    throw DomainError("result value out of range for agent '" + agents[k] + "'");
        }
    }

    friend auto operator<=>(const DeterministicCorrelation&,
                            const DeterministicCorrelation&) = default;
};

/// Witness that a deterministic correlation decomposes causally: a leading
/// agent whose result depends on its own setting only, and one sub-tree per
/// value of that setting covering the remaining agents. An empty tree (no
/// leader) stands for zero agents.
struct CausalOrderTree {
    std::optional<VertexId> leader;
    std::vector<int> leader_results;      // leader's result per leader setting
    std::vector<CausalOrderTree> branches; // one per leader setting
};

namespace detail {

/// Correlation on agents \ {leader} with the leader's setting fixed.
inline DeterministicCorrelation restrict_correlation(const DeterministicCorrelation& c,
                                                     int leader, int x_leader) {
    DeterministicCorrelation out;
    const int n = c.agent_count();
    for (int k = 0; k < n; ++k) {
        if (k == leader) continue;
        out.agents.push_back(c.agents[k]);
        out.setting_cards.push_back(c.setting_cards[k]);
        out.result_cards.push_back(c.result_cards[k]);
    }
    const long long rows = out.setting_count();
    out.table.reserve(rows);
    for (long long sub = 0; sub < rows; ++sub) {
        // rebuild the full joint setting index with the leader's value inserted
        long long rest = sub;
        std::vector<int> digits(n);
        for (int k = n - 1, kk = static_cast<int>(out.agents.size()) - 1; k >= 0; --k) {
            if (k == leader) {
                digits[k] = x_leader;
            } else {
                digits[k] = static_cast<int>(rest % out.setting_cards[kk]);
                rest /= out.setting_cards[kk];
                --kk;
            }
        }
        long long full = 0;
        for (int k = 0; k < n; ++k) full = full * c.setting_cards[k] + digits[k];
        std::vector<int> row;
        for (int k = 0; k < n; ++k)
            if (k != leader) row.push_back(c.table[full][k]);
        out.table.push_back(std::move(row));
    }
    return out;
}

/// True iff agent k's result is the same across all joint settings that
/// agree on k's own setting.
inline bool result_depends_on_own_setting_only(const DeterministicCorrelation& c, int k) {
    std::vector<int> seen(c.setting_cards[k], -1);
    const long long rows = c.setting_count();
    for (long long joint = 0; joint < rows; ++joint) {
        int x = c.setting_of(joint, k);
        int a = c.table[joint][k];
        if (seen[x] == -1)
            seen[x] = a;
        else if (seen[x] != a)
            return false;
    }
    return true;
}

} // namespace detail

/// Search for a causal decomposition: recursively peel off an agent whose
/// result ignores everyone else's setting. Returns the witness tree on
/// success, nothing if no agent ordering works.
inline std::optional<CausalOrderTree> causal_decomposition(const DeterministicCorrelation& c) {
    c.validate();
    const int n = c.agent_count();
    if (n == 0) return CausalOrderTree{};
    for (int k = 0; k < n; ++k) {
        if (!detail::result_depends_on_own_setting_only(c, k)) continue;
        CausalOrderTree tree;
        tree.leader = c.agents[k];
        tree.leader_results.assign(c.setting_cards[k], -1);
        const long long rows = c.setting_count();
        for (long long joint = 0; joint < rows; ++joint)
            tree.leader_results[c.setting_of(joint, k)] = c.table[joint][k];
        bool all_causal = true;
        for (int x = 0; x < c.setting_cards[k] && all_causal; ++x) {
            auto sub = causal_decomposition(detail::restrict_correlation(c, k, x));
            if (!sub)
                all_causal = false;
            else
                tree.branches.push_back(std::move(*sub));
        }
        if (all_causal) return tree;
    }
    return std::nullopt;
}

inline bool is_causal_deterministic(const DeterministicCorrelation& c) {
    return causal_decomposition(c).has_value();
}

/// Replay a witness tree against the correlation it claims to decompose:
/// walk every joint setting through the tree and compare the reproduced
/// joint result with the table.
inline bool decomposition_matches(const CausalOrderTree& tree, const DeterministicCorrelation& c) {
    const int n = c.agent_count();
    const long long rows = c.setting_count();
    for (long long joint = 0; joint < rows; ++joint) {
        std::vector<int> settings(n);
        for (int k = 0; k < n; ++k) settings[k] = c.setting_of(joint, k);
        std::vector<int> reproduced(n, -1);
        std::vector<int> remaining(n);
        for (int k = 0; k < n; ++k) remaining[k] = k;
        const CausalOrderTree* node = &tree;
        while (!remaining.empty()) {
            if (!node->leader) return false;
            auto pos = std::find_if(remaining.begin(), remaining.end(), [&](int k) {
                return c.agents[k] == *node->leader;
            });
            if (pos == remaining.end()) return false;
            int k = *pos;
            int x = settings[k];
            if (x >= static_cast<int>(node->leader_results.size())) return false;
            reproduced[k] = node->leader_results[x];
            remaining.erase(pos);
            if (remaining.empty()) break;
            if (x >= static_cast<int>(node->branches.size())) return false;
            node = &node->branches[x];
        }
        if (reproduced != c.table[joint]) return false;
    }
    return true;
}

} // namespace causalflow
