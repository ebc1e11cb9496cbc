#pragma once

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "causalflow/digraph.hpp"
#include "causalflow/error.hpp"
#include "causalflow/flow.hpp"

namespace causalflow {

namespace detail {

inline std::string render_edge_set(const std::set<Edge>& edges) {
    std::string out = "{";
    bool first = true;
    for (const auto& e : edges) {
        if (!first) out += ';';
        first = false;
        out += e.from + ">" + e.to;
    }
    return out + "}";
}

} // namespace detail

/// Expand a causal structure without knowing its parameters: removing a
/// source may or may not erase each edge into the source's children, so
/// every subset of those candidate edges spawns a branch, kept only if the
/// result still has siblings on all its cycles. A warning lands on
/// `warnings` when the root itself violates that property, making it
/// unrealizable by any faithful consistent model.
inline FlowGraph build_superflow(const Digraph& root, std::ostream* warnings = nullptr) {
    if (warnings && !root.is_soc())
        *warnings << "warning: a cycle of the root has no two vertices sharing a parent; "
                     "no faithful consistent model has this structure\n";
    FlowGraph flow{root, {root}, {}};
    std::deque<Digraph> todo{root};
    std::set<Digraph> expanded;
    std::map<Digraph, bool> soc_cache;
    auto soc = [&soc_cache](const Digraph& d) {
        auto it = soc_cache.find(d);
        if (it == soc_cache.end()) it = soc_cache.emplace(d, d.is_soc()).first;
        return it->second;
    };
    while (!todo.empty()) {
        Digraph node = std::move(todo.front());
        todo.pop_front();
        if (expanded.contains(node)) continue;
        expanded.insert(node);
        if (node.is_trivial()) continue;
        for (const auto& s : node.sources()) {
            const Digraph pruned = node.remove_vertex(s);
            // edges into the removed source's children: the ones a model's
            // partial application could erase
            std::vector<Edge> candidates;
            for (const auto& child : node.children(s))
                for (const auto& parent : pruned.parents(child))
                    candidates.push_back({parent, child});
            std::sort(candidates.begin(), candidates.end());
            const int count = static_cast<int>(candidates.size());
            if (count > 26)
                throw DomainError("superflow branching too large: " + std::to_string(count) +
                                  " candidate edges at one source");
            std::vector<unsigned long long> masks(1ull << count);
            for (unsigned long long mask = 0; mask < masks.size(); ++mask) masks[mask] = mask;
            std::stable_sort(masks.begin(), masks.end(),
                             [&](unsigned long long a, unsigned long long b) {
                                 const int pa = std::popcount(a), pb = std::popcount(b);
                                 if (pa != pb) return pa < pb;
                                 std::vector<Edge> ea, eb;
                                 for (int k = 0; k < count; ++k) {
                                     if (a & (1ull << k)) ea.push_back(candidates[k]);
                                     if (b & (1ull << k)) eb.push_back(candidates[k]);
                                 }
                                 return ea < eb;
                             });
            for (unsigned long long mask : masks) {
                std::set<Edge> removed;
                for (int k = 0; k < count; ++k)
                    if (mask & (1ull << k)) removed.insert(candidates[k]);
                Digraph next = pruned.remove_edges(removed);
                if (!soc(next)) continue;
                flow.nodes.insert(next);
                todo.push_back(next);
                std::string note = "s=" + s;
                if (!removed.empty()) note += ",R=" + detail::render_edge_set(removed);
                flow.edges[{node, std::move(next)}].insert(std::move(note));
            }
        }
    }
    return flow;
}

/// True iff every node and edge of `flow` also appears in `super`. Edge
/// annotations are ignored; the roots must agree.
inline bool is_superflow_of(const FlowGraph& super, const FlowGraph& flow) {
    if (super.root != flow.root) throw DomainError("flows have different roots");
    for (const auto& node : flow.nodes)
        if (!super.nodes.contains(node)) return false;
    for (const auto& [key, notes] : flow.edges)
        if (!super.edges.contains(key)) return false;
    return true;
}

/// Structure-level certificate that every faithful consistent model on this
/// graph produces causal correlations: all leaves of the superflow are
/// single vertices.
inline bool certify_causal_only(const Digraph& d) {
    return build_superflow(d).all_leaves_trivial();
}

} // namespace causalflow
