#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalflow/digraph.hpp"
#include "causalflow/error.hpp"
#include "causalflow/model.hpp"

namespace causalflow {

/// Rooted acyclic graph of causal structures. Every node is reachable from
/// the root; an edge records one or more reduction steps leading from one
/// structure to the other, as annotation strings such as "s=P,o=0".
struct FlowGraph {
    Digraph root;
    std::set<Digraph> nodes;
    std::map<std::pair<Digraph, Digraph>, std::set<std::string>> edges;

    std::set<Digraph> leaves() const {
        std::set<Digraph> out = nodes;
        for (const auto& [key, notes] : edges) out.erase(key.first);
        return out;
    }

    bool all_leaves_trivial() const {
        for (const auto& leaf : leaves())
            if (!leaf.is_trivial()) return false;
        return true;
    }

    /// Node counts per vertex count, from the root's size downwards.
    std::vector<int> layer_sizes() const {
        int smallest = root.size();
        for (const auto& node : nodes) smallest = std::min(smallest, node.size());
        std::vector<int> out;
        for (int size = root.size(); size >= smallest; --size) {
            int count = 0;
            for (const auto& node : nodes)
                if (node.size() == size) ++count;
            out.push_back(count);
        }
        return out;
    }

    friend auto operator<=>(const FlowGraph&, const FlowGraph&) = default;
};

/// Like FlowGraph, but the nodes keep their model parameters.
struct AnnotatedFlow {
    CausalModel root;
    std::set<CausalModel> nodes;
    std::map<std::pair<CausalModel, CausalModel>, std::set<std::string>> edges;
};

inline std::set<Digraph> nontrivial_leaves_with_source(const FlowGraph& g) {
    std::set<Digraph> out;
    for (const auto& leaf : g.leaves())
        if (!leaf.is_trivial() && !leaf.sources().empty()) out.insert(leaf);
    return out;
}

inline std::set<CausalModel> nontrivial_leaves_with_source(const AnnotatedFlow& g) {
    std::set<CausalModel> out;
    for (const auto& node : g.nodes) {
        bool has_out = false;
        for (const auto& [key, notes] : g.edges)
            if (key.first == node) {
                has_out = true;
                break;
            }
        if (!has_out && !node.structure().is_trivial() && !node.structure().sources().empty())
            out.insert(node);
    }
    return out;
}

namespace detail {

inline std::string render_family(const std::map<VertexId, std::vector<int>>& family) {
    std::string out = "{";
    bool first_vertex = true;
    for (const auto& [v, f] : family) {
        if (!first_vertex) out += ", ";
        first_vertex = false;
        out += v + ":";
        for (std::size_t i = 0; i < f.size(); ++i)
            out += (i ? "," : "") + std::to_string(f[i]);
    }
    return out + "}";
}

} // namespace detail

/// Expand a consistent, faithful model by iterated source reduction: every
/// reachable model with at least two vertices and a source branches once per
/// (source, output value) pair. Nodes keep their parameters.
inline AnnotatedFlow build_annotated_flow(const CausalModel& m) {
    {
        auto consistency = m.consistency_report();
        if (!consistency.consistent)
            throw DomainError("model is not consistent: responses " +
                              detail::render_family(consistency.family) + " admit " +
                              std::to_string(consistency.fixed_points.size()) +
                              " joint outputs");
        auto faithfulness = m.faithfulness_report();
        if (!faithfulness.faithful)
            for (const auto& signal : faithfulness.edges)
                if (!signal.signaling)
                    throw DomainError("model is not faithful: edge " + signal.edge.from +
                                      " -> " + signal.edge.to + " never signals");
    }
    AnnotatedFlow flow{m, {m}, {}};
    std::deque<CausalModel> todo{m};
    std::set<CausalModel> expanded;
    while (!todo.empty()) {
        CausalModel node = std::move(todo.front());
        todo.pop_front();
        if (expanded.contains(node)) continue;
        expanded.insert(node);
        if (node.structure().is_trivial()) continue;
        for (const auto& s : node.structure().sources()) {
            for (int value = 0; value < node.out_card(s); ++value) {
                CausalModel reduced = node.reduce(s, value);
                flow.nodes.insert(reduced);
                flow.edges[{node, reduced}].insert("s=" + s + ",o=" + std::to_string(value));
                todo.push_back(reduced);
            }
        }
    }
    return flow;
}

/// The flow of a model: the annotated expansion with parameters stripped.
/// Models sharing a structure collapse into one node; parallel steps merge
/// into one edge carrying all annotations.
inline FlowGraph build_flow(const CausalModel& m) {
    AnnotatedFlow annotated = build_annotated_flow(m);
    FlowGraph flow;
    flow.root = m.structure();
    for (const auto& node : annotated.nodes) flow.nodes.insert(node.structure());
    for (const auto& [key, notes] : annotated.edges)
        flow.edges[{key.first.structure(), key.second.structure()}].insert(notes.begin(),
                                                                           notes.end());
    return flow;
}

} // namespace causalflow
