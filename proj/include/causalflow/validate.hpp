#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "causalflow/correlations.hpp"
#include "causalflow/digraph.hpp"
#include "causalflow/enumerate.hpp"
#include "causalflow/error.hpp"
#include "causalflow/flow.hpp"
#include "causalflow/model.hpp"
#include "causalflow/superflow.hpp"

namespace causalflow {

/// All-binary spaces for a structure: two inputs and two outputs per vertex.
inline SpaceMap binary_spaces(const Digraph& d) {
    SpaceMap spaces;
    for (const auto& v : d.vertices()) spaces[v] = SpaceSpec{2, 2};
    return spaces;
}

/// Tally of one property sweep. `models` counts the models that met the
/// sweep's entry condition, `checks` the individual verdicts examined.
struct SweepReport {
    long long digraphs = 0;
    long long models = 0;
    long long checks = 0;
    long long failures = 0;
    std::vector<std::string> failure_notes;

    void note_failure(std::string text) {
        ++failures;
        if (failure_notes.size() < 10) failure_notes.push_back(std::move(text));
    }

    void merge(const SweepReport& other) {
        digraphs += other.digraphs;
        models += other.models;
        checks += other.checks;
        failures += other.failures;
        for (const auto& note : other.failure_notes)
            if (failure_notes.size() < 10) failure_notes.push_back(note);
    }
};

/// Visits every binary model on every labeled digraph with n vertices.
/// fn(d, m) runs once per model; the limit bounds models per digraph.
template <typename Fn>
void for_each_binary_model(int n, unsigned long long per_graph_limit, Fn&& fn) {
    for_each_digraph(n, {}, [&](const Digraph& d) {
        auto spaces = binary_spaces(d);
        for_each_model(d, spaces, per_graph_limit,
                       [&](const CausalModel& m) { fn(d, m); });
    });
}

/// Draws `graph_count` digraphs uniformly from the labeled n-vertex graphs
/// and `models_per_graph` uniform binary models on each. The stream is a
/// pure function of the seed, so independent sweeps over the same seed see
/// the same models. fn(d, m) as in for_each_binary_model.
template <typename Fn>
void sample_binary_models(int n, int graph_count, int models_per_graph, unsigned seed, Fn&& fn) {
    if (n < 1 || n > 7) throw DomainError("digraph generation supports 1 to 7 vertices");
    std::mt19937 rng(seed);
    auto names = generated_vertices(n);
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) slots.emplace_back(i, j);
    std::uniform_int_distribution<std::uint64_t> mask_dist(
        0, (std::uint64_t{1} << slots.size()) - 1);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int g = 0; g < graph_count; ++g) {
        const auto mask = mask_dist(rng);
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask >> k & 1)
                edges.push_back(Edge{names[slots[k].first], names[slots[k].second]});
        Digraph d(names, edges);
        auto spaces = binary_spaces(d);
        for (int t = 0; t < models_per_graph; ++t) {
            std::map<VertexId, std::vector<int>> tables;
            for (const auto& v : names) {
                std::size_t len = std::size_t{1} << d.parents(v).size();
                auto& table = tables[v];
                table.reserve(len);
                for (std::size_t j = 0; j < len; ++j) table.push_back(bit(rng));
            }
            fn(d, CausalModel(d, spaces, tables));
        }
    }
}

namespace detail {

/// Source reduction preserves consistency: checked for one model, every
/// source, every output value.
inline void check_reductions_of(const Digraph& d, const CausalModel& m, SweepReport& report) {
    ++report.models;
    for (const auto& s : d.sources())
        for (int o = 0; o < m.out_card(s); ++o) {
            ++report.checks;
            if (!m.reduce(s, o).is_consistent())
                report.note_failure(d.encode() + " reduce " + s + "=" + std::to_string(o) +
                                    " loses consistency");
        }
}

}  // namespace detail

/// Sweeps all binary models on n-vertex digraphs and verifies that source
/// reduction preserves consistency. Scope is every consistent model, or
/// only the faithful consistent ones when `require_faithful` is set.
inline SweepReport check_reduction_consistency(int n, bool require_faithful = false,
                                               unsigned long long per_graph_limit = 1ull << 22) {
    SweepReport report;
    for_each_digraph(n, {}, [&](const Digraph&) { ++report.digraphs; });
    for_each_binary_model(n, per_graph_limit, [&](const Digraph& d, const CausalModel& m) {
        if (!m.is_consistent()) return;
        if (require_faithful && !m.is_faithful()) return;
        detail::check_reductions_of(d, m, report);
    });
    return report;
}

/// Sampled variant of check_reduction_consistency for sizes where the
/// exhaustive sweep is out of reach.
inline SweepReport sample_reduction_consistency(int n, int graph_count, int models_per_graph,
                                                unsigned seed, bool require_faithful = false) {
    SweepReport report;
    report.digraphs = graph_count;
    sample_binary_models(n, graph_count, models_per_graph, seed,
                         [&](const Digraph& d, const CausalModel& m) {
                             if (!m.is_consistent()) return;
                             if (require_faithful && !m.is_faithful()) return;
                             detail::check_reductions_of(d, m, report);
                         });
    return report;
}

/// Sweeps all binary models and verifies that faithful consistent models
/// only occur on structures where every cycle has two vertices sharing a
/// parent.
inline SweepReport check_admissibility(int n, unsigned long long per_graph_limit = 1ull << 22) {
    SweepReport report;
    for_each_digraph(n, {}, [&](const Digraph&) { ++report.digraphs; });
    for_each_binary_model(n, per_graph_limit, [&](const Digraph& d, const CausalModel& m) {
        if (!m.is_faithful() || !m.is_consistent()) return;
        ++report.models;
        ++report.checks;
        if (!d.is_soc())
            report.note_failure(d.encode() + " carries a faithful consistent model but is not SOC");
    });
    return report;
}

/// Sampled variant of check_admissibility.
inline SweepReport sample_admissibility(int n, int graph_count, int models_per_graph,
                                        unsigned seed) {
    SweepReport report;
    report.digraphs = graph_count;
    sample_binary_models(n, graph_count, models_per_graph, seed,
                         [&](const Digraph& d, const CausalModel& m) {
                             if (!m.is_faithful() || !m.is_consistent()) return;
                             ++report.models;
                             ++report.checks;
                             if (!d.is_soc())
                                 report.note_failure(d.encode() +
                                                     " carries a faithful consistent model "
                                                     "but is not SOC");
                         });
    return report;
}

/// For one certified structure: every faithful consistent model, contracted
/// under echo interventions (and under universal interventions when `widen`
/// is set), must yield a causal correlation. Throws when the structure does
/// not certify.
inline SweepReport validate_certified_structure(const Digraph& d, const SpaceMap& spaces, bool widen = false,
                                     unsigned long long limit = 1ull << 22) {
    if (!certify_causal_only(d))
        throw DomainError("structure " + d.encode() + " does not certify as causal-only");
    SweepReport report;
    report.digraphs = 1;
    for_each_model(d, spaces, limit, [&](const CausalModel& m) {
        if (!m.is_faithful() || !m.is_consistent()) return;
        ++report.models;
        ++report.checks;
        if (!is_causal_deterministic(contract(m, echo_interventions(m))))
            report.note_failure(d.encode() + " echo contraction is not causal");
        if (widen) {
            ++report.checks;
            if (!is_causal_deterministic(contract(m, universal_interventions(m))))
                report.note_failure(d.encode() + " universal contraction is not causal");
        }
    });
    return report;
}

/// Runs validate_certified_structure with binary spaces on every n-vertex structure
/// that certifies as causal-only.
inline SweepReport check_causal_correlations(int n, bool widen = false,
                                             unsigned long long per_graph_limit = 1ull << 22) {
    SweepReport report;
    for_each_digraph(n, {}, [&](const Digraph& d) {
        if (!certify_causal_only(d)) return;
        report.merge(validate_certified_structure(d, binary_spaces(d), widen, per_graph_limit));
    });
    return report;
}

/// The flow of every faithful consistent model embeds in the superflow of
/// its structure: node and edge containment checked model by model.
inline SweepReport check_flow_embedding(int n, unsigned long long per_graph_limit = 1ull << 22) {
    SweepReport report;
    for_each_digraph(n, {}, [&](const Digraph& d) {
        ++report.digraphs;
        bool have_super = false;
        FlowGraph super;
        for_each_model(d, binary_spaces(d), per_graph_limit, [&](const CausalModel& m) {
            if (!m.is_faithful() || !m.is_consistent()) return;
            if (!have_super) {
                super = build_superflow(d);
                have_super = true;
            }
            ++report.models;
            ++report.checks;
            if (!is_superflow_of(super, build_flow(m)))
                report.note_failure(d.encode() + " has a flow escaping its superflow");
        });
    });
    return report;
}

/// Sampled variant of check_flow_embedding.
inline SweepReport sample_flow_embedding(int n, int graph_count, int models_per_graph,
                                         unsigned seed) {
    SweepReport report;
    report.digraphs = graph_count;
    std::map<Digraph, FlowGraph> supers;
    sample_binary_models(n, graph_count, models_per_graph, seed,
                         [&](const Digraph& d, const CausalModel& m) {
                             if (!m.is_faithful() || !m.is_consistent()) return;
                             auto it = supers.find(d);
                             if (it == supers.end())
                                 it = supers.emplace(d, build_superflow(d)).first;
                             ++report.models;
                             ++report.checks;
                             if (!is_superflow_of(it->second, build_flow(m)))
                                 report.note_failure(d.encode() +
                                                     " has a flow escaping its superflow");
                         });
    return report;
}

}  // namespace causalflow
