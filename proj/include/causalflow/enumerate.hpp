#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "causalflow/digraph.hpp"
#include "causalflow/error.hpp"
#include "causalflow/superflow.hpp"

namespace causalflow {

/// Structural predicates for digraph generation. Unset members do not
/// filter; `true` keeps graphs with the property, `false` keeps graphs
/// without it.
struct DigraphFilters {
    std::optional<bool> connected;    ///< weakly connected
    std::optional<bool> cyclic;       ///< contains a directed cycle
    std::optional<bool> soc;          ///< every cycle has two vertices sharing a parent
    std::optional<bool> with_source;  ///< has at least one parentless vertex
    std::optional<bool> chordal;      ///< some cycle carries a chord

    bool accepts(const Digraph& d) const {
        if (with_source && *with_source != !d.sources().empty()) return false;
        if (connected && *connected != d.weakly_connected()) return false;
        if (cyclic && *cyclic != !d.acyclic()) return false;
        if (soc && *soc != d.is_soc()) return false;
        if (chordal && *chordal != d.has_chordal_cycle()) return false;
        return true;
    }
};

/// Vertex names used for generated graphs: the first n uppercase letters.
inline std::vector<VertexId> generated_vertices(int n) {
    std::vector<VertexId> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
    return out;
}

/// Calls fn with every labeled digraph on n generated vertices that passes
/// the filters. Ordered pairs (i, j), i != j, are scanned lexicographically
/// and mapped to bits of an edge mask counting up from zero, so the visit
/// order is reproducible.
template <typename Fn>
void for_each_digraph(int n, const DigraphFilters& filters, Fn&& fn) {
    if (n < 1 || n > 7) throw DomainError("digraph generation supports 1 to 7 vertices");
    auto names = generated_vertices(n);
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) slots.emplace_back(i, j);
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask >> k & 1)
                edges.push_back(Edge{names[slots[k].first], names[slots[k].second]});
        Digraph d(names, edges);
        if (filters.accepts(d)) fn(d);
    }
}

inline std::vector<Digraph> all_digraphs(int n, const DigraphFilters& filters = {}) {
    std::vector<Digraph> out;
    for_each_digraph(n, filters, [&](const Digraph& d) { out.push_back(d); });
    return out;
}

/// An isomorphism class: the first member seen in stream order, its
/// canonical form, and how many labeled graphs the class contains.
struct IsoClass {
    Digraph representative;
    std::string form;
    long long size = 0;

    friend auto operator<=>(const IsoClass&, const IsoClass&) = default;
};

/// Partitions the graphs by canonical form. Classes are returned in
/// canonical-form order.
inline std::vector<IsoClass> iso_classes(const std::vector<Digraph>& graphs) {
    std::map<std::string, IsoClass> classes;
    for (const auto& d : graphs) {
        auto form = canonical_form(d);
        auto [it, inserted] = classes.try_emplace(form);
        if (inserted) {
            it->second.representative = d;
            it->second.form = form;
        }
        ++it->second.size;
    }
    std::vector<IsoClass> out;
    for (auto& [form, cls] : classes) out.push_back(std::move(cls));
    return out;
}

/// Classification row for one isomorphism class: superflow statistics of
/// the representative and whether every leaf is a single vertex.
struct ClassReport {
    int id = 0;  ///< 1-based position in canonical-form order
    std::string form;
    int edge_count = 0;
    int source_count = 0;
    bool certified = false;
    int superflow_nodes = 0;
    int leaf_count = 0;
    int nontrivial_leaf_count = 0;
    Digraph representative;
    long long class_size = 0;

    friend auto operator<=>(const ClassReport&, const ClassReport&) = default;
};

/// The filter set of the four-vertex catalog: connected cyclic SOC graphs
/// with at least one source and at least one chordal cycle.
inline DigraphFilters catalog_filters() {
    DigraphFilters f;
    f.connected = true;
    f.cyclic = true;
    f.soc = true;
    f.with_source = true;
    f.chordal = true;
    return f;
}

/// Builds the superflow of one representative per isomorphism class of the
/// filtered n-vertex stream and reports which classes certify as producing
/// causal correlations only.
inline std::vector<ClassReport> classify_gap(int n, const DigraphFilters& filters) {
    if (n < 1 || n > 6) throw DomainError("classification supports 1 to 6 vertices");
    auto classes = iso_classes(all_digraphs(n, filters));
    std::vector<ClassReport> out;
    int id = 0;
    for (const auto& cls : classes) {
        ClassReport row;
        row.id = ++id;
        row.form = cls.form;
        row.edge_count = static_cast<int>(cls.representative.edges().size());
        row.source_count = static_cast<int>(cls.representative.sources().size());
        auto super = build_superflow(cls.representative);
        row.certified = super.all_leaves_trivial();
        row.superflow_nodes = static_cast<int>(super.nodes.size());
        auto leaves = super.leaves();
        row.leaf_count = static_cast<int>(leaves.size());
        for (const auto& leaf : leaves)
            if (!leaf.is_trivial()) ++row.nontrivial_leaf_count;
        row.representative = cls.representative;
        row.class_size = cls.size;
        out.push_back(std::move(row));
    }
    return out;
}

inline std::vector<ClassReport> classify_gap(int n) { return classify_gap(n, catalog_filters()); }

inline void write_classification_csv(std::ostream& out, const std::vector<ClassReport>& rows) {
    out << "class,canonical_form,edges,sources,certified,superflow_nodes,leaves,nontrivial_leaves\n";
    for (const auto& row : rows)
        out << row.id << ',' << row.form << ',' << row.edge_count << ',' << row.source_count
            << ',' << (row.certified ? "true" : "false") << ',' << row.superflow_nodes << ','
            << row.leaf_count << ',' << row.nontrivial_leaf_count << '\n';
}

}  // namespace causalflow
