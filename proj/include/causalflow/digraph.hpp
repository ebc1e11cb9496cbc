#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causalflow/error.hpp"

namespace causalflow {

using VertexId = std::string;

struct Edge {
    VertexId from;
    VertexId to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A directed cycle together with one of its chords.
struct ChordWitness {
    std::vector<VertexId> cycle; // rotation-normalized vertex sequence
    Edge chord;
};

namespace detail {

inline bool valid_vertex_name(const VertexId& name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(),
                       [](unsigned char c) { return std::isalnum(c) != 0; });
}

/// Johnson-style enumeration of all directed simple cycles of an index
/// graph. For each start vertex s the search runs in the subgraph induced
/// by {s, ..., n-1}, so every cycle is produced exactly once, beginning at
/// its smallest member. Blocked sets with unblock propagation keep the
/// search from revisiting dead branches.
class CycleEnumerator {
public:
    explicit CycleEnumerator(std::vector<std::vector<int>> adjacency)
        : adj_(std::move(adjacency)), n_(static_cast<int>(adj_.size())) {}

    std::vector<std::vector<int>> run() {
        std::vector<std::vector<int>> cycles;
        for (start_ = 0; start_ < n_; ++start_) {
            blocked_.assign(n_, false);
            block_list_.assign(n_, {});
            stack_.clear();
            circuit(start_, cycles);
        }
        return cycles;
    }

private:
    bool circuit(int v, std::vector<std::vector<int>>& cycles) {
        bool found = false;
        blocked_[v] = true;
        stack_.push_back(v);
        for (int w : adj_[v]) {
            if (w < start_) continue; // restrict to the {start..n-1} subgraph
            if (w == start_) {
                cycles.push_back(stack_);
                found = true;
            } else if (!blocked_[w]) {
                if (circuit(w, cycles)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : adj_[v]) {
                if (w < start_) continue;
                auto& lst = block_list_[w];
                if (std::find(lst.begin(), lst.end(), v) == lst.end()) lst.push_back(v);
            }
        }
        stack_.pop_back();
        return found;
    }

    void unblock(int u) {
        blocked_[u] = false;
        auto pending = std::move(block_list_[u]);
        block_list_[u].clear();
        for (int w : pending)
            if (blocked_[w]) unblock(w);
    }

    std::vector<std::vector<int>> adj_;
    int n_ = 0;
    int start_ = 0;
    std::vector<bool> blocked_;
    std::vector<std::vector<int>> block_list_;
    std::vector<int> stack_;
};

} // namespace detail

/// Labeled directed graph. Vertices are stored in lexicographic order and
/// edges as a sorted set, so two graphs are equal exactly when their vertex
/// and edge sets coincide. Self-loops are rejected at construction.
class Digraph {
public:
    Digraph() = default;

    Digraph(const std::vector<VertexId>& vertices, const std::vector<Edge>& edges) {
        vertices_ = vertices;
        std::sort(vertices_.begin(), vertices_.end());
        for (const auto& v : vertices_)
            if (!detail::valid_vertex_name(v))
                throw DomainError("invalid vertex name '" + v + "'");
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw DomainError("duplicate vertex in vertex set");
        for (const auto& e : edges) {
            if (e.from == e.to)
                throw DomainError("self-loop " + e.from + " -> " + e.to + " not allowed");
            require_vertex(e.from);
            require_vertex(e.to);
            edges_.insert(e);
        }
    }

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }
    int size() const { return static_cast<int>(vertices_.size()); }

    bool has_vertex(const VertexId& v) const {
        return std::binary_search(vertices_.begin(), vertices_.end(), v);
    }
    bool has_edge(const VertexId& u, const VertexId& v) const {
        return edges_.contains(Edge{u, v});
    }

    std::vector<VertexId> parents(const VertexId& v) const {
        require_vertex(v);
        std::vector<VertexId> out;
        for (const auto& e : edges_)
            if (e.to == v) out.push_back(e.from);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<VertexId> children(const VertexId& v) const {
        require_vertex(v);
        std::vector<VertexId> out;
        for (const auto& e : edges_)
            if (e.from == v) out.push_back(e.to);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Parentless vertices.
    std::vector<VertexId> sources() const {
        std::set<VertexId> with_parent;
        for (const auto& e : edges_) with_parent.insert(e.to);
        std::vector<VertexId> out;
        for (const auto& v : vertices_)
            if (!with_parent.contains(v)) out.push_back(v);
        return out;
    }

    bool is_trivial() const { return vertices_.size() == 1; }

    /// All directed simple cycles as vertex sequences. Each cycle starts at
    /// its lexicographically least vertex; the list is sorted and free of
    /// duplicates.
    std::vector<std::vector<VertexId>> simple_cycles() const {
        detail::CycleEnumerator enumerator(index_adjacency());
        auto raw = enumerator.run();
        std::vector<std::vector<VertexId>> cycles;
        cycles.reserve(raw.size());
        for (const auto& c : raw) {
            // the enumerator already starts cycles at their least index, and
            // index order equals name order; normalize anyway
            auto least = std::min_element(c.begin(), c.end()) - c.begin();
            std::vector<VertexId> named;
            named.reserve(c.size());
            for (std::size_t k = 0; k < c.size(); ++k)
                named.push_back(vertices_[c[(least + k) % c.size()]]);
            cycles.push_back(std::move(named));
        }
        std::sort(cycles.begin(), cycles.end());
        cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
        return cycles;
    }

    /// Some directed simple cycle without a pair of distinct on-cycle
    /// vertices sharing a parent, if one exists. The shared parent may be
    /// any vertex of the graph, on or off the cycle.
    std::optional<std::vector<VertexId>> find_non_soc_cycle() const {
        for (const auto& cycle : simple_cycles()) {
            bool has_siblings = false;
            for (std::size_t i = 0; i < cycle.size() && !has_siblings; ++i) {
                for (std::size_t j = i + 1; j < cycle.size() && !has_siblings; ++j) {
                    auto pi = parents(cycle[i]);
                    auto pj = parents(cycle[j]);
                    std::vector<VertexId> common;
                    std::set_intersection(pi.begin(), pi.end(), pj.begin(), pj.end(),
                                          std::back_inserter(common));
                    if (!common.empty()) has_siblings = true;
                }
            }
            if (!has_siblings) return cycle;
        }
        return std::nullopt;
    }

    /// True iff every directed cycle contains two distinct vertices with a
    /// common parent (vacuously true for acyclic graphs).
    bool is_soc() const { return !find_non_soc_cycle().has_value(); }

    /// Some cycle with an edge between non-consecutive cycle positions, if
    /// one exists.
    std::optional<ChordWitness> find_chordal_cycle() const {
        for (const auto& cycle : simple_cycles()) {
            const std::size_t len = cycle.size();
            for (std::size_t i = 0; i < len; ++i) {
                for (std::size_t j = 0; j < len; ++j) {
                    if (j == i || j == (i + 1) % len) continue;
                    if (has_edge(cycle[i], cycle[j]))
                        return ChordWitness{cycle, Edge{cycle[i], cycle[j]}};
                }
            }
        }
        return std::nullopt;
    }

    bool has_chordal_cycle() const { return find_chordal_cycle().has_value(); }

    /// Graph with `v` and all incident edges removed.
    Digraph remove_vertex(const VertexId& v) const {
        require_vertex(v);
        std::vector<VertexId> keep;
        for (const auto& u : vertices_)
            if (u != v) keep.push_back(u);
        std::vector<Edge> kept_edges;
        for (const auto& e : edges_)
            if (e.from != v && e.to != v) kept_edges.push_back(e);
        return Digraph(keep, kept_edges);
    }

    /// Same vertices, edges minus `removed`. Every element of `removed`
    /// must be a current edge.
    Digraph remove_edges(const std::set<Edge>& removed) const {
        for (const auto& e : removed)
            if (!edges_.contains(e))
                throw DomainError("cannot remove non-edge " + e.from + " -> " + e.to);
        std::vector<Edge> kept;
        for (const auto& e : edges_)
            if (!removed.contains(e)) kept.push_back(e);
        return Digraph(vertices_, kept);
    }

    /// Connectivity of the underlying undirected graph. Graphs with at most
    /// one vertex count as connected.
    bool weakly_connected() const {
        if (vertices_.size() <= 1) return true;
        auto adj = index_adjacency();
        for (const auto& e : edges_) {
            // add reverse arcs to make the walk undirected
            int u = index_of(e.from), v = index_of(e.to);
            adj[v].push_back(u);
        }
        std::vector<bool> seen(vertices_.size(), false);
        std::vector<int> todo{0};
        seen[0] = true;
        while (!todo.empty()) {
            int u = todo.back();
            todo.pop_back();
            for (int w : adj[u])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push_back(w);
                }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    /// One-line canonical encoding, e.g. "A,B,P|A>B;B>A;P>A;P>B". Equal
    /// strings exactly for equal graphs; used as node key in flow output.
    std::string encode() const {
        std::string out;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i) out += ',';
            out += vertices_[i];
        }
        out += '|';
        bool first = true;
        for (const auto& e : edges_) {
            if (!first) out += ';';
            first = false;
            out += e.from + ">" + e.to;
        }
        return out;
    }

    friend auto operator<=>(const Digraph&, const Digraph&) = default;

    int index_of(const VertexId& v) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end() || *it != v)
            throw DomainError("unknown vertex '" + v + "'");
        return static_cast<int>(it - vertices_.begin());
    }

    /// True when the graph has no directed cycle (Kahn's algorithm).
    bool acyclic() const {
        auto adj = index_adjacency();
        std::vector<int> indeg(vertices_.size(), 0);
        for (const auto& row : adj)
            for (int w : row) ++indeg[w];
        std::vector<int> ready;
        for (std::size_t i = 0; i < indeg.size(); ++i)
            if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
        std::size_t removed = 0;
        while (!ready.empty()) {
            int v = ready.back();
            ready.pop_back();
            ++removed;
            for (int w : adj[v])
                if (--indeg[w] == 0) ready.push_back(w);
        }
        return removed == vertices_.size();
    }

    /// Adjacency as sorted index lists, vertex i = i-th name in order.
    std::vector<std::vector<int>> index_adjacency() const {
        std::vector<std::vector<int>> adj(vertices_.size());
        for (const auto& e : edges_)
            adj[index_of(e.from)].push_back(index_of(e.to));
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }

private:
    void require_vertex(const VertexId& v) const {
        if (!has_vertex(v)) throw DomainError("unknown vertex '" + v + "'");
    }

    std::vector<VertexId> vertices_; // sorted
    std::set<Edge> edges_;
};

/// True iff some vertex bijection maps the edges of `a` onto the edges of
/// `b`. Brute force over permutations; intended for graphs of at most 7 or
/// 8 vertices.
inline bool isomorphic(const Digraph& a, const Digraph& b) {
    const int n = a.size();
    if (n != b.size() || a.edges().size() != b.edges().size()) return false;
    if (n > 8) throw DomainError("isomorphism check limited to 8 vertices");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<bool>> bm(n, std::vector<bool>(n, false));
    for (const auto& e : b.edges()) bm[b.index_of(e.from)][b.index_of(e.to)] = true;
    do {
        bool ok = true;
        for (const auto& e : a.edges()) {
            if (!bm[perm[a.index_of(e.from)]][perm[a.index_of(e.to)]]) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Canonical byte string: "<n>:" followed by the lexicographically smallest
/// row-major adjacency bit matrix over all vertex permutations. Two graphs
/// get the same string exactly when they are isomorphic.
inline std::string canonical_form(const Digraph& d) {
    const int n = d.size();
    if (n > 8) throw DomainError("canonical form limited to 8 vertices");
    std::vector<std::pair<int, int>> arcs;
    for (const auto& e : d.edges())
        arcs.emplace_back(d.index_of(e.from), d.index_of(e.to));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string bits(static_cast<std::size_t>(n) * n, '0');
        for (const auto& [u, v] : arcs) bits[perm[u] * n + perm[v]] = '1';
        if (best.empty() || bits < best) best = std::move(bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(n) + ":" + best;
}

} // namespace causalflow
