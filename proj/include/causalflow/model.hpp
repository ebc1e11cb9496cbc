#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalflow/correlations.hpp"
#include "causalflow/digraph.hpp"
#include "causalflow/error.hpp"

namespace causalflow {

/// Cardinalities of one vertex's input and output space. Values range over
/// 0 ... card-1; cardinality 1 encodes a trivial space.
struct SpaceSpec {
    int in_card = 1;
    int out_card = 1;
    friend auto operator<=>(const SpaceSpec&, const SpaceSpec&) = default;
};

using SpaceMap = std::map<VertexId, SpaceSpec>;

/// Local intervention of one agent: a lookup table (setting, input) ->
/// (result, output), flattened as x * in_card + i.
struct Intervention {
    int setting_card = 1;
    int result_card = 1;
    std::vector<int> result_of; // a-component
    std::vector<int> output_of; // o-component

    /// One setting per response function from inputs to outputs: setting x
    /// encodes a function f_x (mixed radix, input 0 least significant), the
    /// output is f_x(i), and the result reports the received input. Settings
    /// therefore exhaust every deterministic local behavior, including the
    /// adaptive ones where the output reacts to the input.
    static Intervention universal(int in_card, int out_card) {
        Intervention iv;
        iv.result_card = in_card;
        iv.setting_card = 1;
        for (int i = 0; i < in_card; ++i) iv.setting_card *= out_card;
        iv.result_of.resize(static_cast<std::size_t>(iv.setting_card) * in_card);
        iv.output_of.resize(static_cast<std::size_t>(iv.setting_card) * in_card);
        for (int x = 0; x < iv.setting_card; ++x)
            for (int i = 0; i < in_card; ++i) {
                int rest = x;
                for (int k = 0; k < i; ++k) rest /= out_card;
                iv.result_of[x * in_card + i] = i;
                iv.output_of[x * in_card + i] = rest % out_card;
            }
        return iv;
    }

    /// The relay intervention: publish the received input as the result and
    /// emit the setting as the output. Settings range over the agent's
    /// output space, results over its input space.
    static Intervention echo(int in_card, int out_card) {
        Intervention iv;
        iv.setting_card = out_card;
        iv.result_card = in_card;
        iv.result_of.resize(static_cast<std::size_t>(out_card) * in_card);
        iv.output_of.resize(static_cast<std::size_t>(out_card) * in_card);
        for (int x = 0; x < out_card; ++x)
            for (int i = 0; i < in_card; ++i) {
                iv.result_of[x * in_card + i] = i;
                iv.output_of[x * in_card + i] = x;
            }
        return iv;
    }

    friend auto operator<=>(const Intervention&, const Intervention&) = default;
};

using InterventionMap = std::map<VertexId, Intervention>;

namespace detail {

/// Mixed-radix helpers for lookup tables indexed lexicographically, first
/// digit most significant.

inline long long table_size(const std::vector<int>& radices) {
    long long total = 1;
    for (int r : radices) total *= r;
    return total;
}

inline int digit_at(long long index, const std::vector<int>& radices, int pos) {
    long long stride = 1;
    for (int k = static_cast<int>(radices.size()) - 1; k > pos; --k) stride *= radices[k];
    return static_cast<int>(index / stride % radices[pos]);
}

/// Positions whose digit can change the table value, i.e. the arguments the
/// function actually depends on.
inline std::vector<int> signaling_positions(const std::vector<int>& table,
                                            const std::vector<int>& radices) {
    std::vector<int> result;
    const int np = static_cast<int>(radices.size());
    for (int pos = 0; pos < np; ++pos) {
        long long stride = 1;
        for (int k = np - 1; k > pos; --k) stride *= radices[k];
        const long long block = stride * radices[pos];
        bool signals = false;
        for (long long base = 0; base < static_cast<long long>(table.size()) && !signals;
             base += block)
            for (long long off = 0; off < stride && !signals; ++off)
                for (int t = 1; t < radices[pos] && !signals; ++t)
                    if (table[base + off + t * stride] != table[base + off]) signals = true;
        if (signals) result.push_back(pos);
    }
    return result;
}

/// Table with the digit at `pos` fixed to `value`; the position disappears.
inline std::vector<int> fix_position(const std::vector<int>& table,
                                     const std::vector<int>& radices, int pos, int value) {
    std::vector<int> rest_radices;
    for (int k = 0; k < static_cast<int>(radices.size()); ++k)
        if (k != pos) rest_radices.push_back(radices[k]);
    const long long rest_size = table_size(rest_radices);
    std::vector<int> out(rest_size);
    for (long long idx = 0; idx < rest_size; ++idx) {
        long long full = 0;
        int kk = 0;
        for (int k = 0; k < static_cast<int>(radices.size()); ++k) {
            int d = (k == pos) ? value : digit_at(idx, rest_radices, kk++);
            full = full * radices[k] + d;
        }
        out[idx] = table[full];
    }
    return out;
}

/// Table restricted to the kept positions; dropped digits are read at 0
/// (callers only drop non-signaling positions, where the choice is moot).
inline std::vector<int> keep_positions(const std::vector<int>& table,
                                       const std::vector<int>& radices,
                                       const std::vector<int>& kept) {
    std::vector<int> kept_radices;
    for (int k : kept) kept_radices.push_back(radices[k]);
    const long long kept_size = table_size(kept_radices);
    std::vector<int> out(kept_size);
    for (long long idx = 0; idx < kept_size; ++idx) {
        long long full = 0;
        for (int k = 0, kk = 0; k < static_cast<int>(radices.size()); ++k) {
            int d = 0;
            if (kk < static_cast<int>(kept.size()) && kept[kk] == k)
                d = digit_at(idx, kept_radices, kk++);
            full = full * radices[k] + d;
        }
        out[idx] = table[full];
    }
    return out;
}

} // namespace detail

/// Signaling status of one declared edge, with evidence: for a signaling
/// edge, a context (outputs of the other parents) and two sender outputs
/// that produce different table values.
struct EdgeSignal {
    Edge edge;
    bool signaling = false;
    std::vector<int> context;
    int low = 0;
    int high = 0;
};

struct FaithfulnessReport {
    bool faithful = true;
    std::vector<EdgeSignal> edges; // one entry per declared edge, sorted
};

struct ConsistencyReport {
    bool consistent = true;
    // on failure: a response family f_v : inputs -> outputs with no unique
    // joint fixed point, plus the fixed points found (zero, or the first two)
    std::map<VertexId, std::vector<int>> family;
    std::vector<std::map<VertexId, int>> fixed_points;
};

/// A deterministic causal model: a digraph together with per-vertex lookup
/// tables mapping the parents' joint output to the vertex's input. Tables
/// are indexed lexicographically over the parents in canonical (sorted)
/// order, first parent most significant.
class CausalModel {
public:
    CausalModel() = default;

    CausalModel(Digraph structure, SpaceMap spaces, std::map<VertexId, std::vector<int>> tables)
        : structure_(std::move(structure)), spaces_(std::move(spaces)),
          tables_(std::move(tables)) {
        for (const auto& v : structure_.vertices()) {
            auto space = spaces_.find(v);
            if (space == spaces_.end())
                throw DomainError("no space declared for vertex '" + v + "'");
            if (space->second.in_card < 1 || space->second.out_card < 1)
                throw DomainError("cardinalities of '" + v + "' must be at least 1");
            auto table = tables_.find(v);
            if (table == tables_.end())
                throw DomainError("no table declared for vertex '" + v + "'");
            const auto radices = parent_radices(v);
            if (static_cast<long long>(table->second.size()) != detail::table_size(radices))
                throw DomainError("table of '" + v + "' has wrong length");
            for (int entry : table->second)
                if (entry < 0 || entry >= space->second.in_card)
                    throw DomainError("table entry of '" + v + "' out of range");
        }
        if (spaces_.size() != structure_.vertices().size())
            throw DomainError("space declared for unknown vertex");
        if (tables_.size() != structure_.vertices().size())
            throw DomainError("table declared for unknown vertex");
    }

    const Digraph& structure() const { return structure_; }
    const SpaceMap& spaces() const { return spaces_; }

    int in_card(const VertexId& v) const { return spaces_.at(v).in_card; }
    int out_card(const VertexId& v) const { return spaces_.at(v).out_card; }

    /// Parents of v in table order.
    std::vector<VertexId> parent_order(const VertexId& v) const { return structure_.parents(v); }

    const std::vector<int>& table(const VertexId& v) const { return tables_.at(v); }

    std::vector<int> parent_radices(const VertexId& v) const {
        std::vector<int> radices;
        for (const auto& p : structure_.parents(v)) radices.push_back(spaces_.at(p).out_card);
        return radices;
    }

    /// Input produced at v by the given parent outputs (canonical order).
    int omega(const VertexId& v, const std::vector<int>& parent_outputs) const {
        const auto radices = parent_radices(v);
        if (parent_outputs.size() != radices.size())
            throw DomainError("wrong number of parent outputs for '" + v + "'");
        long long index = 0;
        for (std::size_t k = 0; k < radices.size(); ++k) {
            if (parent_outputs[k] < 0 || parent_outputs[k] >= radices[k])
                throw DomainError("parent output out of range for '" + v + "'");
            index = index * radices[k] + parent_outputs[k];
        }
        return tables_.at(v)[index];
    }

    /// The structure actually visible in the tables: edge l -> v exactly
    /// when v's table depends on l's output.
    Digraph derived_structure() const {
        std::vector<Edge> edges;
        for (const auto& v : structure_.vertices()) {
            const auto parents = structure_.parents(v);
            const auto radices = parent_radices(v);
            for (int pos : detail::signaling_positions(tables_.at(v), radices))
                edges.push_back({parents[pos], v});
        }
        return Digraph(structure_.vertices(), edges);
    }

    FaithfulnessReport faithfulness_report() const {
        FaithfulnessReport report;
        for (const auto& e : structure_.edges()) {
            const auto parents = structure_.parents(e.to);
            const auto radices = parent_radices(e.to);
            const auto& table = tables_.at(e.to);
            const int pos = static_cast<int>(
                std::lower_bound(parents.begin(), parents.end(), e.from) - parents.begin());
            EdgeSignal signal{e, false, {}, 0, 0};
            long long stride = 1;
            for (int k = static_cast<int>(radices.size()) - 1; k > pos; --k)
                stride *= radices[k];
            const long long block = stride * radices[pos];
            for (long long base = 0; base < static_cast<long long>(table.size()) && !signal.signaling;
                 base += block)
                for (long long off = 0; off < stride && !signal.signaling; ++off)
                    for (int t = 1; t < radices[pos] && !signal.signaling; ++t)
                        if (table[base + off + t * stride] != table[base + off]) {
                            signal.signaling = true;
                            signal.low = 0;
                            signal.high = t;
                            for (std::size_t k = 0; k < radices.size(); ++k)
                                if (static_cast<int>(k) != pos)
                                    signal.context.push_back(
                                        detail::digit_at(base + off, radices, static_cast<int>(k)));
                        }
            if (!signal.signaling) report.faithful = false;
            report.edges.push_back(std::move(signal));
        }
        return report;
    }

    /// Every declared edge signals, i.e. the derived structure equals the
    /// declared one.
    bool is_faithful() const {
        for (const auto& v : structure_.vertices()) {
            const auto radices = parent_radices(v);
            if (detail::signaling_positions(tables_.at(v), radices).size() != radices.size())
                return false;
        }
        return true;
    }

    ConsistencyReport consistency_report() const { return check_consistency(false); }

    bool is_consistent() const { return check_consistency(true).consistent; }

    /// Remove the source s after fixing its output to o_s: children's tables
    /// are partially applied, then every vertex's table is restricted to the
    /// parents it still depends on, so the result is faithful. Consistency
    /// carries over from the input model.
    CausalModel reduce(const VertexId& s, int o_s) const {
        if (!structure_.parents(s).empty())
            throw DomainError("'" + s + "' is not a source");
        if (o_s < 0 || o_s >= out_card(s))
            throw DomainError("output value " + std::to_string(o_s) + " out of range for '" + s +
                              "'");
        const Digraph pruned = structure_.remove_vertex(s);
        SpaceMap spaces;
        std::map<VertexId, std::vector<int>> applied;
        for (const auto& v : pruned.vertices()) {
            spaces[v] = spaces_.at(v);
            const auto parents = structure_.parents(v);
            auto radices = parent_radices(v);
            auto table = tables_.at(v);
            auto it = std::lower_bound(parents.begin(), parents.end(), s);
            if (it != parents.end() && *it == s) {
                const int pos = static_cast<int>(it - parents.begin());
                table = detail::fix_position(table, radices, pos, o_s);
            }
            applied[v] = std::move(table);
        }
        // drop the parents the applied tables no longer depend on
        std::vector<Edge> edges;
        std::map<VertexId, std::vector<int>> tables;
        for (const auto& v : pruned.vertices()) {
            const auto parents = pruned.parents(v);
            std::vector<int> radices;
            for (const auto& p : parents) radices.push_back(spaces.at(p).out_card);
            const auto kept = detail::signaling_positions(applied.at(v), radices);
            for (int pos : kept) edges.push_back({parents[pos], v});
            tables[v] = detail::keep_positions(applied.at(v), radices, kept);
        }
        return CausalModel(Digraph(pruned.vertices(), edges), std::move(spaces),
                           std::move(tables));
    }

    friend auto operator<=>(const CausalModel&, const CausalModel&) = default;

private:
    ConsistencyReport check_consistency(bool verdict_only) const {
        const auto& vs = structure_.vertices();
        const int n = static_cast<int>(vs.size());
        std::vector<int> ins(n), outs(n);
        for (int k = 0; k < n; ++k) {
            ins[k] = in_card(vs[k]);
            outs[k] = out_card(vs[k]);
        }
        // inputs of every vertex for every joint output, precomputed
        const long long joints = detail::table_size(outs);
        std::vector<std::vector<int>> input_at(n, std::vector<int>(joints));
        for (int k = 0; k < n; ++k) {
            const auto parents = structure_.parents(vs[k]);
            std::vector<int> parent_pos;
            for (const auto& p : parents)
                parent_pos.push_back(static_cast<int>(
                    std::lower_bound(vs.begin(), vs.end(), p) - vs.begin()));
            const auto& table = tables_.at(vs[k]);
            const auto radices = parent_radices(vs[k]);
            for (long long joint = 0; joint < joints; ++joint) {
                long long index = 0;
                for (std::size_t j = 0; j < parent_pos.size(); ++j)
                    index = index * radices[j] + detail::digit_at(joint, outs, parent_pos[j]);
                input_at[k][joint] = table[index];
            }
        }
        // response family f_v : inputs -> outputs, advanced like an odometer
        std::vector<std::vector<int>> family(n);
        for (int k = 0; k < n; ++k) family[k].assign(ins[k], 0);
        for (;;) {
            int count = 0;
            long long first = -1, second = -1;
            for (long long joint = 0; joint < joints && count < 2; ++joint) {
                bool fixed = true;
                for (int k = 0; k < n && fixed; ++k)
                    if (family[k][input_at[k][joint]] != detail::digit_at(joint, outs, k))
                        fixed = false;
                if (fixed) {
                    (count == 0 ? first : second) = joint;
                    ++count;
                }
            }
            if (count != 1) {
                ConsistencyReport report;
                report.consistent = false;
                if (!verdict_only) {
                    for (int k = 0; k < n; ++k) report.family[vs[k]] = family[k];
                    for (long long joint : {first, second}) {
                        if (joint < 0) continue;
                        std::map<VertexId, int> point;
                        for (int k = 0; k < n; ++k)
                            point[vs[k]] = detail::digit_at(joint, outs, k);
                        report.fixed_points.push_back(std::move(point));
                    }
                }
                return report;
            }
            // next family
            int k = 0, i = 0;
            for (k = 0; k < n; ++k) {
                for (i = 0; i < ins[k]; ++i) {
                    if (++family[k][i] < outs[k]) break;
                    family[k][i] = 0;
                }
                if (i < ins[k]) break;
            }
            if (k == n) return {};
        }
    }

    Digraph structure_;
    SpaceMap spaces_;
    std::map<VertexId, std::vector<int>> tables_;
};

/// Run the model against one intervention per agent: for each joint setting
/// the unique joint fixed point of outputs determines every agent's input
/// and thereby its result. Requires a consistent model.
inline DeterministicCorrelation contract(const CausalModel& m, const InterventionMap& ivs) {
    const auto& vs = m.structure().vertices();
    const int n = static_cast<int>(vs.size());
    if (ivs.size() != static_cast<std::size_t>(n))
        throw DomainError("need exactly one intervention per agent");
    for (const auto& v : vs) {
        auto it = ivs.find(v);
        if (it == ivs.end()) throw DomainError("no intervention for agent '" + v + "'");
        const auto& iv = it->second;
        const std::size_t cells =
            static_cast<std::size_t>(iv.setting_card) * m.in_card(v);
        if (iv.setting_card < 1 || iv.result_card < 1 || iv.result_of.size() != cells ||
            iv.output_of.size() != cells)
            throw DomainError("malformed intervention for agent '" + v + "'");
        for (int a : iv.result_of)
            if (a < 0 || a >= iv.result_card)
                throw DomainError("intervention result out of range for agent '" + v + "'");
        for (int o : iv.output_of)
            if (o < 0 || o >= m.out_card(v))
                throw DomainError("intervention output out of range for agent '" + v + "'");
    }

    DeterministicCorrelation c;
    c.agents = vs;
    std::vector<int> ins(n), outs(n);
    for (int k = 0; k < n; ++k) {
        ins[k] = m.in_card(vs[k]);
        outs[k] = m.out_card(vs[k]);
        const auto& iv = ivs.at(vs[k]);
        c.setting_cards.push_back(iv.setting_card);
        c.result_cards.push_back(iv.result_card);
    }

    const long long joints = detail::table_size(outs);
    std::vector<std::vector<int>> input_at(n, std::vector<int>(joints));
    for (int k = 0; k < n; ++k) {
        const auto parents = m.structure().parents(vs[k]);
        std::vector<int> parent_pos;
        for (const auto& p : parents)
            parent_pos.push_back(
                static_cast<int>(std::lower_bound(vs.begin(), vs.end(), p) - vs.begin()));
        const auto radices = m.parent_radices(vs[k]);
        for (long long joint = 0; joint < joints; ++joint) {
            long long index = 0;
            for (std::size_t j = 0; j < parent_pos.size(); ++j)
                index = index * radices[j] + detail::digit_at(joint, outs, parent_pos[j]);
            input_at[k][joint] = m.table(vs[k])[index];
        }
    }

    const long long settings = c.setting_count();
    c.table.reserve(settings);
    for (long long setting = 0; setting < settings; ++setting) {
        std::vector<int> x(n);
        for (int k = 0; k < n; ++k) x[k] = c.setting_of(setting, k);
        long long solution = -1;
        int count = 0;
        for (long long joint = 0; joint < joints && count < 2; ++joint) {
            bool fixed = true;
            for (int k = 0; k < n && fixed; ++k) {
                const auto& iv = ivs.at(vs[k]);
                int i = input_at[k][joint];
                if (iv.output_of[x[k] * ins[k] + i] != detail::digit_at(joint, outs, k))
                    fixed = false;
            }
            if (fixed) {
                solution = joint;
                ++count;
            }
        }
        if (count != 1) {
            std::string witness;
            for (int k = 0; k < n; ++k)
                witness += (k ? ", " : "") + ("x_" + vs[k]) + "=" + std::to_string(x[k]);
            throw DomainError(std::string("no unique joint output under setting (") + witness +
                              "); model is not consistent");
        }
        std::vector<int> row(n);
        for (int k = 0; k < n; ++k) {
            const auto& iv = ivs.at(vs[k]);
            int i = input_at[k][solution];
            row[k] = iv.result_of[x[k] * ins[k] + i];
        }
        c.table.push_back(std::move(row));
    }
    return c;
}

/// Echo interventions for every agent of the model.
inline InterventionMap echo_interventions(const CausalModel& m) {
    InterventionMap ivs;
    for (const auto& v : m.structure().vertices())
        ivs[v] = Intervention::echo(m.in_card(v), m.out_card(v));
    return ivs;
}

/// Universal interventions for every agent of the model.
inline InterventionMap universal_interventions(const CausalModel& m) {
    InterventionMap ivs;
    for (const auto& v : m.structure().vertices())
        ivs[v] = Intervention::universal(m.in_card(v), m.out_card(v));
    return ivs;
}

/// Number of distinct table families on the structure, or nullopt when the
/// product exceeds `limit`.
inline std::optional<unsigned long long> count_models(const Digraph& d, const SpaceMap& spaces,
                                                      unsigned long long limit) {
    unsigned long long total = 1;
    for (const auto& v : d.vertices()) {
        long long len = 1;
        for (const auto& p : d.parents(v)) len *= spaces.at(p).out_card;
        const auto in = static_cast<unsigned long long>(spaces.at(v).in_card);
        for (long long k = 0; k < len; ++k) {
            if (total > limit / (in ? in : 1)) return std::nullopt;
            total *= in;
        }
    }
    return total;
}

/// Visit every model with the given structure and spaces. The guard bounds
/// the number of models, not their size.
template <typename Fn>
void for_each_model(const Digraph& d, const SpaceMap& spaces, unsigned long long limit, Fn&& fn) {
    for (const auto& v : d.vertices())
        if (!spaces.contains(v)) throw DomainError("no space declared for vertex '" + v + "'");
    if (!count_models(d, spaces, limit))
        throw DomainError("model family too large (limit " + std::to_string(limit) +
                          "); shrink the spaces or raise the limit");
    std::map<VertexId, std::vector<int>> tables;
    std::vector<VertexId> order; // odometer position per vertex
    for (const auto& v : d.vertices()) {
        long long len = 1;
        for (const auto& p : d.parents(v)) len *= spaces.at(p).out_card;
        tables[v].assign(len, 0);
        order.push_back(v);
    }
    for (;;) {
        fn(CausalModel(d, spaces, tables));
        std::size_t k = 0;
        for (k = 0; k < order.size(); ++k) {
            auto& table = tables[order[k]];
            const int in = spaces.at(order[k]).in_card;
            std::size_t j = 0;
            for (j = 0; j < table.size(); ++j) {
                if (++table[j] < in) break;
                table[j] = 0;
            }
            if (j < table.size()) break;
        }
        if (k == order.size()) return;
    }
}

struct EnumeratedModel {
    CausalModel model;
    bool faithful = false;
    bool consistent = false;
};

/// Materialized enumeration with faithfulness and consistency flags.
inline std::vector<EnumeratedModel> enumerate_models(const Digraph& d, const SpaceMap& spaces,
                                                     unsigned long long limit) {
    std::vector<EnumeratedModel> result;
    for_each_model(d, spaces, limit, [&](CausalModel m) {
        EnumeratedModel item{std::move(m), false, false};
        item.faithful = item.model.is_faithful();
        item.consistent = item.model.is_consistent();
        result.push_back(std::move(item));
    });
    return result;
}

} // namespace causalflow
