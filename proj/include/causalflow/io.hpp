#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "causalflow/correlations.hpp"
#include "causalflow/digraph.hpp"
#include "causalflow/error.hpp"
#include "causalflow/flow.hpp"
#include "causalflow/model.hpp"

namespace causalflow {
namespace detail {

struct Record {
    int number = 0;
    std::vector<std::string> tokens;
};

/// Splits the stream into whitespace-tokenized records, dropping comments
/// (everything after '#') and blank lines. Record numbers are 1-based
/// physical line numbers.
inline std::vector<Record> read_records(std::istream& in) {
    std::vector<Record> out;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream split(raw);
        Record rec;
        rec.number = number;
        std::string tok;
        while (split >> tok) rec.tokens.push_back(std::move(tok));
        if (!rec.tokens.empty()) out.push_back(std::move(rec));
    }
    return out;
}

inline int end_line(const std::vector<Record>& records) {
    return records.empty() ? 1 : records.back().number + 1;
}

inline int parse_number(const std::string& tok, int line, const std::string& what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0)
        throw ParseError(line, "expected a number for " + what + ", got '" + tok + "'");
    return value;
}

/// "A:" -> "A"; the record keyword is already consumed.
inline std::string strip_colon(const std::string& tok, int line) {
    if (tok.size() < 2 || tok.back() != ':')
        throw ParseError(line, "expected '<name>:', got '" + tok + "'");
    return tok.substr(0, tok.size() - 1);
}

/// "in=2" with a fixed key.
inline int parse_assignment(const std::string& tok, const std::string& key, int line) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || tok.substr(0, eq) != key)
        throw ParseError(line, "expected '" + key + "=<number>', got '" + tok + "'");
    return parse_number(tok.substr(eq + 1), line, key);
}

inline std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, sep)) out.push_back(piece);
    return out;
}

/// Inverse of Digraph::encode, e.g. "A,B|A>B;B>A".
inline Digraph decode_digraph(const std::string& text, int line) {
    auto bar = text.find('|');
    if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos)
        throw ParseError(line, "expected '<vertices>|<edges>', got '" + text + "'");
    std::vector<VertexId> vertices;
    for (const auto& name : split_on(text.substr(0, bar), ','))
        vertices.push_back(name);
    std::vector<Edge> edges;
    if (bar + 1 < text.size())
        for (const auto& piece : split_on(text.substr(bar + 1), ';')) {
            auto arrow = piece.find('>');
            if (arrow == std::string::npos)
                throw ParseError(line, "expected '<from>><to>' edge, got '" + piece + "'");
            edges.push_back(Edge{piece.substr(0, arrow), piece.substr(arrow + 1)});
        }
    try {
        return Digraph(vertices, edges);
    } catch (const DomainError& e) {
        throw ParseError(line, e.what());
    }
}

/// "(0,1,2)" -> {0, 1, 2}.
inline std::vector<int> parse_tuple(const std::string& tok, int line, const std::string& what) {
    if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
        throw ParseError(line, "expected a parenthesized tuple for " + what + ", got '" + tok + "'");
    std::vector<int> out;
    for (const auto& piece : split_on(tok.substr(1, tok.size() - 2), ','))
        out.push_back(parse_number(piece, line, what));
    return out;
}

inline std::string format_tuple(const std::vector<int>& values) {
    std::string out = "(";
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(values[k]);
    }
    return out + ")";
}

/// Accumulates `vertices:` and `edge:` records and builds the graph once
/// the file is exhausted. All name checks are line-accurate.
class GraphBuilder {
public:
    bool has_header() const { return have_vertices_; }

    bool knows(const VertexId& v) const { return vertex_set_.contains(v); }

    void take_vertices(const Record& rec) {
        if (have_vertices_) throw ParseError(rec.number, "duplicate vertices line");
        if (rec.tokens.size() < 2) throw ParseError(rec.number, "vertices line lists no names");
        for (std::size_t k = 1; k < rec.tokens.size(); ++k) {
            const auto& name = rec.tokens[k];
            if (!valid_vertex_name(name))
                throw ParseError(rec.number, "invalid vertex name '" + name + "'");
            if (!vertex_set_.insert(name).second)
                throw ParseError(rec.number, "duplicate vertex '" + name + "'");
            vertices_.push_back(name);
        }
        have_vertices_ = true;
    }

    void take_edge(const Record& rec) {
        require_header(rec.number);
        if (rec.tokens.size() != 4 || rec.tokens[2] != "->")
            throw ParseError(rec.number, "expected 'edge: <from> -> <to>'");
        const auto& from = rec.tokens[1];
        const auto& to = rec.tokens[3];
        require_known(from, rec.number);
        require_known(to, rec.number);
        if (from == to) throw ParseError(rec.number, "self-loop " + from + " -> " + to);
        if (!seen_.insert({from, to}).second)
            throw ParseError(rec.number, "duplicate edge " + from + " -> " + to);
        edges_.push_back(Edge{from, to});
    }

    void require_header(int line) const {
        if (!have_vertices_) throw ParseError(line, "vertices line must come first");
    }

    void require_known(const VertexId& v, int line) const {
        if (!knows(v)) throw ParseError(line, "unknown vertex '" + v + "'");
    }

    Digraph build(int eof) const {
        if (!have_vertices_) throw ParseError(eof, "missing vertices line");
        return Digraph(vertices_, edges_);
    }

private:
    bool have_vertices_ = false;
    std::vector<VertexId> vertices_;
    std::set<VertexId> vertex_set_;
    std::vector<Edge> edges_;
    std::set<std::pair<VertexId, VertexId>> seen_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// graph format: `vertices: A B P` then `edge: P -> A` records

inline Digraph parse_digraph(std::istream& in) {
    auto records = detail::read_records(in);
    detail::GraphBuilder g;
    for (const auto& rec : records) {
        const auto& kw = rec.tokens[0];
        if (kw == "vertices:")
            g.take_vertices(rec);
        else if (kw == "edge:")
            g.take_edge(rec);
        else
            throw ParseError(rec.number, "unknown record '" + kw + "' in a graph file");
    }
    return g.build(detail::end_line(records));
}

inline void write_digraph(std::ostream& out, const Digraph& d) {
    out << "vertices:";
    for (const auto& v : d.vertices()) out << ' ' << v;
    out << '\n';
    for (const auto& e : d.edges()) out << "edge: " << e.from << " -> " << e.to << '\n';
}

// ---------------------------------------------------------------------------
// model format: graph records followed by `space`, `parents`, `omega`

inline CausalModel parse_model(std::istream& in) {
    auto records = detail::read_records(in);
    detail::GraphBuilder g;
    std::map<VertexId, SpaceSpec> spaces;
    std::map<VertexId, std::pair<int, std::vector<VertexId>>> parent_order;  // line, names
    std::map<VertexId, std::pair<int, std::vector<int>>> omegas;             // line, entries

    for (const auto& rec : records) {
        const auto& kw = rec.tokens[0];
        if (kw == "vertices:") {
            g.take_vertices(rec);
        } else if (kw == "edge:") {
            g.take_edge(rec);
        } else if (kw == "space") {
            g.require_header(rec.number);
            if (rec.tokens.size() != 4)
                throw ParseError(rec.number, "expected 'space <v> in=<k> out=<k>'");
            const auto& v = rec.tokens[1];
            g.require_known(v, rec.number);
            if (spaces.contains(v)) throw ParseError(rec.number, "duplicate space line for '" + v + "'");
            SpaceSpec spec;
            spec.in_card = detail::parse_assignment(rec.tokens[2], "in", rec.number);
            spec.out_card = detail::parse_assignment(rec.tokens[3], "out", rec.number);
            if (spec.in_card < 1 || spec.out_card < 1)
                throw ParseError(rec.number, "cardinalities of '" + v + "' must be at least 1");
            spaces[v] = spec;
        } else if (kw == "parents") {
            g.require_header(rec.number);
            if (rec.tokens.size() < 2) throw ParseError(rec.number, "expected 'parents <v>: ...'");
            auto v = detail::strip_colon(rec.tokens[1], rec.number);
            g.require_known(v, rec.number);
            if (parent_order.contains(v))
                throw ParseError(rec.number, "duplicate parents line for '" + v + "'");
            std::vector<VertexId> names;
            for (std::size_t k = 2; k < rec.tokens.size(); ++k) {
                g.require_known(rec.tokens[k], rec.number);
                names.push_back(rec.tokens[k]);
            }
            auto sorted = names;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw ParseError(rec.number, "repeated parent in parents line for '" + v + "'");
            parent_order[v] = {rec.number, std::move(names)};
        } else if (kw == "omega") {
            g.require_header(rec.number);
            if (rec.tokens.size() < 2) throw ParseError(rec.number, "expected 'omega <v>: ...'");
            auto v = detail::strip_colon(rec.tokens[1], rec.number);
            g.require_known(v, rec.number);
            if (omegas.contains(v)) throw ParseError(rec.number, "duplicate omega line for '" + v + "'");
            std::vector<int> entries;
            for (std::size_t k = 2; k < rec.tokens.size(); ++k)
                entries.push_back(detail::parse_number(rec.tokens[k], rec.number, "omega entry"));
            omegas[v] = {rec.number, std::move(entries)};
        } else {
            throw ParseError(rec.number, "unknown record '" + kw + "' in a model file");
        }
    }

    const int eof = detail::end_line(records);
    auto graph = g.build(eof);

    std::map<VertexId, std::vector<int>> tables;
    for (const auto& v : graph.vertices()) {
        if (!spaces.contains(v)) throw ParseError(eof, "no space line for vertex '" + v + "'");
        auto omega = omegas.find(v);
        if (omega == omegas.end()) throw ParseError(eof, "no omega line for vertex '" + v + "'");
        const auto [omega_line, entries] = omega->second;

        auto canonical = graph.parents(v);
        std::vector<VertexId> declared = canonical;
        int declared_line = omega_line;
        if (auto it = parent_order.find(v); it != parent_order.end()) {
            declared = it->second.second;
            declared_line = it->second.first;
            auto sorted = declared;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != canonical) {
                std::string want;
                for (const auto& p : canonical) want += (want.empty() ? "" : " ") + p;
                throw ParseError(declared_line,
                                 "parents of '" + v + "' must be exactly {" + want + "}");
            }
        }

        long long expected = 1;
        for (const auto& p : declared) expected *= spaces.at(p).out_card;
        if (std::ssize(entries) != expected)
            throw ParseError(omega_line, "omega of '" + v + "' needs " + std::to_string(expected) +
                                             " entries, got " + std::to_string(entries.size()));
        for (int e : entries)
            if (e >= spaces.at(v).in_card)
                throw ParseError(omega_line, "omega entry " + std::to_string(e) + " of '" + v +
                                                 "' exceeds the input space");

        // re-index from the declared parent order to the canonical one;
        // the first listed parent is the most significant digit
        std::vector<int> canonical_radix, declared_radix;
        for (const auto& p : canonical) canonical_radix.push_back(spaces.at(p).out_card);
        for (const auto& p : declared) declared_radix.push_back(spaces.at(p).out_card);
        std::vector<int> canonical_pos(declared.size());
        for (std::size_t k = 0; k < declared.size(); ++k)
            canonical_pos[k] = static_cast<int>(
                std::lower_bound(canonical.begin(), canonical.end(), declared[k]) -
                canonical.begin());
        std::vector<int> table(entries.size());
        for (long long ci = 0; ci < expected; ++ci) {
            std::vector<int> digits(canonical.size());
            long long rest = ci;
            for (int j = static_cast<int>(canonical.size()) - 1; j >= 0; --j) {
                digits[j] = static_cast<int>(rest % canonical_radix[j]);
                rest /= canonical_radix[j];
            }
            long long di = 0;
            for (std::size_t k = 0; k < declared.size(); ++k)
                di = di * declared_radix[k] + digits[canonical_pos[k]];
            table[ci] = entries[di];
        }
        tables[v] = std::move(table);
    }

    return CausalModel(std::move(graph), std::move(spaces), std::move(tables));
}

inline void write_model(std::ostream& out, const CausalModel& m) {
    write_digraph(out, m.structure());
    for (const auto& v : m.structure().vertices()) {
        out << "space " << v << " in=" << m.in_card(v) << " out=" << m.out_card(v) << '\n';
        auto parents = m.structure().parents(v);
        if (!parents.empty()) {
            out << "parents " << v << ':';
            for (const auto& p : parents) out << ' ' << p;
            out << '\n';
        }
        out << "omega " << v << ':';
        for (int e : m.table(v)) out << ' ' << e;
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// intervention format: `mu <v>: (x,i)->(a,o) ...` or `mu <v>: echo`

inline InterventionMap parse_interventions(std::istream& in, const SpaceMap& spaces) {
    auto records = detail::read_records(in);
    InterventionMap out;
    for (const auto& rec : records) {
        if (rec.tokens[0] != "mu")
            throw ParseError(rec.number, "unknown record '" + rec.tokens[0] +
                                             "' in an intervention file");
        if (rec.tokens.size() < 3) throw ParseError(rec.number, "expected 'mu <v>: ...'");
        auto v = detail::strip_colon(rec.tokens[1], rec.number);
        auto space = spaces.find(v);
        if (space == spaces.end()) throw ParseError(rec.number, "unknown agent '" + v + "'");
        if (out.contains(v)) throw ParseError(rec.number, "duplicate mu line for '" + v + "'");

        if (rec.tokens.size() == 3 && rec.tokens[2] == "echo") {
            out[v] = Intervention::echo(space->second.in_card, space->second.out_card);
            continue;
        }

        Intervention iv;
        const int in_card = space->second.in_card;
        std::vector<std::array<int, 4>> entries;
        for (std::size_t k = 2; k < rec.tokens.size(); ++k) {
            const auto& tok = rec.tokens[k];
            auto arrow = tok.find("->");
            if (arrow == std::string::npos)
                throw ParseError(rec.number, "expected '(x,i)->(a,o)', got '" + tok + "'");
            auto lhs = detail::parse_tuple(tok.substr(0, arrow), rec.number, "setting and input");
            auto rhs = detail::parse_tuple(tok.substr(arrow + 2), rec.number, "result and output");
            if (lhs.size() != 2 || rhs.size() != 2)
                throw ParseError(rec.number, "expected pairs in '(x,i)->(a,o)', got '" + tok + "'");
            entries.push_back({lhs[0], lhs[1], rhs[0], rhs[1]});
        }
        if (entries.size() % in_card != 0)
            throw ParseError(rec.number, "mu of '" + v + "' must cover all " +
                                             std::to_string(in_card) + " inputs per setting");
        iv.setting_card = static_cast<int>(entries.size()) / in_card;
        iv.result_card = 1;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto [x, i, a, o] = entries[k];
            const int want_x = static_cast<int>(k) / in_card;
            const int want_i = static_cast<int>(k) % in_card;
            if (x != want_x || i != want_i)
                throw ParseError(rec.number,
                                 "mu entries of '" + v + "' must walk settings and inputs in " +
                                     "order; expected (" + std::to_string(want_x) + "," +
                                     std::to_string(want_i) + ")");
            if (o >= space->second.out_card)
                throw ParseError(rec.number, "output " + std::to_string(o) + " of '" + v +
                                                 "' exceeds the output space");
            iv.result_of.push_back(a);
            iv.output_of.push_back(o);
            iv.result_card = std::max(iv.result_card, a + 1);
        }
        if (iv.setting_card < 1)
            throw ParseError(rec.number, "mu of '" + v + "' lists no entries");
        out[v] = std::move(iv);
    }
    return out;
}

inline void write_interventions(std::ostream& out, const InterventionMap& ivs) {
    for (const auto& [v, iv] : ivs) {
        out << "mu " << v << ':';
        const int in_card = static_cast<int>(iv.result_of.size()) / iv.setting_card;
        for (int x = 0; x < iv.setting_card; ++x)
            for (int i = 0; i < in_card; ++i)
                out << " (" << x << ',' << i << ")->(" << iv.result_of[x * in_card + i] << ','
                    << iv.output_of[x * in_card + i] << ')';
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// correlation format: `agents:`, `cards <v>: x=<k> a=<k>`, `g:` rows

inline DeterministicCorrelation parse_correlation(std::istream& in) {
    auto records = detail::read_records(in);
    DeterministicCorrelation c;
    bool have_agents = false;
    std::map<VertexId, std::pair<int, int>> cards;
    long long next_row = 0;

    auto agent_pos = [&](const VertexId& v) {
        auto it = std::lower_bound(c.agents.begin(), c.agents.end(), v);
        if (it == c.agents.end() || *it != v) return -1;
        return static_cast<int>(it - c.agents.begin());
    };

    for (const auto& rec : records) {
        const auto& kw = rec.tokens[0];
        if (kw == "agents:") {
            if (have_agents) throw ParseError(rec.number, "duplicate agents line");
            if (rec.tokens.size() < 2) throw ParseError(rec.number, "agents line lists no names");
            for (std::size_t k = 1; k < rec.tokens.size(); ++k)
                c.agents.push_back(rec.tokens[k]);
            if (!std::is_sorted(c.agents.begin(), c.agents.end()) ||
                std::adjacent_find(c.agents.begin(), c.agents.end()) != c.agents.end())
                throw ParseError(rec.number, "agents must be listed sorted without repeats");
            have_agents = true;
        } else if (kw == "cards") {
            if (!have_agents) throw ParseError(rec.number, "agents line must come first");
            if (rec.tokens.size() != 4) throw ParseError(rec.number, "expected 'cards <v>: x=<k> a=<k>'");
            auto v = detail::strip_colon(rec.tokens[1], rec.number);
            if (agent_pos(v) < 0) throw ParseError(rec.number, "unknown agent '" + v + "'");
            if (cards.contains(v)) throw ParseError(rec.number, "duplicate cards line for '" + v + "'");
            int x = detail::parse_assignment(rec.tokens[2], "x", rec.number);
            int a = detail::parse_assignment(rec.tokens[3], "a", rec.number);
            if (x < 1 || a < 1)
                throw ParseError(rec.number, "cardinalities of '" + v + "' must be at least 1");
            cards[v] = {x, a};
        } else if (kw == "g:") {
            if (!have_agents) throw ParseError(rec.number, "agents line must come first");
            if (c.setting_cards.empty()) {
                for (const auto& v : c.agents) {
                    auto it = cards.find(v);
                    if (it == cards.end())
                        throw ParseError(rec.number, "no cards line for agent '" + v + "'");
                    c.setting_cards.push_back(it->second.first);
                    c.result_cards.push_back(it->second.second);
                }
            }
            if (rec.tokens.size() != 4 || rec.tokens[2] != "->")
                throw ParseError(rec.number, "expected 'g: (x...) -> (a...)'");
            auto xs = detail::parse_tuple(rec.tokens[1], rec.number, "settings");
            auto as = detail::parse_tuple(rec.tokens[3], rec.number, "results");
            if (std::ssize(xs) != c.agent_count() || std::ssize(as) != c.agent_count())
                throw ParseError(rec.number, "tuple length must match the agent count");
            if (next_row >= c.setting_count())
                throw ParseError(rec.number, "more rows than joint settings");
            std::vector<int> want(c.agent_count());
            for (int k = 0; k < c.agent_count(); ++k) want[k] = c.setting_of(next_row, k);
            if (xs != want)
                throw ParseError(rec.number, "rows must walk settings in order; expected " +
                                                 detail::format_tuple(want));
            for (int k = 0; k < c.agent_count(); ++k)
                if (as[k] >= c.result_cards[k])
                    throw ParseError(rec.number, "result " + std::to_string(as[k]) + " of '" +
                                                     c.agents[k] + "' exceeds its card");
            c.table.push_back(std::move(as));
            ++next_row;
        } else {
            throw ParseError(rec.number, "unknown record '" + kw + "' in a correlation file");
        }
    }

    const int eof = detail::end_line(records);
    if (!have_agents) throw ParseError(eof, "missing agents line");
    if (c.setting_cards.empty())
        throw ParseError(eof, "missing behavior rows");
    if (next_row < c.setting_count())
        throw ParseError(eof, "missing rows: got " + std::to_string(next_row) + " of " +
                                  std::to_string(c.setting_count()));
    c.validate();
    return c;
}

inline void write_correlation(std::ostream& out, const DeterministicCorrelation& c) {
    out << "agents:";
    for (const auto& v : c.agents) out << ' ' << v;
    out << '\n';
    for (int k = 0; k < c.agent_count(); ++k)
        out << "cards " << c.agents[k] << ": x=" << c.setting_cards[k]
            << " a=" << c.result_cards[k] << '\n';
    for (long long joint = 0; joint < c.setting_count(); ++joint) {
        std::vector<int> xs(c.agent_count());
        for (int k = 0; k < c.agent_count(); ++k) xs[k] = c.setting_of(joint, k);
        out << "g: " << detail::format_tuple(xs) << " -> " << detail::format_tuple(c.table[joint])
            << '\n';
    }
}

// ---------------------------------------------------------------------------
// flow format: `node: <encoded graph>` records (root first), then
// `flowedge: <from> -> <to> [annotation] ...`

inline FlowGraph parse_flow(std::istream& in) {
    auto records = detail::read_records(in);
    FlowGraph flow;
    bool have_root = false;
    for (const auto& rec : records) {
        const auto& kw = rec.tokens[0];
        if (kw == "node:") {
            if (rec.tokens.size() != 2) throw ParseError(rec.number, "expected 'node: <graph>'");
            auto d = detail::decode_digraph(rec.tokens[1], rec.number);
            if (!flow.nodes.insert(d).second)
                throw ParseError(rec.number, "duplicate node " + rec.tokens[1]);
            if (!have_root) {
                flow.root = std::move(d);
                have_root = true;
            }
        } else if (kw == "flowedge:") {
            if (rec.tokens.size() < 4 || rec.tokens[2] != "->")
                throw ParseError(rec.number, "expected 'flowedge: <from> -> <to> [note] ...'");
            auto from = detail::decode_digraph(rec.tokens[1], rec.number);
            auto to = detail::decode_digraph(rec.tokens[3], rec.number);
            if (!flow.nodes.contains(from) || !flow.nodes.contains(to))
                throw ParseError(rec.number, "edge endpoints must be declared as nodes first");
            auto& notes = flow.edges[{std::move(from), std::move(to)}];
            for (std::size_t k = 4; k < rec.tokens.size(); ++k) {
                const auto& tok = rec.tokens[k];
                if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
                    throw ParseError(rec.number, "expected a bracketed annotation, got '" + tok + "'");
                notes.insert(tok.substr(1, tok.size() - 2));
            }
        } else {
            throw ParseError(rec.number, "unknown record '" + kw + "' in a flow file");
        }
    }
    if (!have_root) throw ParseError(detail::end_line(records), "missing node records");
    return flow;
}

inline void write_flow(std::ostream& out, const FlowGraph& flow) {
    out << "node: " << flow.root.encode() << '\n';
    for (const auto& node : flow.nodes)
        if (node != flow.root) out << "node: " << node.encode() << '\n';
    for (const auto& [key, notes] : flow.edges) {
        out << "flowedge: " << key.first.encode() << " -> " << key.second.encode();
        for (const auto& note : notes) out << " [" << note << ']';
        out << '\n';
    }
}

inline FlowGraph load_flow(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse_flow(in);
}

// ---------------------------------------------------------------------------
// DOT emission

namespace detail {

/// Node label: the canonical edge list, or the vertex list when there are
/// no edges.
inline std::string dot_label(const Digraph& d) {
    auto text = d.encode();
    auto bar = text.find('|');
    return bar + 1 < text.size() ? text.substr(bar + 1) : text.substr(0, bar);
}

}  // namespace detail

inline void write_flow_dot(std::ostream& out, const FlowGraph& flow, bool annotate = false) {
    auto leaves = flow.leaves();
    std::map<Digraph, int> ids;
    ids[flow.root] = 0;
    for (const auto& node : flow.nodes)
        if (node != flow.root) ids.emplace(node, static_cast<int>(ids.size()));

    std::vector<const Digraph*> order(ids.size());
    for (const auto& [node, id] : ids) order[id] = &node;

    out << "digraph flow {\n";
    for (std::size_t id = 0; id < order.size(); ++id) {
        out << "  n" << id << " [label=\"" << detail::dot_label(*order[id]) << '"';
        if (leaves.contains(*order[id])) out << ", shape=box";
        out << "];\n";
    }
    for (const auto& [key, notes] : flow.edges) {
        out << "  n" << ids.at(key.first) << " -> n" << ids.at(key.second);
        if (annotate && !notes.empty()) {
            out << " [label=\"";
            bool first = true;
            for (const auto& note : notes) {
                if (!first) out << "\\n";
                out << note;
                first = false;
            }
            out << "\"]";
        }
        out << ";\n";
    }
    out << "}\n";
}

// ---------------------------------------------------------------------------
// file helpers

inline Digraph load_digraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse_digraph(in);
}

inline CausalModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse_model(in);
}

inline InterventionMap load_interventions(const std::string& path, const SpaceMap& spaces) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse_interventions(in, spaces);
}

inline DeterministicCorrelation load_correlation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse_correlation(in);
}

}  // namespace causalflow
