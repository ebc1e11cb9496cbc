#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <set>

#include "causalflow/digraph.hpp"

using causalflow::Digraph;
using causalflow::DomainError;
using causalflow::Edge;
using causalflow::VertexId;

namespace {

Digraph make(std::vector<VertexId> vs, std::vector<std::pair<VertexId, VertexId>> es) {
    std::vector<Edge> edges;
    for (auto& [u, v] : es) edges.push_back({u, v});
    return Digraph(vs, edges);
}

// Reference cycle enumerator: grow simple paths from every vertex and record
// each path that closes back on its start, rotated so the least vertex leads.
// Slow but obviously correct; used to cross-check the production enumerator.
std::vector<std::vector<VertexId>> cycles_by_path_walk(const Digraph& g) {
    std::set<std::vector<VertexId>> found;
    std::vector<VertexId> path;
    std::set<VertexId> on_path;
    std::function<void(const VertexId&)> grow = [&](const VertexId& v) {
        path.push_back(v);
        on_path.insert(v);
        for (const auto& w : g.children(v)) {
            if (w == path.front()) {
                auto rot = path;
                std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
                found.insert(rot);
            } else if (!on_path.contains(w)) {
                grow(w);
            }
        }
        on_path.erase(v);
        path.pop_back();
    };
    for (const auto& v : g.vertices()) grow(v);
    return {found.begin(), found.end()};
}

bool soc_by_definition(const Digraph& g) {
    for (const auto& cycle : cycles_by_path_walk(g)) {
        bool ok = false;
        for (std::size_t i = 0; i < cycle.size() && !ok; ++i)
            for (std::size_t j = i + 1; j < cycle.size() && !ok; ++j) {
                auto pi = g.parents(cycle[i]);
                auto pj = g.parents(cycle[j]);
                for (const auto& p : pi)
                    if (std::binary_search(pj.begin(), pj.end(), p)) {
                        ok = true;
                        break;
                    }
            }
        if (!ok) return false;
    }
    return true;
}

bool chordal_by_definition(const Digraph& g) {
    for (const auto& cycle : cycles_by_path_walk(g)) {
        const std::size_t len = cycle.size();
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j < len; ++j)
                if (j != i && j != (i + 1) % len && g.has_edge(cycle[i], cycle[j]))
                    return true;
    }
    return false;
}

Digraph two_cycle() { return make({"A", "B"}, {{"A", "B"}, {"B", "A"}}); }

Digraph common_cause_root() {
    return make({"A", "B", "P"}, {{"P", "A"}, {"P", "B"}, {"A", "B"}, {"B", "A"}});
}

// n = 4: common cause over a two-cycle, plus a one-way detour A -> F -> B
Digraph detour_root() {
    return make({"A", "B", "F", "P"},
                {{"P", "A"}, {"P", "B"}, {"A", "B"}, {"B", "A"}, {"A", "F"}, {"F", "B"}});
}

// All 64 digraphs on {A, B, C}, indexed by a 6-bit mask over ordered pairs.
Digraph three_vertex_graph(unsigned mask) {
    static const std::vector<std::pair<VertexId, VertexId>> pairs = {
        {"A", "B"}, {"A", "C"}, {"B", "A"}, {"B", "C"}, {"C", "A"}, {"C", "B"}};
    std::vector<Edge> edges;
    for (unsigned bit = 0; bit < 6; ++bit)
        if (mask & (1u << bit)) edges.push_back({pairs[bit].first, pairs[bit].second});
    return Digraph({"A", "B", "C"}, edges);
}

Digraph random_graph(std::mt19937& rng, int n, double p) {
    std::vector<VertexId> vs;
    for (int i = 0; i < n; ++i) vs.push_back(std::string(1, static_cast<char>('A' + i)));
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (const auto& u : vs)
        for (const auto& v : vs)
            if (u != v && coin(rng)) edges.push_back({u, v});
    return Digraph(vs, edges);
}

} // namespace

TEST_CASE("construction validates its input", "[digraph]") {
    CHECK_THROWS_AS(Digraph({"A", "A"}, {}), DomainError);
    CHECK_THROWS_AS(make({"A"}, {{"A", "A"}}), DomainError);
    CHECK_THROWS_AS(make({"A", "B"}, {{"A", "C"}}), DomainError);
    CHECK_THROWS_AS(Digraph({"A", ""}, {}), DomainError);
    CHECK_THROWS_AS(Digraph({"A", "B-1"}, {}), DomainError);
    CHECK_NOTHROW(Digraph({"A1", "b2"}, {}));
}

TEST_CASE("vertex accessors", "[digraph]") {
    auto g = common_cause_root();
    CHECK(g.vertices() == std::vector<VertexId>{"A", "B", "P"});
    CHECK(g.parents("A") == std::vector<VertexId>{"B", "P"});
    CHECK(g.parents("P").empty());
    CHECK(g.children("P") == std::vector<VertexId>{"A", "B"});
    CHECK(g.sources() == std::vector<VertexId>{"P"});
    CHECK(two_cycle().sources().empty());
    CHECK_FALSE(g.is_trivial());
    CHECK(Digraph({"A"}, {}).is_trivial());
    CHECK_THROWS_AS(g.parents("Z"), DomainError);
}

TEST_CASE("duplicate edges collapse", "[digraph]") {
    auto g = make({"A", "B"}, {{"A", "B"}, {"A", "B"}});
    CHECK(g.edges().size() == 1);
}

TEST_CASE("cycles of the detour graph", "[digraph]") {
    auto cycles = detour_root().simple_cycles();
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0] == std::vector<VertexId>{"A", "B"});
    CHECK(cycles[1] == std::vector<VertexId>{"A", "F", "B"});
}

TEST_CASE("cycles of the complete bidirected triangle", "[digraph]") {
    auto g = make({"A", "B", "F"},
                  {{"A", "B"}, {"B", "A"}, {"A", "F"}, {"F", "A"}, {"B", "F"}, {"F", "B"}});
    auto cycles = g.simple_cycles();
    std::vector<std::vector<VertexId>> expected = {
        {"A", "B"}, {"A", "B", "F"}, {"A", "F"}, {"A", "F", "B"}, {"B", "F"}};
    CHECK(cycles == expected);
}

TEST_CASE("cycle enumeration matches the path-walk reference", "[digraph]") {
    SECTION("every three-vertex digraph") {
        for (unsigned mask = 0; mask < 64; ++mask) {
            auto g = three_vertex_graph(mask);
            INFO("mask " << mask);
            CHECK(g.simple_cycles() == cycles_by_path_walk(g));
        }
    }
    SECTION("random graphs on five and six vertices") {
        std::mt19937 rng(20240901);
        for (int trial = 0; trial < 80; ++trial) {
            auto g = random_graph(rng, 5 + trial % 2, 0.35);
            INFO(g.encode());
            CHECK(g.simple_cycles() == cycles_by_path_walk(g));
        }
    }
    SECTION("dense graph") {
        std::mt19937 rng(7);
        auto g = random_graph(rng, 6, 0.9);
        CHECK(g.simple_cycles() == cycles_by_path_walk(g));
    }
}

TEST_CASE("siblings-on-cycles detection", "[digraph]") {
    CHECK(common_cause_root().is_soc());
    CHECK(detour_root().is_soc());
    CHECK_FALSE(two_cycle().is_soc());
    CHECK(two_cycle().find_non_soc_cycle() == std::vector<VertexId>{"A", "B"});

    auto ring = make({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
    CHECK_FALSE(ring.is_soc());
    CHECK(ring.find_non_soc_cycle() == std::vector<VertexId>{"A", "B", "C"});

    // complete bidirected triangle: every cycle has a sibling pair, and for
    // the three-cycles the shared parent sits on the cycle itself
    auto k3 = make({"A", "B", "C"},
                   {{"A", "B"}, {"B", "A"}, {"A", "C"}, {"C", "A"}, {"B", "C"}, {"C", "B"}});
    CHECK(k3.is_soc());

    SECTION("matches the definition on every three-vertex digraph") {
        for (unsigned mask = 0; mask < 64; ++mask) {
            auto g = three_vertex_graph(mask);
            INFO("mask " << mask);
            CHECK(g.is_soc() == soc_by_definition(g));
        }
    }
    SECTION("matches the definition on random graphs") {
        std::mt19937 rng(42);
        for (int trial = 0; trial < 60; ++trial) {
            auto g = random_graph(rng, 5, 0.3);
            INFO(g.encode());
            CHECK(g.is_soc() == soc_by_definition(g));
        }
    }
}

TEST_CASE("chord detection", "[digraph]") {
    CHECK_FALSE(two_cycle().has_chordal_cycle());
    CHECK_FALSE(common_cause_root().has_chordal_cycle());

    // A -> B -> D -> E -> C -> B with shortcuts A -> C and D -> C
    auto g = make({"A", "B", "C", "D", "E"},
                  {{"A", "B"}, {"B", "D"}, {"D", "E"}, {"E", "C"}, {"C", "B"},
                   {"A", "C"}, {"D", "C"}});
    auto witness = g.find_chordal_cycle();
    REQUIRE(witness.has_value());
    CHECK(witness->cycle == std::vector<VertexId>{"B", "D", "E", "C"});
    CHECK(witness->chord == Edge{"D", "C"});

    SECTION("matches the definition on every three-vertex digraph") {
        for (unsigned mask = 0; mask < 64; ++mask) {
            auto g3 = three_vertex_graph(mask);
            INFO("mask " << mask);
            CHECK(g3.has_chordal_cycle() == chordal_by_definition(g3));
        }
    }
    SECTION("matches the definition on random graphs") {
        std::mt19937 rng(43);
        for (int trial = 0; trial < 60; ++trial) {
            auto g5 = random_graph(rng, 5, 0.3);
            INFO(g5.encode());
            CHECK(g5.has_chordal_cycle() == chordal_by_definition(g5));
        }
    }
}

TEST_CASE("vertex and edge removal", "[digraph]") {
    auto g = common_cause_root();
    auto without_p = g.remove_vertex("P");
    CHECK(without_p == two_cycle());
    CHECK_THROWS_AS(g.remove_vertex("Z"), DomainError);

    auto pruned = g.remove_edges({Edge{"A", "B"}});
    CHECK(pruned.edges().size() == 3);
    CHECK_FALSE(pruned.has_edge("A", "B"));
    CHECK(pruned.has_edge("B", "A"));
    CHECK_THROWS_AS(g.remove_edges({Edge{"B", "P"}}), DomainError);
}

TEST_CASE("weak connectivity", "[digraph]") {
    CHECK(common_cause_root().weakly_connected());
    CHECK(Digraph({"A"}, {}).weakly_connected());
    CHECK(Digraph({}, {}).weakly_connected());
    CHECK_FALSE(Digraph({"A", "B"}, {}).weakly_connected());
    CHECK_FALSE(make({"A", "B", "C"}, {{"A", "B"}}).weakly_connected());
    CHECK(make({"A", "B", "C"}, {{"A", "B"}, {"C", "B"}}).weakly_connected());
}

TEST_CASE("one-line encoding", "[digraph]") {
    CHECK(common_cause_root().encode() == "A,B,P|A>B;B>A;P>A;P>B");
    CHECK(Digraph({"B"}, {}).encode() == "B|");
    CHECK(Digraph({}, {}).encode() == "|");
}

TEST_CASE("graph equality is structural", "[digraph]") {
    CHECK(common_cause_root() == common_cause_root());
    CHECK(common_cause_root() != detour_root());
    std::set<Digraph> pool{common_cause_root(), two_cycle(), common_cause_root()};
    CHECK(pool.size() == 2);
}

TEST_CASE("isomorphism by permutation search", "[digraph]") {
    auto path_abc = make({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    auto path_xyz = make({"X", "Y", "Z"}, {{"Z", "Y"}, {"Y", "X"}});
    auto star = make({"A", "B", "C"}, {{"A", "B"}, {"A", "C"}});
    CHECK(isomorphic(path_abc, path_xyz));
    CHECK_FALSE(isomorphic(path_abc, star));
    CHECK_FALSE(isomorphic(path_abc, two_cycle()));
}

TEST_CASE("canonical form agrees with isomorphism", "[digraph]") {
    auto path_abc = make({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    auto path_xyz = make({"X", "Y", "Z"}, {{"Z", "Y"}, {"Y", "X"}});
    CHECK(canonical_form(path_abc) == canonical_form(path_xyz));

    // dual route: the canonical strings coincide exactly when a permutation
    // matching exists, across all pairs of three-vertex digraphs
    std::vector<Digraph> all;
    for (unsigned mask = 0; mask < 64; ++mask) all.push_back(three_vertex_graph(mask));
    for (const auto& a : all)
        for (const auto& b : all) {
            INFO(a.encode() << " vs " << b.encode());
            CHECK((canonical_form(a) == canonical_form(b)) == isomorphic(a, b));
        }
}

TEST_CASE("canonical form format", "[digraph]") {
    CHECK(canonical_form(Digraph({"A"}, {})) == "1:0");
    CHECK(canonical_form(two_cycle()) == "2:0110");
    std::vector<VertexId> nine;
    for (int i = 0; i < 9; ++i) nine.push_back(std::string(1, static_cast<char>('A' + i)));
    CHECK_THROWS_AS(canonical_form(Digraph(nine, {})), DomainError);
}
