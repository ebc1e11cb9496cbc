#include <catch2/catch_amalgamated.hpp>

#include "causalflow/flow.hpp"

using causalflow::AnnotatedFlow;
using causalflow::build_annotated_flow;
using causalflow::build_flow;
using causalflow::CausalModel;
using causalflow::Digraph;
using causalflow::DomainError;
using causalflow::Edge;
using causalflow::FlowGraph;
using causalflow::SpaceMap;
using causalflow::VertexId;

namespace {

Digraph graph(std::vector<VertexId> vs, std::vector<std::pair<VertexId, VertexId>> es) {
    std::vector<Edge> edges;
    for (auto& [u, v] : es) edges.push_back({u, v});
    return Digraph(vs, edges);
}

CausalModel product_gate_model() {
    Digraph d = graph({"A", "B", "P"}, {{"P", "A"}, {"P", "B"}, {"A", "B"}, {"B", "A"}});
    SpaceMap spaces{{"A", {2, 2}}, {"B", {2, 2}}, {"P", {1, 2}}};
    return CausalModel(d, spaces, {{"A", {0, 0, 0, 1}}, {"B", {0, 0, 1, 0}}, {"P", {0}}});
}

std::set<std::string> encodings(const std::set<Digraph>& nodes) {
    std::set<std::string> out;
    for (const auto& d : nodes) out.insert(d.encode());
    return out;
}

} // namespace

TEST_CASE("flow of the product-gate model", "[flow]") {
    auto flow = build_flow(product_gate_model());
    CHECK(flow.root.encode() == "A,B,P|A>B;B>A;P>A;P>B");
    CHECK(encodings(flow.nodes) ==
          std::set<std::string>{"A,B,P|A>B;B>A;P>A;P>B", "A,B|A>B", "A,B|B>A", "A|", "B|"});
    REQUIRE(flow.edges.size() == 4);

    auto note = [&](const std::string& from, const std::string& to) {
        for (const auto& [key, notes] : flow.edges)
            if (key.first.encode() == from && key.second.encode() == to) return notes;
        FAIL("missing edge " << from << " => " << to);
        return std::set<std::string>{};
    };
    CHECK(note("A,B,P|A>B;B>A;P>A;P>B", "A,B|A>B") == std::set<std::string>{"s=P,o=0"});
    CHECK(note("A,B,P|A>B;B>A;P>A;P>B", "A,B|B>A") == std::set<std::string>{"s=P,o=1"});
    // both outputs of the remaining source lead to the same single vertex
    CHECK(note("A,B|A>B", "B|") == std::set<std::string>{"s=A,o=0", "s=A,o=1"});
    CHECK(note("A,B|B>A", "A|") == std::set<std::string>{"s=B,o=0", "s=B,o=1"});

    CHECK(flow.layer_sizes() == std::vector<int>{1, 2, 2});
    CHECK(encodings(flow.leaves()) == std::set<std::string>{"A|", "B|"});
    CHECK(flow.all_leaves_trivial());
    CHECK(nontrivial_leaves_with_source(flow).empty());
}

TEST_CASE("annotated flow keeps distinct parameters apart", "[flow]") {
    auto annotated = build_annotated_flow(product_gate_model());
    // the two branches reach {A} and {B} with two constant tables each
    CHECK(annotated.nodes.size() == 7);
    CHECK(nontrivial_leaves_with_source(annotated).empty());
    // stripping parameters merges them
    CHECK(build_flow(product_gate_model()).nodes.size() == 5);
}

TEST_CASE("flow rejects unusable models", "[flow]") {
    Digraph loop = graph({"A", "B"}, {{"A", "B"}, {"B", "A"}});
    SpaceMap binary{{"A", {2, 2}}, {"B", {2, 2}}};
    CausalModel inconsistent(loop, binary, {{"A", {0, 1}}, {"B", {0, 1}}});
    CHECK_THROWS_WITH(build_flow(inconsistent), Catch::Matchers::ContainsSubstring("consistent"));

    Digraph d = graph({"A", "B"}, {{"A", "B"}});
    CausalModel deaf(d, {{"A", {1, 2}}, {"B", {2, 2}}}, {{"A", {0}}, {"B", {0, 0}}});
    CHECK_THROWS_WITH(build_flow(deaf), Catch::Matchers::ContainsSubstring("A -> B"));
}

TEST_CASE("flow of a directed path is a directed line", "[flow]") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<VertexId> vs;
        for (int k = 0; k < n; ++k) vs.push_back(std::string(1, static_cast<char>('A' + k)));
        std::vector<Edge> edges;
        for (int k = 0; k + 1 < n; ++k) edges.push_back({vs[k], vs[k + 1]});
        Digraph d(vs, edges);
        SpaceMap spaces;
        std::map<VertexId, std::vector<int>> tables;
        for (int k = 0; k < n; ++k) {
            spaces[vs[k]] = {k == 0 ? 1 : 2, 2};
            tables[vs[k]] = k == 0 ? std::vector<int>{0} : std::vector<int>{0, 1};
        }
        auto flow = build_flow(CausalModel(d, spaces, tables));
        INFO("path on " << n << " vertices");
        CHECK(flow.nodes.size() == static_cast<std::size_t>(n));
        CHECK(flow.edges.size() == static_cast<std::size_t>(n - 1));
        std::vector<int> expected_layers(n, 1);
        CHECK(flow.layer_sizes() == expected_layers);
        CHECK(flow.all_leaves_trivial());
    }
}

TEST_CASE("single-vertex flow", "[flow]") {
    CausalModel lone(Digraph({"A"}, {}), {{"A", {2, 3}}}, {{"A", {1}}});
    auto flow = build_flow(lone);
    CHECK(flow.nodes.size() == 1);
    CHECK(flow.edges.empty());
    CHECK(flow.all_leaves_trivial());
}

TEST_CASE("every flow node is a consistent faithful reduction", "[flow]") {
    auto annotated = build_annotated_flow(product_gate_model());
    for (const auto& node : annotated.nodes) {
        CHECK(node.is_consistent());
        CHECK(node.is_faithful());
    }
    // each edge drops exactly one vertex
    for (const auto& [key, notes] : annotated.edges)
        CHECK(key.first.structure().size() == key.second.structure().size() + 1);
}
