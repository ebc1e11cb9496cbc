#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "causalflow/flow.hpp"
#include "causalflow/io.hpp"
#include "causalflow/superflow.hpp"

using namespace causalflow;

namespace {

const std::string fixtures = CAUSALFLOW_FIXTURES;

Digraph graph(const std::vector<VertexId>& vertices,
              const std::vector<std::pair<VertexId, VertexId>>& edges) {
    std::vector<Edge> es;
    for (const auto& [u, v] : edges) es.push_back(Edge{u, v});
    return Digraph(vertices, es);
}

Digraph common_cause_root() {
    return graph({"A", "B", "P"}, {{"P", "A"}, {"P", "B"}, {"A", "B"}, {"B", "A"}});
}

// A outputs the product of P's and B's outputs, B relays A's output unless
// P emits 1, P is a constant source
CausalModel product_gate_model() {
    SpaceMap spaces{{"A", {2, 2}}, {"B", {2, 2}}, {"P", {1, 2}}};
    std::map<VertexId, std::vector<int>> tables{
        {"A", {0, 0, 0, 1}}, {"B", {0, 0, 1, 0}}, {"P", {0}}};
    return CausalModel(common_cause_root(), spaces, tables);
}

template <typename Parse>
int fail_line(const std::string& text, Parse parse) {
    std::istringstream in(text);
    try {
        parse(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

int graph_fail_line(const std::string& text) {
    return fail_line(text, [](std::istream& in) { parse_digraph(in); });
}

int model_fail_line(const std::string& text) {
    return fail_line(text, [](std::istream& in) { parse_model(in); });
}

int correlation_fail_line(const std::string& text) {
    return fail_line(text, [](std::istream& in) { parse_correlation(in); });
}

int flow_fail_line(const std::string& text) {
    return fail_line(text, [](std::istream& in) { parse_flow(in); });
}

}  // namespace

TEST_CASE("graph text round trip", "[formats]") {
    std::istringstream in("# a comment line\n"
                          "vertices: A B P   # trailing comment\n"
                          "\n"
                          "edge: P -> A\n"
                          "edge: P -> B\n"
                          "edge: A -> B\n"
                          "edge: B -> A\n");
    CHECK(parse_digraph(in) == common_cause_root());

    for (const auto& d : {common_cause_root(), graph({"X9", "Y"}, {}), Digraph({"A"}, {})}) {
        std::ostringstream out;
        write_digraph(out, d);
        std::istringstream back(out.str());
        CHECK(parse_digraph(back) == d);
    }
}

TEST_CASE("graph parse errors carry line numbers", "[formats]") {
    CHECK(graph_fail_line("vertices: A B\nedge: A -> C\n") == 2);
    CHECK(graph_fail_line("vertices: A B\nedge: A -> A\n") == 2);
    CHECK(graph_fail_line("vertices: A B\nedge: A -> B\nedge: A -> B\n") == 3);
    CHECK(graph_fail_line("vertices: A A\n") == 1);
    CHECK(graph_fail_line("vertices: A b!\n") == 1);
    CHECK(graph_fail_line("edge: A -> B\nvertices: A B\n") == 1);
    CHECK(graph_fail_line("vertices: A B\nedge: A => B\n") == 2);
    CHECK(graph_fail_line("vertices: A\nnonsense: 1\n") == 2);
    CHECK(graph_fail_line("# only a comment\n") == 1);  // missing vertices line
    CHECK(graph_fail_line("") == 1);
}

TEST_CASE("fixture graphs load", "[formats]") {
    CHECK(load_digraph(fixtures + "/commoncause.dg") == common_cause_root());
    CHECK(load_digraph(fixtures + "/twocycle.dg") ==
          graph({"A", "B"}, {{"A", "B"}, {"B", "A"}}));
    CHECK_THROWS_AS(load_digraph(fixtures + "/no-such-file.dg"), DomainError);
}

TEST_CASE("model text round trip", "[formats]") {
    auto m = product_gate_model();

    SECTION("fixture with non-canonical parent order") {
        CHECK(load_model(fixtures + "/productgate.cm") == m);
    }

    SECTION("writer emits canonical parent order") {
        std::ostringstream out;
        write_model(out, m);
        CHECK(out.str().find("parents A: B P\n") != std::string::npos);
        CHECK(out.str().find("omega A: 0 0 0 1\n") != std::string::npos);
        CHECK(out.str().find("parents P") == std::string::npos);
        std::istringstream back(out.str());
        CHECK(parse_model(back) == m);
    }

    SECTION("declared order permutes the omega entries") {
        const std::string header = "vertices: A B C\n"
                                   "edge: A -> C\n"
                                   "edge: B -> C\n"
                                   "space A in=1 out=2\n"
                                   "space B in=1 out=3\n"
                                   "space C in=6 out=1\n"
                                   "omega A: 0\n"
                                   "omega B: 0\n";
        std::istringstream swapped(header + "parents C: B A\nomega C: 0 1 2 3 4 5\n");
        CHECK(parse_model(swapped).table("C") == std::vector<int>{0, 2, 4, 1, 3, 5});
        std::istringstream plain(header + "parents C: A B\nomega C: 0 1 2 3 4 5\n");
        CHECK(parse_model(plain).table("C") == std::vector<int>{0, 1, 2, 3, 4, 5});
    }
}

TEST_CASE("model parse errors carry line numbers", "[formats]") {
    const std::string head = "vertices: A B\nedge: A -> B\n";  // lines 1-2
    CHECK(model_fail_line(head + "space A in=2 out=2\nspace B in=2 out=2\n"
                                 "omega A: 0\n") == 6);  // no omega for B
    CHECK(model_fail_line(head + "space A in=2 out=2\nomega A: 0\nomega B: 0 0\n") ==
          6);  // no space for B
    CHECK(model_fail_line(head + "space A in=2 out=2\nspace B in=2 out=2\n"
                                 "omega A: 0\nomega B: 0 0 0\n") == 6);  // omega length
    CHECK(model_fail_line(head + "space A in=2 out=2\nspace B in=2 out=2\n"
                                 "omega A: 0\nomega B: 0 2\n") == 6);  // entry range
    CHECK(model_fail_line(head + "space A in=2 out=2\nspace B in=2 out=2\n"
                                 "parents B: B\nomega A: 0\nomega B: 0 0\n") ==
          5);  // wrong parent set
    CHECK(model_fail_line(head + "space A in=0 out=2\n") == 3);
    CHECK(model_fail_line(head + "omega A: 0\nomega A: 1\n") == 4);
    CHECK(model_fail_line("space A in=2 out=2\n") == 1);  // before vertices
}

TEST_CASE("intervention text round trip", "[formats]") {
    SpaceMap spaces{{"A", {2, 2}}, {"B", {2, 2}}, {"P", {1, 2}}};

    SECTION("echo shorthand") {
        auto ivs = load_interventions(fixtures + "/echo.iv", spaces);
        CHECK(ivs.at("A") == Intervention::echo(2, 2));
        CHECK(ivs.at("P") == Intervention::echo(1, 2));
    }

    SECTION("explicit entries round trip") {
        InterventionMap ivs{{"A", Intervention::echo(2, 2)},
                            {"B", Intervention::universal(2, 2)},
                            {"P", Intervention::echo(1, 2)}};
        std::ostringstream out;
        write_interventions(out, ivs);
        std::istringstream back(out.str());
        CHECK(parse_interventions(back, spaces) == ivs);
    }

    SECTION("parse errors") {
        auto line = [&](const std::string& text) {
            return fail_line(text,
                             [&](std::istream& in) { parse_interventions(in, spaces); });
        };
        CHECK(line("mu X: echo\n") == 1);
        CHECK(line("mu A: echo\nmu A: echo\n") == 2);
        CHECK(line("mu A: (0,0)->(0,0)\n") == 1);  // misses input 1
        CHECK(line("mu A: (0,1)->(0,0) (0,0)->(0,0)\n") == 1);  // out of order
        CHECK(line("mu A: (0,0)->(0,2) (0,1)->(0,0)\n") == 1);  // output too large
        CHECK(line("tau A: echo\n") == 1);
    }
}

TEST_CASE("correlation text round trip", "[formats]") {
    auto m = product_gate_model();
    auto g = contract(m, echo_interventions(m));
    std::ostringstream out;
    write_correlation(out, g);
    std::istringstream back(out.str());
    CHECK(parse_correlation(back) == g);

    auto text = out.str();
    CHECK(text.starts_with("agents: A B P\n"));
    CHECK(text.find("cards P: x=2 a=1\n") != std::string::npos);
    CHECK(text.find("g: (0,0,0) -> (0,0,0)\n") != std::string::npos);
}

TEST_CASE("correlation parse errors carry line numbers", "[formats]") {
    CHECK(correlation_fail_line("agents: B A\n") == 1);
    CHECK(correlation_fail_line("agents: A\ncards A: x=2 a=2\n"
                                "g: (1) -> (0)\n") == 3);  // out of order
    CHECK(correlation_fail_line("agents: A\ncards A: x=2 a=2\n"
                                "g: (0) -> (2)\n") == 3);  // result too large
    CHECK(correlation_fail_line("agents: A\ng: (0) -> (0)\n") == 2);  // no cards
    CHECK(correlation_fail_line("agents: A\ncards A: x=2 a=2\n"
                                "g: (0) -> (0)\n") == 4);  // missing second row
    CHECK(correlation_fail_line("agents: A B\ncards A: x=1 a=1\ncards B: x=1 a=1\n"
                                "g: (0) -> (0)\n") == 4);  // tuple length
    CHECK(correlation_fail_line("") == 1);
}

TEST_CASE("flow text round trip", "[formats]") {
    SECTION("flow of the product gate model") {
        auto flow = build_flow(product_gate_model());
        std::ostringstream out;
        write_flow(out, flow);
        CHECK(out.str().starts_with("node: A,B,P|A>B;B>A;P>A;P>B\n"));
        std::istringstream back(out.str());
        CHECK(parse_flow(back) == flow);
    }

    SECTION("superflow with removal annotations") {
        auto super = build_superflow(common_cause_root());
        std::ostringstream out;
        write_flow(out, super);
        CHECK(out.str().find("[s=P,R={A>B;B>A}]") != std::string::npos);
        std::istringstream back(out.str());
        CHECK(parse_flow(back) == super);
    }

    SECTION("golden files equal freshly built superflows") {
        for (const std::string stem : {"detour", "feedback", "triangle"}) {
            auto root = load_digraph(fixtures + "/" + stem + ".dg");
            CHECK(load_flow(fixtures + "/" + stem + ".flow") == build_superflow(root));
        }
    }

    SECTION("the first node is the root") {
        auto golden = load_flow(fixtures + "/detour.flow");
        CHECK(golden.root.encode() == "A,B,C,P|A>B;A>C;B>A;C>B;P>A;P>B");
    }

    SECTION("parse errors") {
        CHECK(flow_fail_line("node: A|\nflowedge: A| -> B| [s=A]\n") == 2);
        CHECK(flow_fail_line("node: A|\nnode: A|\n") == 2);
        CHECK(flow_fail_line("node: A|B>C\n") == 1);
        CHECK(flow_fail_line("nodes: A|\n") == 1);
        CHECK(flow_fail_line("flowedge: A| -> B|\n") == 1);
        CHECK(flow_fail_line("node: A,B|A>B\nflowedge: A,B|A>B -> A,B|A>B s=A\n") == 2);
        CHECK(flow_fail_line("") == 1);
    }
}

TEST_CASE("dot output", "[formats]") {
    SECTION("flow of the product gate model, exact bytes") {
        auto flow = build_flow(product_gate_model());
        std::ostringstream out;
        write_flow_dot(out, flow);
        CHECK(out.str() == "digraph flow {\n"
                           "  n0 [label=\"A>B;B>A;P>A;P>B\"];\n"
                           "  n1 [label=\"A\", shape=box];\n"
                           "  n2 [label=\"A>B\"];\n"
                           "  n3 [label=\"B>A\"];\n"
                           "  n4 [label=\"B\", shape=box];\n"
                           "  n2 -> n4;\n"
                           "  n3 -> n1;\n"
                           "  n0 -> n2;\n"
                           "  n0 -> n3;\n"
                           "}\n");
    }

    SECTION("annotations become edge labels") {
        auto flow = build_flow(product_gate_model());
        std::ostringstream out;
        write_flow_dot(out, flow, true);
        CHECK(out.str().find("n0 -> n2 [label=\"s=P,o=0\"];") != std::string::npos);
        CHECK(out.str().find("[label=\"s=A,o=0\\ns=A,o=1\"];") != std::string::npos);
    }

    SECTION("boxes mark exactly the leaves") {
        auto super = build_superflow(common_cause_root());
        std::ostringstream out;
        write_flow_dot(out, super);
        auto text = out.str();
        std::size_t boxes = 0;
        for (std::size_t at = text.find("shape=box"); at != std::string::npos;
             at = text.find("shape=box", at + 1))
            ++boxes;
        CHECK(boxes == super.leaves().size());
    }
}
