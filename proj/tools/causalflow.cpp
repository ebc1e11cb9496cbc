// causalflow: command-line front end for digraph analysis, model checking,
// flow and superflow construction, contraction, and the property suites.
//
// Exit codes: 0 success, 1 domain error, 2 parse error (message names the
// offending line). The CAUSALFLOW_LIMIT environment variable raises the
// vertex-count guard of the enumerate command.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "causalflow/enumerate.hpp"
#include "causalflow/io.hpp"
#include "causalflow/model.hpp"
#include "causalflow/superflow.hpp"
#include "causalflow/validate.hpp"

using namespace causalflow;

namespace {

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw DomainError("cannot open '" + path + "' for writing");
    return file;
}

std::string join(const std::vector<VertexId>& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += ' ';
        out += v;
    }
    return out;
}

int guard_cap(int fallback) {
    if (const char* raw = std::getenv("CAUSALFLOW_LIMIT")) {
        const int v = std::atoi(raw);
        if (v >= 1) return v;
    }
    return fallback;
}

void emit_flow(const FlowGraph& flow, const std::string& out_path, bool want_dot,
               const std::string& dot_path, bool annotate) {
    std::ofstream file;
    if (want_dot) {
        write_flow_dot(open_sink(dot_path, file), flow, annotate);
    } else {
        write_flow(open_sink(out_path, file), flow);
    }
}

void print_leaves(std::ostream& out, const FlowGraph& super) {
    const auto leaves = super.leaves();
    int nontrivial = 0;
    for (const auto& leaf : leaves)
        if (!leaf.is_trivial()) ++nontrivial;
    out << "leaves: " << leaves.size() << " (nontrivial: " << nontrivial << ")\n";
    for (const auto& leaf : leaves)
        out << "leaf " << leaf.encode() << (leaf.is_trivial() ? " trivial" : " nontrivial")
            << "\n";
}

void print_order_tree(std::ostream& out, const CausalOrderTree& tree, int depth) {
    const std::string pad(2 * depth, ' ');
    if (!tree.leader) {
        out << pad << "no agents\n";
        return;
    }
    out << pad << "leader " << *tree.leader << "\n";
    for (std::size_t x = 0; x < tree.branches.size(); ++x) {
        out << pad << "  setting " << x << " -> result " << tree.leader_results[x];
        if (tree.branches[x].leader) {
            out << ", then:\n";
            print_order_tree(out, tree.branches[x], depth + 2);
        } else {
            out << "\n";
        }
    }
}

void print_sweep(std::ostream& out, const SweepReport& report, bool sampled, int graphs,
                 int models, unsigned seed) {
    if (sampled)
        out << "mode: sampled graphs=" << graphs << " models=" << models << " seed=" << seed
            << "\n";
    else
        out << "mode: exhaustive\n";
    out << "digraphs: " << report.digraphs << "\n";
    out << "models: " << report.models << "\n";
    out << "checks: " << report.checks << "\n";
    out << "failures: " << report.failures << "\n";
    for (const auto& line : report.failure_notes) out << "note: " << line << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flows and superflows of deterministic cyclic causal models"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string input;
    std::string second;
    std::string out_path;
    std::string dot_path;
    bool annotate = false;
    bool classify = false;
    bool widen = false;
    bool f_connected = false, f_cyclic = false, f_acyclic = false, f_soc = false;
    bool f_source = false, f_chordal = false;
    int n = 0;
    int sample_graphs = 40;
    int sample_models = 24;
    unsigned seed = 20260825u;

    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write to this path instead of stdout");
    };

    auto* soc = app.add_subcommand("soc", "check that every cycle has two vertices sharing a parent");
    soc->add_option("graph", input, "digraph file")->required();
    add_out(soc);
    soc->callback([&] {
        const auto d = load_digraph(input);
        const auto bad = d.find_non_soc_cycle();
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        out << "SOC: " << (bad ? "false" : "true") << "\n";
        if (bad) out << "cycle: " << join(*bad) << "\n";
    });

    auto* chordal = app.add_subcommand("chordal", "look for a cycle with a chord");
    chordal->add_option("graph", input, "digraph file")->required();
    add_out(chordal);
    chordal->callback([&] {
        const auto witness = load_digraph(input).find_chordal_cycle();
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        out << "chordal cycle: " << (witness ? "true" : "false") << "\n";
        if (witness) {
            out << "cycle: " << join(witness->cycle) << "\n";
            out << "chord: " << witness->chord.from << " -> " << witness->chord.to << "\n";
        }
    });

    auto* faithful = app.add_subcommand("faithful", "check that every declared edge signals");
    faithful->add_option("model", input, "model file")->required();
    add_out(faithful);
    faithful->callback([&] {
        const auto report = load_model(input).faithfulness_report();
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        out << "faithful: " << (report.faithful ? "true" : "false") << "\n";
        for (const auto& signal : report.edges) {
            out << "edge " << signal.edge.from << " -> " << signal.edge.to;
            if (signal.signaling)
                out << " signals at context " << detail::format_tuple(signal.context)
                    << " with outputs " << signal.low << " vs " << signal.high << "\n";
            else
                out << " never signals\n";
        }
    });

    auto* consistent =
        app.add_subcommand("consistent", "check that every response family has a unique fixed point");
    consistent->add_option("model", input, "model file")->required();
    add_out(consistent);
    consistent->callback([&] {
        const auto report = load_model(input).consistency_report();
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        out << "consistent: " << (report.consistent ? "true" : "false") << "\n";
        if (!report.consistent) {
            out << "response family:\n";
            for (const auto& [v, fn] : report.family) {
                out << "  " << v << ":";
                for (int o : fn) out << ' ' << o;
                out << "\n";
            }
            out << "joint fixed points: " << report.fixed_points.size() << "\n";
            for (const auto& fp : report.fixed_points) {
                out << " ";
                for (const auto& [v, o] : fp) out << ' ' << v << '=' << o;
                out << "\n";
            }
        }
    });

    auto* flow = app.add_subcommand("flow", "build the flow of a model");
    flow->add_option("model", input, "model file")->required();
    auto* flow_dot = flow->add_option("--dot", dot_path, "write DOT to this path ('-' for stdout)");
    flow->add_flag("--annotate", annotate, "label DOT edges with their reduction steps");
    add_out(flow);
    flow->callback([&] {
        const auto m = load_model(input);
        if (!m.is_faithful()) std::cerr << "warning: not every declared edge signals\n";
        if (!m.is_consistent())
            std::cerr << "warning: some response family lacks a unique joint fixed point\n";
        emit_flow(build_flow(m), out_path, flow_dot->count() > 0, dot_path, annotate);
    });

    auto* superflow = app.add_subcommand("superflow", "build the superflow of a digraph");
    superflow->add_option("graph", input, "digraph file")->required();
    auto* super_dot =
        superflow->add_option("--dot", dot_path, "write DOT to this path ('-' for stdout)");
    superflow->add_flag("--annotate", annotate, "label DOT edges with their reduction steps");
    add_out(superflow);
    superflow->callback([&] {
        const auto super = build_superflow(load_digraph(input), &std::cerr);
        emit_flow(super, out_path, super_dot->count() > 0, dot_path, annotate);
    });

    auto* certify =
        app.add_subcommand("certify", "decide whether a structure only produces causal correlations");
    certify->add_option("graph", input, "digraph file")->required();
    add_out(certify);
    certify->callback([&] {
        const auto super = build_superflow(load_digraph(input));
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        out << "causal-only: " << (super.all_leaves_trivial() ? "true" : "false") << "\n";
        print_leaves(out, super);
    });

    auto* contract_cmd = app.add_subcommand("contract", "contract a model against interventions");
    contract_cmd->add_option("model", input, "model file")->required();
    contract_cmd->add_option("interventions", second, "interventions file")->required();
    add_out(contract_cmd);
    contract_cmd->callback([&] {
        const auto m = load_model(input);
        const auto ivs = load_interventions(second, m.spaces());
        std::ofstream file;
        write_correlation(open_sink(out_path, file), contract(m, ivs));
    });

    auto* causal = app.add_subcommand("causal-check", "test a correlation for a causal decomposition");
    causal->add_option("correlation", input, "correlation file")->required();
    add_out(causal);
    causal->callback([&] {
        const auto tree = causal_decomposition(load_correlation(input));
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        out << "causal: " << (tree ? "true" : "false") << "\n";
        if (tree) print_order_tree(out, *tree, 0);
    });

    auto* enumerate = app.add_subcommand("enumerate", "enumerate labeled digraphs on n vertices");
    enumerate->add_option("-n,--vertices", n, "vertex count")->required();
    enumerate->add_flag("--connected", f_connected, "keep weakly connected digraphs");
    auto* cyc_flag = enumerate->add_flag("--cyclic", f_cyclic, "keep digraphs with a cycle");
    auto* acyc_flag = enumerate->add_flag("--acyclic", f_acyclic, "keep acyclic digraphs");
    cyc_flag->excludes(acyc_flag);
    enumerate->add_flag("--soc", f_soc, "keep digraphs where every cycle has a sibling pair");
    enumerate->add_flag("--with-source", f_source, "keep digraphs with at least one source");
    enumerate->add_flag("--chordal", f_chordal, "keep digraphs with a chorded cycle");
    enumerate->add_flag("--classify", classify,
                        "group into isomorphism classes, build each superflow, emit CSV");
    add_out(enumerate);
    enumerate->callback([&] {
        const int cap = guard_cap(classify ? 4 : 5);
        if (n > cap)
            throw DomainError("n=" + std::to_string(n) + " exceeds the enumeration guard (" +
                              std::to_string(cap) + "); set CAUSALFLOW_LIMIT to raise it");
        DigraphFilters filters;
        bool any = false;
        if (f_connected) filters.connected = true, any = true;
        if (f_cyclic) filters.cyclic = true, any = true;
        if (f_acyclic) filters.cyclic = false, any = true;
        if (f_soc) filters.soc = true, any = true;
        if (f_source) filters.with_source = true, any = true;
        if (f_chordal) filters.chordal = true, any = true;
        std::ofstream file;
        auto& out = open_sink(out_path, file);
        if (classify) {
            write_classification_csv(out, classify_gap(n, any ? filters : catalog_filters()));
        } else {
            long long count = 0;
            for_each_digraph(n, filters, [&](const Digraph& d) {
                out << d.encode() << "\n";
                ++count;
            });
            out << "total: " << count << "\n";
        }
    });

    auto add_sampling = [&](CLI::App* cmd) {
        cmd->add_option("-n,--vertices", n, "vertex count")->required();
        cmd->add_option("--graphs", sample_graphs, "sampled digraphs when n >= 4");
        cmd->add_option("--models", sample_models, "sampled models per digraph when n >= 4");
        cmd->add_option("--seed", seed, "sampling seed");
        add_out(cmd);
    };

    auto run_sweep = [&](const SweepReport& report, bool sampled) {
        std::ofstream file;
        print_sweep(open_sink(out_path, file), report, sampled, sample_graphs, sample_models,
                    seed);
        if (report.failures > 0) exit_code = 1;
    };

    auto* thm1 = app.add_subcommand(
        "validate-thm1", "faithful consistent models stay consistent under source reduction");
    add_sampling(thm1);
    thm1->callback([&] {
        if (n > 8) throw DomainError("sampled validation supports at most 8 vertices");
        const bool sampled = n >= 4;
        run_sweep(sampled ? sample_reduction_consistency(n, sample_graphs, sample_models, seed,
                                                         true)
                          : check_reduction_consistency(n, true),
                  sampled);
    });

    auto* thm2 = app.add_subcommand(
        "validate-thm2", "faithful consistent models live on SOC structures");
    add_sampling(thm2);
    thm2->callback([&] {
        if (n > 8) throw DomainError("sampled validation supports at most 8 vertices");
        const bool sampled = n >= 4;
        run_sweep(sampled ? sample_admissibility(n, sample_graphs, sample_models, seed)
                          : check_admissibility(n),
                  sampled);
    });

    auto* thm3 = app.add_subcommand(
        "validate-thm3", "certified structures produce causally decomposable correlations");
    add_sampling(thm3);
    thm3->add_flag("--widen", widen,
                   "also contract against the full deterministic intervention family");
    thm3->callback([&] {
        if (n > 3)
            throw DomainError("causal-correlation validation supports 1 to 3 vertices");
        run_sweep(check_causal_correlations(n, widen), false);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const causalflow::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
