// Command-line driver: trace candidate ladders, verify separation witnesses,
// lift two-parameter families through the Hilbert curve, and emit byte-stable
// artifacts (boxes.csv, components.json, witness.json, cells.csv, plot.svg).
//
// Exit codes: 0 success (certificate obtained or witness verified), 2 the
// ladder lost every spanning component (with the level named), 1 any error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "spancert/components.hpp"
#include "spancert/corpus.hpp"
#include "spancert/hilbert.hpp"
#include "spancert/io.hpp"
#include "spancert/separation.hpp"
#include "spancert/trace.hpp"
#include "spancert/witness.hpp"

namespace fs = std::filesystem;
using namespace spancert;

namespace {

struct Options {
    std::string function = "oscillator";
    std::string table;  // tabulated-family JSON; overrides --function
    int cantor_depth = 8;
    int k_start = 2;
    int k_max = 6;
    bool prune = true;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    std::string out;  // artifact directory; empty writes nothing
    std::string claimed_set;
    int curve_order = 0;  // 0 picks floor(k_max / 2)
};

Oracle select_oracle(const Options& opt) {
    if (!opt.table.empty()) return load_tabulated(opt.table);
    return find_oracle(opt.function, opt.cantor_depth);
}

std::ofstream open_out(const fs::path& dir, const char* name) {
    const fs::path p = dir / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error(p.string() + ": cannot write");
    return f;
}

void print_trace_summary(const TraceResult& tr) {
    for (const auto& lt : tr.levels) {
        std::cout << "level " << lt.level << ": " << lt.boxes.size() << " boxes, "
                  << lt.labeling.component_count() << " component"
                  << (lt.labeling.component_count() == 1 ? "" : "s")
                  << (lt.spanning ? ", spanning" : ", no spanning component") << "\n";
    }
    if (!tr.convergence.empty()) {
        std::cout << "convergence:";
        for (double d : tr.convergence) std::cout << ' ' << d;
        std::cout << "\n";
    }
}

void write_trace_artifacts(const Options& opt, const TraceResult& tr, int dim) {
    if (opt.out.empty()) return;
    fs::create_directories(opt.out);
    const auto rows = boxes_rows(tr);
    auto boxes = open_out(opt.out, "boxes.csv");
    write_boxes_csv(boxes, rows, dim);
    auto comps = open_out(opt.out, "components.json");
    write_components_json(comps, tr);
    if (dim == 2) {
        auto svg = open_out(opt.out, "plot.svg");
        write_svg(svg, rows, dim);
    }
}

int finish_trace(const Options& opt, const TraceResult& tr, int dim) {
    print_trace_summary(tr);
    write_trace_artifacts(opt, tr, dim);
    if (tr.outcome != TraceOutcome::SpanningCertified) {
        std::cout << "no spanning component at level " << tr.outcome_level
                  << "; the family is not consistent with a continuous self-map"
                  << "\n";
        return 2;
    }
    std::cout << "spanning component certified through level " << tr.outcome_level
              << "\n";
    return 0;
}

int run_trace(const Options& opt) {
    const Oracle oracle = select_oracle(opt);
    if (oracle.x_domain != unit_domain(oracle.dim)) {
        std::cerr << "error: tracing needs the full unit domain; table \""
                  << oracle.name << "\" is partial\n";
        return 1;
    }
    std::cout << "tracing " << oracle.name << ", levels " << opt.k_start << ".."
              << opt.k_max << (opt.prune ? "" : ", unpruned") << "\n";
    const TraceResult tr = trace(oracle, {opt.k_start, opt.k_max, opt.prune});
    return finish_trace(opt, tr, oracle.dim + 1);
}

int run_lift_trace(const Options& opt) {
    if (!opt.table.empty()) {
        std::cerr << "error: lift-trace supports named two-parameter families only\n";
        return 1;
    }
    const Param2Oracle* base = nullptr;
    static const std::vector<Param2Oracle> families = param2_corpus();
    for (const auto& f : families) {
        if (f.name == opt.function) base = &f;
    }
    if (base == nullptr) {
        std::cerr << "error: unknown two-parameter family \"" << opt.function
                  << "\"; try: ";
        for (const auto& f : families) std::cerr << f.name << ' ';
        std::cerr << "\n";
        return 1;
    }
    const int order = opt.curve_order > 0 ? opt.curve_order : opt.k_max / 2;
    if (opt.k_max < 2 * order) {
        std::cerr << "error: need k-max >= " << 2 * order
                  << " so each t-column fits one curve cell\n";
        return 1;
    }
    const SpaceFillingCurve curve{order};
    const Oracle lifted = lift(*base, curve);
    std::cout << "tracing " << lifted.name << ", levels " << opt.k_start << ".."
              << opt.k_max << "\n";
    const TraceResult tr = trace(lifted, {opt.k_start, opt.k_max, opt.prune});
    const int code = finish_trace(opt, tr, lifted.dim + 1);
    if (code != 0) return code;

    const BoxSet cells = pushforward(curve, limit_estimate(tr));
    const std::int64_t total = std::int64_t{1} << (2 * order);
    std::cout << "curve cells covered: " << cells.size() << " / " << total << "\n";
    if (!opt.out.empty()) {
        fs::create_directories(opt.out);
        auto f = open_out(opt.out, "cells.csv");
        write_cells_csv(f, cells);
    }
    return 0;
}

int run_witness(const Options& opt) {
    const Oracle oracle = select_oracle(opt);
    const BoxSet claimed = load_claimed_set(opt.claimed_set);
    if (claimed.dim() != oracle.dim + 1) {
        std::cerr << "error: claimed set has " << claimed.dim()
                  << " coordinates, family needs " << oracle.dim + 1 << "\n";
        return 1;
    }
    const ComponentLabeling labeling = label_components(claimed);
    if (labeling.any_spanning()) {
        std::cerr << "error: claimed set has spanning component "
                  << labeling.spanning_ids().front()
                  << "; a crossing candidate set admits no separation witness\n";
        return 1;
    }
    const Separation sep = Separation::split(claimed);
    const SeparationWitness w(oracle, sep, claimed);
    const WitnessReport rep = verify_witness(w, opt.samples, opt.seed);

    std::cout << "claimed: " << claimed.size() << " boxes at level " << claimed.level()
              << ", " << labeling.component_count() << " components\n";
    std::cout << "separation: margin " << sep.margin() << ", gap " << sep.gap()
              << "\n";
    std::cout << "epsilon " << w.epsilon() << ", tau " << w.tau() << ", tau_g "
              << w.tau_g() << ", delta " << w.delta() << "\n";
    std::cout << "verified " << rep.samples << " samples (seed " << rep.seed
              << "): " << rep.approx_fixed_count << " approximately fixed, "
              << rep.refutation_count << " refutations\n";
    if (rep.clean()) {
        std::cout << "clean: displaced map moves every sampled near-fixed point\n";
    } else {
        const auto& r = rep.refutations.front();
        std::cout << "REFUTED (" << r.reason << " at t=" << r.p.t
                  << "): the claimed set cannot cover the fixed points\n";
    }
    if (!opt.out.empty()) {
        fs::create_directories(opt.out);
        auto f = open_out(opt.out, "witness.json");
        write_witness_json(f, w, rep);
    }
    return 0;
}

int run_corpus() {
    for (const auto& o : corpus()) {
        std::cout << o.name << ": dim " << o.dim << ", modulus " << o.modulus_desc
                  << "\n";
    }
    for (const auto& f : param2_corpus()) {
        std::cout << f.name << ": dim " << f.dim << ", two parameters, modulus "
                  << f.modulus_desc << "\n";
    }
    return 0;
}

int run_plot(const Options& opt) {
    if (opt.out.empty()) throw std::runtime_error("plot needs --out DIR");
    const fs::path csv = fs::path(opt.out) / "boxes.csv";
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw std::runtime_error(csv.string() + ": cannot open");
    int dim = 0;
    const auto rows = read_boxes_csv(in, csv.string(), &dim);
    auto f = open_out(opt.out, "plot.svg");
    write_svg(f, rows, dim);
    std::cout << "plotted " << rows.size() << " boxes\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"certified spanning components of parametric fixed-point sets"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file; flags override");
    app.allow_config_extras(false);

    app.add_option("--function", opt.function, "corpus family name")
        ->capture_default_str();
    app.add_option("--table", opt.table, "tabulated family JSON file");
    app.add_option("--cantor-depth", opt.cantor_depth,
                   "construction depth for the cantor family")
        ->capture_default_str()
        ->check(CLI::Range(0, kMaxCantorDepth));
    app.add_option("--k-start", opt.k_start, "first grid level")
        ->capture_default_str()
        ->check(CLI::Range(0, kMaxLevel - 2));
    app.add_option("--k-max", opt.k_max, "last grid level")
        ->capture_default_str()
        ->check(CLI::Range(0, kMaxLevel - 2));
    app.add_flag("--prune,!--no-prune", opt.prune,
                 "keep only spanning components between levels")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
    app.add_option("--samples", opt.samples, "witness sample count")
        ->capture_default_str();
    app.add_option("--out", opt.out, "artifact output directory");
    app.add_option("--claimed-set", opt.claimed_set,
                   "claimed candidate set file (one box per line: k j0 j1 ...)");
    app.add_option("--curve-order", opt.curve_order,
                   "space-filling curve order (default k-max / 2)")
        ->check(CLI::Range(1, kMaxCurveOrder));

    auto* trace_cmd =
        app.add_subcommand("trace", "run the candidate ladder on one family");
    auto* witness_cmd = app.add_subcommand(
        "witness", "verify a separation witness against a claimed set");
    auto* lift_cmd = app.add_subcommand(
        "lift-trace", "trace a two-parameter family through the curve");
    auto* corpus_cmd = app.add_subcommand("corpus", "list the built-in families");
    auto* plot_cmd = app.add_subcommand("plot", "re-render plot.svg from boxes.csv");
    for (auto* sub : {trace_cmd, witness_cmd, lift_cmd, corpus_cmd, plot_cmd}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (opt.k_start > opt.k_max) {
            std::cerr << "error: k-start exceeds k-max\n";
            return 1;
        }
        if (trace_cmd->parsed()) return run_trace(opt);
        if (witness_cmd->parsed()) {
            if (opt.claimed_set.empty()) {
                std::cerr << "error: witness needs --claimed-set FILE\n";
                return 1;
            }
            return run_witness(opt);
        }
        if (lift_cmd->parsed()) return run_lift_trace(opt);
        if (corpus_cmd->parsed()) return run_corpus();
        if (plot_cmd->parsed()) return run_plot(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
