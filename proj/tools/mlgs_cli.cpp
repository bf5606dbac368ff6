// mlgs: two-layer multiplex graphlet toolkit.
// Pipeline: generate/ingest -> exact -> sample/experiment -> report,
// plus catalog (type table) and diagnose (chain + bound diagnostics).

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlgs/exact_oracle.hpp"
#include "mlgs/experiment.hpp"
#include "mlgs/explicit_chain.hpp"
#include "mlgs/generators.hpp"
#include "mlgs/graphlets.hpp"
#include "mlgs/iso_coefficients.hpp"
#include "mlgs/json_io.hpp"
#include "mlgs/multiplex_graph.hpp"
#include "mlgs/samplers.hpp"

namespace {

using Json = nlohmann::json;
using namespace mlgs;

int g_log_level = 1; // 0 quiet, 1 info, 2 debug

void log_info(const std::string& line) {
    if (g_log_level >= 1) std::cerr << "[mlgs] " << line << '\n';
}

void print_config(const CLI::App& sub) {
    if (g_log_level < 1) return;
    std::cerr << "[mlgs] resolved config: " << sub.get_name();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_name().empty() || opt->count() == 0) continue;
        std::cerr << ' ' << opt->get_name() << '=';
        const auto& rs = opt->results();
        for (std::size_t i = 0; i < rs.size(); ++i) std::cerr << (i ? "," : "") << rs[i];
    }
    std::cerr << '\n';
}

std::vector<WalkModel> parse_algos(const std::string& csv) {
    std::vector<WalkModel> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) out.push_back(walk_model_from_string(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("--algos needs at least one algorithm");
    return out;
}

std::string describe_structure(const GraphletInfo& info) {
    auto color_name = [](PairColor c) {
        switch (c) {
        case PairColor::blue: return "B";
        case PairColor::red: return "R";
        case PairColor::blue_red: return "BR";
        default: return "-";
        }
    };
    std::string s = info.triangle ? "triangle(" : "path(";
    for (int k = 0; k < (info.triangle ? 3 : 2); ++k) {
        if (k) s += ',';
        s += color_name(info.colors[std::size_t(k)]);
    }
    return s + ")";
}

// ---- subcommand bodies ----------------------------------------------------

struct GlobalFlags {
    std::uint64_t seed = 0;
    int threads = 0;
    bool json = false;
};

void graph_summary(const TwoLayerGraph& g, bool as_json, const std::string& wrote) {
    if (as_json) {
        Json j{{"identities", g.num_identities()},
               {"blue_present", g.num_blue_present()},
               {"red_present", g.num_red_present()},
               {"blue_edges", g.num_blue_edges()},
               {"red_edges", g.num_red_edges()}};
        if (!wrote.empty()) j["path"] = wrote;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "identities " << g.num_identities() << ", blue present " << g.num_blue_present()
                  << ", red present " << g.num_red_present() << ", blue edges " << g.num_blue_edges()
                  << ", red edges " << g.num_red_edges() << '\n';
        if (!wrote.empty()) std::cout << "wrote " << wrote << '\n';
    }
}

int cmd_generate(const GlobalFlags& gf, const std::string& blue, const std::string& red, const std::string& coupling,
                 const std::string& out) {
    GeneratorSpec spec;
    spec.blue = parse_blue_spec(blue);
    spec.red = parse_red_spec(red);
    spec.coupling = coupling_from_string(coupling);
    spec.seed = gf.seed;
    const TwoLayerGraph g = generate(spec);
    save_mlx_file(g, out);
    graph_summary(g, gf.json, out);
    return 0;
}

int cmd_ingest(const GlobalFlags& gf, const std::string& edges, const std::string& red, const std::string& coupling,
               const std::string& out) {
    const TwoLayerGraph g = ingest_edge_list(edges, parse_red_spec(red), coupling_from_string(coupling), gf.seed);
    save_mlx_file(g, out);
    graph_summary(g, gf.json, out);
    return 0;
}

int cmd_exact(const GlobalFlags& gf, const std::string& graph_path, const std::string& out) {
    const TwoLayerGraph g = load_mlx_file(graph_path);
    const GroundTruth truth = count_exact(g, gf.threads);
    const Json j = to_json(truth);
    if (!out.empty()) {
        write_json_file(j, out);
        log_info("wrote " + out);
    }
    if (gf.json || out.empty()) {
        if (gf.json) {
            std::cout << j.dump(2) << '\n';
        } else {
            const auto d = truth.concentrations_restricted();
            std::cout << "type  label                  count        d (over 1..14)\n";
            for (int i = 0; i < kNumGraphletTypes; ++i) {
                const auto& info = graphlet_catalog()[std::size_t(i)];
                std::cout << std::left << std::setw(6) << (i + 1) << std::setw(23) << info.label << std::setw(13)
                          << truth.counts[std::size_t(i)];
                if (i < 14)
                    std::cout << d[std::size_t(i)];
                else
                    std::cout << '-';
                std::cout << '\n';
            }
            std::cout << "total " << truth.total() << " (restricted " << truth.total_restricted() << ")\n";
        }
    }
    return 0;
}

int cmd_sample(const GlobalFlags& gf, const std::string& graph_path, const std::string& algo, std::uint64_t steps,
               std::uint64_t burn_in, int red_hop_budget, double m_external, const std::string& out) {
    const TwoLayerGraph g = load_mlx_file(graph_path);
    const WalkModel model = walk_model_from_string(algo);
    EstimatorOptions opts;
    opts.burn_in = burn_in;
    if (red_hop_budget > 0) opts.red_hop_budget = red_hop_budget;
    const ConcentrationEstimate est = run_estimator(model, g, steps, gf.seed, opts);
    Json j = to_json(est);
    if (m_external > 0) {
        j["M"] = m_external;
        Json counts = Json::array();
        for (double w : est.weight) counts.push_back(w * m_external / double(steps));
        j["C_hat"] = std::move(counts);
    }
    if (!out.empty()) {
        write_json_file(j, out);
        log_info("wrote " + out);
    } else {
        std::cout << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_experiment(const GlobalFlags& gf, const std::string& graph_path, const std::string& algos_csv,
                   std::uint32_t trials, std::uint64_t steps, std::uint64_t stride, std::uint64_t burn_in,
                   bool count_mode, const std::string& truth_path, const std::string& outdir) {
    const TwoLayerGraph g = load_mlx_file(graph_path);
    GroundTruth truth;
    if (!truth_path.empty()) {
        truth = ground_truth_from_json(read_json_file(truth_path));
        log_info("ground truth loaded from " + truth_path);
    } else {
        log_info("counting exact graphlets (no --truth given)");
        truth = count_exact(g, gf.threads);
    }
    ExperimentPlan plan;
    plan.algos = parse_algos(algos_csv);
    plan.trials = trials;
    plan.steps = steps;
    plan.checkpoint_stride = stride;
    plan.base_seed = gf.seed;
    plan.burn_in = burn_in;
    plan.threads = gf.threads;
    plan.count_mode = count_mode;
    log_info("running " + std::to_string(plan.algos.size()) + " algorithms x " + std::to_string(trials) +
             " trials x " + std::to_string(steps) + " steps");
    const MetricSeries series = run_experiment(g, truth, plan);
    emit_report(series, outdir);
    if (gf.json) {
        Json j{{"outdir", outdir},
               {"cells", series.cells.size()},
               {"checkpoints", series.checkpoints},
               {"trials", trials}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "wrote " << outdir << "/results.csv, results.json and " << series.plan.algos.size() * 3
                  << " charts (" << series.cells.size() << " metric cells)\n";
    }
    return 0;
}

int cmd_report(const GlobalFlags& gf, const std::string& results_path, const std::string& outdir) {
    const MetricSeries series = load_results_json(results_path);
    emit_report(series, outdir);
    if (gf.json)
        std::cout << Json{{"outdir", outdir}, {"cells", series.cells.size()}}.dump(2) << '\n';
    else
        std::cout << "re-rendered " << outdir << " from " << results_path << '\n';
    return 0;
}

int cmd_catalog(const GlobalFlags& gf, const std::string& model) {
    std::vector<WalkModel> models;
    if (model.empty())
        models.assign(kAllModels.begin(), kAllModels.end());
    else
        models.push_back(walk_model_from_string(model));

    if (gf.json) {
        Json rows = Json::array();
        for (int i = 0; i < kNumGraphletTypes; ++i) {
            const auto& info = graphlet_catalog()[std::size_t(i)];
            Json alpha;
            for (WalkModel m : models) alpha[to_string(m)] = iso_coefficients(m)[std::size_t(i)];
            rows.push_back(Json{{"type", i + 1},
                                {"label", info.label},
                                {"structure", describe_structure(info)},
                                {"alpha", std::move(alpha)}});
        }
        std::cout << rows.dump(2) << '\n';
        return 0;
    }
    std::cout << std::left << std::setw(6) << "type" << std::setw(23) << "label" << std::setw(16) << "structure";
    for (WalkModel m : models) std::cout << std::setw(8) << to_string(m);
    std::cout << '\n';
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        const auto& info = graphlet_catalog()[std::size_t(i)];
        std::cout << std::left << std::setw(6) << (i + 1) << std::setw(23) << info.label << std::setw(16)
                  << describe_structure(info);
        for (WalkModel m : models) std::cout << std::setw(8) << iso_coefficients(m)[std::size_t(i)];
        std::cout << '\n';
    }
    return 0;
}

int cmd_diagnose(const GlobalFlags& gf, const std::string& graph_path, const std::string& algo,
                 std::size_t max_states, double zeta, std::uint32_t cap, const std::string& out) {
    const TwoLayerGraph g = load_mlx_file(graph_path);
    const WalkModel model = walk_model_from_string(algo);
    const GroundTruth truth = count_exact(g, gf.threads);
    const BoundDiagnostics diag = bound_diagnostics(g, model, truth);
    Json j = to_json(diag);
    j["algo"] = to_string(model);

    // tau needs the chain spelled out; skip gracefully on graphs too large
    j["tau"] = nullptr;
    j["chain"] = nullptr;
    try {
        const ExplicitChain chain = build_explicit_chain(g, model, max_states);
        const auto pi = solve_stationary(chain);
        Json cj{{"states", chain.size()},
                {"rows_sum_to_one", rows_sum_to_one(chain)},
                {"inflow_exact", inflow_holds_exactly(chain)},
                {"proportionality_gap", proportionality_gap(chain, pi)}};
        const auto tau = mixing_time(chain, zeta, cap);
        if (tau) j["tau"] = *tau;
        cj["zeta"] = zeta;
        j["chain"] = std::move(cj);
    } catch (const std::exception& e) {
        log_info(std::string("explicit chain skipped: ") + e.what());
        j["chain_skipped"] = e.what();
    }

    if (!out.empty()) {
        write_json_file(j, out);
        log_info("wrote " + out);
    } else {
        std::cout << j.dump(2) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mlgs: graphlet concentration estimation on two-layer multiplex graphs"};
    app.name("mlgs"); // keep --help output independent of the invocation path
    app.fallthrough(); // allow the global flags after the subcommand name too
    app.require_subcommand(1);
    app.set_config("--config", "", "read flags from a TOML-style key=value file (sections per subcommand)");
    app.get_formatter()->column_width(34);

    GlobalFlags gf;
    std::string log_level = "info";
    app.add_option("--seed", gf.seed, "base RNG seed (default 0)")->capture_default_str();
    app.add_option("--threads", gf.threads, "worker threads; 0 = all cores (env fallback MLG_THREADS)")
        ->envname("MLG_THREADS")
        ->capture_default_str();
    app.add_option("--log-level", log_level, "quiet|info|debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}))
        ->capture_default_str();
    app.add_flag("--json", gf.json, "machine-readable stdout");

    // generate
    auto* gen = app.add_subcommand("generate", "synthesize a two-layer graph and write it as .mlx");
    std::string gen_blue = "er:n=1000,m=5000", gen_red = "er:ratio=0.4", gen_coupling = "one-to-one", gen_out;
    gen->add_option("--blue", gen_blue, "blue layer spec, e.g. er:n=10000,m=95000 | sw:n=...,k=... | ba:n=...,attach_m=...")
        ->capture_default_str();
    gen->add_option("--red", gen_red, "red layer spec, e.g. er:ratio=0.4,rho=0.3 | sw:k=6 | ba:attach_m=2")
        ->capture_default_str();
    gen->add_option("--coupling", gen_coupling, "one-to-one | half-overlap | blue-double")->capture_default_str();
    gen->add_option("-o,--out", gen_out, "output .mlx path")->required();

    // ingest
    auto* ing = app.add_subcommand("ingest", "blue layer from an edge list file, red layer synthesized");
    std::string ing_edges, ing_red = "er:ratio=0.4", ing_coupling = "one-to-one", ing_out;
    ing->add_option("edges", ing_edges, "edge list file (one 'u v' pair per line, # comments)")
        ->required()
        ->check(CLI::ExistingFile);
    ing->add_option("--red", ing_red, "red layer spec")->capture_default_str();
    ing->add_option("--coupling", ing_coupling, "one-to-one | half-overlap | blue-double")->capture_default_str();
    ing->add_option("-o,--out", ing_out, "output .mlx path")->required();

    // exact
    auto* exa = app.add_subcommand("exact", "exhaustive 3-node graphlet counts and concentrations");
    std::string exa_graph, exa_out;
    exa->add_option("graph", exa_graph, "input .mlx graph")->required()->check(CLI::ExistingFile);
    exa->add_option("-o,--out", exa_out, "write ground-truth JSON here");

    // sample
    auto* smp = app.add_subcommand("sample", "single random-walk estimation run");
    std::string smp_graph, smp_algo = "rwnbn", smp_out;
    std::uint64_t smp_steps = 20000, smp_burn = 0;
    int smp_budget = 0;
    double smp_m = 0;
    smp->add_option("graph", smp_graph, "input .mlx graph")->required()->check(CLI::ExistingFile);
    smp->add_option("--algo", smp_algo, "rwnbn|rwebe|rwomrn|rwmix|rwnr")->capture_default_str();
    smp->add_option("--steps", smp_steps, "walk transitions")->capture_default_str();
    smp->add_option("--burn-in", smp_burn, "transitions discarded before accumulation")->capture_default_str();
    smp->add_option("--red-hop-budget", smp_budget, "override red probe depth (1 or 2)")
        ->check(CLI::Range(1, 2));
    smp->add_option("--m", smp_m, "external normalization constant: adds count estimates C_hat = w*M/steps");
    smp->add_option("-o,--out", smp_out, "write result JSON here instead of stdout");

    // experiment
    auto* exp = app.add_subcommand("experiment", "multi-trial MRE/NRMSE convergence study");
    std::string exp_graph, exp_algos = "rwnbn,rwebe,rwomrn,rwmix,rwnr", exp_truth, exp_outdir = "report";
    std::uint32_t exp_trials = 1000;
    std::uint64_t exp_steps = 20000, exp_stride = 2000, exp_burn = 0;
    bool exp_counts = false;
    exp->add_option("graph", exp_graph, "input .mlx graph")->required()->check(CLI::ExistingFile);
    exp->add_option("--algos", exp_algos, "comma-separated algorithm list")->capture_default_str();
    exp->add_option("--trials", exp_trials, "independent walks per algorithm")->capture_default_str();
    exp->add_option("--steps", exp_steps, "transitions per walk")->capture_default_str();
    exp->add_option("--stride", exp_stride, "checkpoint every this many steps")->capture_default_str();
    exp->add_option("--burn-in", exp_burn, "transitions discarded before accumulation")->capture_default_str();
    exp->add_flag("--count-mode", exp_counts, "score count estimates w*M/step against exact counts");
    exp->add_option("--truth", exp_truth, "reuse a ground-truth JSON instead of recounting")->check(CLI::ExistingFile);
    exp->add_option("-o,--out", exp_outdir, "report directory")->capture_default_str();

    // report
    auto* rep = app.add_subcommand("report", "re-render CSV and charts from a results.json");
    std::string rep_results, rep_outdir = "report";
    rep->add_option("results", rep_results, "results.json from a previous experiment")
        ->required()
        ->check(CLI::ExistingFile);
    rep->add_option("-o,--out", rep_outdir, "report directory")->capture_default_str();

    // catalog
    auto* cat = app.add_subcommand("catalog", "the 16 graphlet types and their state coefficients");
    std::string cat_model;
    cat->add_option("--model", cat_model, "print alpha for one model only (default: all five)");

    // diagnose
    auto* dia = app.add_subcommand("diagnose", "bound diagnostics plus explicit-chain checks on small graphs");
    std::string dia_graph, dia_algo = "rwnbn", dia_out;
    std::size_t dia_states = 5000;
    double dia_zeta = 0.125;
    std::uint32_t dia_cap = 4096;
    dia->add_option("graph", dia_graph, "input .mlx graph")->required()->check(CLI::ExistingFile);
    dia->add_option("--algo", dia_algo, "rwnbn|rwebe|rwomrn|rwmix|rwnr")->capture_default_str();
    dia->add_option("--max-states", dia_states, "explicit-chain state cap")->capture_default_str();
    dia->add_option("--zeta", dia_zeta, "mixing-time threshold")->capture_default_str();
    dia->add_option("--cap", dia_cap, "mixing-time step cap")->capture_default_str();
    dia->add_option("-o,--out", dia_out, "write diagnostics JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // help/version exit 0, any usage error exits 1
    }

    if (log_level == "quiet") g_log_level = 0;
    else if (log_level == "debug") g_log_level = 2;

    try {
        CLI::App* sub = app.get_subcommands().front();
        print_config(*sub);
        if (sub == gen) return cmd_generate(gf, gen_blue, gen_red, gen_coupling, gen_out);
        if (sub == ing) return cmd_ingest(gf, ing_edges, ing_red, ing_coupling, ing_out);
        if (sub == exa) return cmd_exact(gf, exa_graph, exa_out);
        if (sub == smp) return cmd_sample(gf, smp_graph, smp_algo, smp_steps, smp_burn, smp_budget, smp_m, smp_out);
        if (sub == exp)
            return cmd_experiment(gf, exp_graph, exp_algos, exp_trials, exp_steps, exp_stride, exp_burn, exp_counts,
                                  exp_truth, exp_outdir);
        if (sub == rep) return cmd_report(gf, rep_results, rep_outdir);
        if (sub == cat) return cmd_catalog(gf, cat_model);
        if (sub == dia) return cmd_diagnose(gf, dia_graph, dia_algo, dia_states, dia_zeta, dia_cap, dia_out);
        std::cerr << "mlgs: unreachable subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mlgs: error: " << e.what() << '\n';
        return 2;
    }
}
