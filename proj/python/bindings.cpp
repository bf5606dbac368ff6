#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlgs/exact_oracle.hpp"
#include "mlgs/experiment.hpp"
#include "mlgs/generators.hpp"
#include "mlgs/graphlets.hpp"
#include "mlgs/iso_coefficients.hpp"
#include "mlgs/multiplex_graph.hpp"
#include "mlgs/samplers.hpp"

namespace py = pybind11;
using namespace mlgs;

namespace {

py::dict estimate_to_dict(const ConcentrationEstimate& e) {
    py::dict qs;
    qs["blue_neighbor_queries"] = e.query_stats.blue_neighbor_queries;
    qs["red_of_blue_queries"] = e.query_stats.red_of_blue_queries;
    qs["red_of_red_queries"] = e.query_stats.red_of_red_queries;
    qs["pair_probe_queries"] = e.query_stats.pair_probe_queries;
    qs["total"] = e.query_stats.total();

    py::dict d;
    d["algo"] = to_string(e.algo);
    d["steps"] = e.steps;
    d["seed"] = e.seed;
    d["d_hat"] = e.d_hat;
    d["C_hat_weights"] = e.weight;
    d["degenerate_state_count"] = e.degenerate_states;
    d["unweighted_state_count"] = e.unweighted_states;
    d["query_stats"] = qs;
    return d;
}

py::dict truth_to_dict(const GroundTruth& t) {
    py::dict d;
    d["counts"] = t.counts;
    d["total"] = t.total();
    d["total_restricted"] = t.total_restricted();
    d["concentrations"] = t.concentrations();
    d["concentrations_restricted"] = t.concentrations_restricted();
    return d;
}

} // namespace

PYBIND11_MODULE(_mlgs, m) {
    m.doc() = "Graphlet concentration estimation on two-layer multiplex graphs (core bindings).";

    py::register_exception<ParseError>(m, "MlxParseError", PyExc_ValueError);

    py::class_<TwoLayerGraph>(m, "Graph")
        .def_property_readonly("num_identities", &TwoLayerGraph::num_identities)
        .def_property_readonly("num_blue_edges", &TwoLayerGraph::num_blue_edges)
        .def_property_readonly("num_red_edges", &TwoLayerGraph::num_red_edges)
        .def_property_readonly("num_blue_present", &TwoLayerGraph::num_blue_present)
        .def_property_readonly("num_red_present", &TwoLayerGraph::num_red_present)
        .def("in_blue", &TwoLayerGraph::in_blue, py::arg("u"))
        .def("in_red", &TwoLayerGraph::in_red, py::arg("u"))
        .def("blue_degree", &TwoLayerGraph::blue_degree, py::arg("u"))
        .def("red_degree", &TwoLayerGraph::red_degree, py::arg("u"))
        .def(
            "blue_neighbors",
            [](const TwoLayerGraph& g, IdentityId u) {
                auto s = g.blue_neighbors(u);
                return std::vector<IdentityId>(s.begin(), s.end());
            },
            py::arg("u"))
        .def(
            "red_neighbors",
            [](const TwoLayerGraph& g, IdentityId u) {
                auto s = g.red_neighbors(u);
                return std::vector<IdentityId>(s.begin(), s.end());
            },
            py::arg("u"))
        .def("save", &save_mlx_file, py::arg("path"))
        .def("__eq__", [](const TwoLayerGraph& a, const TwoLayerGraph& b) { return a == b; })
        .def("__repr__", [](const TwoLayerGraph& g) {
            return "Graph(identities=" + std::to_string(g.num_identities()) +
                   ", blue_edges=" + std::to_string(g.num_blue_edges()) +
                   ", red_edges=" + std::to_string(g.num_red_edges()) + ")";
        });

    m.def("load_mlx", &load_mlx_file, py::arg("path"), "Parse an .mlx graph file.");

    m.def(
        "generate",
        [](const std::string& blue, const std::string& red, const std::string& coupling, std::uint64_t seed) {
            GeneratorSpec spec;
            spec.blue = parse_blue_spec(blue);
            spec.red = parse_red_spec(red);
            spec.coupling = coupling_from_string(coupling);
            spec.seed = seed;
            return generate(spec);
        },
        py::arg("blue"), py::arg("red") = "er:ratio=0.4", py::arg("coupling") = "one-to-one", py::arg("seed") = 0,
        "Synthesize a two-layer graph, e.g. generate('er:n=1000,m=5000', 'er:ratio=0.4,rho=0.3').");

    m.def(
        "ingest",
        [](const std::string& path, const std::string& red, const std::string& coupling, std::uint64_t seed) {
            return ingest_edge_list(path, parse_red_spec(red), coupling_from_string(coupling), seed);
        },
        py::arg("path"), py::arg("red") = "er:ratio=0.4", py::arg("coupling") = "one-to-one", py::arg("seed") = 0,
        "Blue layer from an edge list file; red layer synthesized on top.");

    m.def(
        "count_exact",
        [](const TwoLayerGraph& g, int threads) {
            py::gil_scoped_release release;
            const GroundTruth t = count_exact(g, threads);
            py::gil_scoped_acquire acquire;
            return truth_to_dict(t);
        },
        py::arg("graph"), py::arg("threads") = 0, "Exhaustive 3-node graphlet counts and concentrations.");

    m.def(
        "run_estimator",
        [](const std::string& algo, const TwoLayerGraph& g, std::uint64_t steps, std::uint64_t seed,
           std::uint64_t burn_in) {
            const WalkModel model = walk_model_from_string(algo);
            EstimatorOptions opts;
            opts.burn_in = burn_in;
            py::gil_scoped_release release;
            const ConcentrationEstimate e = run_estimator(model, g, steps, seed, opts);
            py::gil_scoped_acquire acquire;
            return estimate_to_dict(e);
        },
        py::arg("algo"), py::arg("graph"), py::arg("steps"), py::arg("seed") = 0, py::arg("burn_in") = 0,
        "One restricted-random-walk estimation run; returns the result-JSON shape as a dict.");

    m.def(
        "compute_m",
        [](const TwoLayerGraph& g, const std::string& algo) { return compute_M(g, walk_model_from_string(algo)); },
        py::arg("graph"), py::arg("algo"), "Normalization constant M (sum of pi-tilde over the state space).");

    m.def(
        "iso_coefficients",
        [](const std::string& algo) {
            const auto& t = iso_coefficients(walk_model_from_string(algo));
            return std::vector<std::uint32_t>(t.begin(), t.end());
        },
        py::arg("algo"), "alpha_1..alpha_16 for one walk model.");

    m.def("catalog", []() {
        py::list rows;
        for (int i = 0; i < kNumGraphletTypes; ++i) {
            const auto& info = graphlet_catalog()[std::size_t(i)];
            py::dict row;
            row["type"] = i + 1;
            row["label"] = info.label;
            row["triangle"] = info.triangle;
            py::dict alpha;
            for (WalkModel w : kAllModels) alpha[py::str(to_string(w))] = iso_coefficients(w)[std::size_t(i)];
            row["alpha"] = alpha;
            rows.append(row);
        }
        return rows;
    });

    m.def(
        "run_experiment",
        [](const TwoLayerGraph& g, const std::vector<std::string>& algos, std::uint32_t trials, std::uint64_t steps,
           std::uint64_t stride, std::uint64_t seed, int threads, bool count_mode) {
            ExperimentPlan plan;
            plan.algos.clear();
            for (const auto& a : algos) plan.algos.push_back(walk_model_from_string(a));
            plan.trials = trials;
            plan.steps = steps;
            plan.checkpoint_stride = stride;
            plan.base_seed = seed;
            plan.threads = threads;
            plan.count_mode = count_mode;
            py::gil_scoped_release release;
            const GroundTruth truth = count_exact(g, threads);
            const MetricSeries s = run_experiment(g, truth, plan);
            py::gil_scoped_acquire acquire;
            py::list cells;
            for (const MetricCell& c : s.cells) {
                py::dict row;
                row["algo"] = to_string(c.algo);
                row["type"] = c.type;
                row["checkpoint"] = c.checkpoint;
                row["mre"] = c.mre;
                row["nrmse"] = c.nrmse;
                cells.append(row);
            }
            py::dict out;
            out["checkpoints"] = s.checkpoints;
            out["truth_d"] = s.truth_d;
            out["cells"] = cells;
            return out;
        },
        py::arg("graph"), py::arg("algos"), py::arg("trials") = 100, py::arg("steps") = 2000,
        py::arg("stride") = 500, py::arg("seed") = 0, py::arg("threads") = 0, py::arg("count_mode") = false,
        "Multi-trial MRE/NRMSE study against the exact counts (walk-scale defaults are test-sized).");
}
