#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparselocal/edgelist_io.hpp"
#include "sparselocal/errors.hpp"
#include "sparselocal/expansion.hpp"
#include "sparselocal/experiments.hpp"
#include "sparselocal/generators.hpp"
#include "sparselocal/graph.hpp"
#include "sparselocal/local_stats.hpp"
#include "sparselocal/rng.hpp"
#include "sparselocal/scattered.hpp"
#include "sparselocal/subgraph_iso.hpp"
#include "sparselocal/version.hpp"

namespace py = pybind11;
using namespace sparselocal;

namespace {

TrialConfig make_trial_config(double epsilon, long long trials, double ball_cap,
                              long long max_embeddings_per_ball, long long reps) {
  TrialConfig cfg;
  cfg.epsilon = epsilon;
  cfg.trials = trials;
  cfg.ball_cap = ball_cap;
  cfg.max_embeddings_per_ball = max_embeddings_per_ball;
  cfg.reps = reps;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Local-structure toolkit for sparse random graphs";
  m.attr("__version__") = kVersion;
  m.attr("RNG_ID") = kRngId;

  py::register_exception<capacity_error>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<undecided_error>(m, "UndecidedError", PyExc_RuntimeError);

  py::class_<Seed>(m, "Seed")
      .def(py::init<std::uint64_t>(), py::arg("master"))
      .def_readonly("master", &Seed::master)
      .def("stream", &Seed::stream, py::arg("index"))
      .def("__repr__",
           [](const Seed& s) { return "Seed(" + std::to_string(s.master) + ")"; });

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, const std::vector<std::pair<int, int>>&, std::optional<std::vector<int>>>(),
           py::arg("n"), py::arg("edges"), py::arg("arrival") = std::nullopt)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("neighbors", &Graph::neighbors, py::arg("v"))
      .def("degree", &Graph::degree, py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("edge_list", &Graph::edge_list)
      .def("arrival", [](const Graph& g) { return g.arrival(); })
      .def("connected", &Graph::connected)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<Ball>(m, "Ball")
      .def_readonly("vertices", &Ball::vertices)
      .def_readonly("dist", &Ball::dist);

  m.def(
      "gen_er", [](int n, double d, const Seed& seed) { return gen_er(ErParams{n, d}, seed); },
      py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def(
      "gen_ba", [](int n, int d, const Seed& seed) { return gen_ba(BaParams{n, d}, seed); },
      py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def("strip_early_vertices", &strip_early_vertices, py::arg("g"), py::arg("q"));
  m.def("bfs_ball", &bfs_ball, py::arg("g"), py::arg("v"), py::arg("r"));
  m.def(
      "induced_subgraph",
      [](const Graph& g, const std::vector<int>& s) {
        InducedSubgraph sub = induced_subgraph(g, s);
        return py::make_tuple(sub.graph, sub.kept);
      },
      py::arg("g"), py::arg("vertices"), "Returns (graph, kept) with kept[new_id] = original id.");

  m.def("save_edgelist", &save_edgelist, py::arg("path"), py::arg("g"));
  m.def("load_edgelist", &load_edgelist, py::arg("path"));
  m.def(
      "dumps_edgelist",
      [](const Graph& g) {
        std::ostringstream out;
        write_edgelist(out, g);
        return out.str();
      },
      py::arg("g"));
  m.def(
      "loads_edgelist",
      [](const std::string& text) {
        std::istringstream in(text);
        return read_edgelist(in);
      },
      py::arg("text"));

  // local statistics
  py::class_<BallStats>(m, "BallStats")
      .def_readonly("center", &BallStats::center)
      .def_readonly("radius", &BallStats::radius)
      .def_readonly("size", &BallStats::size)
      .def_readonly("edges", &BallStats::edges)
      .def_readonly("surplus", &BallStats::surplus);

  py::class_<SurplusProfile>(m, "SurplusProfile")
      .def_readonly("balls", &SurplusProfile::balls)
      .def_readonly("max_surplus", &SurplusProfile::max_surplus)
      .def("count_with_surplus_at_least", &SurplusProfile::count_with_surplus_at_least, py::arg("m"));

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("max_observed", &BoundCheck::max_observed)
      .def_readonly("bound", &BoundCheck::bound)
      .def_readonly("within", &BoundCheck::within);

  py::class_<PathProbEstimate>(m, "PathProbEstimate")
      .def_readonly("estimate", &PathProbEstimate::estimate)
      .def_readonly("se", &PathProbEstimate::se)
      .def_readonly("lower", &PathProbEstimate::lower)
      .def_readonly("upper", &PathProbEstimate::upper)
      .def_readonly("trials", &PathProbEstimate::trials);

  m.def(
      "edge_surplus",
      [](const Graph& g, const std::vector<int>& s) { return edge_surplus(g, s); },
      py::arg("g"), py::arg("vertices"));
  m.def("surplus_profile", &surplus_profile, py::arg("g"), py::arg("r"));
  m.def("max_ball_size", &max_ball_size, py::arg("g"), py::arg("r"), py::arg("d"));
  m.def("nhood_size_bound", &nhood_size_bound, py::arg("n"), py::arg("d"), py::arg("r"));
  m.def("count_cycles", &count_cycles, py::arg("g"), py::arg("k"));
  m.def("count_dense_subgraphs", &count_dense_subgraphs, py::arg("g"), py::arg("k"), py::arg("m"));
  m.def(
      "estimate_path_prob",
      [](int n, double d, int r, long long trials, const Seed& seed) {
        return estimate_path_prob(ErParams{n, d}, r, trials, seed);
      },
      py::arg("n"), py::arg("d"), py::arg("r"), py::arg("trials"), py::arg("seed"));

  // expansion toolkit
  py::class_<Digraph>(m, "Digraph")
      .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("n"), py::arg("arcs"))
      .def_property_readonly("num_vertices", &Digraph::num_vertices)
      .def_property_readonly("num_arcs", &Digraph::num_arcs)
      .def("out_neighbors", &Digraph::out, py::arg("v"))
      .def("in_neighbors", &Digraph::in, py::arg("v"))
      .def("has_arc", &Digraph::has_arc, py::arg("u"), py::arg("v"))
      .def("max_in_degree", &Digraph::max_in_degree)
      .def("arc_list", &Digraph::arc_list)
      .def("underlying", &Digraph::underlying);

  py::class_<Coloring>(m, "Coloring")
      .def_readonly("colors", &Coloring::colors)
      .def_readonly("palette_size", &Coloring::palette_size);

  m.def("low_degree_orientation", &low_degree_orientation, py::arg("g"));
  m.def(
      "tfa_step",
      [](const Digraph& dg, long long arc_cap) { return tfa_step(dg, TfaOptions{arc_cap}); },
      py::arg("dg"), py::arg("arc_cap") = -1);
  m.def(
      "tfa_run",
      [](const Graph& g, int steps, long long arc_cap) {
        auto [dg, trace] = tfa_run(g, steps, TfaOptions{arc_cap});
        std::vector<std::tuple<int, long long, int>> records;
        for (const auto& rec : trace.records) records.emplace_back(rec.step, rec.arcs, rec.max_in_degree);
        return py::make_tuple(std::move(dg), std::move(records));
      },
      py::arg("g"), py::arg("steps"), py::arg("arc_cap") = -1,
      "Returns (digraph, [(step, arcs, max_in_degree), ...]).");
  m.def("greedy_coloring", &greedy_coloring, py::arg("g"));
  m.def(
      "verify_p_centered",
      [](const Graph& g, const Coloring& c, int p, long long max_subsets) {
        PCenteredCheck chk = verify_p_centered(g, c, p, max_subsets);
        if (chk.ok) return py::make_tuple(true, py::none());
        return py::make_tuple(false, py::make_tuple(chk.witness->colors, chk.witness->component));
      },
      py::arg("g"), py::arg("coloring"), py::arg("p"), py::arg("max_subsets") = 1'000'000,
      "Returns (ok, witness); witness is (color_subset, component) on failure.");
  m.def(
      "compute_p_centered",
      [](const Graph& g, int p, int max_steps, long long max_subsets, long long arc_cap) {
        PCenteredOptions opt;
        opt.max_subsets = max_subsets;
        opt.tfa.arc_cap = arc_cap;
        return compute_p_centered(g, p, max_steps, opt);
      },
      py::arg("g"), py::arg("p"), py::arg("max_steps"), py::arg("max_subsets") = 1'000'000,
      py::arg("arc_cap") = -1);

  py::class_<PCenteredResult>(m, "PCenteredResult")
      .def_readonly("coloring", &PCenteredResult::coloring)
      .def_readonly("steps_used", &PCenteredResult::steps_used);

  // subgraph isomorphism
  py::class_<Pattern>(m, "Pattern")
      .def(py::init<Graph>(), py::arg("graph"))
      .def_readonly("graph", &Pattern::graph)
      .def_readonly("radius", &Pattern::radius);

  py::class_<PatternCore>(m, "PatternCore")
      .def_readonly("core", &PatternCore::core)
      .def_readonly("tree_edges", &PatternCore::tree_edges)
      .def_readonly("extra_edges", &PatternCore::extra_edges)
      .def_readonly("deferred_edges", &PatternCore::deferred_edges);

  m.def("radius", &radius, py::arg("h"));
  m.def("pattern_core", &pattern_core, py::arg("pattern"));
  m.def(
      "find_subgraph",
      [](const Graph& g, const Pattern& h, const Seed& seed, double epsilon, long long trials,
         double ball_cap, long long max_embeddings_per_ball, long long reps) {
        return find_subgraph(g, h, make_trial_config(epsilon, trials, ball_cap, max_embeddings_per_ball, reps),
                             seed);
      },
      py::arg("g"), py::arg("pattern"), py::arg("seed"), py::arg("epsilon") = 0.01, py::arg("trials") = 0,
      py::arg("ball_cap") = 0.0, py::arg("max_embeddings_per_ball") = 1'000'000, py::arg("reps") = 0);
  m.def(
      "find_subgraph_multi",
      [](const Graph& g, const std::vector<Pattern>& parts, const Seed& seed, double epsilon,
         long long trials, double ball_cap, long long max_embeddings_per_ball, long long reps) {
        return find_subgraph_multi(
            g, parts, make_trial_config(epsilon, trials, ball_cap, max_embeddings_per_ball, reps), seed);
      },
      py::arg("g"), py::arg("parts"), py::arg("seed"), py::arg("epsilon") = 0.01, py::arg("trials") = 0,
      py::arg("ball_cap") = 0.0, py::arg("max_embeddings_per_ball") = 1'000'000, py::arg("reps") = 0);
  m.def("brute_force_embed", &brute_force_embed, py::arg("g"), py::arg("h"));
  m.def("validate_embedding", &validate_embedding, py::arg("g"), py::arg("h"), py::arg("map"));

  // scattered sets and basic local sentences
  py::class_<LocalPredicate>(m, "LocalPredicate")
      .def_static("contains_pattern", &LocalPredicate::contains_pattern, py::arg("pattern"),
                  py::arg("radius"), py::arg("surplus_threshold") = -1)
      .def_static("min_degree_in_ball", &LocalPredicate::min_degree_in_ball, py::arg("t"),
                  py::arg("radius"), py::arg("surplus_threshold") = -1)
      .def_static("surplus_at_least", &LocalPredicate::surplus_at_least, py::arg("m"), py::arg("radius"),
                  py::arg("surplus_threshold") = -1)
      .def_property_readonly("radius", &LocalPredicate::radius);

  py::class_<BasicLocalSentence>(m, "BasicLocalSentence")
      .def(py::init([](int s, int r, LocalPredicate pred) {
             return BasicLocalSentence{s, r, std::move(pred)};
           }),
           py::arg("s"), py::arg("r"), py::arg("pred"))
      .def_readonly("s", &BasicLocalSentence::s)
      .def_readonly("r", &BasicLocalSentence::r)
      .def_readonly("pred", &BasicLocalSentence::pred);

  m.def(
      "parse_sentence",
      [](const std::string& text, const std::string& base_dir) {
        return parse_sentence(nlohmann::json::parse(text), base_dir);
      },
      py::arg("text"), py::arg("base_dir") = ".");
  m.def("load_sentence", &load_sentence, py::arg("path"));
  m.def("eval_local_predicate", &eval_local_predicate, py::arg("g"), py::arg("v"), py::arg("pred"));

  py::class_<ScatterResult>(m, "ScatterResult")
      .def_readonly("found", &ScatterResult::found)
      .def_readonly("set", &ScatterResult::set)
      .def_readonly("greedy_size", &ScatterResult::greedy_size)
      .def_readonly("used_exact", &ScatterResult::used_exact);

  py::class_<SentenceResult>(m, "SentenceResult")
      .def_readonly("holds", &SentenceResult::holds)
      .def_readonly("witnesses", &SentenceResult::witnesses);

  m.def("greedy_scattered", &greedy_scattered, py::arg("g"), py::arg("centers"), py::arg("r"),
        py::arg("s"));
  m.def(
      "exact_scattered",
      [](const Graph& g, const std::vector<int>& centers, int r, int s, long long node_budget) {
        return exact_scattered(g, centers, r, s, ScatterOptions{node_budget});
      },
      py::arg("g"), py::arg("centers"), py::arg("r"), py::arg("s"),
      py::arg("node_budget") = 10'000'000);
  m.def(
      "check_sentence",
      [](const Graph& g, const BasicLocalSentence& sentence, long long node_budget) {
        return check_sentence(g, sentence, ScatterOptions{node_budget});
      },
      py::arg("g"), py::arg("sentence"), py::arg("node_budget") = 10'000'000);
  m.def("brute_force_sentence", &brute_force_sentence, py::arg("g"), py::arg("sentence"),
        py::arg("max_subsets") = 10'000'000);

  // experiment harness
  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("kind", &ExperimentSpec::kind)
      .def_readwrite("model", &ExperimentSpec::model)
      .def_readwrite("n_values", &ExperimentSpec::n_values)
      .def_readwrite("d", &ExperimentSpec::d)
      .def_readwrite("r", &ExperimentSpec::r)
      .def_readwrite("k", &ExperimentSpec::k)
      .def_readwrite("m", &ExperimentSpec::m)
      .def_readwrite("p", &ExperimentSpec::p)
      .def_readwrite("q", &ExperimentSpec::q)
      .def_readwrite("steps", &ExperimentSpec::steps)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("epsilon", &ExperimentSpec::epsilon)
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def_readwrite("out", &ExperimentSpec::out);

  py::class_<ExperimentReport>(m, "ExperimentReport")
      .def("to_json", [](const ExperimentReport& r) { return r.to_json().dump(); })
      .def("summary_json", [](const ExperimentReport& r) { return r.summary.dump(); })
      .def("csv", [](const ExperimentReport& r) {
        std::ostringstream out;
        r.write_csv(out);
        return out.str();
      })
      .def_property_readonly("num_rows", [](const ExperimentReport& r) { return r.rows.size(); });

  m.def("run_experiment", &run_experiment, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
}
