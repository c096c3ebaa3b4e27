// Command line front end: graph generation, local-structure analysis,
// augmentation, p-centered coloring, subgraph search, scattered sets, and the
// experiment harness. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sparselocal/edgelist_io.hpp"
#include "sparselocal/expansion.hpp"
#include "sparselocal/experiments.hpp"
#include "sparselocal/generators.hpp"
#include "sparselocal/local_stats.hpp"
#include "sparselocal/scattered.hpp"
#include "sparselocal/subgraph_iso.hpp"
#include "sparselocal/version.hpp"

namespace {

using nlohmann::json;
using namespace sparselocal;

// "2000" or "500:3000:500" (inclusive sweep).
std::vector<int> parse_n_values(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') == std::string::npos) {
    out.push_back(std::stoi(text));
    return out;
  }
  std::istringstream ss(text);
  std::string part;
  std::vector<long long> fields;
  while (std::getline(ss, part, ':')) fields.push_back(std::stoll(part));
  if (fields.size() != 3 || fields[2] <= 0 || fields[0] > fields[1])
    throw CLI::ValidationError("--n", "range must be START:STOP:STEP with positive step");
  for (long long n = fields[0]; n <= fields[1]; n += fields[2]) out.push_back(static_cast<int>(n));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(std::stoi(part));
  }
  return out;
}

void emit(const json& j, const std::string& format) {
  if (format == "csv") {
    // Flat two-column rendering for scalar summaries.
    std::cout << "statistic,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_number() || it->is_boolean() || it->is_string())
        std::cout << it.key() << ',' << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
    }
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

struct CommonFlags {
  std::string model = "er";
  std::string n_text;
  double d = -1.0;
  std::uint64_t seed = 0;
  int r = -1, k = -1, m = -1, p = -1;
  double q = -1.0;
  long long trials = -1;
  double epsilon = 0.01;
  int max_steps = -1;
  std::string out;
  std::string format = "json";
  std::string in;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparselocal: local structure of sparse random graphs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  CommonFlags f;

  auto* cmd_gen = app.add_subcommand("gen", "Generate a random graph and write its edge list");
  cmd_gen->add_option("--model", f.model, "er | ba")->check(CLI::IsMember({"er", "ba"}));
  cmd_gen->add_option("--n", f.n_text, "vertex count")->required();
  cmd_gen->add_option("--d", f.d, "expected/attachment degree")->required();
  cmd_gen->add_option("--seed", f.seed, "master seed");
  cmd_gen->add_option("--out", f.out, "output path (stdout if omitted)");

  auto* cmd_analyze = app.add_subcommand("analyze", "Local structure statistics of a graph");
  cmd_analyze->add_option("--in", f.in, "input edge list")->required();
  cmd_analyze->add_option("--r", f.r, "ball radius (default 2)");
  cmd_analyze->add_option("--d", f.d, "reference degree for the ball-size bound (default: average)");
  cmd_analyze->add_option("--k", f.k, "also count k-cycles and dense k-subsets");
  cmd_analyze->add_option("--m", f.m, "surplus for the dense-subset count (default 0)");
  cmd_analyze->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* cmd_augment = app.add_subcommand("augment", "Run transitive-fraternal augmentation rounds");
  cmd_augment->add_option("--in", f.in, "input edge list")->required();
  cmd_augment->add_option("--max-steps", f.max_steps, "augmentation rounds (default 1)");
  long long arc_cap = -1;
  cmd_augment->add_option("--arc-cap", arc_cap, "arc budget (default 50*|E|)");
  cmd_augment->add_option("--out", f.out, "write final arcs as 'n a' header plus 'tail head' lines");
  cmd_augment->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* cmd_pcc = app.add_subcommand("pcc", "Compute a verified p-centered coloring");
  cmd_pcc->add_option("--in", f.in, "input edge list")->required();
  cmd_pcc->add_option("--p", f.p, "centeredness parameter")->required();
  cmd_pcc->add_option("--max-steps", f.max_steps, "augmentation budget (default 20)");
  cmd_pcc->add_option("--out", f.out, "write the coloring, one color per vertex line");
  cmd_pcc->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* cmd_find = app.add_subcommand("find-subgraph", "Search for a pattern embedding");
  cmd_find->add_option("--in", f.in, "host graph edge list")->required();
  std::string pattern_path;
  cmd_find->add_option("--pattern", pattern_path, "pattern edge list")->required();
  cmd_find->add_option("--epsilon", f.epsilon, "miss probability target (default 0.01)");
  cmd_find->add_option("--trials", f.trials, "override color-coding trials");
  cmd_find->add_option("--seed", f.seed, "master seed");
  double ball_cap = 0.0;
  cmd_find->add_option("--ball-cap", ball_cap, "ball size threshold before brute force");

  auto* cmd_scatter = app.add_subcommand("scattered", "Find an r-scattered subset of given centers");
  cmd_scatter->add_option("--in", f.in, "input edge list")->required();
  std::string centers_text;
  cmd_scatter->add_option("--centers", centers_text, "comma-separated vertex list")->required();
  cmd_scatter->add_option("--r", f.r, "scattering radius")->required();
  int target_s = 1;
  cmd_scatter->add_option("--s", target_s, "target set size")->required();
  bool greedy_only = false;
  cmd_scatter->add_flag("--greedy-only", greedy_only, "skip the exact fallback");
  long long node_budget = 10'000'000;
  cmd_scatter->add_option("--node-budget", node_budget, "exact search node budget");

  auto* cmd_sentence = app.add_subcommand("check-sentence", "Decide a basic local sentence");
  cmd_sentence->add_option("--in", f.in, "input edge list")->required();
  std::string sentence_path;
  cmd_sentence->add_option("--sentence", sentence_path, "sentence JSON path")->required();
  cmd_sentence->add_option("--node-budget", node_budget, "exact search node budget");

  auto* cmd_exp = app.add_subcommand("experiment", "Run a named experiment pipeline");
  std::string kind;
  cmd_exp->add_option("--kind", kind,
                      "cycles | surplus | nhood | path | tfa-ba | pcc-ba | truncated-ba | "
                      "findh-bench | sentence-bench")
      ->required();
  cmd_exp->add_option("--model", f.model, "er | ba (kind default otherwise)")->default_val("");
  cmd_exp->add_option("--n", f.n_text, "single value or START:STOP:STEP sweep");
  cmd_exp->add_option("--d", f.d, "degree parameter");
  cmd_exp->add_option("--r", f.r, "radius");
  cmd_exp->add_option("--k", f.k, "cycle/pattern size");
  cmd_exp->add_option("--m", f.m, "surplus");
  cmd_exp->add_option("--p", f.p, "centeredness");
  cmd_exp->add_option("--q", f.q, "truncation fraction");
  cmd_exp->add_option("--trials", f.trials, "trials / seeds per point / instances");
  cmd_exp->add_option("--epsilon", f.epsilon, "miss probability target");
  cmd_exp->add_option("--max-steps", f.max_steps, "augmentation rounds (tfa-ba) or budget (pcc)");
  cmd_exp->add_option("--seed", f.seed, "master seed");
  cmd_exp->add_option("--out", f.out, "base path for <out>.csv and <out>.json");
  cmd_exp->add_option("--format", f.format, "stdout content: json summary | csv rows")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_gen) {
      std::vector<int> ns = parse_n_values(f.n_text);
      if (ns.size() != 1) throw std::invalid_argument("gen: --n must be a single value");
      Graph g = f.model == "er" ? gen_er(ErParams{ns[0], f.d}, Seed{f.seed})
                                : gen_ba(BaParams{ns[0], static_cast<int>(f.d)}, Seed{f.seed});
      if (f.out.empty())
        write_edgelist(std::cout, g);
      else
        save_edgelist(f.out, g);
    } else if (*cmd_analyze) {
      Graph g = load_edgelist(f.in);
      int r = f.r < 0 ? 2 : f.r;
      double dref = f.d >= 0 ? f.d
                             : (g.num_vertices() > 0
                                    ? 2.0 * static_cast<double>(g.num_edges()) / g.num_vertices()
                                    : 0.0);
      json j;
      j["n"] = g.num_vertices();
      j["edges"] = g.num_edges();
      int maxdeg = 0;
      for (int v = 0; v < g.num_vertices(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
      j["max_degree"] = maxdeg;
      j["avg_degree"] = g.num_vertices() > 0 ? 2.0 * static_cast<double>(g.num_edges()) / g.num_vertices() : 0.0;
      j["r"] = r;
      SurplusProfile prof = surplus_profile(g, r);
      j["max_ball_surplus"] = prof.max_surplus;
      j["balls_surplus_ge_0"] = prof.count_with_surplus_at_least(0);
      BoundCheck bc = max_ball_size(g, r, dref);
      j["max_ball_size"] = bc.max_observed;
      j["ball_bound"] = bc.bound;
      j["ball_bound_ok"] = bc.within;
      if (f.k >= 0) {
        j["cycles"] = count_cycles(g, f.k);
        j["dense_subsets"] = count_dense_subgraphs(g, f.k, f.m < 0 ? 0 : f.m);
      }
      emit(j, f.format);
    } else if (*cmd_augment) {
      Graph g = load_edgelist(f.in);
      int steps = f.max_steps < 0 ? 1 : f.max_steps;
      TfaOptions opt;
      opt.arc_cap = arc_cap;
      auto [dg, trace] = tfa_run(g, steps, opt);
      if (f.format == "csv") {
        std::cout << "step,arcs,max_in_degree\n";
        for (const auto& rec : trace.records)
          std::cout << rec.step << ',' << rec.arcs << ',' << rec.max_in_degree << '\n';
      } else {
        json j = json::array();
        for (const auto& rec : trace.records)
          j.push_back({{"step", rec.step}, {"arcs", rec.arcs}, {"max_in_degree", rec.max_in_degree}});
        std::cout << j.dump(2) << '\n';
      }
      if (!f.out.empty()) {
        std::ofstream outf(f.out);
        if (!outf) throw std::runtime_error("augment: cannot open " + f.out);
        outf << dg.num_vertices() << ' ' << dg.num_arcs() << '\n';
        for (auto [u, v] : dg.arc_list()) outf << u << ' ' << v << '\n';
      }
    } else if (*cmd_pcc) {
      Graph g = load_edgelist(f.in);
      int steps = f.max_steps < 0 ? 20 : f.max_steps;
      PCenteredResult res = compute_p_centered(g, f.p, steps);
      if (f.format == "csv") {
        std::cout << "palette_size,steps_used\n" << res.coloring.palette_size << ',' << res.steps_used << '\n';
      } else {
        json j{{"palette_size", res.coloring.palette_size}, {"steps_used", res.steps_used}};
        std::cout << j.dump(2) << '\n';
      }
      if (!f.out.empty()) {
        std::ofstream outf(f.out);
        if (!outf) throw std::runtime_error("pcc: cannot open " + f.out);
        for (int c : res.coloring.colors) outf << c << '\n';
      }
    } else if (*cmd_find) {
      Graph g = load_edgelist(f.in);
      Pattern pat(load_edgelist(pattern_path));
      TrialConfig cfg;
      cfg.epsilon = f.epsilon;
      if (f.trials > 0) cfg.trials = f.trials;
      cfg.ball_cap = ball_cap;
      auto emb = find_subgraph(g, pat, cfg, Seed{f.seed});
      json j;
      j["found"] = emb.has_value();
      if (emb) j["embedding"] = *emb;
      std::cout << j.dump(2) << '\n';
    } else if (*cmd_scatter) {
      Graph g = load_edgelist(f.in);
      std::vector<int> centers = parse_int_list(centers_text);
      ScatterOptions opt;
      opt.node_budget = node_budget;
      ScatterResult res = greedy_only ? greedy_scattered(g, centers, f.r, target_s)
                                      : exact_scattered(g, centers, f.r, target_s, opt);
      json j{{"found", res.found},
             {"set", res.set},
             {"greedy_size", res.greedy_size},
             {"used_exact", res.used_exact}};
      std::cout << j.dump(2) << '\n';
    } else if (*cmd_sentence) {
      Graph g = load_edgelist(f.in);
      BasicLocalSentence sent = load_sentence(sentence_path);
      ScatterOptions opt;
      opt.node_budget = node_budget;
      SentenceResult res = check_sentence(g, sent, opt);
      json j;
      j["holds"] = res.holds;
      if (res.witnesses) j["witnesses"] = *res.witnesses;
      std::cout << j.dump(2) << '\n';
    } else if (*cmd_exp) {
      ExperimentSpec spec;
      spec.kind = kind;
      spec.model = f.model;
      if (!f.n_text.empty()) spec.n_values = parse_n_values(f.n_text);
      spec.d = f.d;
      spec.r = f.r;
      spec.k = f.k;
      spec.m = f.m;
      spec.p = f.p;
      spec.q = f.q;
      spec.steps = f.max_steps;
      spec.trials = f.trials;
      spec.epsilon = f.epsilon;
      spec.seed = f.seed;
      spec.out = f.out;
      ExperimentReport report = run_experiment(spec);
      if (f.format == "csv") {
        report.write_csv(std::cout);
      } else {
        json j;
        j["spec"] = report.spec;
        j["summary"] = report.summary;
        j["versions"] = report.versions;
        j["rows_emitted"] = report.rows.size();
        std::cout << j.dump(2) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
