// Command-line front end: generators, streaming runs, dynamic replays and
// cover verification.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "matchcover/cover.hpp"
#include "matchcover/dynamic.hpp"
#include "matchcover/errors.hpp"
#include "matchcover/generators.hpp"
#include "matchcover/io.hpp"
#include "matchcover/matching.hpp"
#include "matchcover/streamer.hpp"

using namespace matchcover;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int thread_cap() {
  const char* s = std::getenv("MATCHCOVER_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end || v < 1) throw UsageError("MATCHCOVER_THREADS must be a positive integer");
  // Every command currently runs on one thread; the cap only bounds it.
  return 1;
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  return &file;
}

EdgeList load_edges(const std::string& path) {
  if (path == "-") return read_edge_list(std::cin, "<stdin>");
  return read_edge_list_file(path);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json edges_json(const VertexSet& s) { return json(s); }

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::vector<std::string> words;
  std::uint64_t seed = 1;
  std::string out;
};

// Accepts "4" as well as "r=4".
double gen_number(const std::string& w) {
  const auto eq = w.find('=');
  const std::string v = eq == std::string::npos ? w : w.substr(eq + 1);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("bad generator parameter '" + w + "'");
  }
}

int cmd_gen(const GenArgs& a) {
  if (a.words.empty()) throw UsageError("gen needs a generator kind");
  std::ofstream file;
  std::ostream& out = *open_out(a.out, file);
  const std::string kind = a.words[0];
  std::vector<double> nums;
  if (kind == "script") {
    if (a.words.size() < 3) throw UsageError("gen script <kind> <n> [length] [param]");
    const std::string skind = a.words[1];
    for (std::size_t i = 2; i < a.words.size(); ++i) nums.push_back(gen_number(a.words[i]));
    const auto n = static_cast<std::size_t>(nums[0]);
    const auto len = nums.size() > 1 ? static_cast<std::size_t>(nums[1]) : 0;
    double param = skind == "oscillating" ? 4.0 : 0.5;
    if (nums.size() > 2) param = nums[2];
    try {
      write_script(out, gen_script(skind, n, len, a.seed, param));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return 0;
  }
  for (std::size_t i = 1; i < a.words.size(); ++i) nums.push_back(gen_number(a.words[i]));
  Graph g;
  try {
    g = gen_graph(kind, nums, a.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_edge_list(out, g.n(), shuffled_edges(g, a.seed));
  return 0;
}

// ------------------------------------------------------------------ cover

struct CoverArgs {
  std::string graph;
  std::string out_dir;
  std::size_t t = 4;
  double gamma = 0.2;
  double p_sample = -1;
  double threshold = -1;
  std::uint64_t seed = 1;
};

int cmd_cover(const CoverArgs& a) {
  const EdgeList el = load_edges(a.graph);
  const Graph g = graph_from_edges(el.n, el.edges);
  CoverParams p;
  p.t = a.t;
  p.gamma = a.gamma;
  p.p_sample = a.p_sample;
  p.good_density_threshold = a.threshold;
  p.seed = a.seed;
  const auto t0 = std::chrono::steady_clock::now();
  const CoverReport r = build_cover(g, p);
  const double wall = seconds_since(t0);
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path d(a.out_dir);
    {
      std::ofstream f(d / "partition.txt");
      write_partition(f, r.partition);
    }
    {
      std::ofstream f(d / "pairs.csv");
      f << "# schema: 1\ni,j,density,regular,good\n";
      for (const auto& pc : r.pair_class)
        f << pc.i << ',' << pc.j << ',' << pc.density << ',' << pc.regular << ',' << pc.good << '\n';
    }
    write_edge_list_file((d / "F.txt").string(), g.n(), r.F);
    write_edge_list_file((d / "F1.txt").string(), g.n(), r.F1);
    write_edge_list_file((d / "F2.txt").string(), g.n(), r.F2);
    write_edge_list_file((d / "F3.txt").string(), g.n(), r.F3);
  }
  json j;
  j["schema"] = 1;
  j["algorithm"] = "build_cover";
  j["instance"] = {{"path", a.graph}, {"n", g.n()}, {"m", g.m()}};
  j["classes"] = r.partition.k();
  j["exceptional"] = r.partition.classes.empty() ? 0 : r.partition.classes[0].size();
  j["irregular_pairs"] = r.regularity.irregular_pairs();
  j["rounds"] = r.regularity.rounds.size();
  j["round_cap_reached"] = r.regularity.round_cap_reached;
  j["F"] = r.F.size();
  j["F1"] = r.F1.size();
  j["F2"] = r.F2.size();
  j["F3"] = r.F3.size();
  j["p_sample"] = r.p_sample;
  j["threshold"] = r.threshold;
  j["seed"] = a.seed;
  j["wall_time_s"] = wall;
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------ stream

struct StreamArgs {
  std::string input = "-";
  std::string algo = "greedy";
  std::size_t k = 4;
  std::size_t t = 4;
  double gamma = 0.2;
  double alpha = -1;
  double epsilon = 0.005;
  bool oracle = false;
  bool reread = false;
  std::uint64_t seed = 1;
  std::string matching_out;
};

int cmd_stream(const StreamArgs& a) {
  const EdgeList el = load_edges(a.input);
  EdgeStream stream(el.n, el.edges);
  json j;
  j["schema"] = 1;
  j["algorithm"] = a.algo;
  j["instance"] = {{"path", a.input}, {"n", el.n}, {"m", el.edges.size()}};
  const auto t0 = std::chrono::steady_clock::now();
  Matching m;
  std::uint64_t peak_bits = 0;
  json cascade = nullptr;
  if (a.algo == "greedy") {
    std::vector<char> used(el.n, 0);
    stream.for_each([&](const Edge& e) {
      if (used[e.u] || used[e.v]) return;
      used[e.u] = used[e.v] = 1;
      m.push_back(e);
    });
    peak_bits = 64 * static_cast<std::uint64_t>(m.size());
  } else if (a.algo == "regularity-cascade") {
    StreamParams p;
    p.cover.t = a.t;
    p.cover.gamma = a.gamma;
    p.cover.seed = a.seed;
    p.alpha = a.alpha;
    p.seed = a.seed;
    const StreamResult r = stream_match_regularity(stream, a.k, p);
    m = r.matching;
    peak_bits = r.cascade.peak_bits + r.store_bits;
    cascade = {{"flush_counts", r.cascade.flush_counts},
               {"buffer_sizes", r.cascade.sizes},
               {"cascade_peak_bits", r.cascade.peak_bits},
               {"store_bits", r.store_bits},
               {"stored_edges", r.stored_edges},
               {"stored_everything", r.stored_everything},
               {"cascade_output", r.cascade_output}};
    if (r.cascade_failed) cascade["error"] = r.cascade_error;
  } else if (a.algo == "optguess") {
    const OptGuessResult r = stream_match_optguess(stream, a.k, a.epsilon, brute_cover(), a.seed);
    m = r.matching;
    cascade = {{"branches", r.branches},
               {"branch_matching_sizes", r.branch_matching_sizes},
               {"stored_edges", r.stored_edges},
               {"stored_everything", r.stored_everything}};
  } else {
    throw UsageError("unknown streaming algorithm '" + a.algo + "'");
  }
  if (a.reread) stream.for_each([](const Edge&) {});
  const double wall = seconds_since(t0);
  const Graph g = graph_from_edges(el.n, el.edges);
  std::string why;
  if (!is_valid_matching(g, m, &why)) throw InvariantViolation("streaming output is not a matching: " + why);
  j["matching_size"] = m.size();
  if (a.oracle) {
    const std::size_t mu = max_matching_general(g).size();
    j["mu_exact"] = mu;
    j["ratio"] = mu > 0 ? static_cast<double>(m.size()) / static_cast<double>(mu) : 1.0;
  } else {
    j["mu_exact"] = nullptr;
    j["ratio"] = nullptr;
  }
  j["peak_bits"] = peak_bits;
  j["cascade"] = cascade;
  j["seed"] = a.seed;
  j["threads"] = thread_cap();
  j["wall_time_s"] = wall;
  if (!a.matching_out.empty()) write_matching_file(a.matching_out, m);
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------ dynamic

struct DynamicArgs {
  std::string script;
  std::size_t n = 0;
  bool deamortized = false;
  std::uint64_t budget = 0;
  double epsilon = 0.1;
  double tau = 4.0;
  std::size_t period = 0;
  double gamma = 0.2;
  std::size_t t = 4;
  bool oracle = false;
  std::string format = "csv";
  std::uint64_t seed = 1;
};

int cmd_dynamic(const DynamicArgs& a) {
  const std::vector<Update> script = a.script == "-" ? read_script(std::cin, "<stdin>") : read_script_file(a.script);
  std::size_t n = a.n;
  if (n == 0) {
    for (const Update& u : script)
      if (u.op != UpdateOp::query) n = std::max<std::size_t>(n, std::max(u.u, u.v) + 1);
    n = std::max<std::size_t>(n, 1);
  }
  DynamicConfig cfg;
  cfg.tau = a.tau;
  cfg.epsilon = a.epsilon;
  cfg.period = a.period;
  cfg.cover.gamma = a.gamma;
  cfg.cover.t = a.t;
  cfg.deamortized = a.deamortized;
  cfg.step_budget = a.budget;
  if (a.deamortized && a.budget == 0) throw UsageError("--deamortized needs --budget");
  DynamicEngine eng(n, cfg, a.seed);
  IncrementalMatcher oracle(n);
  const bool csv = a.format == "csv";
  if (csv) std::cout << "# schema: 1\nstep,op,m,regime,matching,mu_exact,work_units\n";
  std::size_t steps = 0, violations = 0, queries = 0;
  double worst = 1.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Update& up : script) {
    if (up.op == UpdateOp::query) {
      ++queries;
      if (csv) std::cout << "# query " << steps << ' ' << eng.matching_size() << '\n';
      continue;
    }
    if (std::max(up.u, up.v) >= n) throw UsageError("script vertex out of range for n = " + std::to_string(n));
    const StepInfo info = eng.update(up);
    ++steps;
    const Matching m = eng.matching();
    std::string why;
    if (!is_valid_matching(eng.graph(), m, &why)) throw InvariantViolation("step " + std::to_string(steps) + ": " + why);
    long mu = -1;
    if (a.oracle) {
      if (info.applied) {
        const Edge e = make_edge(up.u, up.v);
        if (up.op == UpdateOp::insert)
          oracle.after_insert(eng.graph(), e.u, e.v);
        else
          oracle.after_delete(eng.graph(), e.u, e.v);
      }
      mu = static_cast<long>(oracle.size());
      if (mu > 0) {
        const double r = static_cast<double>(m.size()) / static_cast<double>(mu);
        double eps_total = a.epsilon;
        if (eng.regime() == Regime::dense)
          eps_total += alpha_default(a.gamma) * static_cast<double>(n) / static_cast<double>(mu);
        worst = std::min(worst, r);
        if (r < 1.0 - eps_total - 1e-12) ++violations;
      }
    }
    if (csv) {
      std::cout << steps << ',' << (up.op == UpdateOp::insert ? '+' : '-') << ',' << eng.graph().m() << ','
                << (eng.regime() == Regime::dense ? "dense" : "sparse") << ',' << m.size() << ',';
      if (mu >= 0) std::cout << mu;
      std::cout << ',' << info.work << '\n';
    }
  }
  json j;
  j["schema"] = 1;
  j["algorithm"] = a.deamortized ? "dynamic-deamortized" : "dynamic";
  j["instance"] = {{"path", a.script}, {"n", n}, {"updates", steps}, {"queries", queries}};
  j["matching_size"] = eng.matching_size();
  j["final_m"] = eng.graph().m();
  j["regime"] = eng.regime() == Regime::dense ? "dense" : "sparse";
  j["regime_switches"] = eng.regime_switches();
  j["rebuilds"] = eng.rebuilds();
  j["period"] = eng.period();
  j["total_work"] = eng.total_work();
  j["max_step_work"] = eng.max_step_work();
  j["avg_step_work"] = steps ? static_cast<double>(eng.total_work()) / static_cast<double>(steps) : 0.0;
  if (a.oracle) {
    j["mu_exact"] = oracle.size();
    j["worst_ratio"] = worst;
    j["ratio_violations"] = violations;
  }
  j["seed"] = a.seed;
  j["threads"] = thread_cap();
  j["wall_time_s"] = seconds_since(t0);
  if (csv)
    std::cout << "# summary " << j.dump() << '\n';
  else
    std::cout << j.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string graph;
  std::string cover;
  double alpha = 0.1;
  std::string mode = "exhaustive";
  std::string property = "cover";
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& a) {
  if (!(a.alpha >= 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in [0,1)");
  const EdgeList ge = load_edges(a.graph);
  const EdgeList ce = read_edge_list_file(a.cover);
  if (ce.n != ge.n) throw UsageError("graph and cover disagree on n");
  const Graph g = graph_from_edges(ge.n, ge.edges);
  std::vector<Edge> h = ce.edges;
  for (const Edge& e : h)
    if (!g.has_edge(e.u, e.v)) throw UsageError("cover edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " is not in the graph");
  VerifyMode mode;
  if (a.mode == "exhaustive")
    mode = VerifyMode::exhaustive;
  else if (a.mode == "sampled")
    mode = VerifyMode::sampled;
  else
    throw UsageError("--mode must be exhaustive or sampled");
  VerifyResult r;
  try {
    if (a.property == "cover")
      r = verify_matching_cover(g, h, a.alpha, mode, a.samples, a.seed);
    else if (a.property == "hitting")
      r = verify_hitting_set(g, h, a.alpha, mode, a.samples, a.seed);
    else
      throw UsageError("--property must be cover or hitting");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json j;
  j["schema"] = 1;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["property"] = a.property;
  j["mode"] = a.mode;
  j["alpha"] = a.alpha;
  j["checked"] = r.checked;
  j["detail"] = r.detail;
  if (r.counterexample) j["counterexample"] = {{"A", edges_json(r.counterexample->first)}, {"B", edges_json(r.counterexample->second)}};
  std::cout << j.dump(2) << '\n';
  return r.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matching covers: generators, streaming, dynamic replay, verification"};
  app.require_subcommand(1);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "write a generated edge list or update script");
  gen->add_option("words", ga.words, "kind followed by parameters")->required();
  gen->add_option("--seed", ga.seed);
  gen->add_option("-o,--out", ga.out, "output file (default stdout)");

  CoverArgs ca;
  auto* cov = app.add_subcommand("cover", "build a matching cover of a graph");
  cov->add_option("graph", ca.graph)->required();
  cov->add_option("--out-dir", ca.out_dir, "write partition, pair table and F/F1/F2/F3 here");
  cov->add_option("--t", ca.t);
  cov->add_option("--gamma", ca.gamma);
  cov->add_option("--p-sample", ca.p_sample);
  cov->add_option("--threshold", ca.threshold);
  cov->add_option("--seed", ca.seed);

  StreamArgs sa;
  auto* st = app.add_subcommand("stream", "run a single-pass matching algorithm");
  st->add_option("input", sa.input, "edge list file or - for stdin");
  st->add_option("--algo", sa.algo)->check(CLI::IsMember({"greedy", "regularity-cascade", "optguess"}));
  st->add_option("--k", sa.k);
  st->add_option("--t", sa.t);
  st->add_option("--gamma", sa.gamma);
  st->add_option("--alpha", sa.alpha);
  st->add_option("--epsilon", sa.epsilon);
  st->add_flag("--oracle", sa.oracle, "compute the exact maximum matching size");
  st->add_flag("--reread", sa.reread, "attempt a second pass (fails)");
  st->add_option("--seed", sa.seed);
  st->add_option("--matching-out", sa.matching_out);
  std::string stream_format = "json";
  st->add_option("--format", stream_format)->check(CLI::IsMember({"json"}));

  DynamicArgs da;
  auto* dy = app.add_subcommand("dynamic", "replay an update script");
  dy->add_option("script", da.script)->required();
  dy->add_option("--n", da.n, "vertex count (default: largest id + 1)");
  dy->add_flag("--deamortized", da.deamortized);
  dy->add_option("--budget", da.budget, "work units per update in deamortized mode");
  dy->add_option("--epsilon", da.epsilon);
  dy->add_option("--tau", da.tau);
  dy->add_option("--period", da.period);
  dy->add_option("--gamma", da.gamma);
  dy->add_option("--t", da.t);
  dy->add_flag("--oracle", da.oracle);
  dy->add_option("--format", da.format)->check(CLI::IsMember({"csv", "json"}));
  dy->add_option("--seed", da.seed);

  VerifyArgs va;
  auto* ve = app.add_subcommand("verify", "check a cover against a graph");
  ve->add_option("graph", va.graph)->required();
  ve->add_option("cover", va.cover)->required();
  ve->add_option("--alpha", va.alpha);
  ve->add_option("--mode", va.mode);
  ve->add_option("--property", va.property);
  ve->add_option("--samples", va.samples);
  ve->add_option("--seed", va.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  try {
    thread_cap();
    if (*gen) return cmd_gen(ga);
    if (*cov) return cmd_cover(ca);
    if (*st) return cmd_stream(sa);
    if (*dy) return cmd_dynamic(da);
    if (*ve) return cmd_verify(va);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // InvariantViolation, SinglePassViolation and friends.
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const PhaseDeadlineMissed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
