#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "matchcover/cover.hpp"
#include "matchcover/graph.hpp"
#include "matchcover/matching.hpp"
#include "matchcover/rng.hpp"
#include "matchcover/work_meter.hpp"

namespace matchcover {

enum class UpdateOp { insert, remove, query };

struct Update {
  UpdateOp op = UpdateOp::insert;
  Vertex u = 0;
  Vertex v = 0;
};

/// Maintains a matching of a host graph that is recomputed exactly once more
/// than floor(eps/2 * |M0|) updates have passed since the last recompute,
/// M0 being the matching at that recompute. In between, deleted matched
/// edges are dropped and inserted edges with two free endpoints are added.
class LazyMatcher {
 public:
  LazyMatcher(std::size_t n, double epsilon);

  void reset(const Graph& host, WorkMeter* meter = nullptr);
  /// Call after the host has been updated.
  void on_insert(const Graph& host, Edge e, WorkMeter* meter = nullptr);
  void on_delete(const Graph& host, Edge e, WorkMeter* meter = nullptr);
  /// When disabled, the window never triggers a recompute.
  void set_auto_recompute(bool on) { auto_ = on; }
  /// Replaces the matching by one computed elsewhere over the same host.
  void adopt(std::vector<int> mates);

  std::size_t size() const { return size_; }
  Matching matching() const { return matching_from_mates(mate_); }
  const std::vector<int>& mates() const { return mate_; }
  std::size_t stale() const { return stale_; }
  std::size_t window() const { return window_; }
  std::size_t recomputes() const { return recomputes_; }
  double epsilon() const { return eps_; }

 private:
  void tick(const Graph& host, WorkMeter* meter);

  double eps_;
  std::vector<int> mate_;
  BlossomSearch search_;
  std::size_t size_ = 0;
  std::size_t stale_ = 0;
  std::size_t window_ = 0;
  std::size_t recomputes_ = 0;
  bool auto_ = true;
};

enum class Regime { sparse, dense };

struct DynamicConfig {
  /// Threshold divisor: dense_on = n^2/tau, dense_off = n^2/(2 tau).
  double tau = 4.0;
  double epsilon = 0.1;
  /// Recompute period T; 0 selects ceil(n^1.4 ln^2 n).
  std::size_t period = 0;
  CoverParams cover;
  bool deamortized = false;
  /// Work units granted per update in deamortized mode.
  std::uint64_t step_budget = 0;
};

std::size_t default_period(std::size_t n);

struct StepInfo {
  bool applied = false;  // false for an insert of a present or delete of an absent edge
  std::uint64_t work = 0;
};

/// Sparse/dense matching maintenance. In the sparse regime a lazy matcher
/// runs over S, a subgraph of at most dense_on edges (excess edges wait in
/// a list and refill S on deletions). Crossing above dense_on switches to
/// the dense regime: F = build_cover(G) is recomputed every T updates,
/// inserts join F, deletions outside F are ignored, and the lazy matcher
/// runs over F. Dropping below dense_off restarts the lazy matcher on S = G.
///
/// In deamortized mode recomputations become shadow structures executed as
/// budgeted tasks: each passes through build (cover of a copy of G), init
/// (maximum matching of its host copy) and catch-up (replaying the logged
/// host operations, three per update). Up-to-date shadows are promoted
/// oldest first, so the newest one wins; a rematch shadow reuses the
/// caught-up host copy of its predecessor. Rematch shadows are served
/// before the full one, and a phase that overruns T updates raises
/// PhaseDeadlineMissed.
class DynamicEngine {
 public:
  DynamicEngine(std::size_t n, DynamicConfig cfg, std::uint64_t seed = 1);
  ~DynamicEngine();
  DynamicEngine(const DynamicEngine&) = delete;
  DynamicEngine& operator=(const DynamicEngine&) = delete;

  StepInfo update(const Update& up);

  std::size_t n() const { return g_.n(); }
  const Graph& graph() const { return g_; }
  Regime regime() const { return regime_; }
  Matching matching() const;
  std::size_t matching_size() const;
  /// The dense-regime host F (empty in the sparse regime).
  const Graph& cover_host() const { return F_; }
  /// F3 edges of the last cover still present in F.
  std::vector<Edge> live_f3() const;
  const std::optional<CoverReport>& last_cover() const { return last_cover_; }

  double dense_on() const { return dense_on_; }
  double dense_off() const { return dense_off_; }
  std::size_t period() const { return period_; }
  std::size_t updates() const { return updates_; }
  std::size_t rebuilds() const { return rebuilds_; }
  std::size_t regime_switches() const { return switches_; }
  std::size_t sparse_structure_edges() const { return S_.m(); }
  std::size_t overflow_edges() const { return overflow_.size(); }
  std::size_t f_at_recompute() const { return f_at_recompute_; }
  std::size_t since_recompute() const { return since_recompute_; }
  std::uint64_t total_work() const { return total_work_; }
  std::uint64_t max_step_work() const { return max_step_work_; }
  const DynamicConfig& config() const { return cfg_; }
  /// Shadows currently in flight (deamortized mode).
  std::size_t shadows() const;

 private:
  struct Shadow;

  void sparse_insert(Edge e, WorkMeter* meter);
  void sparse_delete(Edge e, WorkMeter* meter);
  void rebuild_dense(WorkMeter* meter);
  void host_op(bool insert, Edge e, bool on_f);
  void check_invariants() const;

  // deamortized mode
  void start_full_shadow();
  void start_rematch_shadow(bool on_f);
  void advance_shadows(std::uint64_t grant, WorkMeter& meter);
  void promote(Shadow& s);

  DynamicConfig cfg_;
  Rng rng_;
  Graph g_, S_, F_;
  std::list<Edge> overflow_;
  std::unordered_map<std::uint64_t, std::list<Edge>::iterator> overflow_at_;
  LazyMatcher lazy_;
  Regime regime_ = Regime::sparse;
  double dense_on_, dense_off_;
  std::size_t period_;
  std::size_t updates_ = 0, rebuilds_ = 0, switches_ = 0;
  std::size_t f_at_recompute_ = 0, since_recompute_ = 0;
  std::uint64_t total_work_ = 0, max_step_work_ = 0;
  std::optional<CoverReport> last_cover_;

  std::vector<std::unique_ptr<Shadow>> shadows_;
  std::uint64_t generation_ = 0;
  bool want_dense_ = false;
  std::size_t last_full_start_ = 0;
  // Caught-up host copy left by the last rematch shadow of each kind
  // (0: S, 1: F) plus the host operations since, reused by the next one.
  struct Mirror {
    Graph host{0};
    std::deque<std::pair<bool, Edge>> log;
    bool valid = false;
  };
  Mirror mirror_[2];
};

/// Adaptive update source: sees the engine before each update; returning
/// nullopt ends the run.
using Adversary = std::function<std::optional<Update>(const DynamicEngine&, Rng&)>;

/// Deletes an F3 edge of the current cover when one exists, otherwise
/// inserts a uniformly random absent pair.
Adversary cover_attacker();

/// kind: insert-only, delete-heavy, oscillating, insert-then-delete, random.
/// `param` is an edge-probability / density knob whose meaning is per kind.
std::vector<Update> gen_script(const std::string& kind, std::size_t n, std::size_t length, std::uint64_t seed,
                               double param = 0.5);

}  // namespace matchcover
