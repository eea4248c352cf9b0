#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchcover/graph.hpp"
#include "matchcover/matching.hpp"
#include "matchcover/regularity.hpp"
#include "matchcover/work_meter.hpp"

namespace matchcover {

struct CoverParams {
  std::size_t t = 4;
  double gamma = 0.2;
  /// Negative selects min(1, 10/ln n).
  double p_sample = -1.0;
  /// Negative selects 8*gamma.
  double good_density_threshold = -1.0;
  std::uint64_t seed = 1;
  std::size_t max_rounds = 20;
  std::size_t max_classes = 256;
  std::optional<Partition> initial;

  double resolved_p(std::size_t n) const;
  double resolved_threshold() const;
};

struct PairClass {
  std::size_t i = 0;
  std::size_t j = 0;
  double density = 0.0;
  bool regular = true;
  bool good = false;
};

struct CoverReport {
  std::vector<Edge> F, F1, F2, F3;
  std::vector<PairClass> pair_class;
  Partition partition;
  RegularityResult regularity;
  double p_sample = 1.0;
  double threshold = 0.0;
};

/// Partition, classify pairs, then F1 = edges across bad pairs (any pair
/// touching C0 is bad), F2 = edges inside a class, F3 = a Bernoulli(p) sample
/// of edges across good pairs drawn in encoded-edge order.
CoverReport build_cover(const Graph& g, const CoverParams& params, WorkMeter* meter = nullptr);

/// (gamma ln(1/gamma))^(1/3).
double alpha_default(double gamma);

enum class VerifyMode { exhaustive, sampled };

struct VerifyResult {
  bool pass = true;
  std::optional<std::pair<VertexSet, VertexSet>> counterexample;
  std::size_t checked = 0;
  std::string detail;
};

/// Every disjoint (A,B) with |A| = |B| = ceil(alpha*n) that is perfectly
/// matched in g must have an h-edge between A and B. Exhaustive mode
/// requires n <= 14.
VerifyResult verify_hitting_set(const Graph& g, const std::vector<Edge>& h, double alpha, VerifyMode mode,
                                std::size_t samples = 1000, std::uint64_t seed = 1);

/// mu(h[A,B]) >= mu(g[A,B]) - alpha*n for disjoint A,B. Exhaustive mode
/// requires n <= 12.
VerifyResult verify_matching_cover(const Graph& g, const std::vector<Edge>& h, double alpha, VerifyMode mode,
                                   std::size_t samples = 1000, std::uint64_t seed = 1);

struct FractionalMatching {
  std::size_t n_nodes = 0;
  std::vector<std::pair<Edge, double>> weights;

  std::vector<double> vertex_sums() const;
  double total() const;
};

/// Carries the best y found when property (4) could not be met.
class ConsolidationError : public std::runtime_error {
 public:
  ConsolidationError(const std::string& what, FractionalMatching best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const FractionalMatching& best() const { return best_; }

 private:
  FractionalMatching best_;
};

struct ConsolidationCheck {
  bool below_vertex_sums = true;  // y_v <= x_v
  bool support = true;            // supp(y) within supp(x)
  bool floor = true;              // y_e = 0 or y_e >= floor
  bool mass = true;               // |y| >= |x| - 2 eps n
  bool all() const { return below_vertex_sums && support && floor && mass; }
};

double consolidation_floor(double epsilon);
std::size_t consolidation_trials(double epsilon);
ConsolidationCheck check_consolidation(const FractionalMatching& x, const FractionalMatching& y, double epsilon);

/// Rounds x by independent trials per edge and vertex-wise truncation,
/// retrying with fresh randomness until the total-mass property holds.
FractionalMatching consolidate(const FractionalMatching& x, double epsilon, std::uint64_t seed = 1,
                               std::size_t max_retries = 64);

/// Smallest edge subset passing exhaustive matching-cover verification at
/// alpha (with alpha*n measured on g's full vertex count); ties broken by
/// the lexicographically smallest sorted code sequence. Requires m <= 20 and
/// at most 12 non-isolated vertices.
std::vector<Edge> brute_force_optimal_cover(const Graph& g, double alpha);

/// Projects a cover of the bipartite double cover back onto g: (u,v) is kept
/// iff (u, n+v) or (v, n+u) is in the bipartite cover.
std::vector<Edge> lift_cover_via_double_cover(const Graph& g,
                                              const std::function<std::vector<Edge>(const Graph&)>& bipartite_cover_fn);

/// The matchings partition E(g), each has exactly r edges and each is induced.
bool verify_rs_partition(const Graph& g, const std::vector<Matching>& matchings, std::size_t r,
                         std::string* why = nullptr);

}  // namespace matchcover
