#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchcover/graph.hpp"
#include "matchcover/work_meter.hpp"

namespace matchcover {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// classes[0] is the exceptional class C0; classes[1..k] share one size.
struct Partition {
  std::vector<VertexSet> classes;
  double gamma = 0.2;
  std::size_t t_min = 1;

  std::size_t k() const { return classes.empty() ? 0 : classes.size() - 1; }
  std::size_t class_size() const { return classes.size() > 1 ? classes[1].size() : 0; }
  /// class index of every vertex (0 for C0).
  std::vector<std::uint32_t> owner(std::size_t n) const;
};

/// Throws InvariantViolation when the classes do not partition [0,n), the
/// non-exceptional classes differ in size, or |C0| > gamma*n.
void check_equitable(const Partition& p, std::size_t n);

struct Witness {
  VertexSet x;
  VertexSet y;
};

struct PairStatus {
  std::size_t i = 0;
  std::size_t j = 0;
  Rational density;
  bool regular = true;
  std::optional<Witness> witness;
  /// |d(X,Y) - d(C_i,C_j)| of the witness, or of the largest deviation seen.
  double gap = 0.0;
};

/// e(A,B)/(|A||B|) for disjoint nonempty sides.
Rational density(const Graph& g, const VertexSet& a, const VertexSet& b);

/// gamma^4/16, the level at which witnesses are required to be valid.
double certificate_level(double gamma);

/// Decides gamma-regularity of (a,b). Sides of at most 16 vertices (or fewer
/// than ceil(1/gamma)) are decided exhaustively; larger sides use degree and
/// codegree deviation sets paired with their best response. A returned witness always satisfies
/// |X| >= gamma|A|, |Y| >= gamma|B| and gap > gamma, checked by direct
/// density computation.
PairStatus regularity_check(const Graph& g, const VertexSet& a, const VertexSet& b, double gamma,
                            WorkMeter* meter = nullptr);

/// Splits each class along every witness set touching it, then cuts the
/// resulting atoms into classes of the largest common size that keeps
/// |C0| <= floor(gamma*n). Throws RefinementOverflow otherwise or when more
/// than max_classes classes would be needed.
Partition refine(const Graph& g, const Partition& part, const std::vector<PairStatus>& witnesses,
                 std::size_t max_classes = 256);

/// Sum over pairs of parts of |P||Q|/n^2 * d(P,Q)^2, exceptional vertices
/// counted as singleton parts.
double mean_square_density(const Graph& g, const Partition& part);

struct RegularityConfig {
  std::size_t t = 4;
  double gamma = 0.2;
  std::size_t max_rounds = 20;
  std::size_t max_classes = 256;
  std::uint64_t seed = 1;
  /// Minimum index increment expected on a heavily witnessed round; a
  /// negative value selects certificate_level(gamma)^5 / 2.
  double increment_threshold = -1.0;
  /// Starting partition instead of the seeded arbitrary one.
  std::optional<Partition> initial;
};

struct RoundLog {
  std::size_t round = 0;
  std::size_t k = 0;
  std::size_t irregular = 0;
  double index = 0.0;
  double increment = 0.0;
  bool heavy = false;
  bool increment_ok = true;
};

struct RegularityResult {
  Partition partition;
  std::vector<PairStatus> pairs;
  std::vector<RoundLog> rounds;
  bool round_cap_reached = false;
  std::size_t irregular_pairs() const;
};

/// Seeded equitable t-partition: shuffled vertices cut into t blocks of
/// floor(n/t), remainder to C0.
Partition initial_partition(std::size_t n, std::size_t t, double gamma, std::uint64_t seed);

RegularityResult regular_partition(const Graph& g, const RegularityConfig& cfg, WorkMeter* meter = nullptr);

std::string format_partition(const Partition& p);
std::string format_pair_table(const std::vector<PairStatus>& pairs);

}  // namespace matchcover
