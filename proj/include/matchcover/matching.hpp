#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "matchcover/graph.hpp"
#include "matchcover/work_meter.hpp"

namespace matchcover {

using Matching = std::vector<Edge>;

/// Vertex-disjointness plus membership of every edge in g.
bool is_valid_matching(const Graph& g, const Matching& m, std::string* why = nullptr);

/// Hopcroft-Karp on g[left, right]. BFS layers scan vertices by increasing
/// index. max_phases = 0 runs to optimality; otherwise stops after that many
/// phases (the (1 - 1/(phases+1)) truncated variant).
Matching max_matching_bipartite(const Graph& g, const VertexSet& left, const VertexSet& right,
                                std::size_t max_phases = 0, WorkMeter* meter = nullptr);

/// Edmonds' blossom algorithm with single-root searches. `warm` (a valid
/// matching of g) is used as the starting point.
Matching max_matching_general(const Graph& g, const Matching& warm = {}, WorkMeter* meter = nullptr);

/// Greedy maximal matching in arrival order.
Matching greedy_stream_matching(const std::vector<Edge>& stream);

/// n' - mu(g[left,right]) with both sides padded to n' = max(|left|,|right|).
/// For n' <= 12 the value is cross-checked against max over A of |A| - |N(A)|.
int hall_deficiency(const Graph& g, const VertexSet& left, const VertexSet& right);
int hall_deficiency_by_subsets(const Graph& g, const VertexSet& left, const VertexSet& right);

/// Matching number of a bipartite graph given as bitmask rows (left i is
/// adjacent to right j iff bit j of rows[i]); up to 64 vertices per side.
int bitmask_bipartite_matching(const std::vector<std::uint64_t>& rows);

/// Augmenting-path machinery over a mutable mate array, reusable across
/// calls on a changing graph.
class BlossomSearch {
 public:
  static constexpr int kFree = -1;

  explicit BlossomSearch(std::size_t n = 0) { resize(n); }
  void resize(std::size_t n);

  /// Searches for an augmenting path from free vertex `root` in g and flips
  /// it into `mate`. Returns whether one was found.
  bool augment_from(const Graph& g, std::vector<int>& mate, Vertex root, WorkMeter* meter = nullptr);
  /// Augments from every free vertex once, which yields a maximum matching.
  std::size_t saturate(const Graph& g, std::vector<int>& mate, WorkMeter* meter = nullptr);

 private:
  int lca(int a, int b);
  void mark_path(int v, int b, int child);

  std::vector<int>* mate_ = nullptr;
  std::size_t n_ = 0;
  std::vector<int> p_, base_, q_;
  std::vector<char> used_, blossom_, seen_;
};

std::vector<int> mate_array(std::size_t n, const Matching& m);
Matching matching_from_mates(const std::vector<int>& mate);

/// Exact maximum matching of a graph under single-edge updates. Each update
/// restores optimality with at most a few root searches.
class IncrementalMatcher {
 public:
  explicit IncrementalMatcher(std::size_t n) : mate_(n, BlossomSearch::kFree), search_(n) {}

  /// Call after g has been updated.
  void after_insert(const Graph& g, Vertex u, Vertex v, WorkMeter* meter = nullptr);
  /// Call after g has been updated.
  void after_delete(const Graph& g, Vertex u, Vertex v, WorkMeter* meter = nullptr);
  void reset(const Graph& g, WorkMeter* meter = nullptr);

  std::size_t size() const { return size_; }
  Matching matching() const { return matching_from_mates(mate_); }
  const std::vector<int>& mates() const { return mate_; }

 private:
  std::vector<int> mate_;
  BlossomSearch search_;
  std::size_t size_ = 0;
};

}  // namespace matchcover
