#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace matchcover {

using Vertex = std::uint32_t;

/// Unordered vertex pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

Edge make_edge(Vertex a, Vertex b);

/// Pair index u*n - u(u+1)/2 + (v-u-1) for u < v.
std::uint64_t encode_edge(Edge e, std::size_t n);
Edge decode_edge(std::uint64_t code, std::size_t n);
inline std::uint64_t pair_universe(std::size_t n) {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

using VertexSet = std::vector<Vertex>;

/// Throws std::invalid_argument on duplicates or out-of-range members.
void check_vertex_set(const VertexSet& s, std::size_t n);
bool disjoint(const VertexSet& a, const VertexSet& b, std::size_t n);

enum class DeleteStatus { removed, absent };

/// Simple or multi-graph on [0, n) with a bit-matrix adjacency view and an
/// edge-list view over distinct pairs. In multi mode the per-pair
/// multiplicity is kept and m counts copies.
class Graph {
 public:
  explicit Graph(std::size_t n = 0, bool multi = false);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t distinct_pairs() const { return list_.size(); }
  bool multi() const { return multi_; }

  /// Returns true when the pair was not present before.
  bool insert_edge(Vertex u, Vertex v);
  DeleteStatus delete_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  std::uint32_t multiplicity(Vertex u, Vertex v) const;
  std::size_t degree(Vertex v) const { return degree_[v]; }

  /// Distinct pairs in unspecified (but deterministic) order.
  const std::vector<Edge>& edge_list() const { return list_; }
  /// Distinct pairs sorted by encoded index.
  std::vector<Edge> edges() const;

  std::size_t row_words() const { return words_; }
  const std::uint64_t* row(Vertex v) const { return bits_.data() + std::size_t(v) * words_; }

  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    const std::uint64_t* r = row(v);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t x = r[w];
      while (x) {
        const int b = __builtin_ctzll(x);
        f(static_cast<Vertex>(w * 64 + b));
        x &= x - 1;
      }
    }
  }

  std::vector<std::vector<Vertex>> adjacency_lists() const;

  void clear();

 private:
  void check(Vertex u, Vertex v) const;
  void set_bit(Vertex u, Vertex v, bool on);

  std::size_t n_;
  bool multi_;
  std::size_t words_;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> degree_;
  std::vector<Edge> list_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::unordered_map<std::uint64_t, std::uint32_t> mult_;
};

Graph graph_from_edges(std::size_t n, const std::vector<Edge>& edges, bool multi = false);

/// Vertices u in [0,n) map to u and n+u; each edge (u,v) yields (u, n+v) and
/// (v, n+u).
Graph double_cover(const Graph& g);

}  // namespace matchcover
