#include "matchcover/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace matchcover {

Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::uint64_t encode_edge(Edge e, std::size_t n) {
  const std::uint64_t u = e.u, v = e.v;
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

Edge decode_edge(std::uint64_t code, std::size_t n) {
  // Row u starts at u*n - u(u+1)/2; binary search the row.
  std::uint64_t lo = 0, hi = n - 1;
  while (lo + 1 < hi) {
    const std::uint64_t mid = (lo + hi) / 2;
    if (mid * n - mid * (mid + 1) / 2 <= code)
      lo = mid;
    else
      hi = mid;
  }
  const std::uint64_t start = lo * n - lo * (lo + 1) / 2;
  return Edge{static_cast<Vertex>(lo), static_cast<Vertex>(code - start + lo + 1)};
}

void check_vertex_set(const VertexSet& s, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (Vertex v : s) {
    if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    if (seen[v]) throw std::invalid_argument("duplicate vertex " + std::to_string(v));
    seen[v] = 1;
  }
}

bool disjoint(const VertexSet& a, const VertexSet& b, std::size_t n) {
  std::vector<char> mark(n, 0);
  for (Vertex v : a) mark[v] = 1;
  return std::none_of(b.begin(), b.end(), [&](Vertex v) { return mark[v] != 0; });
}

Graph::Graph(std::size_t n, bool multi)
    : n_(n), multi_(multi), words_((n + 63) / 64), bits_(n * words_, 0), degree_(n, 0) {}

void Graph::check(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_)
    throw std::out_of_range("vertex out of range: (" + std::to_string(u) + "," +
                            std::to_string(v) + ") with n=" + std::to_string(n_));
  if (u == v) throw std::out_of_range("self-loop at vertex " + std::to_string(u));
}

void Graph::set_bit(Vertex u, Vertex v, bool on) {
  const std::uint64_t mu = std::uint64_t{1} << (v % 64);
  const std::uint64_t mv = std::uint64_t{1} << (u % 64);
  if (on) {
    bits_[std::size_t(u) * words_ + v / 64] |= mu;
    bits_[std::size_t(v) * words_ + u / 64] |= mv;
  } else {
    bits_[std::size_t(u) * words_ + v / 64] &= ~mu;
    bits_[std::size_t(v) * words_ + u / 64] &= ~mv;
  }
}

bool Graph::insert_edge(Vertex u, Vertex v) {
  check(u, v);
  const Edge e = make_edge(u, v);
  const std::uint64_t code = encode_edge(e, n_);
  if (has_edge(u, v)) {
    if (multi_) {
      ++mult_[code];
      ++m_;
    }
    return false;
  }
  set_bit(u, v, true);
  ++degree_[u];
  ++degree_[v];
  index_[code] = list_.size();
  list_.push_back(e);
  if (multi_) mult_[code] = 1;
  ++m_;
  return true;
}

DeleteStatus Graph::delete_edge(Vertex u, Vertex v) {
  check(u, v);
  if (!has_edge(u, v)) return DeleteStatus::absent;
  const Edge e = make_edge(u, v);
  const std::uint64_t code = encode_edge(e, n_);
  --m_;
  if (multi_) {
    auto it = mult_.find(code);
    if (--it->second > 0) return DeleteStatus::removed;
    mult_.erase(it);
  }
  set_bit(u, v, false);
  --degree_[u];
  --degree_[v];
  auto it = index_.find(code);
  const std::size_t pos = it->second;
  index_.erase(it);
  if (pos + 1 != list_.size()) {
    list_[pos] = list_.back();
    index_[encode_edge(list_[pos], n_)] = pos;
  }
  list_.pop_back();
  return DeleteStatus::removed;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  return (bits_[std::size_t(u) * words_ + v / 64] >> (v % 64)) & 1U;
}

std::uint32_t Graph::multiplicity(Vertex u, Vertex v) const {
  if (u == v || !has_edge(u, v)) return 0;
  if (!multi_) return 1;
  return mult_.at(encode_edge(make_edge(u, v), n_));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out = list_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Vertex>> Graph::adjacency_lists() const {
  std::vector<std::vector<Vertex>> adj(n_);
  for (Vertex v = 0; v < n_; ++v) {
    adj[v].reserve(degree_[v]);
    for_each_neighbor(v, [&](Vertex w) { adj[v].push_back(w); });
  }
  return adj;
}

void Graph::clear() {
  std::fill(bits_.begin(), bits_.end(), 0);
  std::fill(degree_.begin(), degree_.end(), 0);
  list_.clear();
  index_.clear();
  mult_.clear();
  m_ = 0;
}

Graph graph_from_edges(std::size_t n, const std::vector<Edge>& edges, bool multi) {
  Graph g(n, multi);
  for (const Edge& e : edges) g.insert_edge(e.u, e.v);
  return g;
}

Graph double_cover(const Graph& g) {
  const auto n = static_cast<Vertex>(g.n());
  Graph h(2 * g.n());
  for (const Edge& e : g.edges()) {
    h.insert_edge(e.u, n + e.v);
    h.insert_edge(e.v, n + e.u);
  }
  return h;
}

}  // namespace matchcover
