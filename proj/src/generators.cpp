#include "matchcover/generators.hpp"

#include <cmath>
#include <span>
#include <stdexcept>

#include "matchcover/rng.hpp"

namespace matchcover {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::size_t as_count(double x, const std::string& name) {
  require(x >= 0 && std::floor(x) == x && x < 1e9, name + " must be a nonnegative integer");
  return static_cast<std::size_t>(x);
}

}  // namespace

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0,1]");
  Rng rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.insert_edge(u, v);
  return g;
}

Graph gen_complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) g.insert_edge(u, static_cast<Vertex>(a + v));
  return g;
}

Graph gen_perfect_matching(std::size_t n) {
  require(n % 2 == 0, "perfect-matching: n must be even");
  Graph g(n);
  for (Vertex u = 0; u + 1 < n; u += 2) g.insert_edge(u, u + 1);
  return g;
}

Graph gen_path(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u + 1 < n; ++u) g.insert_edge(u, u + 1);
  return g;
}

Graph gen_planted_multipartite(std::size_t classes, std::size_t size) {
  Graph g(classes * size);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v)
      if (u / size != v / size) g.insert_edge(u, v);
  return g;
}

Graph gen_rs_layered(std::size_t r, std::size_t t) {
  Graph g(r * (t + 1));
  for (const auto& matching : rs_layered_matchings(r, t))
    for (const Edge& e : matching) g.insert_edge(e.u, e.v);
  return g;
}

std::vector<std::vector<Edge>> rs_layered_matchings(std::size_t r, std::size_t t) {
  std::vector<std::vector<Edge>> out(t);
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t i = 0; i < r; ++i)
      out[j].push_back(make_edge(static_cast<Vertex>(j * r + i), static_cast<Vertex>((j + 1) * r + i)));
  return out;
}

Graph gen_graph(const std::string& kind, const std::vector<double>& params, std::uint64_t seed) {
  auto need = [&](std::size_t k) {
    require(params.size() == k, kind + ": expected " + std::to_string(k) + " parameters");
  };
  if (kind == "gnp") {
    need(2);
    return gen_gnp(as_count(params[0], "n"), params[1], seed);
  }
  if (kind == "complete-bipartite") {
    need(2);
    return gen_complete_bipartite(as_count(params[0], "a"), as_count(params[1], "b"));
  }
  if (kind == "perfect-matching") {
    need(1);
    return gen_perfect_matching(as_count(params[0], "n"));
  }
  if (kind == "path") {
    need(1);
    return gen_path(as_count(params[0], "n"));
  }
  if (kind == "planted") {
    need(2);
    return gen_planted_multipartite(as_count(params[0], "classes"), as_count(params[1], "size"));
  }
  if (kind == "rs-layered") {
    need(2);
    return gen_rs_layered(as_count(params[0], "r"), as_count(params[1], "t"));
  }
  throw std::invalid_argument("unknown generator kind: " + kind);
}

std::vector<Edge> shuffled_edges(const Graph& g, std::uint64_t seed) {
  std::vector<Edge> edges = g.edges();
  Rng rng(seed);
  rng.shuffle(std::span<Edge>(edges));
  return edges;
}

}  // namespace matchcover
