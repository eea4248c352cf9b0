#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matchcover/graph.hpp"

namespace matchcover {

/// Erdos-Renyi G(n,p): each pair independently, pairs visited in code order.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);
/// K_{a,b} on left [0,a) and right [a,a+b).
Graph gen_complete_bipartite(std::size_t a, std::size_t b);
/// Edges (2i, 2i+1); n must be even.
Graph gen_perfect_matching(std::size_t n);
Graph gen_path(std::size_t n);
/// `classes` blocks of `size` consecutive vertices, complete between
/// different blocks and empty inside them.
Graph gen_planted_multipartite(std::size_t classes, std::size_t size);
/// Layers 0..t of r vertices each; vertex (l, i) is l*r + i. Matching j
/// joins (j, i) to (j+1, i) for every i, so n = r(t+1), m = rt, and each
/// matching is induced.
Graph gen_rs_layered(std::size_t r, std::size_t t);
/// The t matchings of gen_rs_layered, in layer order.
std::vector<std::vector<Edge>> rs_layered_matchings(std::size_t r, std::size_t t);

/// Dispatch by name: gnp, complete-bipartite, perfect-matching, path,
/// planted, rs-layered. Throws std::invalid_argument on bad parameters.
Graph gen_graph(const std::string& kind, const std::vector<double>& params, std::uint64_t seed);

/// Edge list of g in a seeded random order.
std::vector<Edge> shuffled_edges(const Graph& g, std::uint64_t seed);

}  // namespace matchcover
