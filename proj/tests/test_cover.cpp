#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "matchcover/cover.hpp"
#include "matchcover/generators.hpp"
#include "matchcover/matching.hpp"
#include "matchcover/rng.hpp"
#include "oracles.hpp"

using namespace matchcover;

namespace {

std::set<std::uint64_t> codes(const std::vector<Edge>& es, std::size_t n) {
  std::set<std::uint64_t> s;
  for (const Edge& e : es) s.insert(encode_edge(e, n));
  return s;
}

std::vector<Edge> random_subset(const std::vector<Edge>& es, double p, Rng& rng) {
  std::vector<Edge> out;
  for (const Edge& e : es)
    if (rng.bernoulli(p)) out.push_back(e);
  return out;
}

// Smallest cover size found by trying subsets in order of size.
std::size_t oracle_min_cover_size(std::size_t n, const std::vector<Edge>& g, double alpha) {
  const std::size_t m = g.size();
  for (std::size_t c = 0; c <= m; ++c)
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != c) continue;
      std::vector<Edge> h;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) h.push_back(g[i]);
      if (oracle::is_matching_cover(n, g, h, alpha)) return c;
    }
  return m;
}

FractionalMatching uniform_on_complete(std::size_t k) {
  FractionalMatching x;
  x.n_nodes = k;
  for (Vertex u = 0; u < k; ++u)
    for (Vertex v = u + 1; v < k; ++v) x.weights.push_back({{u, v}, 1.0 / static_cast<double>(k)});
  return x;
}

}  // namespace

TEST_CASE("cover of the empty graph is empty") {
  const CoverReport r = build_cover(Graph(40), CoverParams{});
  CHECK(r.F.empty());
}

TEST_CASE("edges inside classes all land in F2") {
  CoverParams p;
  p.t = 4;
  p.gamma = 0.2;
  p.seed = 3;
  const std::size_t n = 40;
  const Partition init = initial_partition(n, p.t, p.gamma, p.seed);
  Graph g(n);
  const auto& c = init.classes[1];
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) g.insert_edge(c[i], c[j]);
  p.initial = init;
  const CoverReport r = build_cover(g, p);
  CHECK(codes(r.F, n) == codes(g.edges(), n));
  CHECK(r.F2.size() == g.m());
}

TEST_CASE("cover parts are disjoint and respect the pair classification") {
  CoverParams p;
  p.t = 4;
  p.gamma = 0.25;
  p.good_density_threshold = 0.5;
  p.p_sample = 0.3;
  p.seed = 5;
  const Graph g = gen_gnp(400, 0.9, 5);
  const CoverReport r = build_cover(g, p);
  const std::size_t n = g.n();
  const auto f1 = codes(r.F1, n), f2 = codes(r.F2, n), f3 = codes(r.F3, n), f = codes(r.F, n);
  CHECK(f1.size() + f2.size() + f3.size() == f.size());
  std::set<std::uint64_t> uni = f1;
  uni.insert(f2.begin(), f2.end());
  uni.insert(f3.begin(), f3.end());
  CHECK(uni == f);

  const auto own = r.partition.owner(n);
  std::set<std::pair<std::size_t, std::size_t>> good;
  for (const auto& pc : r.pair_class) {
    CHECK(pc.good == (pc.regular && pc.density >= r.threshold && pc.i != 0 && pc.j != 0));
    if (pc.good) good.insert({pc.i, pc.j});
  }
  REQUIRE_FALSE(good.empty());
  std::size_t good_edges = 0;
  for (const Edge& e : g.edges()) {
    auto a = own[e.u], b = own[e.v];
    if (a > b) std::swap(a, b);
    const auto c = encode_edge(e, n);
    if (a == b)
      CHECK(f2.count(c) == 1);
    else if (good.count({a, b})) {
      ++good_edges;
      CHECK(f1.count(c) == 0);
    } else
      CHECK(f1.count(c) == 1);
  }
  for (const Edge& e : r.F3) {
    auto a = own[e.u], b = own[e.v];
    if (a > b) std::swap(a, b);
    CHECK(good.count({a, b}) == 1);
  }
  const double mean = p.p_sample * good_edges;
  CHECK(std::abs(static_cast<double>(r.F3.size()) - mean) < 5 * std::sqrt(mean));
}

TEST_CASE("sampled good-pair edges hit every large subpair") {
  CoverParams p;
  p.t = 4;
  p.gamma = 0.25;
  p.good_density_threshold = 0.5;
  p.p_sample = 0.3;
  p.seed = 8;
  const Graph g = gen_gnp(400, 0.9, 8);
  const CoverReport r = build_cover(g, p);
  const Graph f3 = graph_from_edges(g.n(), r.F3);
  Rng rng(1);
  std::size_t tested = 0;
  for (const auto& pc : r.pair_class) {
    if (!pc.good) continue;
    const auto& ci = r.partition.classes[pc.i];
    const auto& cj = r.partition.classes[pc.j];
    const std::size_t sx = static_cast<std::size_t>(std::ceil(p.gamma * ci.size()));
    const std::size_t sy = static_cast<std::size_t>(std::ceil(p.gamma * cj.size()));
    for (int trial = 0; trial < 100; ++trial) {
      VertexSet x = ci, y = cj;
      rng.shuffle(std::span<Vertex>(x));
      rng.shuffle(std::span<Vertex>(y));
      x.resize(sx);
      y.resize(sy);
      std::size_t sampled = 0, all = 0;
      for (Vertex a : x)
        for (Vertex b : y) {
          all += g.has_edge(a, b);
          sampled += f3.has_edge(a, b);
        }
      CHECK(static_cast<double>(sampled) >= 0.5 * p.p_sample * static_cast<double>(all));
      ++tested;
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("cover size on gnp(512, 0.6)") {
  CoverParams p;
  p.t = 4;
  p.gamma = 0.2;
  p.p_sample = 0.2;
  p.seed = 3;
  const Graph g = gen_gnp(512, 0.6, 3);
  const CoverReport r = build_cover(g, p);
  const double n2 = 512.0 * 512.0;
  CHECK(static_cast<double>(r.F.size()) <= 9 * 0.2 * n2 + n2 * 0.2 * 1.1);
}

TEST_CASE("cover parameter validation and defaults") {
  CoverParams p;
  CHECK(p.resolved_threshold() == doctest::Approx(1.6));
  CHECK(p.resolved_p(1000) == 1.0);
  CHECK(p.resolved_p(1000000) == doctest::Approx(10.0 / std::log(1000000.0)));
  CHECK(p.resolved_p(10) == 1.0);
  p.p_sample = 0.0;
  CHECK_THROWS_AS(build_cover(gen_gnp(40, 0.5, 1), p), std::invalid_argument);
  CHECK(alpha_default(0.25) == doctest::Approx(std::cbrt(0.25 * std::log(4.0))));
}

TEST_CASE("hitting-set verifier") {
  const Graph g = gen_gnp(10, 0.5, 4);
  CHECK(verify_hitting_set(g, g.edges(), 0.2, VerifyMode::exhaustive).pass);
  CHECK(verify_hitting_set(g, g.edges(), 0.2, VerifyMode::sampled).pass);

  const Graph pm = gen_perfect_matching(10);
  const VerifyResult r = verify_hitting_set(pm, {}, 0.2, VerifyMode::exhaustive);
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample.has_value());
  const auto& [a, b] = *r.counterexample;
  CHECK(a.size() == 2);
  CHECK(b.size() == 2);
  // The sides must be perfectly matched in pm.
  std::vector<Edge> cross;
  for (const Edge& e : pm.edges()) {
    const bool ua = std::count(a.begin(), a.end(), e.u), ub = std::count(b.begin(), b.end(), e.u);
    const bool va = std::count(a.begin(), a.end(), e.v), vb = std::count(b.begin(), b.end(), e.v);
    if ((ua && vb) || (ub && va)) cross.push_back(e);
  }
  CHECK(cross.size() == 2);
  CHECK_FALSE(verify_hitting_set(pm, {}, 0.2, VerifyMode::sampled).pass);
  CHECK_THROWS_AS(verify_hitting_set(gen_gnp(15, 0.5, 1), {}, 0.2, VerifyMode::exhaustive), std::invalid_argument);
}

TEST_CASE("cover output on gnp(12, 0.8) is a hitting set") {
  int pass = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Graph g = gen_gnp(12, 0.8, seed);
    CoverParams p;
    p.t = 2;
    p.gamma = 0.25;
    p.seed = seed;
    const CoverReport r = build_cover(g, p);
    if (verify_hitting_set(g, r.F, 0.25, VerifyMode::exhaustive).pass) ++pass;
  }
  CHECK(pass >= 99);
}

TEST_CASE("matching-cover verifier agrees with the brute oracle") {
  const Graph pm = gen_perfect_matching(8);
  CHECK(verify_matching_cover(pm, pm.edges(), 0.0, VerifyMode::exhaustive).pass);
  CHECK_FALSE(verify_matching_cover(pm, {}, 0.49, VerifyMode::exhaustive).pass);
  CHECK(verify_matching_cover(pm, {}, 0.5, VerifyMode::exhaustive).pass);
  CHECK_THROWS_AS(verify_matching_cover(gen_gnp(13, 0.5, 1), {}, 0.1, VerifyMode::exhaustive),
                  std::invalid_argument);

  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + rng.below(4);
    const Graph g = gen_gnp(n, 0.6, rng.next());
    const auto h = random_subset(g.edges(), 0.6, rng);
    const double alpha = static_cast<double>(rng.below(3)) / static_cast<double>(n);
    CHECK(verify_matching_cover(g, h, alpha, VerifyMode::exhaustive).pass ==
          oracle::is_matching_cover(n, g.edges(), h, alpha));
  }
}

TEST_CASE("hitting set implies matching cover on random instances") {
  Rng rng(23);
  int hits = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 6 + rng.below(5);
    const Graph g = gen_gnp(n, 0.5 + 0.4 * rng.uniform(), rng.next());
    const auto h = random_subset(g.edges(), 0.5 + 0.4 * rng.uniform(), rng);
    const double alpha = 0.2 + 0.1 * rng.uniform();
    if (!verify_hitting_set(g, h, alpha, VerifyMode::exhaustive).pass) continue;
    ++hits;
    CHECK(verify_matching_cover(g, h, alpha, VerifyMode::exhaustive).pass);
  }
  CHECK(hits > 20);
}

TEST_CASE("sampled matching-cover verification catches an empty cover") {
  const Graph g = gen_gnp(60, 0.3, 2);
  CHECK(verify_matching_cover(g, g.edges(), 0.0, VerifyMode::sampled).pass);
  CHECK_FALSE(verify_matching_cover(g, {}, 0.1, VerifyMode::sampled).pass);
}

TEST_CASE("consolidation fixtures") {
  FractionalMatching zero = uniform_on_complete(5);
  for (auto& [e, w] : zero.weights) w = 0.0;
  const FractionalMatching y0 = consolidate(zero, 0.3, 1);
  CHECK(y0.total() == 0.0);

  FractionalMatching single;
  single.n_nodes = 2;
  single.weights = {{{0, 1}, 1.0}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    try {
      const FractionalMatching y = consolidate(single, 0.5, seed);
      const ConsolidationCheck c = check_consolidation(single, y, 0.5);
      CHECK(c.below_vertex_sums);
      CHECK(c.support);
      CHECK(c.floor);
      for (const auto& [e, w] : y.weights)
        CHECK((w == 0.0 || w >= std::pow(0.5, 3) / (12 * std::log(2.0)) - 1e-12));
    } catch (const ConsolidationError& err) {
      const ConsolidationCheck c = check_consolidation(single, err.best(), 0.5);
      CHECK(c.below_vertex_sums);
      CHECK(c.support);
      CHECK(c.floor);
    }
  }
  CHECK(consolidation_floor(0.5) == doctest::Approx(0.125 / (12 * std::log(2.0))));
  CHECK(consolidation_trials(0.5) == static_cast<std::size_t>(std::ceil(6 * std::log(2.0) / 0.125)));
  CHECK_THROWS_AS(consolidate(single, 0.0), std::invalid_argument);
}

TEST_CASE("consolidation of the uniform fractional matching on K8") {
  const FractionalMatching x = uniform_on_complete(8);
  int errors = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    try {
      const FractionalMatching y = consolidate(x, 0.3, seed);
      CHECK(check_consolidation(x, y, 0.3).all());
      // Independent recomputation of the four properties.
      const auto xs = x.vertex_sums(), ys = y.vertex_sums();
      for (std::size_t v = 0; v < 8; ++v) CHECK(ys[v] <= xs[v] + 1e-12);
      CHECK(y.total() >= x.total() - 2 * 0.3 * 8 - 1e-12);
    } catch (const ConsolidationError&) {
      ++errors;
    }
  }
  CHECK(errors <= 1);
}

TEST_CASE("brute-force optimal cover") {
  Graph one(4);
  one.insert_edge(0, 1);
  CHECK(brute_force_optimal_cover(one, 0.25).empty());

  const Graph pm = gen_perfect_matching(6);
  CHECK(codes(brute_force_optimal_cover(pm, 0.0), 6) == codes(pm.edges(), 6));

  const Graph k3 = gen_gnp(3, 1.0, 1);
  const auto c = brute_force_optimal_cover(k3, 1.0 / 3.0);
  CHECK(c.size() == oracle_min_cover_size(3, k3.edges(), 1.0 / 3.0));
  CHECK(verify_matching_cover(k3, c, 1.0 / 3.0, VerifyMode::exhaustive).pass);

  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 6 + rng.below(2);
    const Graph g = gen_gnp(n, 0.5, rng.next());
    if (g.m() > 12) continue;
    const double alpha = (1.0 + static_cast<double>(rng.below(2))) / static_cast<double>(n);
    const auto h = brute_force_optimal_cover(g, alpha);
    CHECK(oracle::is_matching_cover(n, g.edges(), h, alpha));
    CHECK(h.size() == oracle_min_cover_size(n, g.edges(), alpha));
  }
  CHECK_THROWS_AS(brute_force_optimal_cover(gen_gnp(12, 0.9, 1), 0.1), std::invalid_argument);
}

TEST_CASE("lifting covers of the double cover") {
  const Graph g = gen_gnp(9, 0.5, 6);
  const auto full = lift_cover_via_double_cover(g, [](const Graph& d) { return d.edges(); });
  CHECK(codes(full, 9) == codes(g.edges(), 9));
  CHECK(lift_cover_via_double_cover(g, [](const Graph&) { return std::vector<Edge>{}; }).empty());

  // A brute-force cover of the double cover at alpha' lifts to a 2 alpha' cover.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph small = gen_gnp(6, 0.4, seed);
    if (small.m() > 10) continue;
    const double ap = 1.0 / 12.0;  // alpha' * 2n = 1 on the double cover
    const auto h = lift_cover_via_double_cover(small, [&](const Graph& d) { return brute_force_optimal_cover(d, ap); });
    CHECK(verify_matching_cover(small, h, 2 * ap, VerifyMode::exhaustive).pass);
  }
}

TEST_CASE("RS partition verification") {
  const Graph pm = gen_perfect_matching(8);
  CHECK(verify_rs_partition(pm, {pm.edges()}, 4));

  const Graph k4 = gen_gnp(4, 1.0, 1);
  std::string why;
  CHECK_FALSE(verify_rs_partition(k4, {{{0, 1}, {2, 3}}}, 2, &why));
  CHECK_FALSE(why.empty());

  const auto ms = rs_layered_matchings(4, 3);
  CHECK(verify_rs_partition(gen_rs_layered(4, 3), ms, 4));
  CHECK_FALSE(verify_rs_partition(gen_rs_layered(4, 3), ms, 3));
}
