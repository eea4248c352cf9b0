#include "matchcover/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <unordered_set>

#include "matchcover/generators.hpp"
#include "matchcover/rng.hpp"

namespace matchcover {

namespace {

constexpr double kEps = 1e-9;

VertexSet set_from_mask(std::uint64_t mask) {
  VertexSet s;
  for (Vertex v = 0; mask; ++v, mask >>= 1)
    if (mask & 1U) s.push_back(v);
  return s;
}

std::vector<std::uint64_t> adjacency_masks(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::uint64_t> adj(n, 0);
  for (const Edge& e : edges) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  return adj;
}

int mu_between(const std::vector<std::uint64_t>& adj, std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> rows;
  for (std::uint64_t m = a; m; m &= m - 1) rows.push_back(adj[__builtin_ctzll(m)] & b);
  return bitmask_bipartite_matching(rows);
}

bool rows_equal(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y, std::uint64_t a,
                std::uint64_t b) {
  for (std::uint64_t m = a; m; m &= m - 1) {
    const int v = __builtin_ctzll(m);
    if ((x[v] & b) != (y[v] & b)) return false;
  }
  return true;
}

Graph subgraph_of(std::size_t n, const std::vector<Edge>& h) {
  Graph g(n);
  for (const Edge& e : h) g.insert_edge(e.u, e.v);
  return g;
}

std::size_t ceil_alpha_n(double alpha, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - kEps));
}

}  // namespace

double CoverParams::resolved_p(std::size_t n) const {
  if (p_sample >= 0.0) return p_sample;
  if (n < 3) return 1.0;
  return std::min(1.0, 10.0 / std::log(static_cast<double>(n)));
}

double CoverParams::resolved_threshold() const {
  return good_density_threshold >= 0.0 ? good_density_threshold : 8.0 * gamma;
}

double alpha_default(double gamma) { return std::cbrt(gamma * std::log(1.0 / gamma)); }

CoverReport build_cover(const Graph& g, const CoverParams& params, WorkMeter* meter) {
  CoverReport rep;
  rep.p_sample = params.resolved_p(g.n());
  rep.threshold = params.resolved_threshold();
  if (!(rep.p_sample > 0.0 && rep.p_sample <= 1.0)) throw std::invalid_argument("p_sample must lie in (0,1]");
  if (rep.threshold < 0.0) throw std::invalid_argument("density threshold must be nonnegative");

  RegularityConfig cfg;
  cfg.t = params.t;
  cfg.gamma = params.gamma;
  cfg.max_rounds = params.max_rounds;
  cfg.max_classes = params.max_classes;
  cfg.seed = params.seed;
  cfg.initial = params.initial;
  rep.regularity = regular_partition(g, cfg, meter);
  rep.partition = rep.regularity.partition;

  const std::size_t k = rep.partition.k();
  std::vector<char> good((k + 1) * (k + 1), 0);
  for (const PairStatus& st : rep.regularity.pairs) {
    PairClass pc{st.i, st.j, st.density.value(), st.regular, false};
    pc.good = st.i != 0 && st.j != 0 && st.regular && pc.density >= rep.threshold - kEps;
    good[st.i * (k + 1) + st.j] = good[st.j * (k + 1) + st.i] = pc.good;
    rep.pair_class.push_back(pc);
  }

  const auto own = rep.partition.owner(g.n());
  Rng rng(params.seed ^ 0x5851f42d4c957f2dULL);
  for (const Edge& e : g.edges()) {
    charge(meter);
    const auto cu = own[e.u], cv = own[e.v];
    if (cu == cv)
      rep.F2.push_back(e);
    else if (good[cu * (k + 1) + cv]) {
      if (rng.bernoulli(rep.p_sample)) rep.F3.push_back(e);
    } else
      rep.F1.push_back(e);
  }
  rep.F.reserve(rep.F1.size() + rep.F2.size() + rep.F3.size());
  rep.F.insert(rep.F.end(), rep.F1.begin(), rep.F1.end());
  rep.F.insert(rep.F.end(), rep.F2.begin(), rep.F2.end());
  rep.F.insert(rep.F.end(), rep.F3.begin(), rep.F3.end());
  std::sort(rep.F.begin(), rep.F.end());
  return rep;
}

// ---------------------------------------------------------------------------
// Verification

VerifyResult verify_hitting_set(const Graph& g, const std::vector<Edge>& h, double alpha, VerifyMode mode,
                                std::size_t samples, std::uint64_t seed) {
  VerifyResult res;
  const std::size_t n = g.n();
  const std::size_t s = ceil_alpha_n(alpha, n);
  if (s == 0 || 2 * s > n) {
    res.detail = "no admissible (A,B) pairs";
    return res;
  }

  if (mode == VerifyMode::exhaustive) {
    if (n > 14) throw std::invalid_argument("exhaustive hitting-set verification requires n <= 14");
    const auto adj_g = adjacency_masks(n, g.edges());
    const auto adj_h = adjacency_masks(n, h);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    // Gosper's hack over s-subsets.
    auto next = [](std::uint64_t x) {
      const std::uint64_t c = x & (0 - x), r = x + c;
      return (((r ^ x) >> 2) / c) | r;
    };
    for (std::uint64_t a = (std::uint64_t{1} << s) - 1; a <= full; a = next(a)) {
      const std::uint64_t rest = full & ~a;
      for (std::uint64_t b = rest; b; b = (b - 1) & rest) {
        if (static_cast<std::size_t>(std::popcount(b)) != s) continue;
        ++res.checked;
        bool hit = false;
        for (std::uint64_t m = a; m && !hit; m &= m - 1) hit = (adj_h[__builtin_ctzll(m)] & b) != 0;
        if (hit) continue;
        if (static_cast<std::size_t>(mu_between(adj_g, a, b)) == s) {
          res.pass = false;
          res.counterexample = {set_from_mask(a), set_from_mask(b)};
          res.detail = "perfectly matched pair with no cover edge between the sides";
          return res;
        }
      }
      if (a == full) break;
    }
    return res;
  }

  // Sampled: s-edge sub-matchings of a maximum matching and of random
  // greedy matchings, sides oriented at random.
  Rng rng(seed);
  const Graph hg = subgraph_of(n, h);
  std::vector<Matching> sources{max_matching_general(g)};
  for (int r = 0; r < 3; ++r) sources.push_back(greedy_stream_matching(shuffled_edges(g, rng.fork())));
  for (std::size_t t = 0; t < samples; ++t) {
    Matching src = sources[t % sources.size()];
    if (src.size() < s) continue;
    rng.shuffle(std::span<Edge>(src));
    VertexSet a, b;
    for (std::size_t i = 0; i < s; ++i) {
      Edge e = src[i];
      if (rng.bernoulli(0.5)) std::swap(e.u, e.v);
      a.push_back(e.u);
      b.push_back(e.v);
    }
    ++res.checked;
    bool hit = false;
    for (Vertex x : a)
      for (Vertex y : b) hit = hit || hg.has_edge(x, y);
    if (!hit) {
      res.pass = false;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      res.counterexample = {a, b};
      res.detail = "sampled sub-matching with no cover edge between the sides";
      return res;
    }
  }
  return res;
}

VerifyResult verify_matching_cover(const Graph& g, const std::vector<Edge>& h, double alpha, VerifyMode mode,
                                   std::size_t samples, std::uint64_t seed) {
  VerifyResult res;
  const std::size_t n = g.n();
  const double slack = alpha * static_cast<double>(n);

  if (mode == VerifyMode::exhaustive) {
    if (n > 12) throw std::invalid_argument("exhaustive matching-cover verification requires n <= 12");
    const auto adj_g = adjacency_masks(n, g.edges());
    const auto adj_h = adjacency_masks(n, h);
    const std::uint64_t full = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t a = 1; a <= full; ++a) {
      const std::uint64_t rest = full & ~a;
      const auto ca = static_cast<double>(std::popcount(a));
      if (ca <= slack + kEps) continue;
      const std::uint64_t low = a & (0 - a);
      for (std::uint64_t b = rest; b; b = (b - 1) & rest) {
        // (A,B) and (B,A) are equivalent; keep the one whose lowest vertex is in A.
        if ((b & (low - 1)) != 0) continue;
        if (static_cast<double>(std::popcount(b)) <= slack + kEps) continue;
        if (rows_equal(adj_g, adj_h, a, b)) continue;
        ++res.checked;
        const int mg = mu_between(adj_g, a, b);
        if (mg <= slack + kEps) continue;
        const int mh = mu_between(adj_h, a, b);
        if (mh + kEps < mg - slack) {
          res.pass = false;
          res.counterexample = {set_from_mask(a), set_from_mask(b)};
          res.detail = "mu(H[A,B]) = " + std::to_string(mh) + " < mu(G[A,B]) - alpha*n = " + std::to_string(mg) +
                       " - " + std::to_string(slack);
          return res;
        }
      }
    }
    return res;
  }

  Rng rng(seed);
  const Graph hg = subgraph_of(n, h);
  const Matching maximum = max_matching_general(g);
  for (std::size_t t = 0; t < samples; ++t) {
    // 0 = maximum matching, 1 = random greedy matching, 2 = random sets.
    std::vector<int> side(n, 0);  // 0 none, 1 A, 2 B
    const int kind = static_cast<int>(t % 3);
    if (kind == 2) {
      for (auto& x : side) x = static_cast<int>(rng.below(3));
    } else {
      const Matching src = kind == 0 ? maximum : greedy_stream_matching(shuffled_edges(g, rng.fork()));
      for (const Edge& e : src) {
        if (!rng.bernoulli(0.75)) continue;
        const bool flip = rng.bernoulli(0.5);
        side[e.u] = flip ? 2 : 1;
        side[e.v] = flip ? 1 : 2;
      }
    }
    VertexSet a, b;
    for (Vertex v = 0; v < n; ++v) {
      if (side[v] == 1) a.push_back(v);
      if (side[v] == 2) b.push_back(v);
    }
    if (a.empty() || b.empty()) continue;
    ++res.checked;
    const auto mg = max_matching_bipartite(g, a, b).size();
    if (static_cast<double>(mg) <= slack + kEps) continue;
    const auto mh = max_matching_bipartite(hg, a, b).size();
    if (static_cast<double>(mh) + kEps < static_cast<double>(mg) - slack) {
      res.pass = false;
      res.counterexample = {a, b};
      res.detail = "mu(H[A,B]) = " + std::to_string(mh) + " < mu(G[A,B]) - alpha*n = " + std::to_string(mg) +
                   " - " + std::to_string(slack);
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Consolidation

std::vector<double> FractionalMatching::vertex_sums() const {
  std::vector<double> s(n_nodes, 0.0);
  for (const auto& [e, w] : weights) {
    s[e.u] += w;
    s[e.v] += w;
  }
  return s;
}

double FractionalMatching::total() const {
  double t = 0.0;
  for (const auto& ew : weights) t += ew.second;
  return t;
}

double consolidation_floor(double epsilon) {
  const double l = std::log(1.0 / epsilon);
  if (l <= 0.0) return std::numeric_limits<double>::infinity();
  return epsilon * epsilon * epsilon / (12.0 * l);
}

std::size_t consolidation_trials(double epsilon) {
  const double beta = 6.0 * std::log(1.0 / epsilon) / (epsilon * epsilon * epsilon);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(beta - kEps)));
}

ConsolidationCheck check_consolidation(const FractionalMatching& x, const FractionalMatching& y, double epsilon) {
  ConsolidationCheck c;
  const auto xs = x.vertex_sums(), ys = y.vertex_sums();
  for (std::size_t v = 0; v < xs.size(); ++v)
    if (ys[v] > xs[v] + kEps) c.below_vertex_sums = false;
  std::unordered_set<std::uint64_t> support;
  for (const auto& [e, w] : x.weights)
    if (w > 0.0) support.insert(encode_edge(e, x.n_nodes));
  const double floor = consolidation_floor(epsilon);
  for (const auto& [e, w] : y.weights) {
    if (w < 0.0) c.floor = false;
    if (w > 0.0 && !support.count(encode_edge(e, x.n_nodes))) c.support = false;
    if (w > 0.0 && w < floor * (1.0 - 1e-12)) c.floor = false;
  }
  c.mass = y.total() >= x.total() - 2.0 * epsilon * static_cast<double>(x.n_nodes) - kEps;
  return c;
}

FractionalMatching consolidate(const FractionalMatching& x, double epsilon, std::uint64_t seed,
                               std::size_t max_retries) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0,1]");
  for (const auto& [e, w] : x.weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("edge weights must lie in [0,1]");
    if (e.u >= x.n_nodes || e.v >= x.n_nodes || e.u == e.v) throw std::invalid_argument("edge outside vertex range");
  }
  const std::size_t beta = consolidation_trials(epsilon);
  const double floor = consolidation_floor(epsilon);
  const auto xs = x.vertex_sums();
  Rng rng(seed);
  FractionalMatching best;
  best.n_nodes = x.n_nodes;
  double best_total = -1.0;

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(max_retries, 1); ++attempt) {
    std::vector<double> z(x.weights.size(), 0.0);
    std::vector<double> zs(x.n_nodes, 0.0);
    for (std::size_t i = 0; i < x.weights.size(); ++i) {
      const double w = x.weights[i].second;
      std::size_t hits = 0;
      for (std::size_t trial = 0; trial < beta; ++trial) hits += rng.bernoulli(w);
      z[i] = static_cast<double>(hits) / static_cast<double>(beta);
      zs[x.weights[i].first.u] += z[i];
      zs[x.weights[i].first.v] += z[i];
    }
    FractionalMatching y;
    y.n_nodes = x.n_nodes;
    for (std::size_t i = 0; i < x.weights.size(); ++i) {
      const Edge e = x.weights[i].first;
      if (z[i] <= 0.0) continue;
      if (zs[e.u] >= (1.0 + epsilon) * xs[e.u] || zs[e.v] >= (1.0 + epsilon) * xs[e.v]) continue;
      const double value = z[i] / (1.0 + epsilon);
      // Only reachable when the trial count is rounded up to 1 for large epsilon.
      if (value < floor) continue;
      y.weights.emplace_back(e, value);
    }
    const double total = y.total();
    if (total > best_total) {
      best_total = total;
      best = y;
    }
    if (check_consolidation(x, y, epsilon).mass) return y;
  }
  throw ConsolidationError("consolidation retry cap reached without meeting the mass bound", best);
}

// ---------------------------------------------------------------------------
// Brute-force optimal cover

std::vector<Edge> brute_force_optimal_cover(const Graph& g, double alpha) {
  const std::vector<Edge> edges = g.edges();
  const double slack = alpha * static_cast<double>(g.n());
  if (edges.empty()) return {};
  // With slack below one every edge is a pair (A,B) = ({u},{v}) on its own.
  if (slack < 1.0 - kEps) return edges;
  if (edges.size() > 20) throw std::invalid_argument("brute-force cover limited to m <= 20");

  std::vector<int> local(g.n(), -1);
  std::vector<Vertex> touched;
  for (const Edge& e : edges)
    for (Vertex v : {e.u, e.v})
      if (local[v] < 0) {
        local[v] = static_cast<int>(touched.size());
        touched.push_back(v);
      }
  if (touched.size() > 12) throw std::invalid_argument("brute-force cover limited to 12 non-isolated vertices");
  const std::size_t t = touched.size();
  std::vector<Edge> le(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    le[i] = make_edge(static_cast<Vertex>(local[edges[i].u]), static_cast<Vertex>(local[edges[i].v]));
  const auto adj_g = adjacency_masks(t, le);

  struct Need {
    std::uint64_t a, b;
    int required;
  };
  std::vector<Need> needs;
  const std::uint64_t full = (std::uint64_t{1} << t) - 1;
  for (std::uint64_t a = 1; a <= full; ++a) {
    if (static_cast<double>(std::popcount(a)) <= slack + kEps) continue;
    const std::uint64_t rest = full & ~a, low = a & (0 - a);
    for (std::uint64_t b = rest; b; b = (b - 1) & rest) {
      if ((b & (low - 1)) != 0) continue;
      if (static_cast<double>(std::popcount(b)) <= slack + kEps) continue;
      const int mg = mu_between(adj_g, a, b);
      const int req = static_cast<int>(std::ceil(mg - slack - kEps));
      if (req > 0) needs.push_back({a, b, req});
    }
  }
  if (needs.empty()) return {};

  const std::size_t m = le.size();
  std::vector<std::uint64_t> adj_h(t);
  for (std::size_t c = 0; c <= m; ++c) {
    // Combinations of c edge indices in lexicographic order.
    std::vector<std::size_t> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::fill(adj_h.begin(), adj_h.end(), 0);
      for (std::size_t i : idx) {
        adj_h[le[i].u] |= std::uint64_t{1} << le[i].v;
        adj_h[le[i].v] |= std::uint64_t{1} << le[i].u;
      }
      bool ok = true;
      for (std::size_t q = 0; q < needs.size(); ++q) {
        if (mu_between(adj_h, needs[q].a, needs[q].b) < needs[q].required) {
          ok = false;
          // Move the failing requirement forward; it is likely to reject the
          // next candidate too.
          if (q > 0) std::swap(needs[q], needs[q / 2]);
          break;
        }
      }
      if (ok) {
        std::vector<Edge> out;
        for (std::size_t i : idx) out.push_back(edges[i]);
        return out;
      }
      std::size_t pos = c;
      while (pos > 0 && idx[pos - 1] == m - c + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < c; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return edges;
}

// ---------------------------------------------------------------------------
// Double cover lifting and RS verification

std::vector<Edge> lift_cover_via_double_cover(const Graph& g,
                                              const std::function<std::vector<Edge>(const Graph&)>& bipartite_cover_fn) {
  const Graph d = double_cover(g);
  const auto n = static_cast<Vertex>(g.n());
  std::vector<Edge> out;
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : bipartite_cover_fn(d)) {
    // Bipartite edges run between copy 1 [0,n) and copy 2 [n,2n).
    if (e.u >= n || e.v < n) continue;
    const Edge lifted = make_edge(e.u, e.v - n);
    if (lifted.u == lifted.v || !g.has_edge(lifted.u, lifted.v)) continue;
    if (seen.insert(encode_edge(lifted, g.n())).second) out.push_back(lifted);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool verify_rs_partition(const Graph& g, const std::vector<Matching>& matchings, std::size_t r, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::unordered_set<std::uint64_t> used;
  for (std::size_t i = 0; i < matchings.size(); ++i) {
    const Matching& m = matchings[i];
    if (m.size() != r) return fail("matching " + std::to_string(i) + " has size " + std::to_string(m.size()));
    std::string inner;
    if (!is_valid_matching(g, m, &inner)) return fail("matching " + std::to_string(i) + ": " + inner);
    std::unordered_set<std::uint64_t> own;
    VertexSet verts;
    for (const Edge& e : m) {
      const Edge ne = make_edge(e.u, e.v);
      if (!used.insert(encode_edge(ne, g.n())).second) return fail("edge appears in two matchings");
      own.insert(encode_edge(ne, g.n()));
      verts.push_back(e.u);
      verts.push_back(e.v);
    }
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b)
        if (g.has_edge(verts[a], verts[b]) && !own.count(encode_edge(make_edge(verts[a], verts[b]), g.n())))
          return fail("matching " + std::to_string(i) + " is not induced");
  }
  if (used.size() != g.distinct_pairs()) return fail("matchings do not cover every edge");
  return true;
}

}  // namespace matchcover
