#include "matchcover/streamer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "matchcover/generators.hpp"
#include "matchcover/rng.hpp"

namespace matchcover {

namespace {

std::size_t ceil_log2(std::size_t x) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < x) ++r;
  return r;
}

std::vector<Edge> random_pairs(std::size_t n, std::size_t count, Rng& rng) {
  const std::uint64_t u = pair_universe(n);
  count = std::min<std::uint64_t>(count, u);
  std::vector<std::uint64_t> codes;
  codes.reserve(count);
  // Floyd's sampling of distinct codes.
  std::unordered_map<std::uint64_t, bool> seen;
  for (std::uint64_t j = u - count; j < u; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = seen.count(t) ? j : t;
    seen[pick] = true;
    codes.push_back(pick);
  }
  std::vector<Edge> out;
  out.reserve(codes.size());
  for (std::uint64_t c : codes) out.push_back(decode_edge(c, n));
  return out;
}

}  // namespace

CoverOracle identity_cover() {
  CoverOracle o;
  o.name = "identity";
  o.fn = [](const Graph& g, double) { return g.edges(); };
  o.mc_bound = [](std::size_t n, std::size_t, double) { return static_cast<std::size_t>(pair_universe(n)); };
  return o;
}

CoverOracle brute_cover(std::size_t calibration_runs, std::uint64_t seed) {
  CoverOracle o;
  o.name = "brute";
  o.fn = [](const Graph& g, double alpha_prime) {
    try {
      return brute_force_optimal_cover(g, alpha_prime);
    } catch (const std::invalid_argument&) {
      return g.edges();
    }
  };
  o.mc_bound = [calibration_runs, seed](std::size_t n, std::size_t b1, double alpha_prime) -> std::size_t {
    const auto u = static_cast<std::size_t>(pair_universe(n));
    if (alpha_prime * static_cast<double>(n) < 1.0) return u;
    Rng rng(seed);
    std::size_t best = 0;
    for (std::size_t r = 0; r < calibration_runs; ++r) {
      const Graph g = graph_from_edges(n, random_pairs(n, b1, rng));
      try {
        best = std::max(best, brute_force_optimal_cover(g, alpha_prime).size());
      } catch (const std::invalid_argument&) {
        return u;
      }
    }
    return std::max<std::size_t>(best, 1);
  };
  return o;
}

CoverOracle regularity_cover(const CoverParams& params) {
  CoverOracle o;
  o.name = "regularity";
  auto calls = std::make_shared<std::uint64_t>(0);
  o.fn = [params, calls](const Graph& g, double) {
    CoverParams p = params;
    p.seed = params.seed + 0x9e37 * (++*calls);
    return build_cover(g, p).F;
  };
  o.mc_bound = [params](std::size_t n, std::size_t b1, double) -> std::size_t {
    Rng rng(params.seed ^ 0x5bd1e995);
    const Graph g = graph_from_edges(n, random_pairs(n, b1, rng));
    const std::size_t f = build_cover(g, params).F.size();
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(f))));
  };
  return o;
}

BufferCascade::BufferCascade(const CascadeConfig& cfg, CoverOracle oracle)
    : n_(cfg.n), k_(cfg.k), alpha_(cfg.alpha), oracle_(std::move(oracle)) {
  if (n_ < 2) throw std::invalid_argument("cascade needs at least two vertices");
  if (k_ < 1) throw std::invalid_argument("cascade needs k >= 1");
  if (!(alpha_ > 0.0)) throw std::invalid_argument("cascade needs alpha > 0");
  const auto u = static_cast<std::size_t>(pair_universe(n_));
  const std::size_t m = cfg.m_bound ? cfg.m_bound : u;
  b1_ = std::max<std::size_t>(1, (m + k_ - 1) / k_);
  mc_ = cfg.mc_bound ? cfg.mc_bound : oracle_.mc_bound(n_, b1_, alpha_prime());
  // No buffer can ever hold more pairs than the stream delivers.
  mc_ = std::max<std::size_t>(1, std::min(mc_, m));
  const std::size_t t = ceil_log2(k_) + 2;
  std::size_t cap = std::min(b1_, u);
  buffers_.emplace_back(n_, cap);
  for (std::size_t i = 1; i < t; ++i) {
    cap = std::min({2 * mc_ + cap, u, m});
    buffers_.emplace_back(n_, cap);
  }
  flushes_.assign(t, 0);
  update_peak();
}

void BufferCascade::feed(Edge e) {
  e = make_edge(e.u, e.v);
  if (e.v >= n_) throw std::out_of_range("edge endpoint out of range");
  ++arrivals_;
  ++b1_arrivals_;
  buffers_[0].insert(e);
  update_peak();
  if (b1_arrivals_ >= b1_) flush(0);
}

void BufferCascade::add_to(std::size_t level, Edge e) {
  try {
    buffers_[level].insert(e);
  } catch (const std::length_error&) {
    throw CascadeOverflow("buffer " + std::to_string(level + 1) + " exceeded its capacity");
  }
}

void BufferCascade::flush(std::size_t level) {
  if (level + 1 == buffers_.size())
    throw CascadeOverflow("top buffer B" + std::to_string(level + 1) + " reached 2*MC = " + std::to_string(2 * mc_));
  ++flushes_[level];
  if (static_cast<double>(flushes_[level]) > static_cast<double>(k_) / std::ldexp(1.0, static_cast<int>(level)))
    throw InvariantViolation("flush count of B" + std::to_string(level + 1) + " is " +
                             std::to_string(flushes_[level]) + ", above k/2^" + std::to_string(level));
  const Graph g = graph_from_edges(n_, buffers_[level].items());
  const std::vector<Edge> cover = oracle_.fn(g, alpha_prime());
  buffers_[level].clear();
  if (level == 0) b1_arrivals_ = 0;
  for (const Edge& e : cover) add_to(level + 1, e);
  update_peak();
  if (buffers_[level + 1].size() >= 2 * mc_) flush(level + 1);
}

void BufferCascade::update_peak() { peak_bits_ = std::max(peak_bits_, current_bits()); }

std::uint64_t BufferCascade::current_bits() const {
  std::uint64_t s = 0;
  for (const auto& b : buffers_) s += b.bits_used();
  return s;
}

double BufferCascade::space_formula_bits() const {
  const double u = static_cast<double>(pair_universe(n_));
  auto term = [u](double cap) { return cap <= 0 ? 0.0 : cap * std::log2(std::numbers::e * u / cap); };
  double s = term(static_cast<double>(std::min<std::uint64_t>(b1_, pair_universe(n_))));
  const double ci = static_cast<double>(std::min<std::uint64_t>(2 * mc_, pair_universe(n_)));
  s += static_cast<double>(buffers_.size() - 1) * term(ci);
  return s;
}

bool BufferCascade::invariant_holds() const {
  for (std::size_t i = 0; i < flushes_.size(); ++i)
    if (static_cast<double>(flushes_[i]) > static_cast<double>(k_) / std::ldexp(1.0, static_cast<int>(i)))
      return false;
  return flushes_.back() == 0;
}

std::vector<Edge> BufferCascade::finalize() const {
  std::vector<Edge> out;
  for (const auto& b : buffers_) {
    auto items = b.items();
    out.insert(out.end(), items.begin(), items.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CascadeStats BufferCascade::stats() const {
  CascadeStats s;
  s.flush_counts = flushes_;
  for (const auto& b : buffers_) s.sizes.push_back(b.size());
  s.peak_bits = peak_bits_;
  s.current_bits = current_bits();
  return s;
}

std::size_t sparsify_range(std::size_t opt, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(8.0 * static_cast<double>(opt) / theta)));
}

Sparsified vertex_sparsify(const std::vector<Edge>& stream, std::size_t n, std::size_t opt, double theta,
                           std::uint64_t seed) {
  const std::size_t r = sparsify_range(opt, theta);
  Rng rng(seed);
  Sparsified s{Graph(r, true), std::vector<Vertex>(n)};
  for (auto& x : s.h) x = static_cast<Vertex>(rng.below(r));
  for (const Edge& e : stream) {
    const Vertex a = s.h.at(e.u), b = s.h.at(e.v);
    if (a != b) s.graph.insert_edge(a, b);
  }
  return s;
}

namespace {

// Maximum matching on the vertices actually touched by `edges`.
Matching compact_matching(std::size_t n, const std::vector<Edge>& edges) {
  std::unordered_map<Vertex, Vertex> local;
  std::vector<Vertex> back;
  auto id = [&](Vertex v) {
    auto [it, fresh] = local.try_emplace(v, static_cast<Vertex>(back.size()));
    if (fresh) back.push_back(v);
    return it->second;
  };
  std::vector<Edge> le;
  le.reserve(edges.size());
  for (const Edge& e : edges) le.push_back(make_edge(id(e.u), id(e.v)));
  if (back.size() < 2) return {};
  (void)n;
  Matching m = max_matching_general(graph_from_edges(back.size(), le));
  for (Edge& e : m) e = make_edge(back[e.u], back[e.v]);
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

StreamResult stream_match_regularity(EdgeStream& stream, std::size_t k, const StreamParams& params) {
  const std::size_t n = stream.n();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const auto u = static_cast<std::size_t>(pair_universe(n));
  const std::size_t store_cap = std::min(u, std::max<std::size_t>(1, 2 * n * n / k));
  CompactEdgeDict store(n, store_cap);
  CascadeConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.alpha = params.alpha > 0 ? params.alpha : alpha_default(params.cover.gamma);
  cfg.m_bound = params.m_bound;
  BufferCascade cascade(cfg, regularity_cover(params.cover));

  StreamResult res;
  std::size_t arrivals = 0;
  bool overflowed = false;
  stream.for_each([&](const Edge& e) {
    ++arrivals;
    if (!overflowed) {
      if (arrivals <= store_cap)
        store.insert(e);
      else
        overflowed = true;
    }
    if (res.cascade_failed) return;
    try {
      cascade.feed(e);
    } catch (const CascadeOverflow& ex) {
      // The store may still cover the whole stream; decide at the end.
      res.cascade_failed = true;
      res.cascade_error = ex.what();
    }
  });
  res.stored_everything = !overflowed;
  res.stored_edges = store.size();
  res.store_bits = store.bits_used();
  res.cascade = cascade.stats();
  if (res.cascade_failed) {
    if (!res.stored_everything) throw CascadeOverflow(res.cascade_error);
    res.matching = compact_matching(n, store.items());
    return res;
  }
  const auto out = cascade.finalize();
  res.cascade_output = out.size();
  res.matching = compact_matching(n, res.stored_everything ? store.items() : out);
  return res;
}

OptGuessResult stream_match_optguess(EdgeStream& stream, std::size_t k, double epsilon, const CoverOracle& oracle,
                                     std::uint64_t seed) {
  const std::size_t n = stream.n();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  const auto u = static_cast<std::size_t>(pair_universe(n));
  const std::size_t raw_cap = std::min(u, std::max<std::size_t>(1, n * n / k));
  CompactEdgeDict raw(n, raw_cap);

  struct Branch {
    std::size_t range;
    std::vector<Vertex> h;
    std::unique_ptr<BufferCascade> cascade;
    std::unordered_map<std::uint64_t, std::vector<Edge>> pre;
  };
  const std::size_t t = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(k)))));
  Rng rng(seed);
  std::vector<Branch> branches;
  for (std::size_t i = 1; i <= t; ++i) {
    const std::size_t opt = std::max<std::size_t>(1, n >> (i + 1));
    Branch b;
    // theta = eps/4 in the sparsification range.
    b.range = std::max<std::size_t>(2, sparsify_range(opt, epsilon / 4.0));
    b.h.resize(n);
    for (auto& x : b.h) x = static_cast<Vertex>(rng.below(b.range));
    CascadeConfig cfg;
    cfg.n = b.range;
    cfg.k = k;
    cfg.alpha = epsilon * epsilon / 64.0;
    cfg.m_bound = u;
    b.cascade = std::make_unique<BufferCascade>(cfg, oracle);
    branches.push_back(std::move(b));
  }

  OptGuessResult res;
  res.branches = t;
  std::size_t arrivals = 0;
  bool overflowed = false;
  stream.for_each([&](const Edge& e0) {
    const Edge e = make_edge(e0.u, e0.v);
    ++arrivals;
    if (!overflowed) {
      if (arrivals <= raw_cap)
        raw.insert(e);
      else
        overflowed = true;
    }
    for (auto& b : branches) {
      const Vertex a = b.h[e.u], c = b.h[e.v];
      if (a == c) continue;
      const Edge s = make_edge(a, c);
      b.pre[encode_edge(s, b.range)].push_back(e);
      b.cascade->feed(s);
    }
  });
  res.stored_everything = !overflowed;
  res.stored_edges = raw.size();

  std::vector<Edge> pool = raw.items();
  for (auto& b : branches) {
    const Matching sm = compact_matching(b.range, b.cascade->finalize());
    res.branch_matching_sizes.push_back(sm.size());
    std::vector<char> used(n, 0);
    for (const Edge& s : sm) {
      auto it = b.pre.find(encode_edge(s, b.range));
      if (it == b.pre.end() || it->second.empty())
        throw InvariantViolation("super-edge without a recorded preimage");
      for (const Edge& e : it->second)
        if (!used[e.u] && !used[e.v]) {
          used[e.u] = used[e.v] = 1;
          pool.push_back(e);
          break;
        }
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  res.matching = compact_matching(n, pool);
  return res;
}

}  // namespace matchcover
