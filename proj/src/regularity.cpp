#include "matchcover/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>

#include "matchcover/errors.hpp"
#include "matchcover/rng.hpp"

namespace matchcover {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask mask_of(const VertexSet& s, std::size_t n) {
  Mask m((n + 63) / 64, 0);
  for (Vertex v : s) m[v / 64] |= std::uint64_t{1} << (v % 64);
  return m;
}

std::uint32_t deg_into(const Graph& g, Vertex v, const Mask& mask) {
  const std::uint64_t* row = g.row(v);
  std::uint32_t d = 0;
  for (std::size_t w = 0; w < mask.size(); ++w) d += std::popcount(row[w] & mask[w]);
  return d;
}

std::size_t min_size(double gamma, std::size_t size) {
  const auto s = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(size) - 1e-9));
  return std::clamp<std::size_t>(s, 1, std::max<std::size_t>(size, 1));
}

constexpr double kTol = 1e-12;

struct Candidate {
  VertexSet x, y;
  double gap = -1.0;
};

// Best partner of `from` inside `side`: the top or bottom s vertices of
// `side` by degree into `from`, over the allowed sizes. Returns the gap of
// the best choice and writes the chosen set to `out`.
double best_partner(const Graph& g, const VertexSet& from, const VertexSet& side,
                    const std::vector<std::size_t>& sizes, double d, VertexSet& out, WorkMeter* meter) {
  const Mask fm = mask_of(from, g.n());
  std::vector<std::pair<std::uint32_t, Vertex>> degs(side.size());
  for (std::size_t i = 0; i < side.size(); ++i) degs[i] = {deg_into(g, side[i], fm), side[i]};
  charge(meter, side.size() * fm.size());
  std::sort(degs.begin(), degs.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::uint64_t> prefix(degs.size() + 1, 0);
  for (std::size_t i = 0; i < degs.size(); ++i) prefix[i + 1] = prefix[i] + degs[i].first;
  const double fx = static_cast<double>(from.size());
  double best = -1.0;
  std::size_t best_s = 0;
  bool best_top = true;
  for (std::size_t s : sizes) {
    if (s == 0 || s > degs.size()) continue;
    const double top = static_cast<double>(prefix[s]) / (fx * static_cast<double>(s));
    const double bottom =
        static_cast<double>(prefix[degs.size()] - prefix[degs.size() - s]) / (fx * static_cast<double>(s));
    if (std::abs(top - d) > best + kTol) {
      best = std::abs(top - d);
      best_s = s;
      best_top = true;
    }
    if (std::abs(bottom - d) > best + kTol) {
      best = std::abs(bottom - d);
      best_s = s;
      best_top = false;
    }
  }
  out.clear();
  for (std::size_t i = 0; i < best_s; ++i)
    out.push_back(best_top ? degs[i].second : degs[degs.size() - 1 - i].second);
  std::sort(out.begin(), out.end());
  return best;
}

std::vector<std::size_t> search_sizes(std::size_t lo, std::size_t size) {
  std::vector<std::size_t> s{lo, std::max(lo, size / 4), std::max(lo, size / 2)};
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

PairStatus exact_check(const Graph& g, const VertexSet& a, const VertexSet& b, double gamma, Rational dens,
                       WorkMeter* meter) {
  PairStatus st;
  st.density = dens;
  const double d = dens.value();
  const std::size_t na = a.size(), nb = b.size();
  const std::size_t sx = min_size(gamma, na), sy = min_size(gamma, nb);
  std::vector<std::uint32_t> ymask(nb, 0);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i)
      if (g.has_edge(a[i], b[j])) ymask[j] |= 1U << i;
  charge(meter, na * nb);

  double best = 0.0;
  std::uint32_t best_x = 0;
  std::size_t best_s = 0;
  bool best_top = true;
  std::vector<std::pair<int, std::uint32_t>> degs(nb);
  for (std::uint32_t x = 1; x < (1U << na); ++x) {
    const auto cx = static_cast<std::size_t>(std::popcount(x));
    if (cx < sx) continue;
    for (std::size_t j = 0; j < nb; ++j) degs[j] = {std::popcount(ymask[j] & x), static_cast<std::uint32_t>(j)};
    charge(meter, nb);
    std::sort(degs.begin(), degs.end(), [](const auto& p, const auto& q) {
      return p.first != q.first ? p.first > q.first : p.second < q.second;
    });
    int top = 0, bottom = 0;
    for (std::size_t s = 1; s <= nb; ++s) {
      top += degs[s - 1].first;
      bottom += degs[nb - s].first;
      if (s < sy) continue;
      const double denom = static_cast<double>(cx * s);
      const double gt = std::abs(top / denom - d), gb = std::abs(bottom / denom - d);
      if (gt > best + kTol) {
        best = gt;
        best_x = x;
        best_s = s;
        best_top = true;
      }
      if (gb > best + kTol) {
        best = gb;
        best_x = x;
        best_s = s;
        best_top = false;
      }
    }
  }
  st.gap = best;
  if (best > gamma + kTol) {
    Witness w;
    for (std::size_t i = 0; i < na; ++i)
      if (best_x >> i & 1U) w.x.push_back(a[i]);
    for (std::size_t j = 0; j < nb; ++j) degs[j] = {std::popcount(ymask[j] & best_x), static_cast<std::uint32_t>(j)};
    std::sort(degs.begin(), degs.end(), [](const auto& p, const auto& q) {
      return p.first != q.first ? p.first > q.first : p.second < q.second;
    });
    for (std::size_t s = 0; s < best_s; ++s) w.y.push_back(b[degs[best_top ? s : nb - 1 - s].second]);
    std::sort(w.y.begin(), w.y.end());
    st.regular = false;
    st.witness = std::move(w);
  }
  return st;
}

PairStatus approximate_check(const Graph& g, const VertexSet& a, const VertexSet& b, double gamma, Rational dens,
                             WorkMeter* meter) {
  PairStatus st;
  st.density = dens;
  const double d = dens.value();
  const std::size_t sx = min_size(gamma, a.size()), sy = min_size(gamma, b.size());
  const auto sizes_a = search_sizes(sx, a.size());
  const auto sizes_b = search_sizes(sy, b.size());
  Candidate best;

  auto consider = [&](const VertexSet& x, const VertexSet& y, double gap) {
    if (gap > best.gap + kTol && x.size() >= sx && y.size() >= sy) {
      best.x = x;
      best.y = y;
      best.gap = gap;
    }
  };
  // A deviation set on one side paired with its best response on the other.
  auto respond_from_a = [&](const VertexSet& x0) {
    if (x0.size() < sx) return;
    VertexSet y1;
    consider(x0, y1, best_partner(g, x0, b, sizes_b, d, y1, meter));
  };
  auto respond_from_b = [&](const VertexSet& y0) {
    if (y0.size() < sy) return;
    VertexSet x1;
    consider(x1, y0, best_partner(g, y0, a, sizes_a, d, x1, meter));
  };

  // Degree-deviation sets against the whole opposite side.
  auto degree_seeds = [&](const VertexSet& side, const VertexSet& other, const std::vector<std::size_t>& sizes,
                          auto&& respond, bool side_is_a) {
    const Mask om = mask_of(other, g.n());
    std::vector<std::pair<std::uint32_t, Vertex>> degs(side.size());
    for (std::size_t i = 0; i < side.size(); ++i) degs[i] = {deg_into(g, side[i], om), side[i]};
    charge(meter, side.size() * om.size());
    std::sort(degs.begin(), degs.end(), [](const auto& p, const auto& q) {
      return p.first != q.first ? p.first > q.first : p.second < q.second;
    });
    respond(side);
    for (std::size_t s : sizes) {
      VertexSet top, bottom;
      for (std::size_t i = 0; i < s; ++i) {
        top.push_back(degs[i].second);
        bottom.push_back(degs[degs.size() - 1 - i].second);
      }
      std::sort(top.begin(), top.end());
      std::sort(bottom.begin(), bottom.end());
      for (const VertexSet* x : {&top, &bottom}) {
        std::uint64_t e = 0;
        for (Vertex v : *x) e += deg_into(g, v, om);
        const double gap =
            std::abs(static_cast<double>(e) / static_cast<double>(x->size() * other.size()) - d);
        if (side_is_a)
          consider(*x, other, gap);
        else
          consider(other, *x, gap);
      }
    }
  };
  degree_seeds(a, b, sizes_a, respond_from_a, true);
  degree_seeds(b, a, sizes_b, respond_from_b, false);

  // Codegree seeds: vertices whose common-neighbourhood counts with the rest
  // of their side deviate most from d^2 times the opposite side.
  auto codegree_seeds = [&](const VertexSet& side, const VertexSet& other, auto&& respond_other) {
    const Mask om = mask_of(other, g.n());
    const double expected = d * d * static_cast<double>(other.size());
    std::vector<std::pair<double, Vertex>> score(side.size());
    for (std::size_t i = 0; i < side.size(); ++i) score[i] = {0.0, side[i]};
    for (std::size_t i = 0; i < side.size(); ++i) {
      const std::uint64_t* ri = g.row(side[i]);
      for (std::size_t j = i + 1; j < side.size(); ++j) {
        const std::uint64_t* rj = g.row(side[j]);
        std::uint32_t c = 0;
        for (std::size_t w = 0; w < om.size(); ++w) c += std::popcount(ri[w] & rj[w] & om[w]);
        const double dev = std::abs(static_cast<double>(c) - expected);
        score[i].first += dev;
        score[j].first += dev;
      }
    }
    charge(meter, side.size() * side.size() * om.size() / 2);
    std::sort(score.begin(), score.end(), [](const auto& p, const auto& q) {
      return p.first != q.first ? p.first > q.first : p.second < q.second;
    });
    const std::size_t seeds = std::min<std::size_t>(8, score.size());
    for (std::size_t s = 0; s < seeds; ++s) {
      VertexSet in, out;
      for (Vertex v : other) (g.has_edge(score[s].second, v) ? in : out).push_back(v);
      charge(meter, other.size());
      respond_other(in);
      respond_other(out);
    }
  };
  codegree_seeds(b, a, respond_from_a);
  codegree_seeds(a, b, respond_from_b);

  st.gap = std::max(0.0, best.gap);
  if (best.gap > gamma + kTol) {
    // Validate by direct density computation.
    const double check = std::abs(density(g, best.x, best.y).value() - d);
    charge(meter, best.x.size() * ((g.n() + 63) / 64));
    if (check > gamma + kTol && best.x.size() >= sx && best.y.size() >= sy) {
      st.regular = false;
      st.gap = check;
      st.witness = Witness{best.x, best.y};
    }
  }
  return st;
}

}  // namespace

std::vector<std::uint32_t> Partition::owner(std::size_t n) const {
  std::vector<std::uint32_t> own(n, 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (Vertex v : classes[c]) own[v] = static_cast<std::uint32_t>(c);
  return own;
}

void check_equitable(const Partition& p, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::size_t total = 0;
  for (const auto& c : p.classes)
    for (Vertex v : c) {
      if (v >= n || seen[v]) throw InvariantViolation("partition classes overlap or leave range");
      seen[v] = 1;
      ++total;
    }
  if (total != n) throw InvariantViolation("partition does not cover every vertex");
  for (std::size_t c = 2; c < p.classes.size(); ++c)
    if (p.classes[c].size() != p.classes[1].size()) throw InvariantViolation("classes differ in size");
  if (!p.classes.empty() &&
      static_cast<double>(p.classes[0].size()) > p.gamma * static_cast<double>(n) + 1e-9)
    throw InvariantViolation("exceptional class exceeds gamma*n");
}

Rational density(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("density of an empty side");
  if (!disjoint(a, b, g.n())) throw std::invalid_argument("density sides overlap");
  const Mask bm = mask_of(b, g.n());
  std::uint64_t e = 0;
  for (Vertex v : a) e += deg_into(g, v, bm);
  return Rational{e, static_cast<std::uint64_t>(a.size()) * b.size()};
}

double certificate_level(double gamma) { return std::pow(gamma, 4) / 16.0; }

PairStatus regularity_check(const Graph& g, const VertexSet& a, const VertexSet& b, double gamma,
                            WorkMeter* meter) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
  const Rational dens = density(g, a, b);
  charge(meter, a.size() * ((g.n() + 63) / 64));
  const std::size_t small = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(1.0 / gamma)) - 1);
  const std::size_t largest = std::max(a.size(), b.size());
  if (largest <= std::min<std::size_t>(small, 20)) {
    // Enumerate subsets of the smaller side.
    if (a.size() <= b.size()) return exact_check(g, a, b, gamma, dens, meter);
    PairStatus st = exact_check(g, b, a, gamma, dens, meter);
    if (st.witness) std::swap(st.witness->x, st.witness->y);
    return st;
  }
  return approximate_check(g, a, b, gamma, dens, meter);
}

Partition refine(const Graph& g, const Partition& part, const std::vector<PairStatus>& witnesses,
                 std::size_t max_classes) {
  const std::size_t n = g.n();
  std::vector<const PairStatus*> active;
  for (const auto& w : witnesses)
    if (!w.regular && w.witness) active.push_back(&w);
  if (active.empty()) return part;

  const auto own = part.owner(n);
  // Per class, the list of witness sets lying inside it.
  std::vector<std::vector<Mask>> sets(part.classes.size());
  for (const PairStatus* w : active) {
    if (w->i == 0 || w->j == 0 || w->i >= part.classes.size() || w->j >= part.classes.size())
      throw std::invalid_argument("witness refers to an unknown class pair");
    for (Vertex v : w->witness->x)
      if (own[v] != w->i) throw std::invalid_argument("witness X leaves its class");
    for (Vertex v : w->witness->y)
      if (own[v] != w->j) throw std::invalid_argument("witness Y leaves its class");
    sets[w->i].push_back(mask_of(w->witness->x, n));
    sets[w->j].push_back(mask_of(w->witness->y, n));
  }

  // Atoms of the Venn diagram, in order of their smallest vertex.
  std::vector<VertexSet> atoms;
  for (std::size_t c = 1; c < part.classes.size(); ++c) {
    VertexSet members = part.classes[c];
    std::sort(members.begin(), members.end());
    std::map<std::vector<bool>, std::size_t> index;
    for (Vertex v : members) {
      std::vector<bool> sig(sets[c].size());
      for (std::size_t s = 0; s < sets[c].size(); ++s) sig[s] = (sets[c][s][v / 64] >> (v % 64)) & 1U;
      auto [it, fresh] = index.try_emplace(std::move(sig), atoms.size());
      if (fresh) atoms.emplace_back();
      atoms[it->second].push_back(v);
    }
  }

  const auto budget = static_cast<std::size_t>(std::floor(part.gamma * static_cast<double>(n) + 1e-9));
  const std::size_t c0 = part.classes[0].size();
  std::size_t chosen = 0;
  for (std::size_t s = std::max<std::size_t>(part.class_size(), 1); s >= 1; --s) {
    std::size_t leftover = c0;
    for (const auto& at : atoms) leftover += at.size() % s;
    if (leftover <= budget) {
      chosen = s;
      break;
    }
  }
  if (chosen == 0) throw RefinementOverflow("refinement overflow: no class size keeps C0 within gamma*n");
  std::size_t count = 0;
  for (const auto& at : atoms) count += at.size() / chosen;
  if (count > max_classes)
    throw RefinementOverflow("refinement overflow: " + std::to_string(count) + " classes exceed the cap of " +
                             std::to_string(max_classes));

  Partition out;
  out.gamma = part.gamma;
  out.t_min = part.t_min;
  out.classes.emplace_back(part.classes[0]);
  for (const auto& at : atoms) {
    const std::size_t full = at.size() / chosen;
    for (std::size_t q = 0; q < full; ++q)
      out.classes.emplace_back(at.begin() + static_cast<std::ptrdiff_t>(q * chosen),
                               at.begin() + static_cast<std::ptrdiff_t>((q + 1) * chosen));
    out.classes[0].insert(out.classes[0].end(), at.begin() + static_cast<std::ptrdiff_t>(full * chosen), at.end());
  }
  std::sort(out.classes[0].begin(), out.classes[0].end());
  return out;
}

double mean_square_density(const Graph& g, const Partition& part) {
  const std::size_t n = g.n();
  if (n == 0) return 0.0;
  const std::size_t k = part.k();
  std::vector<Mask> masks(k + 1);
  for (std::size_t c = 1; c <= k; ++c) masks[c] = mask_of(part.classes[c], n);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  double q = 0.0;
  // Class-class pairs.
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = i + 1; j <= k; ++j) {
      std::uint64_t e = 0;
      for (Vertex v : part.classes[i]) e += deg_into(g, v, masks[j]);
      const double size = static_cast<double>(part.classes[i].size()) * static_cast<double>(part.classes[j].size());
      q += static_cast<double>(e) * static_cast<double>(e) / (n2 * size);
    }
  // Exceptional vertices as singletons.
  const auto& c0 = part.classes.empty() ? VertexSet{} : part.classes[0];
  for (Vertex v : c0)
    for (std::size_t j = 1; j <= k; ++j) {
      const double e = deg_into(g, v, masks[j]);
      q += e * e / (n2 * static_cast<double>(part.classes[j].size()));
    }
  for (std::size_t a = 0; a < c0.size(); ++a)
    for (std::size_t b = a + 1; b < c0.size(); ++b)
      if (g.has_edge(c0[a], c0[b])) q += 1.0 / n2;
  return q;
}

std::size_t RegularityResult::irregular_pairs() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return !p.regular; }));
}

Partition initial_partition(std::size_t n, std::size_t t, double gamma, std::uint64_t seed) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (static_cast<double>(n) * gamma < static_cast<double>(t) - 1e-9)
    throw std::invalid_argument("n < t/gamma: classes would be too small");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));
  Partition p;
  p.gamma = gamma;
  p.t_min = t;
  const std::size_t size = n / t;
  p.classes.resize(t + 1);
  for (std::size_t c = 0; c < t; ++c) {
    p.classes[c + 1].assign(order.begin() + static_cast<std::ptrdiff_t>(c * size),
                            order.begin() + static_cast<std::ptrdiff_t>((c + 1) * size));
    std::sort(p.classes[c + 1].begin(), p.classes[c + 1].end());
  }
  p.classes[0].assign(order.begin() + static_cast<std::ptrdiff_t>(t * size), order.end());
  std::sort(p.classes[0].begin(), p.classes[0].end());
  return p;
}

RegularityResult regular_partition(const Graph& g, const RegularityConfig& cfg, WorkMeter* meter) {
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
  if (cfg.t < 1) throw std::invalid_argument("t must be at least 1");
  const std::size_t n = g.n();
  if (static_cast<double>(n) * cfg.gamma < static_cast<double>(cfg.t) - 1e-9)
    throw std::invalid_argument("n < t/gamma: classes would be too small");

  RegularityResult res;
  res.partition = cfg.initial ? *cfg.initial : initial_partition(n, cfg.t, cfg.gamma, cfg.seed);
  res.partition.gamma = cfg.gamma;
  res.partition.t_min = cfg.t;
  check_equitable(res.partition, n);
  const double threshold =
      cfg.increment_threshold >= 0.0 ? cfg.increment_threshold : std::pow(certificate_level(cfg.gamma), 5) / 2.0;

  double previous = mean_square_density(g, res.partition);
  for (std::size_t round = 0;; ++round) {
    const Partition& part = res.partition;
    const std::size_t k = part.k();
    res.pairs.clear();
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j) {
        PairStatus st = regularity_check(g, part.classes[i], part.classes[j], cfg.gamma, meter);
        st.i = i;
        st.j = j;
        res.pairs.push_back(std::move(st));
      }
    RoundLog log;
    log.round = round;
    log.k = k;
    log.irregular = res.irregular_pairs();
    log.index = previous;
    if (!res.rounds.empty()) {
      log.increment = previous - res.rounds.back().index;
      log.heavy = res.rounds.back().heavy;
      log.increment_ok = !log.heavy || log.increment >= threshold;
    }
    const double allowed = cfg.gamma * static_cast<double>(k * (k - (k > 0 ? 1 : 0)) / 2);
    const bool done = static_cast<double>(log.irregular) <= allowed + 1e-9;
    log.heavy = static_cast<double>(log.irregular) >= allowed && log.irregular > 0;
    res.rounds.push_back(log);
    if (done) break;
    if (round >= cfg.max_rounds) {
      res.round_cap_reached = true;
      break;
    }
    res.partition = refine(g, part, res.pairs, cfg.max_classes);
    check_equitable(res.partition, n);
    previous = mean_square_density(g, res.partition);
  }
  return res;
}

std::string format_partition(const Partition& p) {
  std::ostringstream os;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    os << "class " << c << ":";
    for (Vertex v : p.classes[c]) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

std::string format_pair_table(const std::vector<PairStatus>& pairs) {
  std::ostringstream os;
  os << "i,j,density,regular,witness_x,witness_y\n";
  for (const auto& p : pairs) {
    os << p.i << ',' << p.j << ',' << p.density.value() << ',' << (p.regular ? 1 : 0) << ','
       << (p.witness ? p.witness->x.size() : 0) << ',' << (p.witness ? p.witness->y.size() : 0) << '\n';
  }
  return os.str();
}

}  // namespace matchcover
