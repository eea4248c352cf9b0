#include "matchcover/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "matchcover/errors.hpp"

namespace matchcover {

bool is_valid_matching(const Graph& g, const Matching& m, std::string* why) {
  std::vector<char> used(g.n(), 0);
  for (const Edge& e : m) {
    if (e.u >= g.n() || e.v >= g.n() || e.u == e.v) {
      if (why) *why = "edge with invalid endpoints";
      return false;
    }
    if (!g.has_edge(e.u, e.v)) {
      if (why) *why = "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in graph";
      return false;
    }
    if (used[e.u] || used[e.v]) {
      if (why) *why = "edges share endpoint at (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
      return false;
    }
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

std::vector<int> mate_array(std::size_t n, const Matching& m) {
  std::vector<int> mate(n, BlossomSearch::kFree);
  for (const Edge& e : m) {
    mate[e.u] = static_cast<int>(e.v);
    mate[e.v] = static_cast<int>(e.u);
  }
  return mate;
}

Matching matching_from_mates(const std::vector<int>& mate) {
  Matching m;
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (mate[v] != BlossomSearch::kFree && static_cast<std::size_t>(mate[v]) > v)
      m.push_back(Edge{static_cast<Vertex>(v), static_cast<Vertex>(mate[v])});
  return m;
}

// ---------------------------------------------------------------------------
// Hopcroft-Karp

Matching max_matching_bipartite(const Graph& g, const VertexSet& left, const VertexSet& right,
                                std::size_t max_phases, WorkMeter* meter) {
  check_vertex_set(left, g.n());
  check_vertex_set(right, g.n());
  if (!disjoint(left, right, g.n())) throw std::invalid_argument("bipartition sides overlap");

  VertexSet L = left, R = right;
  std::sort(L.begin(), L.end());
  std::sort(R.begin(), R.end());
  std::vector<int> right_index(g.n(), -1);
  for (std::size_t j = 0; j < R.size(); ++j) right_index[R[j]] = static_cast<int>(j);

  std::vector<std::vector<int>> adj(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    g.for_each_neighbor(L[i], [&](Vertex w) {
      if (right_index[w] >= 0) adj[i].push_back(right_index[w]);
    });
    charge(meter, adj[i].size());
  }

  const int inf = std::numeric_limits<int>::max();
  std::vector<int> match_l(L.size(), -1), match_r(R.size(), -1), dist(L.size());
  std::vector<std::size_t> it(L.size());

  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (match_l[i] == -1) {
        dist[i] = 0;
        q.push(static_cast<int>(i));
      } else {
        dist[i] = inf;
      }
    }
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int j : adj[i]) {
        charge(meter);
        const int k = match_r[j];
        if (k == -1) {
          found = true;
        } else if (dist[k] == inf) {
          dist[k] = dist[i] + 1;
          q.push(k);
        }
      }
    }
    return found;
  };

  std::vector<int> stack;
  auto dfs = [&](int root) {
    // Iterative layered DFS; `stack` holds left vertices on the current path.
    stack.assign(1, root);
    std::vector<int> via;
    while (!stack.empty()) {
      const int i = stack.back();
      bool advanced = false;
      while (it[i] < adj[i].size()) {
        const int j = adj[i][it[i]++];
        charge(meter);
        const int k = match_r[j];
        if (k == -1) {
          via.push_back(j);
          // Flip the path.
          for (std::size_t d = stack.size(); d-- > 0;) {
            const int li = stack[d], rj = via[d];
            match_l[li] = rj;
            match_r[rj] = li;
          }
          return true;
        }
        if (dist[k] == dist[i] + 1) {
          via.push_back(j);
          stack.push_back(k);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[i] = inf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  std::size_t phases = 0;
  while ((max_phases == 0 || phases < max_phases) && bfs()) {
    ++phases;
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t i = 0; i < L.size(); ++i)
      if (match_l[i] == -1) dfs(static_cast<int>(i));
  }

  Matching out;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (match_l[i] != -1) out.push_back(make_edge(L[i], R[match_l[i]]));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Edmonds

void BlossomSearch::resize(std::size_t n) {
  n_ = n;
  p_.assign(n, -1);
  base_.assign(n, 0);
  q_.assign(n, 0);
  used_.assign(n, 0);
  blossom_.assign(n, 0);
  seen_.assign(n, 0);
}

int BlossomSearch::lca(int a, int b) {
  const auto& mate = *mate_;
  std::fill(seen_.begin(), seen_.end(), 0);
  for (;;) {
    a = base_[a];
    seen_[a] = 1;
    if (mate[a] == kFree) break;
    a = p_[mate[a]];
  }
  for (;;) {
    b = base_[b];
    if (seen_[b]) return b;
    b = p_[mate[b]];
  }
}

void BlossomSearch::mark_path(int v, int b, int child) {
  const auto& mate = *mate_;
  while (base_[v] != b) {
    blossom_[base_[v]] = blossom_[base_[mate[v]]] = 1;
    p_[v] = child;
    child = mate[v];
    v = p_[mate[v]];
  }
}

bool BlossomSearch::augment_from(const Graph& g, std::vector<int>& mate, Vertex root, WorkMeter* meter) {
  if (g.n() != n_) resize(g.n());
  if (mate[root] != kFree) return false;
  mate_ = &mate;
  std::fill(used_.begin(), used_.end(), 0);
  std::fill(p_.begin(), p_.end(), -1);
  for (std::size_t i = 0; i < n_; ++i) base_[i] = static_cast<int>(i);
  charge(meter, 1);

  used_[root] = 1;
  std::size_t qh = 0, qt = 0;
  q_[qt++] = static_cast<int>(root);
  int endpoint = -1;
  const std::size_t words = g.row_words();

  while (qh < qt && endpoint < 0) {
    const int v = q_[qh++];
    const std::uint64_t* row = g.row(static_cast<Vertex>(v));
    for (std::size_t w = 0; w < words && endpoint < 0; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        const int to = static_cast<int>(w * 64 + __builtin_ctzll(bits));
        bits &= bits - 1;
        charge(meter);
        if (base_[v] == base_[to] || mate[v] == to) continue;
        if (to == static_cast<int>(root) || (mate[to] != kFree && p_[mate[to]] != -1)) {
          const int cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          charge(meter, n_);
          for (std::size_t i = 0; i < n_; ++i) {
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q_[qt++] = static_cast<int>(i);
              }
            }
          }
        } else if (p_[to] == -1) {
          p_[to] = v;
          if (mate[to] == kFree) {
            endpoint = to;
            break;
          }
          const int next = mate[to];
          used_[next] = 1;
          q_[qt++] = next;
        }
      }
    }
  }
  mate_ = nullptr;
  if (endpoint < 0) return false;
  for (int v = endpoint; v != -1;) {
    const int pv = p_[v];
    const int ppv = mate[pv];
    mate[v] = pv;
    mate[pv] = v;
    v = ppv;
    charge(meter);
  }
  return true;
}

std::size_t BlossomSearch::saturate(const Graph& g, std::vector<int>& mate, WorkMeter* meter) {
  if (g.n() != n_) resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    if (mate[v] != kFree) continue;
    bool matched = false;
    g.for_each_neighbor(v, [&](Vertex w) {
      if (matched) return;
      charge(meter);
      if (mate[w] == kFree) {
        mate[v] = static_cast<int>(w);
        mate[w] = static_cast<int>(v);
        matched = true;
      }
    });
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (mate[v] == kFree && g.degree(v) > 0) augment_from(g, mate, v, meter);
  std::size_t size = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (mate[v] != kFree) ++size;
  return size / 2;
}

Matching max_matching_general(const Graph& g, const Matching& warm, WorkMeter* meter) {
  std::string why;
  if (!is_valid_matching(g, warm, &why)) throw std::invalid_argument("warm start is not a matching: " + why);
  std::vector<int> mate = mate_array(g.n(), warm);
  BlossomSearch search(g.n());
  search.saturate(g, mate, meter);
  return matching_from_mates(mate);
}

Matching greedy_stream_matching(const std::vector<Edge>& stream) {
  std::vector<char> used;
  Matching m;
  for (const Edge& e : stream) {
    const std::size_t hi = std::max(e.u, e.v);
    if (hi >= used.size()) used.resize(hi + 1, 0);
    if (e.u == e.v || used[e.u] || used[e.v]) continue;
    used[e.u] = used[e.v] = 1;
    m.push_back(make_edge(e.u, e.v));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hall deficiency

int hall_deficiency_by_subsets(const Graph& g, const VertexSet& left, const VertexSet& right) {
  if (left.size() > 20) throw std::invalid_argument("subset enumeration limited to 20 left vertices");
  const std::size_t padded = std::max(left.size(), right.size());
  std::vector<int> right_index(g.n(), -1);
  for (std::size_t j = 0; j < right.size(); ++j) right_index[right[j]] = static_cast<int>(j);
  std::vector<std::uint64_t> nbr(left.size(), 0);
  for (std::size_t i = 0; i < left.size(); ++i)
    g.for_each_neighbor(left[i], [&](Vertex w) {
      if (right_index[w] >= 0) nbr[i] |= std::uint64_t{1} << right_index[w];
    });
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << left.size()); ++mask) {
    std::uint64_t hood = 0;
    for (std::size_t i = 0; i < left.size(); ++i)
      if (mask >> i & 1U) hood |= nbr[i];
    best = std::max(best, std::popcount(mask) - std::popcount(hood));
  }
  // Padding vertices on the left have empty neighbourhoods.
  return best + static_cast<int>(padded - left.size());
}

int hall_deficiency(const Graph& g, const VertexSet& left, const VertexSet& right) {
  const std::size_t padded = std::max(left.size(), right.size());
  const auto mu = max_matching_bipartite(g, left, right).size();
  const int deficiency = static_cast<int>(padded - mu);
  if (padded <= 12 && deficiency != hall_deficiency_by_subsets(g, left, right))
    throw InvariantViolation("Hall deficiency disagrees with subset enumeration");
  return deficiency;
}

int bitmask_bipartite_matching(const std::vector<std::uint64_t>& rows) {
  std::vector<int> match_r(64, -1);
  int size = 0;
  auto try_kuhn = [&](auto&& self, int i, std::uint64_t& visited) -> bool {
    std::uint64_t cand = rows[i] & ~visited;
    while (cand) {
      const int j = __builtin_ctzll(cand);
      cand &= cand - 1;
      visited |= std::uint64_t{1} << j;
      if (match_r[j] == -1 || self(self, match_r[j], visited)) {
        match_r[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t visited = 0;
    if (try_kuhn(try_kuhn, static_cast<int>(i), visited)) ++size;
  }
  return size;
}

// ---------------------------------------------------------------------------
// Incremental exact maintenance

void IncrementalMatcher::reset(const Graph& g, WorkMeter* meter) {
  mate_.assign(g.n(), BlossomSearch::kFree);
  size_ = search_.saturate(g, mate_, meter);
}

void IncrementalMatcher::after_insert(const Graph& g, Vertex u, Vertex v, WorkMeter* meter) {
  if (mate_.size() != g.n()) mate_.resize(g.n(), BlossomSearch::kFree);
  if (static_cast<Vertex>(mate_[u]) == v && mate_[u] != BlossomSearch::kFree) return;
  if (mate_[u] == BlossomSearch::kFree && mate_[v] == BlossomSearch::kFree) {
    mate_[u] = static_cast<int>(v);
    mate_[v] = static_cast<int>(u);
    ++size_;
    charge(meter);
    return;
  }
  // Any new augmenting path uses (u,v); a free endpoint must be its end.
  if (mate_[u] == BlossomSearch::kFree) {
    if (search_.augment_from(g, mate_, u, meter)) ++size_;
    return;
  }
  if (mate_[v] == BlossomSearch::kFree) {
    if (search_.augment_from(g, mate_, v, meter)) ++size_;
    return;
  }
  for (Vertex r = 0; r < g.n(); ++r) {
    if (mate_[r] != BlossomSearch::kFree || g.degree(r) == 0) continue;
    if (search_.augment_from(g, mate_, r, meter)) {
      ++size_;
      return;
    }
  }
}

void IncrementalMatcher::after_delete(const Graph& g, Vertex u, Vertex v, WorkMeter* meter) {
  if (mate_[u] != static_cast<int>(v) || g.has_edge(u, v)) return;
  mate_[u] = mate_[v] = BlossomSearch::kFree;
  --size_;
  // Any augmenting path now ends at u or v.
  if (search_.augment_from(g, mate_, u, meter) || search_.augment_from(g, mate_, v, meter)) ++size_;
}

}  // namespace matchcover
