#include "matchcover/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "matchcover/errors.hpp"

namespace matchcover {

namespace {

constexpr int kFree = BlossomSearch::kFree;

bool is_matched(const std::vector<int>& mate, Edge e) {
  return mate[e.u] == static_cast<int>(e.v) && mate[e.v] == static_cast<int>(e.u);
}

// Greedy bookkeeping shared by the live matcher and shadow replays.
void greedy_insert(std::vector<int>& mate, Edge e, std::size_t& size) {
  if (mate[e.u] == kFree && mate[e.v] == kFree) {
    mate[e.u] = static_cast<int>(e.v);
    mate[e.v] = static_cast<int>(e.u);
    ++size;
  }
}

void drop_if_matched(std::vector<int>& mate, Edge e, std::size_t& size) {
  if (is_matched(mate, e)) {
    mate[e.u] = mate[e.v] = kFree;
    --size;
  }
}

std::size_t count_matched(const std::vector<int>& mate) {
  std::size_t s = 0;
  for (int m : mate)
    if (m != kFree) ++s;
  return s / 2;
}

// Copies the rows of a live graph into `out`; charges one unit per row word
// and one per copied edge so the copy can be spread over several slices.
void copy_rows(const Graph& src, Graph& out, WorkMeter& meter) {
  for (Vertex u = 0; u < src.n(); ++u) {
    meter.charge(src.row_words());
    const std::uint64_t* r = src.row(u);
    for (std::size_t w = 0; w < src.row_words(); ++w) {
      std::uint64_t x = r[w];
      while (x) {
        const auto v = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
        x &= x - 1;
        if (v > u && !out.has_edge(u, v)) {
          out.insert_edge(u, v);
          meter.charge();
        }
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- LazyMatcher

LazyMatcher::LazyMatcher(std::size_t n, double epsilon) : eps_(epsilon), mate_(n, kFree), search_(n) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
}

void LazyMatcher::reset(const Graph& host, WorkMeter* meter) {
  mate_.resize(host.n(), kFree);
  for (Vertex v = 0; v < host.n(); ++v) {
    const int w = mate_[v];
    if (w != kFree && !host.has_edge(v, static_cast<Vertex>(w))) mate_[v] = kFree;
  }
  for (Vertex v = 0; v < host.n(); ++v)
    if (mate_[v] != kFree && mate_[mate_[v]] != static_cast<int>(v)) mate_[v] = kFree;
  charge(meter, host.n());
  size_ = search_.saturate(host, mate_, meter);
  stale_ = 0;
  window_ = static_cast<std::size_t>(std::floor(eps_ / 2.0 * static_cast<double>(size_)));
  ++recomputes_;
}

void LazyMatcher::tick(const Graph& host, WorkMeter* meter) {
  ++stale_;
  if (auto_ && stale_ > window_) reset(host, meter);
}

void LazyMatcher::on_insert(const Graph& host, Edge e, WorkMeter* meter) {
  charge(meter);
  greedy_insert(mate_, e, size_);
  tick(host, meter);
}

void LazyMatcher::on_delete(const Graph& host, Edge e, WorkMeter* meter) {
  charge(meter);
  drop_if_matched(mate_, e, size_);
  tick(host, meter);
}

void LazyMatcher::adopt(std::vector<int> mates) {
  if (mates.size() != mate_.size()) throw InvariantViolation("adopted matching has the wrong vertex count");
  mate_ = std::move(mates);
  size_ = count_matched(mate_);
  stale_ = 0;
  window_ = static_cast<std::size_t>(std::floor(eps_ / 2.0 * static_cast<double>(size_)));
  ++recomputes_;
}

// -------------------------------------------------------------- DynamicEngine

std::size_t default_period(std::size_t n) {
  if (n < 2) return 1;
  const double x = static_cast<double>(n);
  const double ln = std::log(x);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::pow(x, 1.4) * ln * ln)));
}

struct DynamicEngine::Shadow {
  enum class Kind { full, rematch_sparse, rematch_dense };
  enum class Phase { build, init, catch_up };

  Kind kind;
  Phase phase;
  std::uint64_t generation = 0;
  std::size_t started = 0;
  std::size_t phase_start = 0;
  Graph host;
  std::vector<int> mates;
  std::size_t size = 0;
  std::deque<std::pair<bool, Edge>> log;
  std::unique_ptr<BudgetedTask> task;
  std::size_t f_built = 0;
  std::optional<CoverReport> report;

  const char* phase_name() const {
    switch (phase) {
      case Phase::build:
        return "build";
      case Phase::init:
        return "init";
      case Phase::catch_up:
        return "catch-up";
    }
    return "?";
  }
};

DynamicEngine::DynamicEngine(std::size_t n, DynamicConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)), rng_(seed), g_(n), S_(n), F_(n), lazy_(n, cfg_.epsilon) {
  if (n < 1) throw std::invalid_argument("engine needs n >= 1");
  if (!(cfg_.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  dense_on_ = nn / cfg_.tau;
  dense_off_ = nn / (2.0 * cfg_.tau);
  period_ = cfg_.period ? cfg_.period : default_period(n);
  if (cfg_.deamortized) {
    if (cfg_.step_budget < 8) throw std::invalid_argument("step budget below the per-update work quantum of 8");
    lazy_.set_auto_recompute(false);
  }
}

DynamicEngine::~DynamicEngine() = default;

Matching DynamicEngine::matching() const { return lazy_.matching(); }
std::size_t DynamicEngine::matching_size() const { return lazy_.size(); }
std::size_t DynamicEngine::shadows() const { return shadows_.size(); }

std::vector<Edge> DynamicEngine::live_f3() const {
  std::vector<Edge> out;
  if (regime_ != Regime::dense || !last_cover_) return out;
  for (const Edge& e : last_cover_->F3)
    if (F_.has_edge(e.u, e.v)) out.push_back(e);
  return out;
}

void DynamicEngine::host_op(bool insert, Edge e, bool on_f) {
  Mirror& mirror = mirror_[on_f ? 1 : 0];
  if (mirror.valid) mirror.log.emplace_back(insert, e);
  for (auto& s : shadows_) {
    const bool target_f = s->kind == Shadow::Kind::rematch_dense;
    if (s->kind != Shadow::Kind::full && target_f == on_f) s->log.emplace_back(insert, e);
  }
}

void DynamicEngine::sparse_insert(Edge e, WorkMeter* meter) {
  charge(meter);
  if (static_cast<double>(S_.m()) < dense_on_) {
    S_.insert_edge(e.u, e.v);
    host_op(true, e, false);
    if (regime_ == Regime::sparse) lazy_.on_insert(S_, e, meter);
  } else {
    overflow_.push_back(e);
    overflow_at_[encode_edge(e, g_.n())] = std::prev(overflow_.end());
  }
}

void DynamicEngine::sparse_delete(Edge e, WorkMeter* meter) {
  charge(meter);
  const auto code = encode_edge(e, g_.n());
  if (auto it = overflow_at_.find(code); it != overflow_at_.end()) {
    overflow_.erase(it->second);
    overflow_at_.erase(it);
    return;
  }
  S_.delete_edge(e.u, e.v);
  host_op(false, e, false);
  if (regime_ == Regime::sparse) lazy_.on_delete(S_, e, meter);
  if (!overflow_.empty()) {
    const Edge r = overflow_.front();
    overflow_.pop_front();
    overflow_at_.erase(encode_edge(r, g_.n()));
    charge(meter);
    S_.insert_edge(r.u, r.v);
    host_op(true, r, false);
    if (regime_ == Regime::sparse) lazy_.on_insert(S_, r, meter);
  }
}

void DynamicEngine::rebuild_dense(WorkMeter* meter) {
  CoverParams p = cfg_.cover;
  p.seed = rng_.fork();
  last_cover_ = build_cover(g_, p, meter);
  F_.clear();
  for (const Edge& e : last_cover_->F) F_.insert_edge(e.u, e.v);
  charge(meter, last_cover_->F.size());
  f_at_recompute_ = F_.m();
  since_recompute_ = 0;
  ++rebuilds_;
  lazy_.reset(F_, meter);
}

void DynamicEngine::check_invariants() const {
  if (regime_ == Regime::dense && F_.m() > f_at_recompute_ + since_recompute_)
    throw InvariantViolation("|F| exceeds its size at recompute plus the updates since");
  if (static_cast<double>(S_.m()) > dense_on_ + 1e-9)
    throw InvariantViolation("sparse structure holds more than dense_on edges");
}

StepInfo DynamicEngine::update(const Update& up) {
  StepInfo info;
  if (up.op == UpdateOp::query) return info;
  const Edge e = make_edge(up.u, up.v);
  if (e.v >= g_.n()) throw std::out_of_range("update endpoint out of range");
  const bool insert = up.op == UpdateOp::insert;
  if (insert == g_.has_edge(e.u, e.v)) return info;
  info.applied = true;
  ++updates_;

  WorkMeter meter;
  meter.charge();
  if (insert) {
    g_.insert_edge(e.u, e.v);
    sparse_insert(e, &meter);
    if (regime_ == Regime::dense) {
      F_.insert_edge(e.u, e.v);
      host_op(true, e, true);
      lazy_.on_insert(F_, e, &meter);
    }
  } else {
    g_.delete_edge(e.u, e.v);
    sparse_delete(e, &meter);
    if (regime_ == Regime::dense && F_.has_edge(e.u, e.v)) {
      F_.delete_edge(e.u, e.v);
      host_op(false, e, true);
      lazy_.on_delete(F_, e, &meter);
    }
  }
  for (auto& s : shadows_)
    if (s->kind == Shadow::Kind::full) s->log.emplace_back(insert, e);
  if (regime_ == Regime::dense) ++since_recompute_;

  const double m = static_cast<double>(g_.m());
  if (!cfg_.deamortized) {
    if (regime_ == Regime::sparse && m > dense_on_) {
      regime_ = Regime::dense;
      ++switches_;
      rebuild_dense(&meter);
    } else if (regime_ == Regime::dense && m < dense_off_) {
      regime_ = Regime::sparse;
      ++switches_;
      F_.clear();
      // S equals G here: the overflow list is empty below dense_on.
      lazy_.reset(S_, &meter);
    } else if (regime_ == Regime::dense && since_recompute_ >= period_) {
      rebuild_dense(&meter);
    }
  } else {
    const bool has_full = std::any_of(shadows_.begin(), shadows_.end(),
                                      [](const auto& s) { return s->kind == Shadow::Kind::full; });
    if (regime_ == Regime::sparse) {
      if (m > dense_on_) want_dense_ = true;
      if (m < dense_off_) want_dense_ = false;
      if (!want_dense_)
        std::erase_if(shadows_, [](const auto& s) { return s->kind == Shadow::Kind::full; });
      else if (!has_full)
        start_full_shadow();
    } else {
      if (m < dense_off_) {
        if (!std::any_of(shadows_.begin(), shadows_.end(),
                         [](const auto& s) { return s->kind == Shadow::Kind::rematch_sparse; }))
          start_rematch_shadow(false);
      } else {
        std::erase_if(shadows_, [](const auto& s) { return s->kind == Shadow::Kind::rematch_sparse; });
        if (!has_full && updates_ - last_full_start_ >= period_) start_full_shadow();
      }
    }
    const bool on_f = regime_ == Regime::dense;
    const auto rematch_kind = on_f ? Shadow::Kind::rematch_dense : Shadow::Kind::rematch_sparse;
    // Start rematching at half the lazy window so the shadow's lag fits in
    // the other half.
    if (lazy_.stale() >= std::max<std::size_t>(1, lazy_.window() / 2) &&
        !std::any_of(shadows_.begin(), shadows_.end(), [&](const auto& s) { return s->kind == rematch_kind; }))
      start_rematch_shadow(on_f);
    const std::uint64_t light = meter.total();
    if (light < cfg_.step_budget) advance_shadows(cfg_.step_budget - light, meter);
  }
  check_invariants();
  info.work = meter.total();
  total_work_ += info.work;
  max_step_work_ = std::max(max_step_work_, info.work);
  return info;
}

void DynamicEngine::start_full_shadow() {
  auto s = std::make_unique<Shadow>();
  s->kind = Shadow::Kind::full;
  s->phase = Shadow::Phase::build;
  s->generation = ++generation_;
  s->started = s->phase_start = updates_;
  s->host = Graph(g_.n());
  CoverParams p = cfg_.cover;
  p.seed = rng_.fork();
  Shadow* raw = s.get();
  s->task = std::make_unique<BudgetedTask>([this, raw, p](WorkMeter& meter) {
    Graph snap(g_.n());
    copy_rows(g_, snap, meter);
    raw->report = build_cover(snap, p, &meter);
    for (const Edge& e : raw->report->F) {
      raw->host.insert_edge(e.u, e.v);
      meter.charge();
    }
    raw->f_built = raw->host.m();
  });
  last_full_start_ = updates_;
  shadows_.push_back(std::move(s));
}

void DynamicEngine::start_rematch_shadow(bool on_f) {
  auto s = std::make_unique<Shadow>();
  s->kind = on_f ? Shadow::Kind::rematch_dense : Shadow::Kind::rematch_sparse;
  s->phase = Shadow::Phase::init;
  s->generation = ++generation_;
  s->started = s->phase_start = updates_;
  s->host = Graph(g_.n());
  s->mates = lazy_.mates();
  Shadow* raw = s.get();
  const Graph* src = on_f ? &F_ : &S_;
  // Reuse the mirror unless replaying its log costs more than a fresh copy.
  Mirror& mirror = mirror_[on_f ? 1 : 0];
  const bool reuse = mirror.valid && 2 * mirror.log.size() <= src->n() * src->row_words() + src->m();
  if (reuse) {
    s->host = std::move(mirror.host);
    s->log = std::move(mirror.log);
  }
  mirror = Mirror{};
  s->task = std::make_unique<BudgetedTask>([raw, src, reuse](WorkMeter& meter) {
    if (!reuse) copy_rows(*src, raw->host, meter);
    // Fold pending operations into the host so the search sees them.
    while (!raw->log.empty()) {
      const auto [ins, e] = raw->log.front();
      raw->log.pop_front();
      if (ins)
        raw->host.insert_edge(e.u, e.v);
      else
        raw->host.delete_edge(e.u, e.v);
      meter.charge(2);
    }
    auto& mate = raw->mates;
    meter.charge(mate.size());
    for (Vertex v = 0; v < mate.size(); ++v) {
      const int w = mate[v];
      if (w != kFree && (!raw->host.has_edge(v, static_cast<Vertex>(w)) || mate[w] != static_cast<int>(v)))
        mate[v] = kFree;
    }
    BlossomSearch search(raw->host.n());
    raw->size = search.saturate(raw->host, mate, &meter);
  });
  shadows_.push_back(std::move(s));
}

void DynamicEngine::advance_shadows(std::uint64_t grant, WorkMeter& meter) {
  // Rematch shadows are short and bound the matching's lag, so they go
  // first; each shadow gets an equal share of what is left, and leftovers
  // roll on to the next.
  std::stable_partition(shadows_.begin(), shadows_.end(),
                        [](const auto& s) { return s->kind != Shadow::Kind::full; });
  std::uint64_t left = grant;
  const std::size_t count = shadows_.size();
  for (std::size_t i = 0; i < shadows_.size() && left > 0; ++i) {
    Shadow& s = *shadows_[i];
    const std::size_t remaining = count > i ? count - i : 1;
    std::uint64_t share = std::max<std::uint64_t>(1, left / remaining);
    std::uint64_t used = 0;
    std::size_t replays = 0;
    while (used < share) {
      if (s.phase != Shadow::Phase::catch_up) {
        used += s.task->run(share - used);
        if (!s.task->done()) break;
        s.task.reset();
        if (s.phase == Shadow::Phase::build) {
          s.phase = Shadow::Phase::init;
          s.phase_start = updates_;
          s.mates.assign(g_.n(), kFree);
          Shadow* raw = &s;
          s.task = std::make_unique<BudgetedTask>([raw](WorkMeter& m) {
            BlossomSearch search(raw->host.n());
            raw->size = search.saturate(raw->host, raw->mates, &m);
          });
        } else {
          s.phase = Shadow::Phase::catch_up;
          s.phase_start = updates_;
        }
        continue;
      }
      if (s.log.empty() || replays == 3 || used + 2 > share) break;
      const auto [ins, e] = s.log.front();
      s.log.pop_front();
      if (ins) {
        if (!s.host.has_edge(e.u, e.v)) {
          s.host.insert_edge(e.u, e.v);
          greedy_insert(s.mates, e, s.size);
        }
      } else if (s.host.has_edge(e.u, e.v)) {
        drop_if_matched(s.mates, e, s.size);
        s.host.delete_edge(e.u, e.v);
      }
      used += 2;
      ++replays;
    }
    meter.charge(used);
    left -= std::min(left, used);
    if (updates_ - s.phase_start > period_)
      throw PhaseDeadlineMissed(s.phase_name(), "not finished within " + std::to_string(period_) + " updates");
  }
  // Promote every up-to-date shadow, oldest first, so the newest one's
  // matching is the one left standing. Promoting only the newest would
  // starve an older shadow whenever a fresh rematch finishes every update.
  std::vector<std::uint64_t> ready;
  for (const auto& s : shadows_)
    if (s->phase == Shadow::Phase::catch_up && s->log.empty()) ready.push_back(s->generation);
  std::sort(ready.begin(), ready.end());
  for (std::uint64_t gen : ready) {
    const auto it = std::find_if(shadows_.begin(), shadows_.end(), [gen](const auto& s) { return s->generation == gen; });
    if (it == shadows_.end()) continue;  // erased by an earlier promotion
    if ((*it)->kind == Shadow::Kind::rematch_dense && regime_ != Regime::dense) {
      shadows_.erase(it);
      continue;
    }
    promote(**it);
  }
}

void DynamicEngine::promote(Shadow& s) {
  const Shadow* self = &s;
  const auto kind = s.kind;
  const Graph* host = nullptr;
  bool switched = false;
  if (kind == Shadow::Kind::full) {
    F_ = std::move(s.host);
    f_at_recompute_ = s.f_built;
    since_recompute_ = updates_ - s.started;
    last_cover_ = std::move(s.report);
    ++rebuilds_;
    if (regime_ == Regime::sparse) {
      regime_ = Regime::dense;
      ++switches_;
      want_dense_ = false;
    }
    host = &F_;
  } else if (kind == Shadow::Kind::rematch_dense) {
    host = &F_;
  } else {
    if (regime_ == Regime::dense) {
      regime_ = Regime::sparse;
      ++switches_;
      F_.clear();
      last_cover_.reset();
      switched = true;
    }
    host = &S_;
  }
  std::vector<int> mates = std::move(s.mates);
  for (Vertex v = 0; v < mates.size(); ++v)
    if (mates[v] != kFree && !host->has_edge(v, static_cast<Vertex>(mates[v])))
      throw InvariantViolation("shadow matching disagrees with the live host");
  lazy_.adopt(std::move(mates));
  if (kind == Shadow::Kind::full || switched) mirror_[1] = Mirror{};
  if (kind != Shadow::Kind::full) {
    Mirror& mirror = mirror_[kind == Shadow::Kind::rematch_dense ? 1 : 0];
    mirror.host = std::move(s.host);
    mirror.log.clear();
    mirror.valid = true;
  }
  // A new F invalidates every other shadow; leaving the dense regime
  // invalidates the ones working on F.
  std::erase_if(shadows_, [&](const auto& o) {
    if (o.get() == self) return true;
    if (kind == Shadow::Kind::full) return true;
    return switched && o->kind != Shadow::Kind::rematch_sparse;
  });
}

// ------------------------------------------------------------------ scripts

Adversary cover_attacker() {
  return [](const DynamicEngine& eng, Rng& rng) -> std::optional<Update> {
    const auto f3 = eng.live_f3();
    if (!f3.empty()) {
      const Edge e = f3[rng.below(f3.size())];
      return Update{UpdateOp::remove, e.u, e.v};
    }
    const std::size_t n = eng.n();
    for (int tries = 0; tries < 64; ++tries) {
      const auto u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
      if (u != v && !eng.graph().has_edge(u, v)) return Update{UpdateOp::insert, u, v};
    }
    return std::nullopt;
  };
}

namespace {

// Present/absent edge sets with O(1) random picks.
class EdgePool {
 public:
  explicit EdgePool(std::size_t n) : n_(n), pos_(pair_universe(n), kNone) {
    for (std::uint64_t c = 0; c < pair_universe(n); ++c) absent_push(c);
  }
  std::size_t present() const { return present_.size(); }
  std::size_t absent() const { return absent_.size(); }
  Edge insert_random(Rng& rng) { return move(absent_, present_, true, rng.below(absent_.size())); }
  Edge delete_random(Rng& rng) { return move(present_, absent_, false, rng.below(present_.size())); }

 private:
  static constexpr std::uint64_t kNone = ~std::uint64_t{0};
  void absent_push(std::uint64_t c) {
    pos_[c] = absent_.size();
    absent_.push_back(c);
  }
  Edge move(std::vector<std::uint64_t>& from, std::vector<std::uint64_t>& to, bool, std::uint64_t i) {
    const std::uint64_t c = from[i];
    from[i] = from.back();
    pos_[from[i]] = i;
    from.pop_back();
    pos_[c] = to.size();
    to.push_back(c);
    return decode_edge(c, n_);
  }
  std::size_t n_;
  std::vector<std::uint64_t> pos_;
  std::vector<std::uint64_t> present_, absent_;
};

}  // namespace

std::vector<Update> gen_script(const std::string& kind, std::size_t n, std::size_t length, std::uint64_t seed,
                               double param) {
  if (n < 2) throw std::invalid_argument("script needs n >= 2");
  Rng rng(seed);
  EdgePool pool(n);
  std::vector<Update> out;
  auto ins = [&] {
    const Edge e = pool.insert_random(rng);
    out.push_back({UpdateOp::insert, e.u, e.v});
  };
  auto del = [&] {
    const Edge e = pool.delete_random(rng);
    out.push_back({UpdateOp::remove, e.u, e.v});
  };
  if (kind == "insert-only") {
    while (out.size() < length && pool.absent() > 0) ins();
  } else if (kind == "delete-heavy") {
    // Build up to a fraction `param` of all pairs, then delete four times as
    // often as insert.
    const auto target = static_cast<std::size_t>(param * static_cast<double>(pair_universe(n)));
    while (out.size() < length && pool.present() < target && pool.absent() > 0) ins();
    while (out.size() < length) {
      if (pool.present() > 0 && (pool.absent() == 0 || rng.below(5) != 0))
        del();
      else if (pool.absent() > 0)
        ins();
      else
        break;
    }
  } else if (kind == "oscillating") {
    // Keeps m strictly inside the hysteresis band of tau = param.
    if (!(param > 0.0)) throw std::invalid_argument("oscillating script needs tau > 0");
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    const double lo = nn / (2.0 * param), hi = nn / param;
    const auto low = static_cast<std::size_t>(std::floor(lo)) + 1;
    const auto high = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(hi)) - 1, pair_universe(n));
    if (low > high) throw std::invalid_argument("hysteresis band is empty for this n and tau");
    const std::size_t mid = (low + high) / 2;
    while (out.size() < length && pool.present() < mid) ins();
    bool up = false;
    while (out.size() < length) {
      if (pool.present() <= low) up = true;
      if (pool.present() >= high) up = false;
      if (rng.below(4) == 0) up = !up;
      if (up && pool.present() < high && pool.absent() > 0)
        ins();
      else if (pool.present() > low)
        del();
      else
        ins();
    }
  } else if (kind == "insert-then-delete") {
    // All edges of gnp(n, param) inserted, then all deleted in a fresh order.
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.bernoulli(param)) edges.push_back({u, v});
    rng.shuffle(std::span<Edge>(edges));
    for (const Edge& e : edges) out.push_back({UpdateOp::insert, e.u, e.v});
    rng.shuffle(std::span<Edge>(edges));
    for (const Edge& e : edges) out.push_back({UpdateOp::remove, e.u, e.v});
  } else if (kind == "random") {
    while (out.size() < length) {
      if (pool.present() == 0 || (pool.absent() > 0 && rng.bernoulli(param)))
        ins();
      else
        del();
    }
  } else {
    throw std::invalid_argument("unknown script kind '" + kind + "'");
  }
  return out;
}

}  // namespace matchcover
