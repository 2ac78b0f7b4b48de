#include "pathpack/online.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathpack {

namespace {

// Position of `edge` in the sorted member list, or -1.
long member_index(const std::vector<long>& edges, long edge) {
  auto it = std::lower_bound(edges.begin(), edges.end(), edge);
  if (it == edges.end() || *it != edge) return -1;
  return it - edges.begin();
}

// Member indices covered by the span [s, t) as a half-open index range.
std::pair<long, long> member_range(const std::vector<long>& edges, long s, long t) {
  auto lo = std::lower_bound(edges.begin(), edges.end(), s);
  auto hi = std::lower_bound(edges.begin(), edges.end(), t);
  return {lo - edges.begin(), hi - edges.begin()};
}

}  // namespace

UniformLevelState::UniformLevelState(std::vector<long> edges, Rat capacity, Rat fraction)
    : edges_(std::move(edges)), cap_(std::move(capacity)), fraction_(std::move(fraction)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  if (cap_ <= 0) throw std::invalid_argument("level capacity must be positive");
  if (fraction_ <= 0 || fraction_ > 1) throw std::invalid_argument("level fraction must lie in (0,1]");
}

bool UniformLevelState::member(long edge) const {
  return member_index(edges_, edge) >= 0;
}

Rat UniformLevelState::level_load(long k, long edge) const {
  if (k < 1 || k > levels()) return Rat(0);
  long idx = member_index(edges_, edge);
  if (idx < 0) return Rat(0);
  return load_[static_cast<size_t>(k - 1)][static_cast<size_t>(idx)];
}

LevelAssignment UniformLevelState::assign(long s, long t, const Rat& d) {
  if (d <= 0) throw std::invalid_argument("demand must be positive");
  Rat budget_unit = fraction_ * cap_;
  if (d > budget_unit) throw std::invalid_argument("demand exceeds the level budget");
  auto [lo, hi] = member_range(edges_, s, t);

  LevelAssignment out;
  std::vector<Rat> cum(static_cast<size_t>(hi - lo), Rat(0));
  for (long k = 1; k <= levels(); ++k) {
    const auto& row = load_[static_cast<size_t>(k - 1)];
    long bad = -1;
    Rat budget = Rat(k) * budget_unit;
    for (long i = lo; i < hi; ++i) {
      cum[static_cast<size_t>(i - lo)] += row[static_cast<size_t>(i)];
      if (bad < 0 && cum[static_cast<size_t>(i - lo)] + d > budget) bad = edges_[static_cast<size_t>(i)];
    }
    if (bad < 0) {
      out.level = k;
      break;
    }
    out.rejected.push_back(bad);
  }
  if (out.level == 0) {
    load_.emplace_back(edges_.size(), Rat(0));
    out.level = levels();
  }
  auto& row = load_[static_cast<size_t>(out.level - 1)];
  for (long i = lo; i < hi; ++i) row[static_cast<size_t>(i)] += d;
  return out;
}

DisjointLevelState::DisjointLevelState(std::vector<long> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool DisjointLevelState::member(long edge) const {
  return member_index(edges_, edge) >= 0;
}

LevelAssignment DisjointLevelState::assign(long s, long t) {
  auto [lo, hi] = member_range(edges_, s, t);

  LevelAssignment out;
  if (lo >= hi) {
    if (levels() == 0) taken_.emplace_back();
    out.level = 1;
    return out;
  }
  for (long k = 1; k <= levels(); ++k) {
    long bad = -1;
    for (const auto& [a, b] : taken_[static_cast<size_t>(k - 1)]) {
      if (a < hi && lo < b) {
        bad = edges_[static_cast<size_t>(std::max(a, lo))];
        break;
      }
    }
    if (bad < 0) {
      out.level = k;
      break;
    }
    out.rejected.push_back(bad);
  }
  if (out.level == 0) {
    taken_.emplace_back();
    out.level = levels();
  }
  if (lo < hi) taken_[static_cast<size_t>(out.level - 1)].emplace_back(lo, hi);
  return out;
}

OnlineState::OnlineState(PathNetwork net) : net_(std::move(net)) {
  sigma_ = net_.min_capacity();
  log_.assign(static_cast<size_t>(net_.edges()) + 1, 0);
  load_.assign(static_cast<size_t>(net_.edges()) + 1, Rat(0));
  for (long e = 1; e <= net_.edges(); ++e) {
    Rat scaled = net_.capacity(e) / sigma_;
    log_[static_cast<size_t>(e)] = floor_log2(scaled);
  }
}

OnlineClass OnlineState::classify(const Request& r) const {
  long s = r.s, t = r.t;
  if (s == t) throw std::invalid_argument("request endpoints must differ");
  if (s > t) std::swap(s, t);
  if (s < 1 || t > net_.edges() + 1) throw std::invalid_argument("request endpoint out of range");
  if (r.d <= 0) throw std::invalid_argument("demand must be positive");
  if (r.d > sigma_) {
    NbaReport rep;
    rep.ok = false;
    rep.request = steps();
    rep.demand = r.d;
    rep.capacity = sigma_;
    for (long e = 1; e <= net_.edges(); ++e) {
      if (net_.capacity(e) == sigma_) {
        rep.edge = e;
        break;
      }
    }
    throw NbaViolation(rep);
  }

  OnlineClass oc;
  oc.cls = log_[static_cast<size_t>(s)];
  for (long e = s; e < t; ++e) oc.cls = std::min(oc.cls, log_[static_cast<size_t>(e)]);
  Rat dn = r.d / sigma_;
  Rat threshold = oc.cls <= 1 ? rat(1, 4) : oc.cls == 2 ? rat(1, 2) : Rat(1);
  oc.size = dn <= threshold ? DemandSize::Small : DemandSize::Large;
  return oc;
}

long OnlineState::global_color(int domain, long key) {
  auto [it, fresh] = global_.try_emplace({domain, key}, colors_ + 1);
  if (fresh) ++colors_;
  return it->second;
}

UniformLevelState& OnlineState::small_machine(long cls) {
  if (static_cast<size_t>(cls) >= small_.size()) small_.resize(static_cast<size_t>(cls) + 1);
  auto& slot = small_[static_cast<size_t>(cls)];
  if (!slot) {
    std::vector<long> edges;
    for (long e = 1; e <= net_.edges(); ++e) {
      if (log_[static_cast<size_t>(e)] >= cls) edges.push_back(e);
    }
    Rat cap = cls == 0 ? Rat(1) : pow2(cls - 1);
    slot.emplace(std::move(edges), cap, rat(1, 4));
  }
  return *slot;
}

long OnlineState::route_small(const Request& r, long cls) {
  Rat dn = r.d / sigma_;
  LevelAssignment la = small_machine(cls).assign(r.s, r.t, dn);

  OnlineStep step;
  step.request = r;
  step.cls = cls;
  step.size = DemandSize::Small;
  step.band = 0;
  step.level = la.level;
  step.routed_demand = dn;
  step.rejected = std::move(la.rejected);
  step.color = global_color(0, la.level);
  steps_.push_back(std::move(step));
  return steps_.back().color;
}

long OnlineState::route_large(const Request& r, long cls) {
  std::vector<long> edges;
  for (long e = 1; e <= net_.edges(); ++e) {
    if (log_[static_cast<size_t>(e)] == cls) edges.push_back(e);
  }

  Rat dn = r.d / sigma_;
  OnlineStep step;
  step.request = r;
  step.cls = cls;
  step.size = DemandSize::Large;

  LevelAssignment la;
  if (cls == 0) {
    if (dn <= rat(1, 2)) {
      if (!half_low_) half_low_.emplace(edges, Rat(1), rat(1, 2));
      la = half_low_->assign(r.s, r.t, dn);
      step.band = 0;
    } else {
      if (!above_half_) above_half_.emplace(edges);
      la = above_half_->assign(r.s, r.t);
      step.band = 1;
    }
    step.routed_demand = dn;
  } else if (cls == 1) {
    Rat d2 = dn / 2;
    if (d2 <= rat(1, 4)) {
      if (!quarter_mid_) quarter_mid_.emplace(edges, Rat(1), rat(1, 4));
      la = quarter_mid_->assign(r.s, r.t, d2);
      step.band = 0;
    } else {
      if (!half_mid_) half_mid_.emplace(edges, Rat(1), rat(1, 2));
      la = half_mid_->assign(r.s, r.t, d2);
      step.band = 1;
    }
    step.routed_demand = d2;
  } else {
    Rat d2 = dn / 2;
    if (!half_high_) half_high_.emplace(edges, Rat(1), rat(1, 2));
    la = half_high_->assign(r.s, r.t, d2);
    step.band = 0;
    step.routed_demand = d2;
  }

  auto [it, fresh] = local_[cls].try_emplace({step.band, la.level}, local_next_[cls] + 1);
  if (fresh) ++local_next_[cls];
  long slot = it->second;

  step.level = la.level;
  step.rejected = std::move(la.rejected);
  step.color = global_color(cls == 1 ? 2 : 1, slot);
  steps_.push_back(std::move(step));
  return steps_.back().color;
}

long OnlineState::color(const Request& r) {
  OnlineClass oc = classify(r);
  Request q = r;
  if (q.s > q.t) std::swap(q.s, q.t);
  long c = oc.size == DemandSize::Small ? route_small(q, oc.cls) : route_large(q, oc.cls);
  for (long e = q.s; e < q.t; ++e) load_[static_cast<size_t>(e)] += q.d;
  return c;
}

long OnlineState::congestion() const {
  long r = 0;
  for (long e = 1; e <= net_.edges(); ++e) {
    const Rat& l = load_[static_cast<size_t>(e)];
    if (l == 0) continue;
    r = std::max(r, to_long(ceil_rat(l / net_.capacity(e))));
  }
  return r;
}

ColorPools OnlineState::pools() const {
  ColorPools p;
  for (const auto& [key, color] : global_) {
    (void)color;
    if (key.first == 0) ++p.small;
    else if (key.first == 1) ++p.large_shared;
    else ++p.large_single;
  }
  return p;
}

Coloring OnlineState::coloring() const {
  Coloring c;
  c.classes = colors_;
  c.color.reserve(steps_.size());
  for (const OnlineStep& s : steps_) c.color.push_back(s.color);
  return c;
}

UfpInstance OnlineState::instance() const {
  std::vector<Request> reqs;
  reqs.reserve(steps_.size());
  for (const OnlineStep& s : steps_) reqs.push_back(s.request);
  return UfpInstance(net_, std::move(reqs));
}

const UniformLevelState* OnlineState::small_levels(long cls) const {
  if (cls < 0 || static_cast<size_t>(cls) >= small_.size()) return nullptr;
  const auto& slot = small_[static_cast<size_t>(cls)];
  return slot ? &*slot : nullptr;
}

const UniformLevelState* OnlineState::large_levels(long cls, int band) const {
  if (cls == 0 && band == 0) return half_low_ ? &*half_low_ : nullptr;
  if (cls == 1 && band == 0) return quarter_mid_ ? &*quarter_mid_ : nullptr;
  if (cls == 1 && band == 1) return half_mid_ ? &*half_mid_ : nullptr;
  if (cls == 2 && band == 0) return half_high_ ? &*half_high_ : nullptr;
  return nullptr;
}

const DisjointLevelState* OnlineState::large_disjoint() const {
  return above_half_ ? &*above_half_ : nullptr;
}

OnlineClass classify_online(const OnlineState& state, const Request& r) {
  return state.classify(r);
}

LevelAssignment assign_small_uniform(UniformLevelState& levels, const Request& r) {
  if (levels.fraction() != rat(1, 4)) {
    throw std::invalid_argument("the uniform small rule needs the quarter budget");
  }
  long s = r.s, t = r.t;
  if (s > t) std::swap(s, t);
  return levels.assign(s, t, r.d);
}

long assign_small(OnlineState& state, const Request& r) {
  if (state.classify(r).size != DemandSize::Small) {
    throw std::invalid_argument("large request in the small router");
  }
  return state.color(r);
}

long assign_large(OnlineState& state, const Request& r) {
  if (state.classify(r).size != DemandSize::Large) {
    throw std::invalid_argument("small request in the large router");
  }
  return state.color(r);
}

long online_color(OnlineState& state, const Request& r) {
  return state.color(r);
}

}  // namespace pathpack
