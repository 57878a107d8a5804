#pragma once

// Atomic landscapes generated from world descriptions: grid worlds with
// agents and moving obstacles, floor plans with sampled trajectory
// bundles, and a FIFO sample memory.
//
// Every generator reduces to "the predicate holds throughout a closed time
// span", and each maximal span [a, b] with a < b becomes the open roof
// <a, b>. The instant at which a span ends belongs to no roof.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tll/landscape.hpp"

namespace tll::scenario {

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Spans

using Spans = std::vector<Interval>;  // closed, sorted, disjoint after merge

// Sorts and fuses overlapping or touching spans.
inline Spans merge(Spans s) {
  std::sort(s.begin(), s.end());
  Spans out;
  for (const auto& iv : s) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

inline Spans intersect(const Spans& a, const Spans& b) {
  Spans out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Rat lo = max(a[i].lo, b[j].lo);
    const Rat hi = min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

// Join of roofs <lo, hi> over the spans, clipped to the window.
inline Landscape roofs_over(const Window& w, const Spans& spans) {
  std::vector<Landscape> roofs;
  for (const auto& iv : merge(spans)) {
    const Rat lo = max(iv.lo, w.lo);
    const Rat hi = min(iv.hi, w.hi);
    if (lo < hi) roofs.push_back(roof(w, lo, hi));
  }
  return exists_finite(w, roofs);
}

// ---------------------------------------------------------------------------
// Grid worlds

struct CellPos {
  int x;
  int y;
  auto operator<=>(const CellPos&) const = default;
};

enum class Dir { kUp, kDown, kLeft, kRight };

inline CellPos step(CellPos p, Dir d) {
  switch (d) {
    case Dir::kUp:
      return {p.x, p.y + 1};
    case Dir::kDown:
      return {p.x, p.y - 1};
    case Dir::kLeft:
      return {p.x - 1, p.y};
    case Dir::kRight:
      return {p.x + 1, p.y};
  }
  return p;
}

struct Stay {
  std::string cell;
  Rat enter;
  Rat exit;
};

struct Obstacle {
  std::string id;
  std::string start;
  Dir dir;
};

class GridWorld {
 public:
  explicit GridWorld(Window w) : window_(std::move(w)) {}

  [[nodiscard]] const Window& window() const { return window_; }
  [[nodiscard]] const std::vector<std::string>& cells() const { return cells_; }
  [[nodiscard]] bool has_cell(const std::string& c) const {
    return index_.count(c) != 0;
  }
  [[nodiscard]] std::optional<CellPos> position(const std::string& c) const {
    require_cell(c);
    return index_.at(c);
  }
  [[nodiscard]] const std::map<std::string, std::vector<Stay>>& agents() const {
    return agents_;
  }
  [[nodiscard]] const std::vector<Obstacle>& obstacles() const {
    return obstacles_;
  }

  void add_cell(const std::string& name, std::optional<CellPos> pos = {}) {
    if (has_cell(name)) throw ScenarioError("duplicate cell '" + name + "'");
    if (pos && by_pos_.count(*pos)) {
      throw ScenarioError("cell '" + name + "' reuses the position of '" +
                          by_pos_.at(*pos) + "'");
    }
    cells_.push_back(name);
    index_[name] = pos;
    if (pos) {
      by_pos_[*pos] = name;
      lo_.x = std::min(lo_.x, pos->x);
      lo_.y = std::min(lo_.y, pos->y);
      hi_.x = std::max(hi_.x, pos->x);
      hi_.y = std::max(hi_.y, pos->y);
    }
  }

  // Renames a cell; edges, stays and obstacles added later use the new name.
  void rename(const std::string& from, const std::string& to) {
    require_cell(from);
    if (has_cell(to)) throw ScenarioError("duplicate cell '" + to + "'");
    if (!edges_.empty() || !agents_.empty() || !obstacles_.empty()) {
      throw ScenarioError("cells must be renamed before use");
    }
    const auto pos = index_.at(from);
    index_.erase(from);
    index_[to] = pos;
    if (pos) by_pos_[*pos] = to;
    std::replace(cells_.begin(), cells_.end(), from, to);
  }

  [[nodiscard]] std::optional<std::string> cell_at(CellPos p) const {
    auto it = by_pos_.find(p);
    if (it == by_pos_.end()) return std::nullopt;
    return it->second;
  }

  void add_grid(int width, int height) {
    if (width <= 0 || height <= 0) throw ScenarioError("grid: positive size required");
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        add_cell("c" + std::to_string(x) + "_" + std::to_string(y), CellPos{x, y});
      }
    }
  }

  // Edge present always, or only on the given landscape when `when` is set.
  void add_edge(const std::string& a, const std::string& b,
                std::optional<Landscape> when = {}) {
    require_cell(a);
    require_cell(b);
    if (when && !(when->window() == window_)) {
      throw ScenarioError("edge " + a + "-" + b + ": window mismatch");
    }
    auto key = ordered(a, b);
    auto it = edges_.find(key);
    if (it == edges_.end()) {
      edges_.emplace(key, when ? *when : truth(window_));
    } else {
      it->second = join(it->second, when ? *when : truth(window_));
    }
  }

  // Constant edges between 4-adjacent positioned cells.
  void add_grid_edges() {
    for (const auto& [pos, name] : by_pos_) {
      for (Dir d : {Dir::kRight, Dir::kUp}) {
        if (auto other = cell_at(step(pos, d))) add_edge(name, *other);
      }
    }
  }

  // Truth value of E(a, b); symmetric, false when no edge was declared.
  [[nodiscard]] Landscape edge(const std::string& a, const std::string& b) const {
    require_cell(a);
    require_cell(b);
    auto it = edges_.find(ordered(a, b));
    return it == edges_.end() ? falsity(window_) : it->second;
  }

  [[nodiscard]] bool edge_is_constant(const std::string& a,
                                      const std::string& b) const {
    const auto e = edge(a, b);
    return e.is_true() || e.is_false();
  }

  void add_stay(const std::string& agent, Stay s) {
    require_cell(s.cell);
    if (s.exit < s.enter) {
      throw ScenarioError("agent " + agent + ": stay exit before enter");
    }
    if (s.enter < window_.lo || window_.hi < s.exit) {
      throw ScenarioError("agent " + agent + ": stay outside the window");
    }
    auto& stays = agents_[agent];
    for (const auto& o : stays) {
      if (s.enter < o.exit && o.enter < s.exit) {
        throw ScenarioError("agent " + agent + ": overlapping stays");
      }
    }
    stays.push_back(std::move(s));
  }

  void add_obstacle(Obstacle o) {
    require_cell(o.start);
    if (!index_.at(o.start)) {
      throw ScenarioError("obstacle " + o.id + ": start cell has no position");
    }
    obstacles_.push_back(std::move(o));
  }

  // Cells adjacent by a constant edge, excluding the cell itself.
  [[nodiscard]] std::vector<std::string> nbr(const std::string& cell) const {
    require_cell(cell);
    std::vector<std::string> out;
    for (const auto& c : cells_) {
      if (c != cell && edge(cell, c).is_true()) out.push_back(c);
    }
    return out;
  }

  // Nbr(v)(w): w differs from v and E(v, w).
  [[nodiscard]] Landscape nbr_landscape(const std::string& v,
                                        const std::string& w) const {
    if (v == w) {
      require_cell(v);
      return falsity(window_);
    }
    return edge(v, w);
  }

  // One unit per cell along a straight line. The obstacle parks in the
  // last cell before the grid boundary and stays there until w1.
  [[nodiscard]] std::vector<Stay> obstacle_stays(const Obstacle& o) const {
    require_cell(o.start);
    auto pos = *index_.at(o.start);
    std::vector<Stay> out;
    Rat t = window_.lo;
    for (;;) {
      const auto here = *cell_at(pos);
      const auto next = step(pos, o.dir);
      const bool inside = next.x >= lo_.x && next.x <= hi_.x && next.y >= lo_.y &&
                          next.y <= hi_.y;
      if (!inside) {
        out.push_back({here, t, window_.hi});
        return out;
      }
      if (!cell_at(next)) {
        throw ScenarioError("obstacle " + o.id + ": path leaves the declared cells");
      }
      const Rat until = min(t + Rat(1), window_.hi);
      out.push_back({here, t, until});
      if (until == window_.hi) return out;
      t = until;
      pos = next;
    }
  }

  // All stays in a cell: agents first, then obstacles.
  [[nodiscard]] std::vector<Stay> stays_in(const std::string& cell) const {
    require_cell(cell);
    std::vector<Stay> out;
    for (const auto& [id, stays] : agents_) {
      for (const auto& s : stays) {
        if (s.cell == cell) out.push_back(s);
      }
    }
    for (const auto& o : obstacles_) {
      for (const auto& s : obstacle_stays(o)) {
        if (s.cell == cell) out.push_back(s);
      }
    }
    return out;
  }

  // Join of one roof per stay: some single occupant is present throughout.
  [[nodiscard]] Landscape occ_landscape(const std::string& cell) const {
    std::vector<Landscape> roofs;
    for (const auto& s : stays_in(cell)) {
      if (s.enter < s.exit) roofs.push_back(roof(window_, s.enter, s.exit));
    }
    return exists_finite(window_, roofs);
  }

  [[nodiscard]] Landscape free_landscape(const std::string& cell) const {
    return negate(occ_landscape(cell));
  }

  // Pos(agent)(cell): roofs over that agent's stays only.
  [[nodiscard]] Landscape pos_landscape(const std::string& agent,
                                        const std::string& cell) const {
    require_cell(cell);
    std::vector<Landscape> roofs;
    if (auto it = agents_.find(agent); it != agents_.end()) {
      for (const auto& s : it->second) {
        if (s.cell == cell && s.enter < s.exit) {
          roofs.push_back(roof(window_, s.enter, s.exit));
        }
      }
    }
    return exists_finite(window_, roofs);
  }

  // Free(N) for a crisp finite N: every member cell is free.
  [[nodiscard]] Landscape free_of_set(const std::vector<std::string>& cells) const {
    std::vector<Landscape> parts;
    for (const auto& c : cells) parts.push_back(free_landscape(c));
    return forall_finite(window_, parts);
  }

  // Free(Nbr(v)) read literally: all w . Nbr(v)(w) => Free(w). Agrees with
  // free_of_set(nbr(v)) on constant graphs.
  [[nodiscard]] Landscape free_of_nbr(const std::string& v) const {
    std::vector<Landscape> parts;
    for (const auto& w : cells_) {
      const auto n = nbr_landscape(v, w);
      if (n.is_false()) continue;
      parts.push_back(implies(n, free_landscape(w)));
    }
    return forall_finite(window_, parts);
  }

 private:
  void require_cell(const std::string& c) const {
    if (!has_cell(c)) throw ScenarioError("unknown cell '" + c + "'");
  }
  static std::pair<std::string, std::string> ordered(const std::string& a,
                                                     const std::string& b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  }

  Window window_;
  std::vector<std::string> cells_;
  std::map<std::string, std::optional<CellPos>> index_;
  std::map<CellPos, std::string> by_pos_;
  CellPos lo_{1 << 30, 1 << 30};
  CellPos hi_{-(1 << 30), -(1 << 30)};
  std::map<std::pair<std::string, std::string>, Landscape> edges_;
  std::map<std::string, std::vector<Stay>> agents_;
  std::vector<Obstacle> obstacles_;
};

// ---------------------------------------------------------------------------
// Dwell time

// (in room) => (some s with the clock in <s, s + tau>).
inline Landscape dwell_landscape(const Landscape& in_room, const Rat& tau) {
  if (tau < Rat(0)) throw ScenarioError("dwell: negative tau");
  return implies(in_room, cap(in_room.window(), tau));
}

// ---------------------------------------------------------------------------
// Floor plans and trajectory bundles

struct Rect {
  Rat x0, y0, x1, y1;
  [[nodiscard]] bool contains(const Rat& x, const Rat& y) const {
    return x0 <= x && x <= x1 && y0 <= y && y <= y1;
  }
};

struct FloorPlan {
  Rat side{6};
  std::map<std::string, std::vector<Rect>> rooms;
  Rat gamma{0};
  Rat vmax{1};

  void validate() const {
    if (side <= Rat(0)) throw ScenarioError("floor: side must be positive");
    if (gamma < Rat(0)) throw ScenarioError("floor: gamma must be non-negative");
    if (vmax <= Rat(0)) throw ScenarioError("floor: vmax must be positive");
    for (const auto& [name, rects] : rooms) {
      for (const auto& r : rects) {
        if (!(r.x0 <= r.x1 && r.y0 <= r.y1)) {
          throw ScenarioError("room " + name + ": malformed rectangle");
        }
        if (r.x0 < Rat(0) || r.y0 < Rat(0) || side < r.x1 || side < r.y1) {
          throw ScenarioError("room " + name + ": rectangle outside the floor");
        }
      }
    }
  }
};

struct Sample {
  Rat t, x, y;
};

// Piecewise-linear between samples; undefined outside the sampled range,
// where every trajectory predicate is taken to be false.
using Trajectory = std::vector<Sample>;
using TrajectoryBundle = std::vector<Trajectory>;

inline void validate_bundle(const TrajectoryBundle& b, const FloorPlan& plan) {
  if (b.empty()) throw ScenarioError("trajectory bundle is empty");
  for (const auto& tr : b) {
    if (tr.empty()) throw ScenarioError("trajectory without samples");
    if (tr.size() != b[0].size()) {
      throw ScenarioError("trajectories in a bundle must share sample times");
    }
    for (std::size_t k = 0; k < tr.size(); ++k) {
      if (!(tr[k].t == b[0][k].t)) {
        throw ScenarioError("trajectories in a bundle must share sample times");
      }
      if (k > 0 && !(tr[k - 1].t < tr[k].t)) {
        throw ScenarioError("trajectory sample times must increase");
      }
      if (tr[k].x < Rat(0) || tr[k].y < Rat(0) || plan.side < tr[k].x ||
          plan.side < tr[k].y) {
        throw ScenarioError("trajectory sample outside the floor");
      }
    }
  }
}

namespace detail {

// Parameters s in [0,1] where p0 + s (p1 - p0) lies in r; closed, maybe empty.
inline std::optional<std::pair<Rat, Rat>> clip(const Sample& p0, const Sample& p1,
                                               const Rect& r) {
  Rat lo(0);
  Rat hi(1);
  auto axis = [&](const Rat& a, const Rat& b, const Rat& mn, const Rat& mx) {
    const Rat d = b - a;
    if (d.sign() == 0) return mn <= a && a <= mx;
    Rat s0 = (mn - a) / d;
    Rat s1 = (mx - a) / d;
    if (s1 < s0) std::swap(s0, s1);
    lo = max(lo, s0);
    hi = min(hi, s1);
    return lo <= hi;
  };
  if (!axis(p0.x, p1.x, r.x0, r.x1) || !axis(p0.y, p1.y, r.y0, r.y1)) {
    return std::nullopt;
  }
  return std::pair{lo, hi};
}

inline Rat lerp(const Rat& a, const Rat& b, const Rat& s) { return a + (b - a) * s; }

inline Spans in_rects(const Trajectory& tr, const std::vector<Rect>& rects) {
  Spans out;
  for (const auto& r : rects) {
    if (tr.size() == 1) {
      if (r.contains(tr[0].x, tr[0].y)) out.push_back({tr[0].t, tr[0].t});
      continue;
    }
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
      if (auto s = clip(tr[k], tr[k + 1], r)) {
        out.push_back({lerp(tr[k].t, tr[k + 1].t, s->first),
                       lerp(tr[k].t, tr[k + 1].t, s->second)});
      }
    }
  }
  return merge(std::move(out));
}

inline std::optional<Rat> exact_sqrt(const Rat& r) {
  if (r.sign() < 0) return std::nullopt;
  auto isqrt = [](Rat::int_type v) -> std::optional<Rat::int_type> {
    auto s = static_cast<Rat::int_type>(std::sqrt(static_cast<long double>(v)));
    while (s > 0 && static_cast<__int128>(s) * s > v) --s;
    while (static_cast<__int128>(s + 1) * (s + 1) <= v) ++s;
    if (static_cast<__int128>(s) * s != v) return std::nullopt;
    return s;
  };
  const auto n = isqrt(r.num());
  const auto d = isqrt(r.den());
  if (!n || !d) return std::nullopt;
  return Rat(*n, *d);
}

// Dyadic grid used when a crossing time is irrational.
constexpr Rat::int_type kRootGrid = 1 << 16;

// The closed set {s in [0,1] : A s^2 + B s + C <= 0} for A >= 0. Irrational
// roots are rounded inward to the dyadic grid, so the result is always a
// subset of the true set.
inline std::optional<std::pair<Rat, Rat>> sublevel(const Rat& A, const Rat& B,
                                                   const Rat& C) {
  auto q = [&](const Rat& s) { return (A * s + B) * s + C; };
  if (A.sign() == 0) {
    // Linear (B may be zero).
    if (B.sign() == 0) {
      if (C.sign() > 0) return std::nullopt;
      return std::pair{Rat(0), Rat(1)};
    }
    const Rat root = -C / B;
    Rat lo(0);
    Rat hi(1);
    if (B.sign() > 0) {
      hi = min(hi, root);
    } else {
      lo = max(lo, root);
    }
    if (hi < lo) return std::nullopt;
    return std::pair{lo, hi};
  }
  const Rat vertex = -B / (Rat(2) * A);
  const Rat m = min(Rat(1), max(Rat(0), vertex));
  if (q(m).sign() > 0) return std::nullopt;
  const Rat disc = B * B - Rat(4) * A * C;
  Rat lo(0);
  Rat hi(1);
  if (auto sq = exact_sqrt(disc)) {
    lo = max(lo, (-B - *sq) / (Rat(2) * A));
    hi = min(hi, (-B + *sq) / (Rat(2) * A));
    return std::pair{lo, hi};
  }
  const long double sd = std::sqrt(static_cast<long double>(disc.to_double()));
  const long double a2 = 2.0L * static_cast<long double>(A.to_double());
  const long double b = static_cast<long double>(B.to_double());
  auto snap = [&](long double x, bool up) {
    const long double scaled = x * kRootGrid;
    const auto k = static_cast<Rat::int_type>(up ? std::ceil(scaled) : std::floor(scaled));
    return Rat(k, kRootGrid);
  };
  if (q(Rat(0)).sign() > 0) {
    Rat c = max(Rat(0), snap((-b - sd) / a2, true));
    while (c < m && q(c).sign() > 0) c += Rat(1, kRootGrid);
    lo = min(c, m);
  }
  if (q(Rat(1)).sign() > 0) {
    Rat c = min(Rat(1), snap((-b + sd) / a2, false));
    while (m < c && q(c).sign() > 0) c -= Rat(1, kRootGrid);
    hi = max(c, m);
  }
  return std::pair{lo, hi};
}

inline Spans close_pair(const Trajectory& a, const Trajectory& b, const Rat& gamma) {
  Spans out;
  const Rat g2 = gamma * gamma;
  if (a.size() == 1) {
    const Rat dx = a[0].x - b[0].x;
    const Rat dy = a[0].y - b[0].y;
    if (dx * dx + dy * dy <= g2) out.push_back({a[0].t, a[0].t});
    return out;
  }
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    // Difference vector moves linearly from d0 to d1.
    const Rat d0x = a[k].x - b[k].x;
    const Rat d0y = a[k].y - b[k].y;
    const Rat ex = (a[k + 1].x - b[k + 1].x) - d0x;
    const Rat ey = (a[k + 1].y - b[k + 1].y) - d0y;
    const Rat A = ex * ex + ey * ey;
    const Rat B = Rat(2) * (d0x * ex + d0y * ey);
    const Rat C = d0x * d0x + d0y * d0y - g2;
    if (auto s = sublevel(A, B, C)) {
      out.push_back({lerp(a[k].t, a[k + 1].t, s->first),
                     lerp(a[k].t, a[k + 1].t, s->second)});
    }
  }
  return merge(std::move(out));
}

}  // namespace detail

// All constituent trajectories lie in the room's rectangles.
inline Landscape in_room_landscape(const Window& w, const TrajectoryBundle& bundle,
                                   const FloorPlan& plan, const std::string& room) {
  auto it = plan.rooms.find(room);
  if (it == plan.rooms.end()) throw ScenarioError("unknown room '" + room + "'");
  validate_bundle(bundle, plan);
  Spans spans = detail::in_rects(bundle[0], it->second);
  for (std::size_t k = 1; k < bundle.size(); ++k) {
    spans = intersect(spans, detail::in_rects(bundle[k], it->second));
  }
  return roofs_over(w, spans);
}

// Every pair of trajectories stays within distance gamma. A bundle with a
// single trajectory is trivially close.
inline Landscape close_landscape(const Window& w, const TrajectoryBundle& bundle,
                                 const FloorPlan& plan) {
  validate_bundle(bundle, plan);
  const auto& t = bundle[0];
  Spans spans{{t.front().t, t.back().t}};
  for (std::size_t i = 0; i < bundle.size(); ++i) {
    for (std::size_t j = i + 1; j < bundle.size(); ++j) {
      spans = intersect(spans, detail::close_pair(bundle[i], bundle[j], plan.gamma));
    }
  }
  return roofs_over(w, spans);
}

// Spans of consecutive samples over which every trajectory moves strictly
// slower than vmax. For piecewise-linear motion the pairwise displacement
// bound reduces to this per-segment check, and the lower bound is vacuous.
inline Landscape speed_bound_landscape(const Window& w,
                                       const TrajectoryBundle& bundle,
                                       const FloorPlan& plan) {
  validate_bundle(bundle, plan);
  Spans spans;
  const auto& t = bundle[0];
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const Rat dt = t[k + 1].t - t[k].t;
    const Rat bound = dt * dt * plan.vmax * plan.vmax;
    bool ok = true;
    for (const auto& tr : bundle) {
      const Rat dx = tr[k + 1].x - tr[k].x;
      const Rat dy = tr[k + 1].y - tr[k].y;
      if (!(dx * dx + dy * dy < bound)) ok = false;
    }
    if (ok) spans.push_back({t[k].t, t[k + 1].t});
  }
  return roofs_over(w, spans);
}

// ---------------------------------------------------------------------------
// Memory buffer

struct Arrival {
  std::string id;
  Rat t;
};

struct MemoryBuffer {
  std::size_t capacity = 1;
  std::vector<Arrival> arrivals;  // sorted by time
};

struct MemoryResult {
  std::vector<std::pair<std::string, Landscape>> per_sample;
  std::vector<Interval> residency;  // [arrival, overwrite], parallel to per_sample
  Landscape joined;
};

// FIFO: sample k is overwritten by arrival k + capacity, or stays until w1.
inline MemoryResult samples_in_mem(const MemoryBuffer& buf, const Window& w) {
  if (buf.capacity == 0) throw ScenarioError("memory: capacity must be positive");
  std::set<std::string> ids;
  const auto& a = buf.arrivals;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!ids.insert(a[k].id).second) {
      throw ScenarioError("memory: duplicate sample id '" + a[k].id + "'");
    }
    if (k > 0 && !(a[k - 1].t < a[k].t)) {
      throw ScenarioError("memory: arrival times must increase");
    }
    if (a[k].t < w.lo || w.hi < a[k].t) {
      throw ScenarioError("memory: arrival outside the window");
    }
  }
  MemoryResult out{{}, {}, falsity(w)};
  std::vector<Landscape> roofs;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Rat gone = k + buf.capacity < a.size() ? a[k + buf.capacity].t : w.hi;
    const Landscape l = a[k].t < gone ? roof(w, a[k].t, gone) : falsity(w);
    out.per_sample.emplace_back(a[k].id, l);
    out.residency.push_back({a[k].t, gone});
    roofs.push_back(l);
  }
  out.joined = exists_finite(w, roofs);
  return out;
}

}  // namespace tll::scenario
