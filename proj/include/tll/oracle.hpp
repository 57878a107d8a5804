#pragma once

// Brute-force reference evaluation on a rational grid.
//
// Sample times are cell midpoints w0 + (k + 1/2) * pitch, so they never land
// on a breakpoint whose denominator divides the resolution. Operand
// membership always goes through the exact Landscape::contains; only the
// quantification over sub-intervals of <a,b> is discretized.

#include <algorithm>
#include <cstddef>
#include <concepts>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tll/landscape.hpp"

namespace tll::oracle {

struct GridSpec {
  Window window;
  std::size_t resolution;

  GridSpec(Window w, std::size_t n) : window(std::move(w)), resolution(n) {
    if (n == 0) throw std::invalid_argument("grid: resolution must be positive");
  }

  [[nodiscard]] Rat pitch() const {
    return window.length() / Rat(static_cast<Rat::int_type>(resolution));
  }
  [[nodiscard]] Rat point(std::size_t k) const {
    return window.lo +
           (Rat(static_cast<Rat::int_type>(k)) + Rat(1, 2)) * pitch();
  }
  [[nodiscard]] std::vector<Rat> points() const {
    std::vector<Rat> out;
    out.reserve(resolution);
    for (std::size_t k = 0; k < resolution; ++k) out.push_back(point(k));
    return out;
  }
};

// Literal reading of (phi => psi) at one interval: every sampled [t1, t2]
// with lo < t1 <= t2 < hi that lies in phi also lies in psi.
inline bool oracle_implies_member(const Landscape& phi, const Landscape& psi,
                                  const Interval& iv, const GridSpec& grid) {
  const auto ts = grid.points();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(iv.lo < ts[i])) continue;
    if (!(ts[i] < iv.hi)) break;
    for (std::size_t j = i; j < ts.size() && ts[j] < iv.hi; ++j) {
      const Interval sub{ts[i], ts[j]};
      if (phi.contains(sub) && !psi.contains(sub)) return false;
    }
  }
  return true;
}

// iv and its one-cell enlargement are members of every landscape.
inline bool oracle_forall(std::span<const Landscape> ls, const Interval& iv,
                          const GridSpec& grid) {
  const Interval wider{iv.lo - grid.pitch(), iv.hi + grid.pitch()};
  for (const auto& l : ls) {
    if (!l.contains(iv) || !l.contains(wider)) return false;
  }
  return true;
}

// Literal implication between two exact landscapes, sampled on a finer
// inner grid and read openly: [a, b] holds iff no sampled violation
// [s_k, s_l] (phi holds, psi does not) lies inside (a - h, b + h), where h
// is the inner pitch. Each row s_k has its violations in one run of
// columns, because operand membership is down-closed in the right
// endpoint; the run start is found by bisection.
//
// Operands are arbitrary membership predicates that are down-closed, so
// oracles nest: an ImplicationOracle is itself a valid operand.
using Membership = std::function<bool(const Interval&)>;

inline Membership membership(const Landscape& l) {
  return [l](const Interval& iv) { return l.contains(iv); };
}

class ImplicationOracle {
 public:
  ImplicationOracle(const Landscape& phi, const Landscape& psi, GridSpec inner)
      : ImplicationOracle(membership(phi), membership(psi), std::move(inner)) {}

  ImplicationOracle(const Membership& phi, const Membership& psi,
                    GridSpec inner)
      : inner_(std::move(inner)), first_violation_(inner_.resolution + 1) {
    const auto ts = inner_.points();
    const std::size_t m = ts.size();
    // Smallest l >= k for which [s_k, s_l] is not in l, or m.
    auto exit_column = [&](const Membership& l, std::size_t k) {
      std::size_t lo = k;
      std::size_t hi = m;
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (l(Interval{ts[k], ts[mid]})) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      return lo;
    };
    first_violation_[m] = m;
    for (std::size_t k = m; k-- > 0;) {
      const std::size_t start = exit_column(psi, k);
      const std::size_t stop = exit_column(phi, k);
      const std::size_t fv = start < stop ? start : m;
      first_violation_[k] = std::min(first_violation_[k + 1], fv);
    }
  }

  [[nodiscard]] bool operator()(const Interval& iv) const {
    const Rat h = inner_.pitch();
    const std::size_t k = first_index_above(iv.lo - h);
    const std::size_t fv = first_violation_[k];
    if (fv >= inner_.resolution) return true;
    return !(inner_.point(fv) < iv.hi + h);
  }

 private:
  // Smallest k with s_k > t, or the resolution if none.
  [[nodiscard]] std::size_t first_index_above(const Rat& t) const {
    const Rat x = (t - inner_.window.lo) / inner_.pitch() - Rat(1, 2);
    if (x.sign() < 0) return 0;
    const auto floor = static_cast<std::size_t>(x.num() / x.den());
    return std::min(floor + 1, inner_.resolution);
  }

  GridSpec inner_;
  std::vector<std::size_t> first_violation_;  // suffix minimum over rows
};

// Inner resolution used by ImplicationOracle for an outer grid of n cells.
// It grows like n^3 so that the band of near-boundary disagreements thins
// faster than the outer grid fills it. Capped to keep memory bounded at
// the largest CLI resolutions.
inline std::size_t inner_resolution(std::size_t n) {
  constexpr std::size_t kMax = std::size_t{1} << 17;
  return std::max(n, std::min(kMax, n * n / 4096 * n));
}

struct Witness {
  Interval iv;
  bool core;
  bool oracle;
};

struct Report {
  std::size_t agree = 0;
  std::size_t near = 0;
  std::size_t far = 0;
  std::optional<Witness> first_far;

  [[nodiscard]] std::string str() const {
    std::ostringstream out;
    out << "agree=" << agree << " near=" << near << " far=" << far << '\n';
    if (first_far) {
      out << "witness " << first_far->iv.str() << " core=" << first_far->core
          << " oracle=" << first_far->oracle << '\n';
    }
    return out.str();
  }
};

namespace detail {

// Does the closed segment p0-p1 meet the closed box [x0,x1] x [y0,y1]?
// Liang-Barsky clipping in exact arithmetic.
inline bool segment_meets_box(const Point& p0, const Point& p1, const Rat& x0,
                              const Rat& x1, const Rat& y0, const Rat& y1) {
  Rat u0(0);
  Rat u1(1);
  const Rat dx = p1.t - p0.t;
  const Rat dy = p1.v - p0.v;
  auto clip = [&](const Rat& p, const Rat& q) {
    // Constraint p * u <= q.
    if (p.sign() == 0) return q.sign() >= 0;
    const Rat r = q / p;
    if (p.sign() < 0) {
      if (r > u1) return false;
      if (r > u0) u0 = r;
    } else {
      if (r < u0) return false;
      if (r < u1) u1 = r;
    }
    return true;
  };
  return clip(-dx, p0.t - x0) && clip(dx, x1 - p0.t) && clip(-dy, p0.v - y0) &&
         clip(dy, y1 - p0.v);
}

}  // namespace detail

// Chebyshev distance from (t1, t2) to the boundary polyline is <= radius.
inline bool near_boundary(const Landscape& l, const Interval& iv,
                          const Rat& radius) {
  const auto poly = l.polyline();
  const Rat x0 = iv.lo - radius, x1 = iv.lo + radius;
  const Rat y0 = iv.hi - radius, y1 = iv.hi + radius;
  for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
    if (detail::segment_meets_box(poly[k], poly[k + 1], x0, x1, y0, y1)) {
      return true;
    }
  }
  return false;
}

// Classifies every grid pair. `definition` is any callable
// Interval -> bool; disagreements within one pitch of the core boundary
// are counted as near, all others as far.
template <std::predicate<const Interval&> Definition>
Report compare(const Landscape& core, Definition&& definition,
               const GridSpec& grid) {
  if (!(core.window() == grid.window)) {
    throw WindowError("compare: window mismatch");
  }
  Report rep;
  const auto ts = grid.points();
  const Rat pitch = grid.pitch();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i; j < ts.size(); ++j) {
      const Interval iv{ts[i], ts[j]};
      const bool c = core.contains(iv);
      const bool o = definition(iv);
      if (c == o) {
        ++rep.agree;
      } else if (near_boundary(core, iv, pitch)) {
        ++rep.near;
      } else {
        ++rep.far;
        if (!rep.first_far) rep.first_far = Witness{iv, c, o};
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Seeded random landscapes for property tests.
//
// Breakpoints and values sit on a lattice of `slots` cells across the
// window; at most `max_breaks` interior breakpoints are drawn.

struct RandomSpec {
  int slots = 32;
  int max_breaks = 8;
};

inline Landscape random_landscape(const Window& w, std::mt19937_64& rng,
                                  RandomSpec spec = {}) {
  const Rat step = w.length() / Rat(spec.slots);
  auto at = [&](int k) { return w.lo + step * Rat(k); };
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  std::vector<int> cuts{0, spec.slots};
  const int breaks = uniform(0, spec.max_breaks);
  for (int b = 0; b < breaks; ++b) cuts.push_back(uniform(1, spec.slots - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segs;
  int prev = 0;  // slot index of the previous v_hi
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const int a = cuts[k];
    const int b = cuts[k + 1];
    const int floor_lo = std::max(prev, a);
    const int roll = uniform(0, 9);
    int v_lo;
    int v_hi;
    if (roll < 3 && prev <= a) {
      v_lo = a;  // back on the diagonal
      v_hi = b;
    } else if (roll < 6 && floor_lo >= b) {
      v_lo = v_hi = uniform(floor_lo, spec.slots);  // flat roof top
    } else {
      v_lo = uniform(floor_lo, spec.slots);
      v_hi = uniform(std::max(v_lo, b), spec.slots);
    }
    segs.push_back({at(a), at(b), at(v_lo), at(v_hi)});
    prev = v_hi;
  }
  return Landscape::from_segments(w, std::move(segs));
}

}  // namespace tll::oracle
