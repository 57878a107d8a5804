#pragma once

// Temporal landscapes over a bounded window, stored as their boundary
// function.
//
// A landscape L on the window (w0, w1] is identified with the left-continuous
// non-decreasing function f with t <= f(t) <= w1 given by
//
//     f(t1) = sup { t2 : [t1, t2] in L },
//
// so that [t1, t2] is a member iff w0 < t1 and t2 < f(t1). The function is
// kept as a list of linear pieces on half-open spans (t_lo, t_hi]; upward
// jumps between pieces are the vertical walls of a roof. Every operation in
// this header is exact and pure.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tll/rational.hpp"

namespace tll {

class WindowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Window {
  Rat lo;
  Rat hi;

  Window(Rat w0, Rat w1) : lo(w0), hi(w1) {
    if (!(lo < hi)) {
      throw WindowError("window: need w0 < w1, got (" + lo.str() + ", " +
                        hi.str() + ")");
    }
  }

  [[nodiscard]] Rat length() const { return hi - lo; }
  friend bool operator==(const Window&, const Window&) = default;
};

struct Interval {
  Rat lo;
  Rat hi;

  Interval(Rat a, Rat b) : lo(a), hi(b) {
    if (hi < lo) {
      throw std::invalid_argument("interval: need lo <= hi, got [" + lo.str() +
                                  ", " + hi.str() + "]");
    }
  }

  [[nodiscard]] bool contains(const Interval& o) const {
    return lo <= o.lo && o.hi <= hi;
  }
  [[nodiscard]] std::string str() const {
    return "[" + lo.str() + "," + hi.str() + "]";
  }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval& a, const Interval& b) {
    if (auto c = a.lo <=> b.lo; c != 0) return c;
    return a.hi <=> b.hi;
  }
};

// One linear piece of a boundary on (t_lo, t_hi]. v_lo is the limit from the
// right at t_lo, v_hi the value at t_hi.
struct Segment {
  Rat t_lo;
  Rat t_hi;
  Rat v_lo;
  Rat v_hi;

  [[nodiscard]] Rat slope() const { return (v_hi - v_lo) / (t_hi - t_lo); }

  // Linear interpolation; at t == t_lo this is the right limit v_lo.
  [[nodiscard]] Rat at(const Rat& t) const {
    if (t == t_hi) return v_hi;
    if (t == t_lo) return v_lo;
    return v_lo + (v_hi - v_lo) * (t - t_lo) / (t_hi - t_lo);
  }

  [[nodiscard]] bool is_diagonal() const {
    return v_lo == t_lo && v_hi == t_hi;
  }

  friend bool operator==(const Segment&, const Segment&) = default;
};

class LandscapeError : public std::invalid_argument {
 public:
  enum class Kind {
    kEmpty,
    kEmptySpan,
    kDescending,
    kGap,
    kOverlap,
    kDownwardJump,
    kBelowDiagonal,
    kAboveWindow,
  };

  LandscapeError(Kind kind, std::size_t index, const std::string& what)
      : std::invalid_argument("segment " + std::to_string(index) + ": " + what),
        kind_(kind),
        index_(index) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  Kind kind_;
  std::size_t index_;
};

struct Point {
  Rat t;
  Rat v;
  friend bool operator==(const Point&, const Point&) = default;
};

class Landscape {
 public:
  // Validates and canonicalizes. Throws LandscapeError naming the first
  // offending segment.
  static Landscape from_segments(const Window& window,
                                 std::vector<Segment> raw) {
    validate(window, raw);
    return Landscape(window, normalize(std::move(raw)));
  }

  [[nodiscard]] const Window& window() const { return window_; }
  [[nodiscard]] std::span<const Segment> segments() const { return segs_; }

  // f(t) for w0 < t <= w1, left-continuous at joins.
  [[nodiscard]] Rat boundary_at(const Rat& t) const {
    if (!(window_.lo < t) || window_.hi < t) {
      throw std::out_of_range("boundary_at: t=" + t.str() +
                              " outside (w0, w1]");
    }
    return segment_for(t).at(t);
  }

  // lim_{s -> t+} f(s) for w0 <= t < w1.
  [[nodiscard]] Rat right_limit(const Rat& t) const {
    if (t < window_.lo || !(t < window_.hi)) {
      throw std::out_of_range("right_limit: t=" + t.str() +
                              " outside [w0, w1)");
    }
    auto it = std::upper_bound(
        segs_.begin(), segs_.end(), t,
        [](const Rat& x, const Segment& s) { return x < s.t_hi; });
    return it->at(t);
  }

  [[nodiscard]] bool contains(const Interval& iv) const {
    if (!(window_.lo < iv.lo) || window_.hi < iv.lo) return false;
    return iv.hi < segment_for(iv.lo).at(iv.lo);
  }

  // Vertices of the boundary drawn in the (t1, t2) plane, starting on the
  // diagonal at (w0, w0) and ending at (w1, f(w1)). Vertical jumps appear as
  // two vertices with equal t.
  [[nodiscard]] std::vector<Point> polyline() const {
    std::vector<Point> out;
    out.push_back({window_.lo, window_.lo});
    Rat prev = window_.lo;
    for (const auto& s : segs_) {
      if (s.v_lo != prev) out.push_back({s.t_lo, s.v_lo});
      out.push_back({s.t_hi, s.v_hi});
      prev = s.v_hi;
    }
    return out;
  }

  [[nodiscard]] bool is_false() const {
    return segs_.size() == 1 && segs_.front().is_diagonal();
  }
  [[nodiscard]] bool is_true() const {
    return segs_.size() == 1 && segs_.front().v_lo == window_.hi;
  }

  friend bool operator==(const Landscape&, const Landscape&) = default;

 private:
  Landscape(Window w, std::vector<Segment> s)
      : window_(std::move(w)), segs_(std::move(s)) {}

  const Segment& segment_for(const Rat& t) const {
    auto it = std::lower_bound(
        segs_.begin(), segs_.end(), t,
        [](const Segment& s, const Rat& x) { return s.t_hi < x; });
    return *it;
  }

  static void validate(const Window& w, const std::vector<Segment>& raw) {
    using K = LandscapeError::Kind;
    if (raw.empty()) throw LandscapeError(K::kEmpty, 0, "no segments");
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto& s = raw[i];
      if (!(s.t_lo < s.t_hi)) {
        throw LandscapeError(K::kEmptySpan, i, "t_lo must be < t_hi");
      }
      const Rat expected = i == 0 ? w.lo : raw[i - 1].t_hi;
      if (s.t_lo > expected) {
        throw LandscapeError(K::kGap, i,
                             "gap before t=" + s.t_lo.str() + " in tiling");
      }
      if (s.t_lo < expected) {
        throw LandscapeError(K::kOverlap, i,
                             "overlap at t=" + s.t_lo.str() + " in tiling");
      }
      if (s.v_hi < s.v_lo) {
        throw LandscapeError(K::kDescending, i, "negative slope");
      }
      if (i > 0 && s.v_lo < raw[i - 1].v_hi) {
        throw LandscapeError(K::kDownwardJump, i, "downward jump");
      }
      if (s.v_lo < s.t_lo || s.v_hi < s.t_hi) {
        throw LandscapeError(K::kBelowDiagonal, i, "boundary below diagonal");
      }
      if (s.v_hi > w.hi) {
        throw LandscapeError(K::kAboveWindow, i, "boundary above w1");
      }
    }
    if (raw.back().t_hi != w.hi) {
      throw LandscapeError(K::kGap, raw.size() - 1,
                           "tiling does not end at w1");
    }
  }

  static bool collinear(const Segment& a, const Segment& b) {
    if (a.v_hi != b.v_lo) return false;
    return (a.v_hi - a.v_lo) * (b.t_hi - b.t_lo) ==
           (b.v_hi - b.v_lo) * (a.t_hi - a.t_lo);
  }

  static std::vector<Segment> normalize(std::vector<Segment> raw) {
    std::vector<Segment> out;
    out.reserve(raw.size());
    for (auto& s : raw) {
      if (!out.empty() && collinear(out.back(), s)) {
        out.back().t_hi = s.t_hi;
        out.back().v_hi = s.v_hi;
      } else {
        out.push_back(s);
      }
    }
    return out;
  }

  Window window_;
  std::vector<Segment> segs_;
};

// ---------------------------------------------------------------------------
// Constructors.

inline Landscape constant(const Window& w, bool value) {
  if (value) return Landscape::from_segments(w, {{w.lo, w.hi, w.hi, w.hi}});
  return Landscape::from_segments(w, {{w.lo, w.hi, w.lo, w.hi}});
}

inline Landscape truth(const Window& w) { return constant(w, true); }
inline Landscape falsity(const Window& w) { return constant(w, false); }

// All intervals [t1, t2] with a < t1 <= t2 < b.
inline Landscape roof(const Window& w, const Rat& a, const Rat& b) {
  if (!(a < b)) {
    throw std::invalid_argument("roof: need a < b, got " + a.str() + ", " +
                                b.str());
  }
  if (a < w.lo || w.hi < b) {
    throw std::invalid_argument("roof: [" + a.str() + "," + b.str() +
                                "] not inside window");
  }
  std::vector<Segment> segs;
  if (w.lo < a) segs.push_back({w.lo, a, w.lo, a});
  segs.push_back({a, b, b, b});
  if (b < w.hi) segs.push_back({b, w.hi, b, w.hi});
  return Landscape::from_segments(w, std::move(segs));
}

// Intervals shorter than tau: f(t) = min(t + tau, w1).
inline Landscape cap(const Window& w, const Rat& tau) {
  if (tau < Rat(0)) {
    throw std::invalid_argument("cap: negative tau " + tau.str());
  }
  if (tau == Rat(0)) return falsity(w);
  if (tau >= w.length()) return truth(w);
  const Rat knee = w.hi - tau;
  return Landscape::from_segments(
      w, {{w.lo, knee, w.lo + tau, w.hi}, {knee, w.hi, w.hi, w.hi}});
}

inline bool member(const Landscape& l, const Interval& iv) {
  return l.contains(iv);
}

// Some eps > 0 with [lo - eps, hi + eps] still a member; nullopt for
// non-members. Witnesses openness of the representation.
inline std::optional<Rat> openness_witness(const Landscape& l,
                                           const Interval& iv) {
  if (!l.contains(iv)) return std::nullopt;
  const auto segs = l.segments();
  auto it = std::lower_bound(
      segs.begin(), segs.end(), iv.lo,
      [](const Segment& s, const Rat& x) { return s.t_hi < x; });
  const Rat room_left = (iv.lo - it->t_lo) / Rat(2);
  const Rat room_up = (it->at(iv.lo) - iv.hi) / (Rat(2) * (Rat(1) + it->slope()));
  return min(room_left, room_up);
}

// ---------------------------------------------------------------------------
// Overlay of two boundaries on a common refinement.

namespace detail {

// Both boundaries are linear on (t_lo, t_hi] and the difference a - b does
// not change strict sign inside the span.
struct OverlayPiece {
  Rat t_lo;
  Rat t_hi;
  Rat a_lo, a_hi;
  Rat b_lo, b_hi;
};

inline void require_same_window(const Landscape& a, const Landscape& b,
                                const char* op) {
  if (!(a.window() == b.window())) {
    throw WindowError(std::string(op) + ": window mismatch");
  }
}

inline std::vector<OverlayPiece> overlay(const Landscape& a,
                                         const Landscape& b) {
  const auto sa = a.segments();
  const auto sb = b.segments();
  std::vector<OverlayPiece> out;
  out.reserve(sa.size() + sb.size() + 4);
  std::size_t i = 0;
  std::size_t j = 0;
  Rat p = a.window().lo;
  while (i < sa.size() && j < sb.size()) {
    const Rat q = min(sa[i].t_hi, sb[j].t_hi);
    OverlayPiece piece{p, q, sa[i].at(p), sa[i].at(q), sb[j].at(p), sb[j].at(q)};
    const Rat d_lo = piece.a_lo - piece.b_lo;
    const Rat d_hi = piece.a_hi - piece.b_hi;
    if (d_lo.sign() * d_hi.sign() < 0) {
      const Rat x = p + (q - p) * d_lo / (d_lo - d_hi);
      const Rat ax = sa[i].at(x);
      out.push_back({p, x, piece.a_lo, ax, piece.b_lo, ax});
      out.push_back({x, q, ax, piece.a_hi, ax, piece.b_hi});
    } else {
      out.push_back(piece);
    }
    if (sa[i].t_hi == q) ++i;
    if (sb[j].t_hi == q) ++j;
    p = q;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lattice and Heyting operations.

// Intersection: pointwise minimum of boundaries.
inline Landscape meet(const Landscape& a, const Landscape& b) {
  detail::require_same_window(a, b, "meet");
  std::vector<Segment> segs;
  for (const auto& p : detail::overlay(a, b)) {
    segs.push_back({p.t_lo, p.t_hi, min(p.a_lo, p.b_lo), min(p.a_hi, p.b_hi)});
  }
  return Landscape::from_segments(a.window(), std::move(segs));
}

// Union: pointwise maximum of boundaries.
inline Landscape join(const Landscape& a, const Landscape& b) {
  detail::require_same_window(a, b, "join");
  std::vector<Segment> segs;
  for (const auto& p : detail::overlay(a, b)) {
    segs.push_back({p.t_lo, p.t_hi, max(p.a_lo, p.b_lo), max(p.a_hi, p.b_hi)});
  }
  return Landscape::from_segments(a.window(), std::move(segs));
}

// The largest landscape inside { [a,b] : <a,b> meet phi is contained in psi }.
//
// With B = { t : f_phi(t) > f_psi(t) }, the interval sup
//     G(a) = inf { f_psi(t) : t in B, t > a }   (w1 if empty)
// bounds every admissible b, and the interior is its left limit. On a maximal
// bad span (p, q] that equals f_psi; on a good span it is constant, equal to
// the right limit of f_psi where the next bad span begins, or w1 after the
// last one.
inline Landscape implies(const Landscape& phi, const Landscape& psi) {
  detail::require_same_window(phi, psi, "implies");
  const auto pieces = detail::overlay(phi, psi);
  const Rat w1 = phi.window().hi;
  std::vector<Segment> segs(pieces.size());
  Rat next_bad_start = w1;
  for (std::size_t k = pieces.size(); k-- > 0;) {
    const auto& p = pieces[k];
    // Differences do not change sign inside a piece, so the sign of their
    // sum is the sign at the midpoint.
    const bool bad = (p.a_lo - p.b_lo) + (p.a_hi - p.b_hi) > Rat(0);
    if (bad) {
      segs[k] = {p.t_lo, p.t_hi, p.b_lo, p.b_hi};
      next_bad_start = p.b_lo;
    } else {
      segs[k] = {p.t_lo, p.t_hi, next_bad_start, next_bad_start};
    }
  }
  return Landscape::from_segments(phi.window(), std::move(segs));
}

inline Landscape negate(const Landscape& phi) {
  return implies(phi, falsity(phi.window()));
}

// Pointwise minimum of left-continuous functions is left-continuous, so the
// finite intersection is already a landscape.
inline Landscape forall_finite(const Window& w, std::span<const Landscape> ls) {
  Landscape acc = truth(w);
  for (const auto& l : ls) acc = meet(acc, l);
  return acc;
}

inline Landscape exists_finite(const Window& w, std::span<const Landscape> ls) {
  Landscape acc = falsity(w);
  for (const auto& l : ls) acc = join(acc, l);
  return acc;
}

// Pointwise f_a <= f_b, which is containment of member sets.
inline bool leq(const Landscape& a, const Landscape& b) {
  detail::require_same_window(a, b, "leq");
  for (const auto& p : detail::overlay(a, b)) {
    if (p.a_lo > p.b_lo || p.a_hi > p.b_hi) return false;
  }
  return true;
}

}  // namespace tll
