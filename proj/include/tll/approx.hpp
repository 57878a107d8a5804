#pragma once

// Finite approximations: intervals known to be members (included, drawn
// as circles) and intervals known not to be (excluded, drawn as crosses).
// The connectives are sound, not complete: an approximation of phi op psi
// built here is consistent with every pair of landscapes the operands are
// consistent with.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tll/landscape.hpp"
#include "tll/text.hpp"

namespace tll {

struct FiniteApprox {
  Window window;
  std::vector<Interval> included;
  std::vector<Interval> excluded;

  explicit FiniteApprox(Window w) : window(std::move(w)) {}
  FiniteApprox(Window w, std::vector<Interval> inc, std::vector<Interval> exc)
      : window(std::move(w)), included(std::move(inc)), excluded(std::move(exc)) {}

  [[nodiscard]] bool empty() const { return included.empty() && excluded.empty(); }

  // Sorted and deduplicated, for comparison and output.
  [[nodiscard]] FiniteApprox canonical() const {
    FiniteApprox out = *this;
    for (auto* v : {&out.included, &out.excluded}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return out;
  }
  friend bool operator==(const FiniteApprox& a, const FiniteApprox& b) {
    const auto x = a.canonical();
    const auto y = b.canonical();
    return x.window == y.window && x.included == y.included && x.excluded == y.excluded;
  }
};

namespace approx_detail {

inline void require_same_window(const FiniteApprox& a, const FiniteApprox& b,
                                const char* op) {
  if (!(a.window == b.window)) {
    throw WindowError(std::string(op) + ": approximations have different windows");
  }
}

// Half the smallest positive entry of `gaps`, capped at 1/1024 of the window.
inline Rat half_min_gap(const Window& w, const std::vector<Rat>& gaps) {
  Rat e = w.length() / Rat(1024);
  for (const auto& g : gaps) {
    if (g.sign() > 0) e = min(e, g / Rat(2));
  }
  return e;
}

}  // namespace approx_detail

struct Consistency {
  bool consistent = true;
  // An included/excluded pair that contradicts down-closure. An included
  // interval touching the window edge conflicts with itself.
  std::optional<std::pair<Interval, Interval>> conflict;
  std::optional<Landscape> witness;
};

// Epsilon used for the witness roofs of `a`.
inline Rat witness_epsilon(const FiniteApprox& a) {
  std::vector<Rat> gaps;
  for (const auto& o : a.included) {
    gaps.push_back(o.lo - a.window.lo);
    gaps.push_back(a.window.hi - o.hi);
    for (const auto& x : a.excluded) {
      gaps.push_back(o.lo - x.lo);
      gaps.push_back(x.hi - o.hi);
    }
  }
  return approx_detail::half_min_gap(a.window, gaps);
}

inline Consistency is_consistent(const FiniteApprox& a) {
  const Window& w = a.window;
  Consistency out;
  for (const auto& o : a.included) {
    if (!(w.lo < o.lo) || !(o.hi < w.hi)) {
      out.consistent = false;
      out.conflict = {o, o};
      return out;
    }
    for (const auto& x : a.excluded) {
      if (o.contains(x)) {
        out.consistent = false;
        out.conflict = {o, x};
        return out;
      }
    }
  }
  const Rat eps = witness_epsilon(a);
  std::vector<Landscape> roofs;
  for (const auto& o : a.included) roofs.push_back(roof(w, o.lo - eps, o.hi + eps));
  out.witness = exists_finite(w, roofs);
  return out;
}

inline bool consistent_with(const Landscape& l, const FiniteApprox& a) {
  if (!(l.window() == a.window)) {
    throw WindowError("consistent_with: landscape and approximation windows differ");
  }
  for (const auto& o : a.included) {
    if (!l.contains(o)) return false;
  }
  for (const auto& x : a.excluded) {
    if (l.contains(x)) return false;
  }
  return true;
}

inline FiniteApprox sample(const Landscape& l, const std::vector<Interval>& probes) {
  FiniteApprox out(l.window());
  for (const auto& p : probes) {
    if (p.lo < l.window().lo || l.window().hi < p.hi) {
      throw std::invalid_argument("sample: probe " + p.str() + " outside the window");
    }
    (l.contains(p) ? out.included : out.excluded).push_back(p);
  }
  return out;
}

inline FiniteApprox conj(const FiniteApprox& a, const FiniteApprox& b) {
  approx_detail::require_same_window(a, b, "conj");
  FiniteApprox out(a.window);
  for (const auto& x : a.included) {
    for (const auto& y : b.included) {
      const Rat lo = max(x.lo, y.lo);
      const Rat hi = min(x.hi, y.hi);
      if (lo <= hi) out.included.push_back({lo, hi});
    }
  }
  out.excluded = a.excluded;
  out.excluded.insert(out.excluded.end(), b.excluded.begin(), b.excluded.end());
  return out;
}

// Exclusion is up-closed, so the hull of an excluded pair is excluded by both.
inline FiniteApprox disj(const FiniteApprox& a, const FiniteApprox& b) {
  approx_detail::require_same_window(a, b, "disj");
  FiniteApprox out(a.window);
  out.included = a.included;
  out.included.insert(out.included.end(), b.included.begin(), b.included.end());
  for (const auto& x : a.excluded) {
    for (const auto& y : b.excluded) {
      out.excluded.push_back({min(x.lo, y.lo), max(x.hi, y.hi)});
    }
  }
  return out;
}

// Default pitch for neg_sound: keeps every enlargement inside the window.
inline Rat neg_delta(const FiniteApprox& a) {
  std::vector<Rat> gaps;
  for (const auto& o : a.included) {
    gaps.push_back(o.lo - a.window.lo);
    gaps.push_back(a.window.hi - o.hi);
  }
  return approx_detail::half_min_gap(a.window, gaps);
}

// No circles: finitely many members never certify a roof of absence.
inline FiniteApprox neg_sound(const FiniteApprox& a, std::optional<Rat> delta = {}) {
  const Rat d = delta.value_or(neg_delta(a));
  if (d.sign() <= 0) throw std::invalid_argument("neg_sound: delta must be positive");
  FiniteApprox out(a.window);
  for (const auto& o : a.included) {
    out.excluded.push_back(
        {max(a.window.lo, o.lo - d), min(a.window.hi, o.hi + d)});
  }
  return out;
}

// psi's circles carry over; a cross of psi inside a circle of phi is a
// cross of the implication by modus ponens.
inline FiniteApprox implies_sound(const FiniteApprox& a, const FiniteApprox& b) {
  approx_detail::require_same_window(a, b, "implies");
  FiniteApprox out(a.window);
  out.included = b.included;
  for (const auto& x : b.excluded) {
    const bool inside = std::any_of(a.included.begin(), a.included.end(),
                                    [&](const Interval& o) { return o.contains(x); });
    if (inside) out.excluded.push_back(x);
  }
  return out;
}

struct Observation {
  Rat t;
  std::string atom;
  bool value;
};

// Maximal runs of true readings per atom become circles; each false
// reading becomes a degenerate cross. Readings must lie strictly inside the
// window. Contradictory readings at one instant are kept and surface as an
// inconsistent approximation.
inline std::map<std::string, FiniteApprox> ingest(const std::vector<Observation>& obs,
                                                  const Window& w) {
  std::map<std::string, FiniteApprox> out;
  std::map<std::string, std::optional<Interval>> run;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const auto& o = obs[i];
    if (i > 0 && o.t < obs[i - 1].t) {
      throw std::invalid_argument("ingest: observations not sorted by time at " +
                                  o.t.str());
    }
    if (!(w.lo < o.t && o.t < w.hi)) {
      throw std::invalid_argument("ingest: observation at " + o.t.str() +
                                  " not strictly inside the window");
    }
    auto& a = out.try_emplace(o.atom, w).first->second;
    auto& r = run[o.atom];

    if (o.value) {
      r = r ? Interval(r->lo, o.t) : Interval(o.t, o.t);
    } else {
      if (r) a.included.push_back(*r);
      r.reset();
      a.excluded.push_back({o.t, o.t});
    }
  }
  for (auto& [atom, r] : run) {
    if (r) out.at(atom).included.push_back(*r);
  }
  return out;
}

// --- files -----------------------------------------------------------------

inline std::string to_text(const FiniteApprox& a) {
  std::string s;
  for (const auto& o : a.included) s += "inc " + o.lo.str() + " " + o.hi.str() + "\n";
  for (const auto& x : a.excluded) s += "exc " + x.lo.str() + " " + x.hi.str() + "\n";
  return s;
}

inline FiniteApprox approx_from_text(const std::string& content, const Window& w) {
  FiniteApprox out(w);
  const auto lines = text::lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto toks = text::split(text::strip_comment(lines[i]));
    if (toks.empty()) continue;
    const std::size_t no = i + 1;
    if (toks.size() != 3 || (toks[0].text != "inc" && toks[0].text != "exc")) {
      throw ParseError(no, toks[0].column, "expected 'inc lo hi' or 'exc lo hi'");
    }
    const Rat lo = text::rational(toks[1], no);
    const Rat hi = text::rational(toks[2], no);
    if (hi < lo) throw ParseError(no, toks[2].column, "interval needs lo <= hi");
    if (lo < w.lo || w.hi < hi) throw ParseError(no, toks[1].column, "interval outside the window");
    (toks[0].text == "inc" ? out.included : out.excluded).push_back({lo, hi});
  }
  return out;
}

inline std::vector<Observation> observations_from_text(const std::string& content) {
  std::vector<Observation> out;
  const auto lines = text::lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto toks = text::split(text::strip_comment(lines[i]));
    if (toks.empty()) continue;
    const std::size_t no = i + 1;
    if (toks.size() != 3) throw ParseError(no, toks[0].column, "expected '<time> <atom> <0|1>'");
    if (toks[2].text != "0" && toks[2].text != "1") {
      throw ParseError(no, toks[2].column, "expected 0 or 1");
    }
    const Rat t = text::rational(toks[0], no);
    if (!out.empty() && t < out.back().t) {
      throw ParseError(no, toks[0].column, "observations must be sorted by time");
    }
    out.push_back({t, toks[1].text, toks[2].text == "1"});
  }
  return out;
}

}  // namespace tll
