#pragma once

// Text form of a landscape:
//
//     window <w0> <w1>
//     seg <t_lo> <t_hi> <v_lo> <v_hi>
//     ...
//
// Rationals may be written p/q or as plain decimals; output always uses p/q
// (or an integer), so write -> read is exact.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tll/landscape.hpp"
#include "tll/text.hpp"

namespace tll {

inline std::string to_text(const Landscape& l) {
  std::ostringstream out;
  out << "window " << l.window().lo << ' ' << l.window().hi << '\n';
  for (const auto& s : l.segments()) {
    out << "seg " << s.t_lo << ' ' << s.t_hi << ' ' << s.v_lo << ' ' << s.v_hi
        << '\n';
  }
  return out.str();
}

// Throws ParseError for syntax problems and LandscapeError (via
// from_segments) when the segments break a landscape invariant.
inline Landscape landscape_from_text(const std::string& content) {
  std::optional<Window> window;
  std::vector<Segment> segs;
  std::size_t lineno = 0;
  for (const auto& raw : text::lines(content)) {
    ++lineno;
    const auto toks = text::split(text::strip_comment(raw));
    if (toks.empty()) continue;
    const auto& head = toks[0].text;
    if (head == "window") {
      if (window) throw ParseError(lineno, 1, "duplicate window line");
      if (toks.size() != 3) throw ParseError(lineno, 1, "window needs 2 values");
      try {
        window.emplace(text::rational(toks[1], lineno),
                       text::rational(toks[2], lineno));
      } catch (const WindowError& e) {
        throw ParseError(lineno, toks[1].column, e.what());
      }
    } else if (head == "seg") {
      if (!window) throw ParseError(lineno, 1, "seg before window line");
      if (toks.size() != 5) throw ParseError(lineno, 1, "seg needs 4 values");
      segs.push_back({text::rational(toks[1], lineno),
                      text::rational(toks[2], lineno),
                      text::rational(toks[3], lineno),
                      text::rational(toks[4], lineno)});
    } else {
      throw ParseError(lineno, toks[0].column, "unknown directive '" + head + "'");
    }
  }
  if (!window) throw ParseError(lineno, 1, "missing window line");
  return Landscape::from_segments(*window, std::move(segs));
}

inline std::string polyline_text(const Landscape& l) {
  std::string out;
  for (const auto& p : l.polyline()) {
    if (!out.empty()) out += " -- ";
    out += "(" + p.t.str() + "," + p.v.str() + ")";
  }
  return out;
}

}  // namespace tll
