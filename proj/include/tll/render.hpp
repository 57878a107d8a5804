#pragma once

// SVG and ASCII pictures in the (t1, t2) plane: t1 to the right, t2 up,
// members above the diagonal. Geometry is emitted in data coordinates
// inside one transformed group, so vertices can be read back directly.

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tll/approx.hpp"
#include "tll/landscape.hpp"

namespace tll::render {

struct Overlay {
  std::variant<Landscape, FiniteApprox> item;
  std::string label;
};

struct PlotSpec {
  Window window;
  int width = 480;   // pixels, or columns for ASCII
  int height = 480;  // pixels, or rows for ASCII
  bool show_diagonal = true;
  bool rotated = false;  // SVG only: midpoint/half-length axes
  std::vector<Overlay> overlays;

  explicit PlotSpec(Window w) : window(std::move(w)) {}

  PlotSpec& add(Landscape l, std::string label = {}) {
    overlays.push_back({std::move(l), std::move(label)});
    return *this;
  }
  PlotSpec& add(FiniteApprox a, std::string label = {}) {
    overlays.push_back({std::move(a), std::move(label)});
    return *this;
  }

  void validate() const {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("plot: dimensions must be positive");
    }
    for (const auto& o : overlays) {
      const Window& w = std::holds_alternative<Landscape>(o.item)
                            ? std::get<Landscape>(o.item).window()
                            : std::get<FiniteApprox>(o.item).window;
      if (!(w == window)) throw WindowError("plot: overlay windows differ");
    }
  }
};

// Closed regions between the boundary and the diagonal, one per maximal
// run of non-diagonal segments. The polygon closes along the diagonal.
inline std::vector<std::vector<Point>> regions(const Landscape& l) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  auto push = [&](const Point& p) {
    if (cur.empty() || !(cur.back() == p)) cur.push_back(p);
  };
  auto close = [&] {
    if (cur.empty()) return;
    const Point& last = cur.back();
    push({last.t, last.t});
    if (cur.size() >= 3) out.push_back(std::move(cur));
    cur.clear();
  };
  for (const auto& s : l.segments()) {
    if (s.is_diagonal()) {
      close();
      continue;
    }
    if (cur.empty()) push({s.t_lo, s.t_lo});
    push({s.t_lo, s.v_lo});
    push({s.t_hi, s.v_hi});
  }
  close();
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

inline std::string num(const Rat& r) { return num(r.to_double()); }

namespace detail {

inline const char* color(std::size_t i) {
  static const char* palette[] = {"#2e7d32", "#1565c0", "#c62828",
                                  "#6a1b9a", "#ef6c00", "#00838f"};
  return palette[i % (sizeof palette / sizeof *palette)];
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string to_svg(const PlotSpec& spec) {
  spec.validate();
  const Window& w = spec.window;
  const double w0 = w.lo.to_double();
  const double len = w.length().to_double();
  const int margin = 40;
  const double sx = (spec.width - 2 * margin) / len;
  const double sy = (spec.height - 2 * margin) / len;

  // Data (t1, t2) to pixels: plain axes, or the 45-degree view with the
  // midpoint along x and the half-length along y, both at the x scale.
  std::string matrix;
  if (spec.rotated) {
    matrix = num(sx / 2) + " " + num(sx / 2) + " " + num(sx / 2) + " " +
             num(-sx / 2) + " " + num(margin - sx * w0) + " " +
             num(spec.height - margin);
  } else {
    matrix = num(sx) + " 0 0 " + num(-sy) + " " + num(margin - sx * w0) + " " +
             num(spec.height - margin + sy * w0);
  }
  const std::string stroke = num(len / 300);
  const std::string glyph = num(len / 80);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
       "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
       std::to_string(spec.height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) +
       "\" height=\"" + std::to_string(spec.height) + "\" fill=\"white\"/>\n";
  s += "<g transform=\"matrix(" + matrix + ")\">\n";

  for (std::size_t i = 0; i < spec.overlays.size(); ++i) {
    const auto& o = spec.overlays[i];
    const char* c = detail::color(i);
    if (const auto* l = std::get_if<Landscape>(&o.item)) {
      for (const auto& poly : regions(*l)) {
        s += "<polygon points=\"";
        for (std::size_t k = 0; k < poly.size(); ++k) {
          if (k) s += ' ';
          s += num(poly[k].t) + "," + num(poly[k].v);
        }
        s += "\" fill=\"" + std::string(c) + "\" fill-opacity=\"0.35\" stroke=\"" + c +
             "\" stroke-width=\"" + stroke + "\"/>\n";
      }
    } else {
      const auto& a = std::get<FiniteApprox>(o.item);
      for (const auto& iv : a.included) {
        s += "<circle cx=\"" + num(iv.lo) + "\" cy=\"" + num(iv.hi) + "\" r=\"" +
             glyph + "\" fill=\"none\" stroke=\"" + c + "\" stroke-width=\"" +
             stroke + "\"/>\n";
      }
      for (const auto& iv : a.excluded) {
        const double x = iv.lo.to_double();
        const double y = iv.hi.to_double();
        const double r = len / 80;
        s += "<path d=\"M" + num(x - r) + "," + num(y - r) + " L" + num(x + r) + "," +
             num(y + r) + " M" + num(x - r) + "," + num(y + r) + " L" + num(x + r) +
             "," + num(y - r) + "\" stroke=\"" + c + "\" stroke-width=\"" + stroke +
             "\"/>\n";
      }
    }
  }
  if (spec.show_diagonal) {
    s += "<path d=\"M" + num(w.lo) + "," + num(w.lo) + " L" + num(w.hi) + "," +
         num(w.hi) + "\" stroke=\"black\" stroke-width=\"" + stroke + "\"/>\n";
  }
  s += "</g>\n";

  // Labels live outside the transformed group so they are not mirrored.
  const int base = spec.height - margin + 16;
  s += "<text x=\"" + std::to_string(margin) + "\" y=\"" + std::to_string(base) +
       "\" font-size=\"12\">" + num(w.lo) + "</text>\n";
  s += "<text x=\"" + std::to_string(spec.width - margin) + "\" y=\"" +
       std::to_string(base) + "\" font-size=\"12\" text-anchor=\"end\">" +
       num(w.hi) + "</text>\n";
  for (std::size_t i = 0; i < spec.overlays.size(); ++i) {
    if (spec.overlays[i].label.empty()) continue;
    s += "<text x=\"" + std::to_string(margin) + "\" y=\"" +
         std::to_string(margin / 2 + 14 * static_cast<int>(i)) +
         "\" font-size=\"12\" fill=\"" + detail::color(i) + "\">" +
         detail::escape(spec.overlays[i].label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

// Rows are t1 (top = w0), columns are t2 (left = w0), so members sit to
// the upper right of a `\` diagonal. A cell prints `#` when the interval
// of its midpoints is a member of some overlaid landscape, `.` otherwise,
// and `o`/`x` where an approximation has a point in the cell.
inline std::string to_ascii(const PlotSpec& spec) {
  spec.validate();
  const Window& w = spec.window;
  const auto rows = static_cast<std::size_t>(spec.height);
  const auto cols = static_cast<std::size_t>(spec.width);
  const Rat pr = w.length() / Rat(static_cast<Rat::int_type>(rows));
  const Rat pc = w.length() / Rat(static_cast<Rat::int_type>(cols));
  auto at = [&](const Rat& pitch, std::size_t k) {
    return w.lo + pitch * Rat(static_cast<Rat::int_type>(k));
  };
  auto index = [&](const Rat& v, const Rat& pitch, std::size_t n) {
    const Rat q = (v - w.lo) / pitch;
    auto k = static_cast<std::size_t>(q.num() / q.den());
    return k >= n ? n - 1 : k;
  };

  std::vector<std::string> grid(rows, std::string(cols, ' '));
  for (std::size_t r = 0; r < rows; ++r) {
    const Rat r0 = at(pr, r);
    const Rat r1 = at(pr, r + 1);
    const Rat t1 = (r0 + r1) / Rat(2);
    for (std::size_t c = 0; c < cols; ++c) {
      const Rat c0 = at(pc, c);
      const Rat c1 = at(pc, c + 1);
      if (c1 <= r0) continue;  // wholly below the diagonal
      const bool diagonal = c0 < r1 && r0 < c1;
      if (diagonal && spec.show_diagonal) {
        grid[r][c] = '\\';
        continue;
      }
      const Rat t2 = (c0 + c1) / Rat(2);
      if (t2 < t1) continue;
      bool member = false;
      for (const auto& o : spec.overlays) {
        if (const auto* l = std::get_if<Landscape>(&o.item)) {
          member = member || l->contains(Interval(t1, t2));
        }
      }
      grid[r][c] = member ? '#' : '.';
    }
  }
  for (const auto& o : spec.overlays) {
    if (const auto* a = std::get_if<FiniteApprox>(&o.item)) {
      for (const auto& iv : a->included) {
        grid[index(iv.lo, pr, rows)][index(iv.hi, pc, cols)] = 'o';
      }
      for (const auto& iv : a->excluded) {
        grid[index(iv.lo, pr, rows)][index(iv.hi, pc, cols)] = 'x';
      }
    }
  }
  std::string out;
  for (const auto& row : grid) {
    const auto end = row.find_last_not_of(' ');
    out += end == std::string::npos ? std::string() : row.substr(0, end + 1);
    out += '\n';
  }
  return out;
}

}  // namespace tll::render
