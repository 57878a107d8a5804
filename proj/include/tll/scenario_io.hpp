#pragma once

// Scenario files and the mapping from scenario contents to named atoms.
//
//   [window]              w0 w1
//   [cells]               grid W H | cell <name> [x y] | name <alias> x y
//   [edges]               grid | edge a b [roof lo hi]
//   [agent <id>]          stay <cell> <enter> <exit>
//   [obstacle <id>]       start <cell> | dir up|down|left|right
//   [floor]               side s | gamma g | vmax v
//   [room <name>]         rect x0 y0 x1 y1
//   [trajectory <a>/<k>]  at t x y
//   [memory]              capacity n | arrive <id> t
//   [sets]                <Name> <elem>...
//   [landscape <atom>]    roof lo hi | seg t0 t1 v0 v1
//
// Atom names bound by build_environment:
//
//   occ(c) free(c)          some occupant in cell c / its negation
//   pos(a, c)               agent a in cell c
//   E(a, b) nbr(v, w)       edge / edge with w != v
//   freeNbr(v)              every neighbor of v is free
//   inRoom(a, r)            every trajectory of a is in room r
//   close(a) speedOk(a)     bundle within gamma / below vmax
//   sampleInMem(id)         sample id is in the memory buffer
//   samplesInMem            some sample is in the memory buffer
//
// With a single trajectory bundle, inRoom(r), close and speedOk drop the
// agent argument. Sets: Cells, Agents, Rooms, Samples, and Nbr_<c> for
// every cell. [landscape] sections bind an atom verbatim and take
// precedence over generated atoms.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tll/formula.hpp"
#include "tll/scenario.hpp"
#include "tll/text.hpp"

namespace tll::scenario {

struct Scenario {
  Window window;
  GridWorld grid;
  FloorPlan plan;
  bool has_floor = false;
  std::map<std::string, TrajectoryBundle> bundles;
  std::optional<MemoryBuffer> memory;
  std::map<std::string, std::vector<std::string>> sets;
  std::map<AtomKey, Landscape> landscapes;

  explicit Scenario(Window w) : window(w), grid(w) {}
};

namespace detail {

struct Section {
  std::string kind;
  std::string arg;
  std::size_t line;
  std::vector<std::pair<std::size_t, std::string>> body;
};

inline std::vector<Section> sections(const std::vector<std::string>& lines) {
  std::vector<Section> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t no = i + 1;
    const auto s = text::trim(text::strip_comment(lines[i]));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(no, 1, "unterminated section header");
      const auto inner = text::trim(s.substr(1, s.size() - 2));
      const auto sp = inner.find_first_of(" \t");
      Section sec;
      sec.kind = std::string(inner.substr(0, sp));
      sec.arg = sp == std::string_view::npos
                    ? std::string()
                    : std::string(text::trim(inner.substr(sp)));
      sec.line = no;
      out.push_back(std::move(sec));
      continue;
    }
    if (out.empty()) throw ParseError(no, 1, "content before the first section");
    out.back().body.emplace_back(no, std::string(s));
  }
  return out;
}

// Parses "name" or "name(a, b)" into an atom key.
inline AtomKey atom_key(const std::string& s, std::size_t line) {
  const auto open = s.find('(');
  if (open == std::string::npos) {
    if (s.empty()) throw ParseError(line, 1, "landscape section needs an atom name");
    return {s, {}};
  }
  if (s.back() != ')') throw ParseError(line, 1, "malformed atom '" + s + "'");
  AtomKey key{std::string(text::trim(std::string_view(s).substr(0, open))), {}};
  std::stringstream args(s.substr(open + 1, s.size() - open - 2));
  std::string a;
  while (std::getline(args, a, ',')) {
    const auto t = text::trim(a);
    if (t.empty()) throw ParseError(line, 1, "empty argument in '" + s + "'");
    key.second.emplace_back(t);
  }
  return key;
}

inline int integer(const text::Token& tok, std::size_t line) {
  const Rat r = text::rational(tok, line);
  if (!r.is_integer() || r.num() < -(1 << 20) || r.num() > (1 << 20)) {
    throw ParseError(line, tok.column, "expected integer, got '" + tok.text + "'");
  }
  return static_cast<int>(r.num());
}

inline Dir direction(const text::Token& tok, std::size_t line) {
  if (tok.text == "up") return Dir::kUp;
  if (tok.text == "down") return Dir::kDown;
  if (tok.text == "left") return Dir::kLeft;
  if (tok.text == "right") return Dir::kRight;
  throw ParseError(line, tok.column, "unknown direction '" + tok.text + "'");
}

class SectionReader {
 public:
  SectionReader(std::size_t line, const std::string& s)
      : line_(line), toks_(text::split(s)) {}

  [[nodiscard]] const std::string& keyword() const { return toks_[0].text; }
  [[nodiscard]] std::size_t size() const { return toks_.size(); }
  [[nodiscard]] const text::Token& tok(std::size_t i) const { return toks_[i]; }
  [[nodiscard]] std::size_t line() const { return line_; }

  void expect(std::size_t n) const {
    if (toks_.size() != n) {
      const std::size_t col = toks_.size() > n ? toks_[n].column : toks_.back().column;
      throw ParseError(line_, col,
                       "'" + keyword() + "' takes " + std::to_string(n - 1) +
                           " argument(s)");
    }
  }
  [[nodiscard]] Rat rat(std::size_t i) const { return text::rational(toks_[i], line_); }
  [[nodiscard]] int integer(std::size_t i) const { return detail::integer(toks_[i], line_); }
  [[noreturn]] void unknown() const {
    throw ParseError(line_, toks_[0].column, "unknown keyword '" + keyword() + "'");
  }

 private:
  std::size_t line_;
  std::vector<text::Token> toks_;
};

inline Window read_window(const Section& sec) {
  if (sec.body.size() != 1) throw ParseError(sec.line, 1, "[window] takes one line: w0 w1");
  SectionReader r(sec.body[0].first, sec.body[0].second);
  if (r.size() != 2) throw ParseError(r.line(), 1, "[window] takes one line: w0 w1");
  const Rat lo = r.rat(0);
  const Rat hi = r.rat(1);
  if (!(lo < hi)) throw ParseError(r.line(), 1, "window needs w0 < w1");
  return Window(lo, hi);
}

inline void read_section(Scenario& sc, const Section& sec,
                         std::map<std::string, std::map<int, Trajectory>>& traj) {
  const Window& w = sc.window;
  auto each = [&](auto&& fn) {
    for (const auto& [no, s] : sec.body) {
      SectionReader r(no, s);
      try {
        fn(r);
      } catch (const ScenarioError& e) {
        throw ParseError(no, 1, e.what());
      } catch (const std::invalid_argument& e) {
        throw ParseError(no, 1, e.what());
      }
    }
  };
  const auto& k = sec.kind;
  if (k == "window") {
    return;
  }
  if (k == "cells") {
    each([&](const SectionReader& r) {
      if (r.keyword() == "grid") {
        r.expect(3);
        sc.grid.add_grid(r.integer(1), r.integer(2));
      } else if (r.keyword() == "cell") {
        if (r.size() == 2) {
          sc.grid.add_cell(r.tok(1).text);
        } else {
          r.expect(4);
          sc.grid.add_cell(r.tok(1).text, CellPos{r.integer(2), r.integer(3)});
        }
      } else if (r.keyword() == "name") {
        r.expect(4);
        const auto at = sc.grid.cell_at({r.integer(2), r.integer(3)});
        if (!at) throw ScenarioError("no cell at that position");
        sc.grid.rename(*at, r.tok(1).text);
      } else {
        r.unknown();
      }
    });
  } else if (k == "edges") {
    each([&](const SectionReader& r) {
      if (r.keyword() == "grid") {
        r.expect(1);
        sc.grid.add_grid_edges();
      } else if (r.keyword() == "edge") {
        if (r.size() == 3) {
          sc.grid.add_edge(r.tok(1).text, r.tok(2).text);
        } else {
          r.expect(6);
          if (r.tok(3).text != "roof") {
            throw ParseError(r.line(), r.tok(3).column, "expected 'roof'");
          }
          sc.grid.add_edge(r.tok(1).text, r.tok(2).text, roof(w, r.rat(4), r.rat(5)));
        }
      } else {
        r.unknown();
      }
    });
  } else if (k == "agent") {
    if (sec.arg.empty()) throw ParseError(sec.line, 1, "[agent] needs an id");
    each([&](const SectionReader& r) {
      if (r.keyword() != "stay") r.unknown();
      r.expect(4);
      sc.grid.add_stay(sec.arg, {r.tok(1).text, r.rat(2), r.rat(3)});
    });
  } else if (k == "obstacle") {
    if (sec.arg.empty()) throw ParseError(sec.line, 1, "[obstacle] needs an id");
    std::optional<std::string> start;
    std::optional<Dir> dir;
    each([&](const SectionReader& r) {
      r.expect(2);
      if (r.keyword() == "start") {
        start = r.tok(1).text;
      } else if (r.keyword() == "dir") {
        dir = direction(r.tok(1), r.line());
      } else {
        r.unknown();
      }
    });
    if (!start || !dir) throw ParseError(sec.line, 1, "obstacle needs start and dir");
    try {
      Obstacle o{sec.arg, *start, *dir};
      (void)sc.grid.obstacle_stays(o);
      sc.grid.add_obstacle(std::move(o));
    } catch (const ScenarioError& e) {
      throw ParseError(sec.line, 1, e.what());
    }
  } else if (k == "floor") {
    sc.has_floor = true;
    each([&](const SectionReader& r) {
      r.expect(2);
      if (r.keyword() == "side") {
        sc.plan.side = r.rat(1);
      } else if (r.keyword() == "gamma") {
        sc.plan.gamma = r.rat(1);
      } else if (r.keyword() == "vmax") {
        sc.plan.vmax = r.rat(1);
      } else {
        r.unknown();
      }
    });
  } else if (k == "room") {
    if (sec.arg.empty()) throw ParseError(sec.line, 1, "[room] needs a name");
    sc.has_floor = true;
    auto& rects = sc.plan.rooms[sec.arg];
    each([&](const SectionReader& r) {
      if (r.keyword() != "rect") r.unknown();
      r.expect(5);
      rects.push_back({r.rat(1), r.rat(2), r.rat(3), r.rat(4)});
    });
  } else if (k == "trajectory") {
    const auto slash = sec.arg.find('/');
    if (slash == std::string::npos || slash == 0) {
      throw ParseError(sec.line, 1, "[trajectory] needs <agent>/<k>");
    }
    const auto agent = sec.arg.substr(0, slash);
    const int idx = integer({sec.arg.substr(slash + 1), 1}, sec.line);
    auto& tr = traj[agent][idx];
    if (!tr.empty()) throw ParseError(sec.line, 1, "duplicate trajectory " + sec.arg);
    each([&](const SectionReader& r) {
      if (r.keyword() != "at") r.unknown();
      r.expect(4);
      tr.push_back({r.rat(1), r.rat(2), r.rat(3)});
    });
  } else if (k == "memory") {
    if (sc.memory) throw ParseError(sec.line, 1, "duplicate [memory] section");
    sc.memory.emplace();
    each([&](const SectionReader& r) {
      if (r.keyword() == "capacity") {
        r.expect(2);
        const int c = r.integer(1);
        if (c <= 0) throw ScenarioError("capacity must be positive");
        sc.memory->capacity = static_cast<std::size_t>(c);
      } else if (r.keyword() == "arrive") {
        r.expect(3);
        sc.memory->arrivals.push_back({r.tok(1).text, r.rat(2)});
      } else {
        r.unknown();
      }
    });
  } else if (k == "sets") {
    each([&](const SectionReader& r) {
      std::vector<std::string> elems;
      for (std::size_t i = 1; i < r.size(); ++i) elems.push_back(r.tok(i).text);
      sc.sets[r.keyword()] = std::move(elems);
    });
  } else if (k == "landscape") {
    const auto key = atom_key(sec.arg, sec.line);
    std::vector<Landscape> roofs;
    std::vector<Segment> segs;
    each([&](const SectionReader& r) {
      if (r.keyword() == "roof") {
        r.expect(3);
        roofs.push_back(roof(w, r.rat(1), r.rat(2)));
      } else if (r.keyword() == "seg") {
        r.expect(5);
        segs.push_back({r.rat(1), r.rat(2), r.rat(3), r.rat(4)});
      } else {
        r.unknown();
      }
    });
    if (!roofs.empty() && !segs.empty()) {
      throw ParseError(sec.line, 1, "landscape mixes roof and seg lines");
    }
    try {
      sc.landscapes.insert_or_assign(
          key, segs.empty() ? exists_finite(w, roofs)
                            : Landscape::from_segments(w, std::move(segs)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(sec.line, 1, e.what());
    }
  } else {
    throw ParseError(sec.line, 2, "unknown section [" + k + "]");
  }
}

}  // namespace detail

// `window` overrides the [window] section, which is otherwise required.
inline Scenario parse_scenario(const std::string& content,
                               std::optional<Window> window = {}) {
  const auto secs = detail::sections(text::lines(content));
  const detail::Section* win = nullptr;
  for (const auto& s : secs) {
    if (s.kind == "window") {
      if (win) throw ParseError(s.line, 1, "duplicate [window] section");
      win = &s;
    }
  }
  if (!window) {
    if (!win) throw ParseError(1, 1, "missing [window] section");
    window = detail::read_window(*win);
  }
  Scenario sc(*window);
  std::map<std::string, std::map<int, Trajectory>> traj;
  std::size_t memory_line = 0;
  for (const auto& s : secs) {
    if (s.kind == "memory") memory_line = s.line;
    detail::read_section(sc, s, traj);
  }
  for (auto& [agent, by_index] : traj) {
    auto& bundle = sc.bundles[agent];
    for (auto& [idx, tr] : by_index) bundle.push_back(std::move(tr));
  }
  try {
    sc.plan.validate();
    for (const auto& [agent, bundle] : sc.bundles) validate_bundle(bundle, sc.plan);
    if (sc.memory) (void)samples_in_mem(*sc.memory, sc.window);
  } catch (const ScenarioError& e) {
    throw ParseError(memory_line ? memory_line : 1, 1, e.what());
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path,
                              std::optional<Window> window = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), window);
}

// Binds every generated atom and set; see the table at the top of the file.
inline Environment build_environment(const Scenario& sc) {
  const Window& w = sc.window;
  Environment env(w);
  const GridWorld& g = sc.grid;

  std::set<std::string> agents;
  for (const auto& [a, stays] : g.agents()) agents.insert(a);
  for (const auto& [a, b] : sc.bundles) agents.insert(a);
  env.define_set("Cells", g.cells());
  env.define_set("Agents", {agents.begin(), agents.end()});

  for (const auto& c : g.cells()) {
    const auto occ = g.occ_landscape(c);
    env.bind("occ", {c}, occ);
    env.bind("free", {c}, negate(occ));
    env.define_set("Nbr_" + c, g.nbr(c));
  }

  std::vector<std::string> rooms;
  for (const auto& [name, rects] : sc.plan.rooms) rooms.push_back(name);
  env.define_set("Rooms", rooms);
  for (const auto& [agent, bundle] : sc.bundles) {
    const bool only = sc.bundles.size() == 1;
    for (const auto& r : rooms) {
      const auto l = in_room_landscape(w, bundle, sc.plan, r);
      env.bind("inRoom", {agent, r}, l);
      if (only) env.bind("inRoom", {r}, l);
    }
    const auto close = close_landscape(w, bundle, sc.plan);
    const auto speed = speed_bound_landscape(w, bundle, sc.plan);
    env.bind("close", {agent}, close);
    env.bind("speedOk", {agent}, speed);
    if (only) {
      env.bind("close", close);
      env.bind("speedOk", speed);
    }
  }

  std::vector<std::string> samples;
  if (sc.memory) {
    const auto mem = samples_in_mem(*sc.memory, w);
    for (const auto& [id, l] : mem.per_sample) {
      env.bind("sampleInMem", {id}, l);
      samples.push_back(id);
    }
    env.bind("samplesInMem", mem.joined);
  }
  env.define_set("Samples", samples);

  for (const auto& [name, elems] : sc.sets) env.define_set(name, elems);
  for (const auto& [key, l] : sc.landscapes) env.bind(key.first, key.second, l);

  // Families indexed by cell pairs are produced on demand. The resolver
  // holds a copy of the grid so the environment outlives the scenario.
  env.set_resolver([g](const AtomKey& key) -> std::optional<Landscape> {
    const auto& [name, args] = key;
    auto known = [&](std::size_t i) { return g.has_cell(args[i]); };
    if (name == "E" && args.size() == 2 && known(0) && known(1)) {
      return g.edge(args[0], args[1]);
    }
    if (name == "nbr" && args.size() == 2 && known(0) && known(1)) {
      return g.nbr_landscape(args[0], args[1]);
    }
    if (name == "freeNbr" && args.size() == 1 && known(0)) {
      return g.free_of_nbr(args[0]);
    }
    if (name == "pos" && args.size() == 2 && g.agents().count(args[0]) && known(1)) {
      return g.pos_landscape(args[0], args[1]);
    }
    return std::nullopt;
  });
  return env;
}

}  // namespace tll::scenario
