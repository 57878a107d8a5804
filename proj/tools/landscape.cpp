// landscape: evaluate, plot, monitor and cross-check temporal landscape
// formulas against scenario files.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tll/approx.hpp"
#include "tll/formula.hpp"
#include "tll/formula_oracle.hpp"
#include "tll/landscape_io.hpp"
#include "tll/oracle.hpp"
#include "tll/render.hpp"
#include "tll/scenario_io.hpp"

namespace {

using namespace tll;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParse = 2;
constexpr int kUnbound = 3;
constexpr int kInvariant = 4;

struct Failure {
  int code;
  std::string message;
};

const char* const kAtomTable = R"(
Atoms bound from scenario files:
  occ(c), free(c)        some occupant in cell c / its negation
  pos(a, c)              agent a in cell c
  E(a, b), nbr(v, w)     edge between cells / edge with w != v
  freeNbr(v)             every neighbor of v is free
  inRoom(a, r)           all trajectories of agent a in room r
  close(a), speedOk(a)   bundle within gamma / moving slower than vmax
  sampleInMem(id)        memory sample id is resident
  samplesInMem           some sample is resident
With one trajectory bundle, inRoom(r), close and speedOk omit the agent.
Sets: Cells, Agents, Rooms, Samples, Nbr_<cell>, plus any [sets] entries.

Exit codes: 0 ok, 1 check failed (monitor inconsistent, oracle far > 0),
2 parse error, 3 unbound atom or unknown set, 4 internal invariant violation.
Set LANDSCAPE_NO_COLOR to disable colored verdicts.
)";

class Style {
 public:
  Style() : color_(std::getenv("LANDSCAPE_NO_COLOR") == nullptr && isatty(1)) {}
  [[nodiscard]] std::string good(const std::string& s) const { return wrap("32", s); }
  [[nodiscard]] std::string bad(const std::string& s) const { return wrap("31", s); }

 private:
  [[nodiscard]] std::string wrap(const char* code, const std::string& s) const {
    return color_ ? "\033[" + std::string(code) + "m" + s + "\033[0m" : s;
  }
  bool color_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kParse, path + ": cannot read file"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Failure{kParse, path + ": cannot write file"};
  out << content;
}

std::optional<Window> parse_window(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw Failure{kParse, "--window: expected a,b"};
  const auto a = Rat::parse(spec.substr(0, comma));
  const auto b = Rat::parse(spec.substr(comma + 1));
  if (!a || !b || !(*a < *b)) throw Failure{kParse, "--window: expected a,b with a < b"};
  return Window(*a, *b);
}

std::vector<FormulaLine> load_formulas(const std::string& path) {
  try {
    auto fs = parse_formula_file(read_file(path));
    if (fs.empty()) throw Failure{kParse, path + ": no formulas"};
    return fs;
  } catch (const ParseError& e) {
    throw Failure{kParse, e.in_file(path)};
  }
}

scenario::Scenario load_scenario(const std::string& path, const std::optional<Window>& w) {
  try {
    return scenario::parse_scenario(read_file(path), w);
  } catch (const ParseError& e) {
    throw Failure{kParse, e.in_file(path)};
  }
}

Landscape load_landscape(const std::string& path) {
  try {
    return landscape_from_text(read_file(path));
  } catch (const ParseError& e) {
    throw Failure{kParse, e.in_file(path)};
  } catch (const LandscapeError& e) {
    throw Failure{kInvariant, path + ": " + e.what()};
  }
}

void require_bound(const FormulaLine& fl, const Environment& env, const std::string& path) {
  const auto p = check_bindings(*fl.formula, env);
  if (p.ok()) return;
  std::string msg;
  const std::string at = path + ":" + std::to_string(fl.line) + ": ";
  for (const auto& key : p.unbound) msg += at + "unbound atom " + atom_str(key) + "\n";
  for (const auto& s : p.unknown_sets) msg += at + "unknown set " + s + "\n";
  msg.pop_back();
  throw Failure{kUnbound, msg};
}

Landscape evaluate_checked(const Formula& f, const Environment& env) {
  try {
    return evaluate(f, env);
  } catch (const LandscapeError& e) {
    throw Failure{kInvariant, std::string("internal invariant violated: ") + e.what()};
  } catch (const EvalError& e) {
    throw Failure{kUnbound, e.what()};
  }
}

struct Common {
  std::string window;
  std::string svg;
  bool ascii = false;
  int width = 48;
  int height = 48;
  bool rotate = false;
  std::size_t resolution = 256;
  std::uint64_t seed = 1;
};

render::PlotSpec plot_spec(const Window& w, const Common& c, bool ascii) {
  render::PlotSpec spec(w);
  spec.rotated = c.rotate;
  if (ascii) {
    spec.width = c.width;
    spec.height = c.height;
  } else {
    spec.width = spec.height = 480;
  }
  return spec;
}

// --- eval ------------------------------------------------------------------

int cmd_eval(const std::string& scn, const std::string& fpath, const std::string& out,
             const Common& c) {
  const auto sc = load_scenario(scn, parse_window(c.window));
  const auto env = scenario::build_environment(sc);
  const auto fs = load_formulas(fpath);
  for (const auto& fl : fs) require_bound(fl, env, fpath);

  render::PlotSpec svg = plot_spec(sc.window, c, false);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto l = evaluate_checked(*fs[k].formula, env);
    const auto label = to_string(*fs[k].formula);
    if (!out.empty()) {
      write_file(fs.size() == 1 ? out : out + "." + std::to_string(k + 1), to_text(l));
    } else {
      std::cout << "# " << label << '\n' << to_text(l);
    }
    if (c.ascii) {
      auto spec = plot_spec(sc.window, c, true);
      spec.add(l);
      std::cout << "# " << label << '\n' << render::to_ascii(spec);
    }
    svg.add(l, label);
  }
  if (!c.svg.empty()) write_file(c.svg, render::to_svg(svg));
  return kOk;
}

// --- plot ------------------------------------------------------------------

bool looks_like_landscape(const std::string& content) {
  for (const auto& line : text::lines(content)) {
    const auto toks = text::split(text::strip_comment(line));
    if (!toks.empty()) return toks[0].text == "window" || toks[0].text == "seg";
  }
  return false;
}

int cmd_plot(const std::vector<std::string>& files, const Common& c) {
  std::optional<Window> w = parse_window(c.window);
  std::vector<std::pair<std::string, std::string>> contents;
  for (const auto& f : files) contents.emplace_back(f, read_file(f));
  std::vector<Landscape> landscapes;
  for (const auto& [path, content] : contents) {
    if (!looks_like_landscape(content)) continue;
    landscapes.push_back(load_landscape(path));
    if (!w) w = landscapes.back().window();
  }
  if (!w) throw Failure{kParse, "plot: approximation files need --window"};

  auto build = [&](bool ascii) {
    auto spec = plot_spec(*w, c, ascii);
    std::size_t li = 0;
    for (const auto& [path, content] : contents) {
      try {
        if (looks_like_landscape(content)) {
          spec.add(landscapes[li++], path);
        } else {
          spec.add(approx_from_text(content, *w), path);
        }
      } catch (const ParseError& e) {
        throw Failure{kParse, e.in_file(path)};
      }
    }
    try {
      spec.validate();
    } catch (const WindowError& e) {
      throw Failure{kParse, e.what()};
    }
    return spec;
  };
  if (!c.svg.empty()) write_file(c.svg, render::to_svg(build(false)));
  if (c.ascii || c.svg.empty()) std::cout << render::to_ascii(build(true));
  return kOk;
}

// --- monitor ---------------------------------------------------------------

class MonitorFold {
 public:
  MonitorFold(Window w, std::map<std::string, FiniteApprox> atoms)
      : window_(std::move(w)), atoms_(std::move(atoms)) {
    std::set<Interval> seen;
    for (const auto& [name, a] : atoms_) {
      seen.insert(a.included.begin(), a.included.end());
      seen.insert(a.excluded.begin(), a.excluded.end());
    }
    probes_.assign(seen.begin(), seen.end());
  }

  // Atom names and sets the formula needs but the stream does not provide.
  void missing(const Formula& f, std::set<std::string>& atoms,
               std::set<std::string>& sets) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kAtom: {
        const auto name = atom_str(tll::detail::instantiate(f, {}));
        if (!atoms_.count(name)) atoms.insert(name);
        return;
      }
      case K::kForall:
      case K::kExists:
        sets.insert(f.set());
        return;
      case K::kNot:
        missing(*f.body(), atoms, sets);
        return;
      case K::kAnd:
      case K::kOr:
      case K::kImplies:
        missing(*f.lhs(), atoms, sets);
        missing(*f.rhs(), atoms, sets);
        return;
      default:
        return;
    }
  }

  [[nodiscard]] FiniteApprox eval(const Formula& f) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kAtom:
        return atoms_.at(atom_str(tll::detail::instantiate(f, {})));
      case K::kTrue:
        return sample(truth(window_), probes_);
      case K::kFalse:
        return sample(falsity(window_), probes_);
      case K::kRoof:
        return sample(roof(window_, f.a(), f.b()), probes_);
      case K::kCap:
        return sample(cap(window_, f.a()), probes_);
      case K::kAnd:
        return conj(eval(*f.lhs()), eval(*f.rhs()));
      case K::kOr:
        return disj(eval(*f.lhs()), eval(*f.rhs()));
      case K::kImplies:
        return implies_sound(eval(*f.lhs()), eval(*f.rhs()));
      case K::kNot:
        return neg_sound(eval(*f.body()));
      default:
        throw Failure{kUnbound, "monitor: quantifiers need sets, which streams do not define"};
    }
  }

 private:
  Window window_;
  std::map<std::string, FiniteApprox> atoms_;
  std::vector<Interval> probes_;
};

int cmd_monitor(const std::string& opath, const std::string& fpath, const Common& c) {
  std::vector<Observation> obs;
  try {
    obs = observations_from_text(read_file(opath));
  } catch (const ParseError& e) {
    throw Failure{kParse, e.in_file(opath)};
  }
  if (obs.empty()) throw Failure{kParse, opath + ": no observations"};
  std::optional<Window> w = parse_window(c.window);
  if (!w) {
    const Rat lo = obs.front().t > Rat(0) ? Rat(0) : obs.front().t - Rat(1);
    w = Window(lo, obs.back().t + Rat(1));
  }
  std::map<std::string, FiniteApprox> atoms;
  try {
    atoms = ingest(obs, *w);
  } catch (const std::invalid_argument& e) {
    throw Failure{kParse, opath + ": " + e.what()};
  }
  const MonitorFold fold(*w, std::move(atoms));
  const auto fs = load_formulas(fpath);
  for (const auto& fl : fs) {
    std::set<std::string> names;
    std::set<std::string> sets;
    fold.missing(*fl.formula, names, sets);
    std::string msg;
    const std::string at = fpath + ":" + std::to_string(fl.line) + ": ";
    for (const auto& n : names) msg += at + "no observations for atom " + n + "\n";
    for (const auto& s : sets) msg += at + "unknown set " + s + "\n";
    if (!msg.empty()) {
      msg.pop_back();
      throw Failure{kUnbound, msg};
    }
  }

  const Style style;
  bool all = true;
  for (const auto& fl : fs) {
    const auto a = fold.eval(*fl.formula).canonical();
    const auto verdict = is_consistent(a);
    std::cout << "# " << to_string(*fl.formula) << '\n'
              << "inc=" << a.included.size() << " exc=" << a.excluded.size() << '\n'
              << to_text(a);
    if (verdict.consistent) {
      std::cout << style.good("consistent") << '\n';
    } else {
      all = false;
      const auto& [o, x] = *verdict.conflict;
      std::cout << style.bad("inconsistent") << ": inc " << o.str();
      if (o == x && (o.lo == w->lo || o.hi == w->hi)) {
        std::cout << " touches the window edge\n";
      } else {
        std::cout << " contains exc " << x.str() << '\n';
      }
    }
  }
  return all ? kOk : kFailed;
}

// --- oracle and check ------------------------------------------------------

oracle::Report random_probes(const Landscape& exact, const oracle::Membership& def,
                             const oracle::GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Window& w = grid.window;
  constexpr Rat::int_type kDen = 1 << 20;
  std::uniform_int_distribution<Rat::int_type> pick(0, kDen);
  oracle::Report rep;
  for (std::size_t k = 0; k < grid.resolution; ++k) {
    Rat a = w.lo + w.length() * Rat(pick(rng), kDen);
    Rat b = w.lo + w.length() * Rat(pick(rng), kDen);
    if (b < a) std::swap(a, b);
    const Interval iv(a, b);
    const bool core = exact.contains(iv);
    const bool ref = def(iv);
    if (core == ref) {
      ++rep.agree;
    } else if (oracle::near_boundary(exact, iv, grid.pitch())) {
      ++rep.near;
    } else {
      ++rep.far;
      if (!rep.first_far) rep.first_far = oracle::Witness{iv, core, ref};
    }
  }
  return rep;
}

void print_report(const std::string& head, const oracle::Report& r, const Style& style) {
  std::cout << head << " agree=" << r.agree << " near=" << r.near << " far="
            << (r.far ? style.bad(std::to_string(r.far)) : std::to_string(r.far)) << '\n';
  if (r.first_far) {
    std::cout << "witness " << r.first_far->iv.str() << " core=" << r.first_far->core
              << " oracle=" << r.first_far->oracle << '\n';
  }
}

int cmd_oracle(const std::string& scn, const std::string& fpath, const Common& c) {
  const auto sc = load_scenario(scn, parse_window(c.window));
  const auto env = scenario::build_environment(sc);
  const auto fs = load_formulas(fpath);
  for (const auto& fl : fs) require_bound(fl, env, fpath);
  const oracle::GridSpec grid(sc.window, c.resolution);
  const oracle::GridSpec inner(sc.window, oracle::inner_resolution(c.resolution));
  const Style style;
  bool ok = true;
  for (const auto& fl : fs) {
    const auto exact = evaluate_checked(*fl.formula, env);
    const auto def = oracle::formula_oracle(*fl.formula, env, inner);
    const auto g = oracle::compare(exact, def, grid);
    const auto p = random_probes(exact, def, grid, c.seed);
    std::cout << "# " << to_string(*fl.formula) << '\n';
    print_report("grid n=" + std::to_string(c.resolution), g, style);
    print_report("probes seed=" + std::to_string(c.seed), p, style);
    ok = ok && g.far == 0 && p.far == 0;
  }
  std::cout << (ok ? style.good("PASS") : style.bad("FAIL")) << '\n';
  return ok ? kOk : kFailed;
}

int cmd_check(const std::string& scn, const std::string& fpath, const std::string& lpath,
              const Common& c) {
  const auto sc = load_scenario(scn, parse_window(c.window));
  const auto env = scenario::build_environment(sc);
  const auto fs = load_formulas(fpath);
  if (fs.size() != 1) throw Failure{kParse, fpath + ": check expects exactly one formula"};
  require_bound(fs[0], env, fpath);
  const auto claimed = load_landscape(lpath);
  if (!(claimed.window() == sc.window)) {
    throw Failure{kParse, lpath + ": window differs from the scenario"};
  }
  const oracle::GridSpec grid(sc.window, c.resolution);
  const oracle::GridSpec inner(sc.window, oracle::inner_resolution(c.resolution));
  const auto def = oracle::formula_oracle(*fs[0].formula, env, inner);
  const auto rep = oracle::compare(claimed, def, grid);
  const Style style;
  print_report("grid n=" + std::to_string(c.resolution), rep, style);
  std::cout << (rep.far == 0 ? style.good("PASS") : style.bad("FAIL")) << '\n';
  return rep.far == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal landscape logic: evaluate formulas over scenario files"};
  app.footer(kAtomTable);
  app.require_subcommand(1);

  Common c;
  auto window = [&](CLI::App* sub) {
    sub->add_option("--window", c.window, "Override the time window, as a,b");
  };
  auto plotting = [&](CLI::App* sub) {
    sub->add_option("--svg", c.svg, "Write an SVG picture of the results");
    sub->add_flag("--ascii", c.ascii, "Print ASCII pictures of the results");
    sub->add_flag("--rotate", c.rotate, "SVG: midpoint / half-length axes");
    sub->add_option("--width", c.width, "ASCII columns")->check(CLI::Range(4, 400));
    sub->add_option("--height", c.height, "ASCII rows")->check(CLI::Range(4, 400));
  };
  auto checking = [&](CLI::App* sub) {
    sub->add_option("--resolution", c.resolution, "Grid resolution n")
        ->check(CLI::Range(16, 4096));
    sub->add_option("--seed", c.seed, "Seed for random probe intervals");
  };

  std::string scn, formulas, out, landscape_file, observations;
  std::vector<std::string> files;

  auto* eval = app.add_subcommand("eval", "Evaluate formulas and write landscape files");
  eval->add_option("scenario", scn, "Scenario file")->required()->check(CLI::ExistingFile);
  eval->add_option("formulas", formulas, "Formula file")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", out, "Output path (<out>.<k> for several formulas)");
  window(eval);
  plotting(eval);

  auto* plot = app.add_subcommand("plot", "Draw landscape and approximation files");
  plot->add_option("files", files, "Landscape or approximation files")
      ->required()
      ->check(CLI::ExistingFile);
  window(plot);
  plotting(plot);

  auto* monitor = app.add_subcommand("monitor", "Fold formulas over an observation stream");
  monitor->add_option("observations", observations, "Observation file")
      ->required()
      ->check(CLI::ExistingFile);
  monitor->add_option("formulas", formulas, "Formula file")->required()->check(CLI::ExistingFile);
  window(monitor);

  auto* check = app.add_subcommand("check", "Check a landscape file against the oracle");
  check->add_option("scenario", scn, "Scenario file")->required()->check(CLI::ExistingFile);
  check->add_option("formula", formulas, "Formula file")->required()->check(CLI::ExistingFile);
  check->add_option("landscape", landscape_file, "Landscape file")
      ->required()
      ->check(CLI::ExistingFile);
  window(check);
  checking(check);

  auto* orc = app.add_subcommand("oracle", "Compare exact evaluation with the oracle");
  orc->add_option("scenario", scn, "Scenario file")->required()->check(CLI::ExistingFile);
  orc->add_option("formulas", formulas, "Formula file")->required()->check(CLI::ExistingFile);
  window(orc);
  checking(orc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (eval->parsed()) return cmd_eval(scn, formulas, out, c);
    if (plot->parsed()) return cmd_plot(files, c);
    if (monitor->parsed()) return cmd_monitor(observations, formulas, c);
    if (check->parsed()) return cmd_check(scn, formulas, landscape_file, c);
    if (orc->parsed()) return cmd_oracle(scn, formulas, c);
  } catch (const Failure& f) {
    std::cerr << "landscape: " << f.message << '\n';
    return f.code;
  } catch (const LandscapeError& e) {
    std::cerr << "landscape: internal invariant violated: " << e.what() << '\n';
    return kInvariant;
  }
  return kParse;
}
