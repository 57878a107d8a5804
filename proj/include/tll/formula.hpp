#pragma once

// Formulas of temporal landscape logic: syntax tree, parser, printer and
// evaluation against an environment of named atoms and finite sets.
//
// Concrete syntax, loosest binding first:
//
//     all x in S . body        any x in S . body     (body extends right)
//     a => b                   (right associative)
//     a || b
//     a && b
//     !a
//     true  false  name  name(arg, ...)  roof(a, b)  cap(t)  ( ... )

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tll/landscape.hpp"
#include "tll/text.hpp"

namespace tll {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind {
    kTrue,
    kFalse,
    kAtom,
    kAnd,
    kOr,
    kImplies,
    kNot,
    kRoof,
    kCap,
    kForall,
    kExists,
  };

  static FormulaPtr truth() { return make(Kind::kTrue); }
  static FormulaPtr falsity() { return make(Kind::kFalse); }
  static FormulaPtr atom(std::string name, std::vector<std::string> args = {}) {
    auto f = make_mut(Kind::kAtom);
    f->name_ = std::move(name);
    f->args_ = std::move(args);
    return f;
  }
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
    return binary(Kind::kAnd, std::move(l), std::move(r));
  }
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r) {
    return binary(Kind::kOr, std::move(l), std::move(r));
  }
  static FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
    return binary(Kind::kImplies, std::move(l), std::move(r));
  }
  static FormulaPtr negation(FormulaPtr x) {
    auto f = make_mut(Kind::kNot);
    f->lhs_ = std::move(x);
    return f;
  }
  static FormulaPtr roof(Rat a, Rat b) {
    auto f = make_mut(Kind::kRoof);
    f->a_ = a;
    f->b_ = b;
    return f;
  }
  static FormulaPtr cap(Rat tau) {
    auto f = make_mut(Kind::kCap);
    f->a_ = tau;
    return f;
  }
  static FormulaPtr forall(std::string var, std::string set, FormulaPtr body) {
    return quant(Kind::kForall, std::move(var), std::move(set), std::move(body));
  }
  static FormulaPtr exists(std::string var, std::string set, FormulaPtr body) {
    return quant(Kind::kExists, std::move(var), std::move(set), std::move(body));
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  // Atom name, or the bound variable of a quantifier.
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::string>& args() const { return args_; }
  [[nodiscard]] const std::string& set() const { return set_; }
  [[nodiscard]] const FormulaPtr& lhs() const { return lhs_; }
  [[nodiscard]] const FormulaPtr& rhs() const { return rhs_; }
  // Quantifier body and negation operand are stored in lhs.
  [[nodiscard]] const FormulaPtr& body() const { return lhs_; }
  [[nodiscard]] const Rat& a() const { return a_; }
  [[nodiscard]] const Rat& b() const { return b_; }

  [[nodiscard]] bool is_binary() const {
    return kind_ == Kind::kAnd || kind_ == Kind::kOr || kind_ == Kind::kImplies;
  }
  [[nodiscard]] bool is_quantifier() const {
    return kind_ == Kind::kForall || kind_ == Kind::kExists;
  }

  friend bool operator==(const Formula& x, const Formula& y) {
    if (x.kind_ != y.kind_ || x.name_ != y.name_ || x.args_ != y.args_ ||
        x.set_ != y.set_ || !(x.a_ == y.a_) || !(x.b_ == y.b_)) {
      return false;
    }
    auto same = [](const FormulaPtr& p, const FormulaPtr& q) {
      if (!p || !q) return !p && !q;
      return *p == *q;
    };
    return same(x.lhs_, y.lhs_) && same(x.rhs_, y.rhs_);
  }

 private:
  explicit Formula(Kind k) : kind_(k) {}

  static std::shared_ptr<Formula> make_mut(Kind k) {
    return std::shared_ptr<Formula>(new Formula(k));
  }
  static FormulaPtr make(Kind k) { return make_mut(k); }
  static FormulaPtr binary(Kind k, FormulaPtr l, FormulaPtr r) {
    auto f = make_mut(k);
    f->lhs_ = std::move(l);
    f->rhs_ = std::move(r);
    return f;
  }
  static FormulaPtr quant(Kind k, std::string var, std::string set,
                          FormulaPtr body) {
    auto f = make_mut(k);
    f->name_ = std::move(var);
    f->set_ = std::move(set);
    f->lhs_ = std::move(body);
    return f;
  }

  Kind kind_;
  std::string name_;
  std::vector<std::string> args_;
  std::string set_;
  Rat a_;
  Rat b_;
  FormulaPtr lhs_;
  FormulaPtr rhs_;
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Binding strength; larger binds tighter.
inline int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kForall:
    case Formula::Kind::kExists:
      return 0;
    case Formula::Kind::kImplies:
      return 1;
    case Formula::Kind::kOr:
      return 2;
    case Formula::Kind::kAnd:
      return 3;
    case Formula::Kind::kNot:
      return 4;
    default:
      return 5;
  }
}

inline void print(const Formula& f, int min_prec, std::string& out) {
  using K = Formula::Kind;
  int prec = precedence(f);
  // A quantifier body runs to the end, so nested quantifiers are always
  // bracketed unless they are the whole (sub)formula.
  const bool paren = prec < min_prec || (f.is_quantifier() && min_prec > 0);
  if (paren) out += '(';
  switch (f.kind()) {
    case K::kTrue:
      out += "true";
      break;
    case K::kFalse:
      out += "false";
      break;
    case K::kAtom:
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += f.args()[i];
        }
        out += ')';
      }
      break;
    case K::kRoof:
      out += "roof(" + f.a().str() + ", " + f.b().str() + ")";
      break;
    case K::kCap:
      out += "cap(" + f.a().str() + ")";
      break;
    case K::kNot:
      out += '!';
      print(*f.body(), 4, out);
      break;
    case K::kAnd:
    case K::kOr:
      print(*f.lhs(), prec, out);
      out += f.kind() == K::kAnd ? " && " : " || ";
      print(*f.rhs(), prec + 1, out);
      break;
    case K::kImplies:
      print(*f.lhs(), prec + 1, out);
      out += " => ";
      print(*f.rhs(), prec, out);
      break;
    case K::kForall:
    case K::kExists:
      out += f.kind() == K::kForall ? "all " : "any ";
      out += f.name() + " in " + f.set() + " . ";
      print(*f.body(), 0, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct FToken {
  enum class Type { kIdent, kNumber, kSymbol, kEnd };
  Type type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
inline bool digit(char c) { return c >= '0' && c <= '9'; }

inline std::vector<FToken> tokenize(std::string_view src, std::size_t line0) {
  std::vector<FToken> out;
  std::size_t line = line0;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    const std::size_t start_col = col;
    if (ident_start(c)) {
      while (i < src.size() && ident_char(src[i])) advance(1);
      out.push_back({FToken::Type::kIdent, std::string(src.substr(start, i - start)),
                     line, start_col});
      continue;
    }
    if (digit(c) || (c == '-' && i + 1 < src.size() && digit(src[i + 1]))) {
      advance(1);
      while (i < src.size() && (digit(src[i]) || src[i] == '.' || src[i] == '/')) {
        advance(1);
      }
      // Identifier-like tails ("3a") are glued on so they fail as numbers.
      while (i < src.size() && ident_char(src[i])) advance(1);
      out.push_back({FToken::Type::kNumber,
                     std::string(src.substr(start, i - start)), line, start_col});
      continue;
    }
    std::string_view two = src.substr(i, 2);
    if (two == "&&" || two == "||" || two == "=>") {
      advance(2);
      out.push_back({FToken::Type::kSymbol, std::string(two), line, start_col});
      continue;
    }
    if (c == '!' || c == '(' || c == ')' || c == ',' || c == '.') {
      advance(1);
      out.push_back({FToken::Type::kSymbol, std::string(1, c), line, start_col});
      continue;
    }
    throw ParseError(line, start_col,
                     std::string("unexpected character '") + c + "'");
  }
  out.push_back({FToken::Type::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<FToken> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse_all() {
    auto f = formula();
    if (peek().type != FToken::Type::kEnd) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const FToken& peek() const { return toks_[pos_]; }
  const FToken& take() { return toks_[pos_++]; }
  bool at_symbol(std::string_view s) const {
    return peek().type == FToken::Type::kSymbol && peek().text == s;
  }
  bool at_keyword(std::string_view s) const {
    return peek().type == FToken::Type::kIdent && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(t.line, t.column,
                     t.type == FToken::Type::kEnd ? msg + " at end of input" : msg);
  }
  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }
  std::string expect_ident(const char* what) {
    if (peek().type != FToken::Type::kIdent || is_reserved(peek().text)) {
      fail(std::string("expected ") + what);
    }
    return take().text;
  }
  static bool is_reserved(std::string_view s) {
    return s == "true" || s == "false" || s == "all" || s == "any" ||
           s == "in" || s == "roof" || s == "cap";
  }

  FormulaPtr formula() {
    if (at_keyword("all") || at_keyword("any")) return quantifier();
    auto lhs = disjunction();
    if (at_symbol("=>")) {
      ++pos_;
      return Formula::implies(std::move(lhs), formula());
    }
    return lhs;
  }

  FormulaPtr quantifier() {
    const bool all = take().text == "all";
    auto var = expect_ident("variable name");
    if (!at_keyword("in")) fail("expected 'in'");
    ++pos_;
    auto set = expect_ident("set name");
    expect_symbol(".");
    auto body = formula();
    return all ? Formula::forall(std::move(var), std::move(set), std::move(body))
               : Formula::exists(std::move(var), std::move(set), std::move(body));
  }

  FormulaPtr disjunction() {
    auto f = conjunction();
    while (at_symbol("||")) {
      ++pos_;
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  FormulaPtr conjunction() {
    auto f = unary();
    while (at_symbol("&&")) {
      ++pos_;
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  FormulaPtr unary() {
    if (at_symbol("!")) {
      ++pos_;
      return Formula::negation(unary());
    }
    return primary();
  }

  Rat number() {
    if (peek().type != FToken::Type::kNumber) fail("expected a number");
    const auto r = Rat::parse(peek().text);
    if (!r) fail("malformed number '" + peek().text + "'");
    ++pos_;
    return *r;
  }

  FormulaPtr primary() {
    if (at_symbol("(")) {
      ++pos_;
      auto f = formula();
      expect_symbol(")");
      return f;
    }
    if (at_keyword("all") || at_keyword("any")) return quantifier();
    if (peek().type != FToken::Type::kIdent) fail("expected a formula");
    const auto& tok = take();
    if (tok.text == "true") return Formula::truth();
    if (tok.text == "false") return Formula::falsity();
    if (tok.text == "roof") {
      expect_symbol("(");
      const Rat a = number();
      expect_symbol(",");
      const Rat b = number();
      expect_symbol(")");
      return Formula::roof(a, b);
    }
    if (tok.text == "cap") {
      expect_symbol("(");
      const Rat t = number();
      expect_symbol(")");
      return Formula::cap(t);
    }
    if (is_reserved(tok.text)) {
      --pos_;
      fail("unexpected '" + tok.text + "'");
    }
    std::vector<std::string> args;
    if (at_symbol("(")) {
      ++pos_;
      for (;;) {
        const auto& a = peek();
        if (a.type == FToken::Type::kIdent && !is_reserved(a.text)) {
          args.push_back(take().text);
        } else if (a.type == FToken::Type::kNumber &&
                   a.text.find_first_not_of("0123456789") == std::string::npos) {
          args.push_back(take().text);
        } else {
          fail("expected an argument");
        }
        if (at_symbol(")")) break;
        expect_symbol(",");
      }
      ++pos_;
    }
    return Formula::atom(tok.text, std::move(args));
  }

  std::vector<FToken> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormulaPtr parse_formula(std::string_view src, std::size_t first_line = 1) {
  return detail::Parser(detail::tokenize(src, first_line)).parse_all();
}

struct FormulaLine {
  std::size_t line;
  FormulaPtr formula;
};

// One formula per non-blank line; '#' starts a comment.
inline std::vector<FormulaLine> parse_formula_file(const std::string& content) {
  std::vector<FormulaLine> out;
  std::size_t lineno = 0;
  for (const auto& raw : text::lines(content)) {
    ++lineno;
    if (text::trim(text::strip_comment(raw)).empty()) continue;
    out.push_back({lineno, parse_formula(raw, lineno)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Environment and evaluation

using AtomKey = std::pair<std::string, std::vector<std::string>>;

inline std::string atom_str(const AtomKey& k) {
  std::string out = k.first;
  if (!k.second.empty()) {
    out += '(';
    for (std::size_t i = 0; i < k.second.size(); ++i) {
      if (i) out += ',';
      out += k.second[i];
    }
    out += ')';
  }
  return out;
}

class EvalError : public std::runtime_error {
 public:
  enum class Kind { kUnboundAtom, kUnknownSet };
  EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Atoms are looked up in the explicit bindings first, then in an optional
// resolver, which lets large families (edges between every cell pair) be
// produced on demand.
class Environment {
 public:
  using Resolver = std::function<std::optional<Landscape>(const AtomKey&)>;

  explicit Environment(Window w) : window_(std::move(w)) {}

  [[nodiscard]] const Window& window() const { return window_; }

  void define_set(const std::string& name, std::vector<std::string> elems) {
    sets_[name] = std::move(elems);
  }
  void bind(const std::string& name, std::vector<std::string> args,
            Landscape l) {
    if (!(l.window() == window_)) {
      throw WindowError("binding " + atom_str({name, args}) +
                        ": window differs from environment");
    }
    atoms_.insert_or_assign(AtomKey{name, std::move(args)}, std::move(l));
  }
  void bind(const std::string& name, Landscape l) { bind(name, {}, std::move(l)); }
  void set_resolver(Resolver r) { resolver_ = std::move(r); }

  [[nodiscard]] const std::vector<std::string>* set(const std::string& name) const {
    auto it = sets_.find(name);
    return it == sets_.end() ? nullptr : &it->second;
  }
  [[nodiscard]] std::optional<Landscape> atom(const AtomKey& key) const {
    if (auto it = atoms_.find(key); it != atoms_.end()) return it->second;
    if (resolver_) {
      auto l = resolver_(key);
      if (l && !(l->window() == window_)) {
        throw WindowError("resolved " + atom_str(key) +
                          ": window differs from environment");
      }
      return l;
    }
    return std::nullopt;
  }
  [[nodiscard]] const std::map<std::string, std::vector<std::string>>& sets() const {
    return sets_;
  }
  [[nodiscard]] const std::map<AtomKey, Landscape>& bindings() const {
    return atoms_;
  }

 private:
  Window window_;
  std::map<std::string, std::vector<std::string>> sets_;
  std::map<AtomKey, Landscape> atoms_;
  Resolver resolver_;
};

namespace detail {

using Scope = std::vector<std::pair<std::string, std::string>>;

// Arguments bound by an enclosing quantifier are substituted; the rest are
// literal element names. Inner binders shadow outer ones.
inline AtomKey instantiate(const Formula& f, const Scope& scope) {
  std::vector<std::string> args;
  for (const auto& a : f.args()) {
    std::string v = a;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == a) {
        v = it->second;
        break;
      }
    }
    args.push_back(std::move(v));
  }
  return {f.name(), std::move(args)};
}

inline const std::vector<std::string>& lookup_set(const Environment& env,
                                                  const std::string& name) {
  const auto* s = env.set(name);
  if (!s) throw EvalError(EvalError::Kind::kUnknownSet, "unknown set '" + name + "'");
  return *s;
}

inline Landscape eval(const Formula& f, const Environment& env, Scope& scope) {
  using K = Formula::Kind;
  const Window& w = env.window();
  switch (f.kind()) {
    case K::kTrue:
      return truth(w);
    case K::kFalse:
      return falsity(w);
    case K::kAtom: {
      const auto key = instantiate(f, scope);
      auto l = env.atom(key);
      if (!l) {
        throw EvalError(EvalError::Kind::kUnboundAtom,
                        "unbound atom " + atom_str(key));
      }
      return *l;
    }
    case K::kRoof:
      return roof(w, f.a(), f.b());
    case K::kCap:
      return cap(w, f.a());
    case K::kNot:
      return negate(eval(*f.body(), env, scope));
    case K::kAnd:
      return meet(eval(*f.lhs(), env, scope), eval(*f.rhs(), env, scope));
    case K::kOr:
      return join(eval(*f.lhs(), env, scope), eval(*f.rhs(), env, scope));
    case K::kImplies:
      return implies(eval(*f.lhs(), env, scope), eval(*f.rhs(), env, scope));
    case K::kForall:
    case K::kExists: {
      std::vector<Landscape> parts;
      for (const auto& e : lookup_set(env, f.set())) {
        scope.emplace_back(f.name(), e);
        parts.push_back(eval(*f.body(), env, scope));
        scope.pop_back();
      }
      return f.kind() == K::kForall ? forall_finite(w, parts)
                                    : exists_finite(w, parts);
    }
  }
  throw std::logic_error("eval: unhandled formula kind");
}

inline void collect_instances(const Formula& f, const Environment& env,
                              Scope& scope, std::set<AtomKey>& atoms,
                              std::set<std::string>& missing_sets) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      atoms.insert(instantiate(f, scope));
      return;
    case K::kNot:
      collect_instances(*f.body(), env, scope, atoms, missing_sets);
      return;
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      collect_instances(*f.lhs(), env, scope, atoms, missing_sets);
      collect_instances(*f.rhs(), env, scope, atoms, missing_sets);
      return;
    case K::kForall:
    case K::kExists: {
      const auto* s = env.set(f.set());
      if (!s) {
        missing_sets.insert(f.set());
        return;
      }
      for (const auto& e : *s) {
        scope.emplace_back(f.name(), e);
        collect_instances(*f.body(), env, scope, atoms, missing_sets);
        scope.pop_back();
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace detail

// Throws EvalError for unbound atom instances and unknown sets.
inline Landscape evaluate(const Formula& f, const Environment& env) {
  detail::Scope scope;
  return detail::eval(f, env, scope);
}

// All atom instances evaluation would touch, after quantifier expansion.
inline std::set<AtomKey> atom_instances(const Formula& f, const Environment& env,
                                        std::set<std::string>* missing_sets = nullptr) {
  detail::Scope scope;
  std::set<AtomKey> atoms;
  std::set<std::string> missing;
  detail::collect_instances(f, env, scope, atoms, missing);
  if (missing_sets) *missing_sets = std::move(missing);
  return atoms;
}

struct BindingProblems {
  std::vector<AtomKey> unbound;
  std::vector<std::string> unknown_sets;
  [[nodiscard]] bool ok() const { return unbound.empty() && unknown_sets.empty(); }
};

inline BindingProblems check_bindings(const Formula& f, const Environment& env) {
  BindingProblems p;
  std::set<std::string> missing;
  for (const auto& key : atom_instances(f, env, &missing)) {
    if (!env.atom(key)) p.unbound.push_back(key);
  }
  p.unknown_sets.assign(missing.begin(), missing.end());
  return p;
}

// Atom names with their arities, independent of any environment.
inline std::set<std::pair<std::string, std::size_t>> free_atoms(const Formula& f) {
  std::set<std::pair<std::string, std::size_t>> out;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    if (g.kind() == Formula::Kind::kAtom) out.emplace(g.name(), g.args().size());
    if (g.lhs()) self(self, *g.lhs());
    if (g.rhs()) self(self, *g.rhs());
  };
  walk(walk, f);
  return out;
}

}  // namespace tll
