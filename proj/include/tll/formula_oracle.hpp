#pragma once

// Reference evaluation of a whole formula. Atoms, roofs and caps use exact
// membership; the connectives are evaluated pointwise on intervals, except
// implication and negation, which go through ImplicationOracle. Nothing here
// calls the core connectives, so the result is an independent check of
// evaluate().

#include <memory>

#include "tll/formula.hpp"
#include "tll/oracle.hpp"

namespace tll::oracle {

namespace detail {

inline Membership build(const Formula& f, const Environment& env,
                        const GridSpec& inner, tll::detail::Scope& scope) {
  using K = Formula::Kind;
  const Window& w = env.window();
  switch (f.kind()) {
    case K::kTrue:
      return membership(truth(w));
    case K::kFalse:
      return [](const Interval&) { return false; };
    case K::kAtom: {
      const auto key = tll::detail::instantiate(f, scope);
      auto l = env.atom(key);
      if (!l) {
        throw EvalError(EvalError::Kind::kUnboundAtom,
                        "unbound atom " + atom_str(key));
      }
      return membership(*l);
    }
    case K::kRoof:
      return membership(roof(w, f.a(), f.b()));
    case K::kCap:
      return membership(cap(w, f.a()));
    case K::kAnd: {
      auto a = build(*f.lhs(), env, inner, scope);
      auto b = build(*f.rhs(), env, inner, scope);
      return [a, b](const Interval& iv) { return a(iv) && b(iv); };
    }
    case K::kOr: {
      auto a = build(*f.lhs(), env, inner, scope);
      auto b = build(*f.rhs(), env, inner, scope);
      return [a, b](const Interval& iv) { return a(iv) || b(iv); };
    }
    case K::kNot:
    case K::kImplies: {
      auto a = build(f.kind() == K::kNot ? *f.body() : *f.lhs(), env, inner, scope);
      Membership b = f.kind() == K::kNot
                         ? Membership([](const Interval&) { return false; })
                         : build(*f.rhs(), env, inner, scope);
      auto o = std::make_shared<const ImplicationOracle>(a, b, inner);
      return [o](const Interval& iv) { return (*o)(iv); };
    }
    case K::kForall:
    case K::kExists: {
      std::vector<Membership> parts;
      for (const auto& e : tll::detail::lookup_set(env, f.set())) {
        scope.emplace_back(f.name(), e);
        parts.push_back(build(*f.body(), env, inner, scope));
        scope.pop_back();
      }
      const bool all = f.kind() == K::kForall;
      // A finite intersection of landscapes is already open, so a plain
      // pointwise fold is the reference for both quantifiers.
      return [parts, all](const Interval& iv) {
        for (const auto& p : parts) {
          if (p(iv) != all) return !all;
        }
        return all;
      };
    }
  }
  throw std::logic_error("formula oracle: unhandled kind");
}

}  // namespace detail

inline Membership formula_oracle(const Formula& f, const Environment& env,
                                 const GridSpec& inner) {
  tll::detail::Scope scope;
  return detail::build(f, env, inner, scope);
}

}  // namespace tll::oracle
