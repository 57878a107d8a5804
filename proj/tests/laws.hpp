#pragma once

// Algebraic and open-set laws over landscapes. Each check returns the
// names of the laws that failed, so callers can report them.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tll/landscape.hpp"

namespace tll::testing {

// Uniform on [lo, hi) in steps of (hi - lo) / 4096.
inline Rat random_between(std::mt19937_64& rng, const Rat& lo, const Rat& hi) {
  const auto k = static_cast<Rat::int_type>(rng() % 4096);
  return lo + (hi - lo) * Rat(k, 4096);
}

// A member interval of `l`, or nullopt when a few tries find none.
inline std::optional<Interval> random_member(const Landscape& l, std::mt19937_64& rng) {
  const Window& w = l.window();
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Rat t1 = random_between(rng, w.lo, w.hi);
    if (t1 == w.lo) continue;
    const Rat f = l.boundary_at(t1);
    if (!(t1 < f)) continue;
    return Interval(t1, random_between(rng, t1, f));
  }
  return std::nullopt;
}

inline std::vector<std::string> lattice_failures(const Landscape& a, const Landscape& b,
                                                 const Landscape& c) {
  std::vector<std::string> out;
  auto law = [&](bool ok, const char* name) {
    if (!ok) out.emplace_back(name);
  };
  law(meet(a, b) == meet(b, a), "meet commutes");
  law(join(a, b) == join(b, a), "join commutes");
  law(meet(meet(a, b), c) == meet(a, meet(b, c)), "meet associates");
  law(join(join(a, b), c) == join(a, join(b, c)), "join associates");
  law(meet(a, join(a, b)) == a, "meet absorbs join");
  law(join(a, meet(a, b)) == a, "join absorbs meet");
  law(meet(a, a) == a && join(a, a) == a, "idempotence");
  law(meet(a, join(b, c)) == join(meet(a, b), meet(a, c)), "distributivity");
  return out;
}

// `strict` is set when phi is strictly below its double negation.
inline std::vector<std::string> heyting_failures(const Landscape& x, const Landscape& phi,
                                                 const Landscape& psi, bool* strict = nullptr) {
  std::vector<std::string> out;
  auto law = [&](bool ok, const char* name) {
    if (!ok) out.emplace_back(name);
  };
  const Window& w = phi.window();
  const auto imp = implies(phi, psi);
  law(leq(meet(x, phi), psi) == leq(x, imp), "adjunction");
  // A second X lying below phi => psi exercises the adjunction's true side.
  const auto below = meet(x, imp);
  law(leq(meet(below, phi), psi), "adjunction (X below the implication)");
  law(leq(meet(imp, phi), psi), "modus ponens");
  law(implies(truth(w), psi) == psi, "implies(true, psi) = psi");
  law(implies(phi, phi).is_true(), "implies(phi, phi) = true");
  const auto nn = negate(negate(phi));
  law(leq(phi, nn), "phi <= not not phi");
  if (leq(phi, psi)) law(leq(negate(psi), negate(phi)), "not is antitone");
  if (strict != nullptr) *strict = !(nn == phi);
  return out;
}

// Down-closure and strict enlargement on `samples` member intervals.
inline std::vector<std::string> openness_failures(const Landscape& l, std::mt19937_64& rng,
                                                  int samples) {
  std::vector<std::string> out;
  for (int k = 0; k < samples; ++k) {
    const auto iv = random_member(l, rng);
    if (!iv) break;
    if (!l.contains(*iv)) {
      out.push_back("sampled " + iv->str() + " is not a member");
      continue;
    }
    const Rat lo = random_between(rng, iv->lo, iv->hi);
    const Rat hi = lo == iv->hi ? lo : random_between(rng, lo, iv->hi);
    if (!l.contains(Interval(lo, hi))) {
      out.push_back("down-closure fails for " + Interval(lo, hi).str() + " in " + iv->str());
    }
    const auto eps = openness_witness(l, *iv);
    if (!eps || eps->sign() <= 0 || !l.contains(Interval(iv->lo - *eps, iv->hi + *eps))) {
      out.push_back("no enlargement witness for " + iv->str());
    }
  }
  return out;
}

}  // namespace tll::testing
