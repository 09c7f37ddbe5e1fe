#pragma once

// Randomized Groebner engine properties: Buchberger criterion, normal-form
// idempotence, determinism, and elimination against resultants.

#include <random>
#include <string>

#include "oracles.hpp"

namespace weilreg::testing {

struct PropertyCounts {
  int bases = 0;         // instances whose checks all held
  int eliminations = 0;  // resultant agreements
  std::string failure;   // first failing check, empty if none
};

inline PropertyCounts groebner_property_suite(unsigned seed, int instances = 1000, int resultants = 100) {
  std::mt19937 rng(seed);
  PropertyCounts out;
  auto fail = [&](const std::string& what, int i) {
    if (out.failure.empty()) out.failure = what + " (instance " + std::to_string(i) + ")";
  };
  for (int instance = 0; instance < instances; ++instance) {
    std::size_t arity = 1 + static_cast<std::size_t>(instance % 3);
    std::size_t ngens = 1 + static_cast<std::size_t>(rng() % 3);
    std::vector<Polynomial> gens;
    for (std::size_t k = 0; k < ngens; ++k) gens.push_back(random_polynomial(rng, arity, 4, 3));
    MonomialOrder ord = (instance % 4 == 0) ? MonomialOrder::lex() : MonomialOrder::grevlex();
    Ideal ideal(arity, gens);
    const auto& gb = ideal.groebner_basis(ord);
    Polynomial f = random_polynomial(rng, arity, 4, 4);
    if (!satisfies_buchberger_criterion(gb, ord)) {
      fail("Buchberger criterion", instance);
      continue;
    }
    bool members = true;
    for (const auto& g : gens) members = members && naive_remainder(g, gb, ord).is_zero();
    if (!members) {
      fail("generator not reduced to zero", instance);
      continue;
    }
    Polynomial nf = normal_form(f, ideal, ord);
    if (normal_form(nf, ideal, ord) != nf || !naive_remainder(f - nf, gb, ord).is_zero()) {
      fail("normal form", instance);
      continue;
    }
    if (compute_groebner_basis(arity, gens, ord) != gb) {
      fail("nondeterministic basis", instance);
      continue;
    }
    ++out.bases;
  }
  for (int instance = 0; instance < resultants; ++instance) {
    // f monic in x: V(Res) is exactly the projection.
    Polynomial x = Polynomial::variable(2, 0);
    std::uint32_t d = 1 + static_cast<std::uint32_t>(rng() % 3);
    Polynomial f = x.pow(d) + random_polynomial(rng, 2, d - 1, 3);
    Polynomial g = random_polynomial(rng, 2, 3, 3);
    if (!g.uses_var(0)) g = g + x;
    Ideal elim = eliminate(Ideal(2, {f, g}), {0});
    if (radicals_equal(elim, Ideal(2, {resultant(f, g, 0)})))
      ++out.eliminations;
    else
      fail("elimination differs from resultant", instance);
  }
  return out;
}

}  // namespace weilreg::testing
