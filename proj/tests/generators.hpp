// Random formulas for property tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "atlir/atl.hpp"

namespace atlir::gen {

inline FormulaPtr random_formula(std::mt19937& rng, int depth, const std::vector<std::string>& atoms,
                                 int agents) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  if (depth == 0 || pick(0, 5) == 0) return make_atom(atoms[static_cast<std::size_t>(pick(0, static_cast<int>(atoms.size()) - 1))]);
  std::vector<int> coalition;
  for (int i = 1; i <= agents; ++i)
    if (pick(0, 1)) coalition.push_back(i);
  if (coalition.empty()) coalition.push_back(pick(1, agents));
  switch (pick(0, 4)) {
    case 0: return make_not(random_formula(rng, depth - 1, atoms, agents));
    case 1:
      return make_and(random_formula(rng, depth - 1, atoms, agents), random_formula(rng, depth - 1, atoms, agents));
    case 2: return make_next(coalition, random_formula(rng, depth - 1, atoms, agents));
    case 3: return make_globally(coalition, random_formula(rng, depth - 1, atoms, agents));
    default:
      return make_until(coalition, random_formula(rng, depth - 1, atoms, agents),
                        random_formula(rng, depth - 1, atoms, agents));
  }
}

}  // namespace atlir::gen
