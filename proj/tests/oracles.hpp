#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond Rational and BigInt.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "molekul/rational.hpp"

namespace oracle {

using Tuple = std::vector<std::int64_t>;

// Every coefficient tuple over `gens` summing to x, by plain nested loops.
inline std::vector<Tuple> factorizations(const std::vector<std::int64_t>& gens, std::int64_t x) {
  std::vector<Tuple> out;
  Tuple cur(gens.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t rest) {
    if (i == gens.size()) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    for (std::int64_t c = 0; c * gens[i] <= rest; ++c) {
      cur[i] = c;
      rec(i + 1, rest - c * gens[i]);
    }
    cur[i] = 0;
  };
  rec(0, x);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool member(const std::vector<std::int64_t>& gens, std::int64_t x) {
  std::vector<char> reach(static_cast<std::size_t>(x + 1), 0);
  reach[0] = 1;
  for (std::int64_t v = 1; v <= x; ++v) {
    for (auto g : gens) {
      if (g <= v && reach[static_cast<std::size_t>(v - g)]) reach[static_cast<std::size_t>(v)] = 1;
    }
  }
  return reach[static_cast<std::size_t>(x)];
}

// |Z(x)| for 0 <= x <= bound, saturated at 2.
inline std::vector<std::uint8_t> capped_counts(const std::vector<std::int64_t>& gens, std::int64_t bound) {
  std::vector<std::uint8_t> counts(static_cast<std::size_t>(bound + 1), 0);
  counts[0] = 1;
  for (auto g : gens) {
    for (std::int64_t v = g; v <= bound; ++v) {
      auto& slot = counts[static_cast<std::size_t>(v)];
      slot = static_cast<std::uint8_t>(std::min(2, slot + counts[static_cast<std::size_t>(v - g)]));
    }
  }
  return counts;
}

inline std::int64_t frobenius(const std::vector<std::int64_t>& gens) {
  // Beyond min*max every residue class is settled.
  std::int64_t bound = *std::min_element(gens.begin(), gens.end()) *
                       *std::max_element(gens.begin(), gens.end());
  auto counts = capped_counts(gens, bound);
  std::int64_t f = -1;
  for (std::int64_t x = 1; x <= bound; ++x) {
    if (counts[static_cast<std::size_t>(x)] == 0) f = x;
  }
  return f;
}

// Minimal generators: those not a sum of two nonzero elements.
inline std::vector<std::int64_t> minimal_generators(const std::vector<std::int64_t>& gens) {
  std::vector<std::int64_t> out;
  std::set<std::int64_t> uniq(gens.begin(), gens.end());
  for (auto g : uniq) {
    bool reducible = false;
    for (std::int64_t a = 1; a < g && !reducible; ++a) {
      reducible = member(gens, a) && member(gens, g - a);
    }
    if (!reducible) out.push_back(g);
  }
  return out;
}

inline bool connected(const std::vector<Tuple>& zs) {
  if (zs.size() <= 1) return true;
  std::vector<char> seen(zs.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (seen[j]) continue;
      bool share = false;
      for (std::size_t k = 0; k < zs[i].size(); ++k) share = share || (zs[i][k] > 0 && zs[j][k] > 0);
      if (share) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

// Betti elements up to `bound`, straight from the definition.
inline std::vector<std::int64_t> betti(const std::vector<std::int64_t>& atoms, std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x <= bound; ++x) {
    if (!connected(factorizations(atoms, x))) out.push_back(x);
  }
  return out;
}

// Molecules of <atoms>. Past F + a_i a_j (i != j) every element is divisible
// by a_i a_j, which has the two factorizations a_j e_i and a_i e_j. By default
// the bound uses the largest pair, looser than anything the library uses.
inline std::vector<std::int64_t> molecules(const std::vector<std::int64_t>& atoms, bool loose = true) {
  std::int64_t f = frobenius(atoms);
  std::int64_t bound = loose ? f + atoms[atoms.size() - 1] * atoms[atoms.size() - 2]
                             : f + atoms[0] * atoms[1];
  auto counts = capped_counts(atoms, bound);
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x <= bound; ++x) {
    if (counts[static_cast<std::size_t>(x)] == 1) out.push_back(x);
  }
  return out;
}

// Factorization count over finitely many rational atoms, capped; coefficients
// are bounded by x / atom.
inline std::size_t rational_count(const std::vector<molekul::Rational>& atoms,
                                  const molekul::Rational& x, std::size_t cap) {
  std::size_t found = 0;
  std::function<void(std::size_t, const molekul::Rational&)> rec = [&](std::size_t i,
                                                                      const molekul::Rational& rest) {
    if (found >= cap) return;
    if (i == atoms.size()) {
      if (rest.is_zero()) ++found;
      return;
    }
    molekul::Rational used;
    while (true) {
      auto r = molekul::checked_sub(rest, used);
      if (!r) break;
      rec(i + 1, *r);
      used += atoms[i];
    }
  };
  rec(0, x);
  return found;
}

}  // namespace oracle
