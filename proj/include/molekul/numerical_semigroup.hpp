#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "molekul/coin_search.hpp"
#include "molekul/error.hpp"
#include "molekul/integer.hpp"

namespace molekul {

namespace detail {

// Smallest element of <atoms> in every residue class mod `modulus`
// (Dijkstra over the residue graph). Requires gcd(atoms) == 1.
inline std::vector<std::int64_t> residue_minima(const std::vector<std::int64_t>& atoms,
                                                std::int64_t modulus) {
  constexpr std::int64_t kUnset = -1;
  std::vector<std::int64_t> best(static_cast<std::size_t>(modulus), kUnset);
  using Entry = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  best[0] = 0;
  queue.emplace(0, 0);
  while (!queue.empty()) {
    auto [dist, residue] = queue.top();
    queue.pop();
    if (dist != best[static_cast<std::size_t>(residue)]) continue;
    for (std::int64_t a : atoms) {
      std::int64_t next = (residue + a) % modulus;
      std::int64_t cand = dist + a;
      auto& slot = best[static_cast<std::size_t>(next)];
      if (slot == kUnset || cand < slot) {
        slot = cand;
        queue.emplace(cand, next);
      }
    }
  }
  return best;
}

}  // namespace detail

/// A numerical semigroup stored by its minimal generators a_1 < ... < a_n.
/// Membership, Frobenius number and the Apery table with respect to the
/// multiplicity are computed once at construction.
class NumericalSemigroup {
 public:
  /// Largest multiplicity accepted; the Apery table holds one entry per residue.
  static constexpr std::int64_t kMaxMultiplicity = std::int64_t{1} << 24;

  static NumericalSemigroup from_generators(std::vector<std::int64_t> gens) {
    if (gens.empty()) throw Error(ErrorKind::EmptyInput, "no generators given");
    for (auto g : gens) {
      if (g <= 0) {
        throw Error(ErrorKind::OutOfRange, "generators must be positive, got " + std::to_string(g));
      }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::int64_t g = 0;
    for (auto a : gens) g = std::gcd(g, a);
    if (g != 1) {
      throw Error(ErrorKind::NonCoprimeGenerators,
                  "gcd of generators is " + std::to_string(g) + ", not a numerical semigroup");
    }
    const std::int64_t m = gens.front();
    if (m > kMaxMultiplicity) {
      throw Error(ErrorKind::OutOfRange, "multiplicity " + std::to_string(m) + " too large");
    }
    auto table = detail::residue_minima(gens, m);
    auto member = [&](std::int64_t x) { return x >= table[static_cast<std::size_t>(x % m)]; };
    std::vector<std::int64_t> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < i && !redundant; ++j) redundant = member(gens[i] - gens[j]);
      if (!redundant) minimal.push_back(gens[i]);
    }
    return NumericalSemigroup(std::move(minimal), std::move(table));
  }

  const std::vector<std::int64_t>& atoms() const noexcept { return atoms_; }
  std::size_t embedding_dimension() const noexcept { return atoms_.size(); }
  std::int64_t multiplicity() const noexcept { return atoms_.front(); }
  std::int64_t frobenius() const noexcept { return frobenius_; }
  bool is_naturals() const noexcept { return atoms_.size() == 1; }

  bool contains(std::int64_t x) const {
    if (x < 0) return false;
    const std::int64_t m = multiplicity();
    return x >= apery_[static_cast<std::size_t>(x % m)];
  }

  bool contains(const BigInt& x) const {
    if (x < 0) return false;
    if (x > BigInt(frobenius_)) return true;
    return contains(x.convert_to<std::int64_t>());
  }

  /// Apery table w.r.t. the multiplicity, indexed by residue.
  const std::vector<std::int64_t>& apery_table() const noexcept { return apery_; }

  friend bool operator==(const NumericalSemigroup& a, const NumericalSemigroup& b) {
    return a.atoms_ == b.atoms_;
  }

  std::string to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(atoms_[i]);
    }
    return out + ">";
  }

 private:
  NumericalSemigroup(std::vector<std::int64_t> atoms, std::vector<std::int64_t> apery)
      : atoms_(std::move(atoms)), apery_(std::move(apery)) {
    frobenius_ = *std::max_element(apery_.begin(), apery_.end()) - atoms_.front();
  }

  std::vector<std::int64_t> atoms_;
  std::vector<std::int64_t> apery_;
  std::int64_t frobenius_ = -1;
};

inline std::vector<std::int64_t> parse_generators(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(to_i64(parse_bigint(piece)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Elements of N that are smallest in their residue class mod m.
inline std::vector<std::int64_t> apery_set(const NumericalSemigroup& n, std::int64_t m) {
  if (m <= 0 || !n.contains(m)) {
    throw Error(ErrorKind::ModulusNotInSemigroup,
                std::to_string(m) + " is not a positive element of " + n.to_string());
  }
  if (m > NumericalSemigroup::kMaxMultiplicity) {
    throw Error(ErrorKind::OutOfRange, "modulus " + std::to_string(m) + " too large");
  }
  auto set = detail::residue_minima(n.atoms(), m);
  std::sort(set.begin(), set.end());
  return set;
}

struct GapData {
  std::int64_t frobenius = -1;
  std::vector<std::int64_t> gaps;
};

inline GapData gap_data(const NumericalSemigroup& n, const Limits& limits = {}) {
  GapData out;
  out.frobenius = n.frobenius();
  const std::int64_t m = n.multiplicity();
  const auto& table = n.apery_table();
  std::int64_t genus = 0;
  for (std::int64_t r = 0; r < m; ++r) genus += (table[static_cast<std::size_t>(r)] - r) / m;
  if (static_cast<std::uint64_t>(genus) > limits.max_factorizations) {
    throw Error(ErrorKind::LimitExceeded, "genus " + std::to_string(genus) + " exceeds limit");
  }
  for (std::int64_t r = 0; r < m; ++r) {
    for (std::int64_t x = r; x < table[static_cast<std::size_t>(r)]; x += m) out.gaps.push_back(x);
  }
  std::sort(out.gaps.begin(), out.gaps.end());
  return out;
}

/// Coefficient tuple over the atoms of a numerical semigroup.
struct Factorization {
  std::vector<std::int64_t> coefficients;

  std::int64_t length() const {
    return std::accumulate(coefficients.begin(), coefficients.end(), std::int64_t{0});
  }
  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](auto c) { return c == 0; });
  }
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(coefficients[i]);
    }
    return out + ")";
  }
  friend auto operator<=>(const Factorization&, const Factorization&) = default;
};

inline std::int64_t evaluate_factorization(const NumericalSemigroup& n, const Factorization& z) {
  if (z.coefficients.size() != n.atoms().size()) {
    throw Error(ErrorKind::ArityMismatch, "factorization " + z.to_string() + " has " +
                                              std::to_string(z.coefficients.size()) +
                                              " entries, semigroup has " +
                                              std::to_string(n.atoms().size()) + " atoms");
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < z.coefficients.size(); ++i) sum += z.coefficients[i] * n.atoms()[i];
  return sum;
}

/// Z(x) in ascending lexicographic order; Z(0) is the zero tuple and Z(x) is
/// empty exactly when x is not in N.
inline std::vector<Factorization> factorizations(const NumericalSemigroup& n, std::int64_t x,
                                                 const Limits& limits = {}) {
  std::vector<Factorization> out;
  if (x < 0) return out;
  CoinSearch<std::int64_t> search(n.atoms());
  search.for_each(x, [&](const std::vector<std::int64_t>& c) {
    if (out.size() >= limits.max_factorizations) {
      throw Error(ErrorKind::LimitExceeded, "more than " +
                                                std::to_string(limits.max_factorizations) +
                                                " factorizations of " + std::to_string(x));
    }
    out.push_back(Factorization{c});
    return true;
  });
  return out;
}

/// |Z(x)|, counting no further than `cap`.
inline std::size_t factorization_count(const NumericalSemigroup& n, std::int64_t x,
                                       std::size_t cap) {
  if (x < 0) return 0;
  return CoinSearch<std::int64_t>(n.atoms()).count(x, cap);
}

inline std::vector<std::int64_t> length_set(const NumericalSemigroup& n, std::int64_t x,
                                            const Limits& limits = {}) {
  std::set<std::int64_t> lengths;
  for (const auto& z : factorizations(n, x, limits)) lengths.insert(z.length());
  return {lengths.begin(), lengths.end()};
}

inline Factorization factorization_gcd(const Factorization& a, const Factorization& b) {
  if (a.coefficients.size() != b.coefficients.size()) {
    throw Error(ErrorKind::ArityMismatch, a.to_string() + " vs " + b.to_string());
  }
  Factorization out;
  out.coefficients.resize(a.coefficients.size());
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    out.coefficients[i] = std::min(a.coefficients[i], b.coefficients[i]);
  }
  return out;
}

/// Vertices Z(x); an edge joins two factorizations sharing an atom.
struct FactorizationGraph {
  std::int64_t element = 0;
  std::vector<Factorization> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t component_count() const {
    std::vector<std::size_t> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    std::size_t components = vertices.size();
    for (auto [a, b] : edges) {
      auto ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    return components;
  }

  bool is_connected() const { return component_count() <= 1; }

  std::string to_dot() const {
    std::ostringstream os;
    os << "graph nabla_" << element << " {\n";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      os << "  n" << i << " [label=\"" << vertices[i].to_string() << "\"];\n";
    }
    for (auto [a, b] : edges) os << "  n" << a << " -- n" << b << ";\n";
    os << "}\n";
    return os.str();
  }
};

inline FactorizationGraph factorization_graph(const NumericalSemigroup& n, std::int64_t x,
                                              const Limits& limits = {}) {
  FactorizationGraph graph;
  graph.element = x;
  graph.vertices = factorizations(n, x, limits);
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < graph.vertices.size(); ++j) {
      if (!factorization_gcd(graph.vertices[i], graph.vertices[j]).is_zero()) {
        graph.edges.emplace_back(i, j);
      }
    }
  }
  return graph;
}

namespace detail {

// |Z(x)| saturated at 2 for every 0 <= x <= bound (coin-change recurrence).
inline std::vector<std::uint8_t> capped_counts(const NumericalSemigroup& n, std::int64_t bound) {
  constexpr std::int64_t kMaxScan = std::int64_t{1} << 30;
  if (bound > kMaxScan) {
    throw Error(ErrorKind::LimitExceeded, "scan bound " + std::to_string(bound) + " too large");
  }
  std::vector<std::uint8_t> counts(static_cast<std::size_t>(bound + 1), 0);
  counts[0] = 1;
  for (std::int64_t a : n.atoms()) {
    for (std::int64_t v = a; v <= bound; ++v) {
      auto& slot = counts[static_cast<std::size_t>(v)];
      slot = static_cast<std::uint8_t>(std::min(2, slot + counts[static_cast<std::size_t>(v - a)]));
    }
  }
  return counts;
}

}  // namespace detail

/// Elements with a disconnected factorization graph. When x - a_i - a_j lies
/// in N for every pair of atoms, any two factorizations are joined through
/// one containing both a_i and a_j, so the scan stops at F(N) + 2 max(atoms).
inline std::vector<std::int64_t> betti_elements(const NumericalSemigroup& n,
                                                const Limits& limits = {}) {
  std::vector<std::int64_t> out;
  if (n.is_naturals()) return out;
  const std::int64_t bound = n.frobenius() + 2 * n.atoms().back();
  auto counts = detail::capped_counts(n, bound);
  for (std::int64_t x = 1; x <= bound; ++x) {
    if (counts[static_cast<std::size_t>(x)] < 2) continue;
    if (!factorization_graph(n, x, limits).is_connected()) out.push_back(x);
  }
  return out;
}

enum class MoleculeMode { enumerate, betti_filter };

inline bool is_molecule(const NumericalSemigroup& n, std::int64_t x) {
  return x > 0 && factorization_count(n, x, 2) == 1;
}

/// The finite set M(N) for N != N_0.
///
/// enumerate: counts factorizations up to F(N) + a_1 a_2. Beyond that bound
/// x - a_1 a_2 lies in N and a_1 a_2 = a_2 a_1 already has two factorizations.
/// betti_filter: keeps x with no Betti element dividing it, scanning up to
/// F(N) + min Betti(N).
inline std::vector<std::int64_t> molecules(const NumericalSemigroup& n,
                                           MoleculeMode mode = MoleculeMode::enumerate,
                                           const Limits& limits = {}) {
  if (n.is_naturals()) {
    throw Error(ErrorKind::InfiniteResult, "every nonzero element of N_0 is a molecule");
  }
  std::vector<std::int64_t> out;
  if (mode == MoleculeMode::enumerate) {
    const std::int64_t bound = n.frobenius() + n.atoms()[0] * n.atoms()[1];
    auto counts = detail::capped_counts(n, bound);
    for (std::int64_t x = 1; x <= bound; ++x) {
      if (counts[static_cast<std::size_t>(x)] == 1) out.push_back(x);
    }
    return out;
  }
  auto betti = betti_elements(n, limits);
  const std::int64_t bound = n.frobenius() + betti.front();
  for (std::int64_t x = 1; x <= bound; ++x) {
    if (!n.contains(x)) continue;
    bool divisible = std::any_of(betti.begin(), betti.end(),
                                 [&](std::int64_t b) { return n.contains(x - b); });
    if (!divisible) out.push_back(x);
  }
  return out;
}

/// Closed form for <p, q>: { m p + n q : 0 <= m < q, 0 <= n < p, (m, n) != (0, 0) }.
inline std::vector<std::int64_t> molecules_dim2(std::int64_t p, std::int64_t q) {
  if (p < 2 || q <= p || std::gcd(p, q) != 1) {
    throw Error(ErrorKind::InvalidPair, "need 2 <= p < q with gcd(p, q) = 1, got (" +
                                            std::to_string(p) + ", " + std::to_string(q) + ")");
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(p * q - 1));
  for (std::int64_t m = 0; m < q; ++m) {
    for (std::int64_t k = 0; k < p; ++k) {
      if (m == 0 && k == 0) continue;
      out.push_back(m * p + k * q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// <n-2, n-1, ..., 2(n-2)-1>, which has exactly n molecules.
inline NumericalSemigroup interval_semigroup(std::int64_t n) {
  if (n < 5) throw Error(ErrorKind::OutOfRange, "interval construction needs n >= 5");
  std::vector<std::int64_t> gens;
  for (std::int64_t g = n - 2; g <= 2 * (n - 2) - 1; ++g) gens.push_back(g);
  return NumericalSemigroup::from_generators(std::move(gens));
}

}  // namespace molekul
