#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "molekul/error.hpp"
#include "molekul/primes.hpp"

namespace molekul {

/// A finitely described set of primes: an explicit list, every prime from a
/// lower bound on, or the primes in one residue class from a lower bound on.
/// The last two may exclude finitely many primes.
class PrimeSetDescriptor {
 public:
  enum class Kind { list, all_from, residue_class };

  static PrimeSetDescriptor list(std::vector<std::uint64_t> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes) {
      if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    }
    PrimeSetDescriptor d;
    d.kind_ = Kind::list;
    d.list_ = std::move(primes);
    return d;
  }

  static PrimeSetDescriptor all_from(std::uint64_t lower, std::vector<std::uint64_t> exclude = {}) {
    PrimeSetDescriptor d;
    d.kind_ = Kind::all_from;
    d.lower_ = lower;
    d.exclude_ = {exclude.begin(), exclude.end()};
    return d;
  }

  static PrimeSetDescriptor residue_class(std::uint64_t residue, std::uint64_t modulus,
                                          std::uint64_t lower,
                                          std::vector<std::uint64_t> exclude = {}) {
    if (modulus == 0) throw Error(ErrorKind::OutOfRange, "modulus must be positive");
    PrimeSetDescriptor d;
    d.kind_ = Kind::residue_class;
    d.modulus_ = modulus;
    d.residue_ = residue % modulus;
    d.lower_ = lower;
    d.exclude_ = {exclude.begin(), exclude.end()};
    return d;
  }

  Kind kind() const noexcept { return kind_; }

  bool contains(std::uint64_t p) const {
    switch (kind_) {
      case Kind::list:
        return std::binary_search(list_.begin(), list_.end(), p);
      case Kind::all_from:
        return p >= lower_ && !exclude_.contains(p) && is_prime(p);
      case Kind::residue_class:
        return p >= lower_ && p % modulus_ == residue_ && !exclude_.contains(p) && is_prime(p);
    }
    return false;
  }

  /// A residue class holds infinitely many primes iff it is coprime to its
  /// modulus (Dirichlet); otherwise it holds at most one.
  bool is_infinite() const {
    switch (kind_) {
      case Kind::list: return false;
      case Kind::all_from: return true;
      case Kind::residue_class: return std::gcd(residue_, modulus_) == 1;
    }
    return false;
  }

  bool is_empty() const { return !is_infinite() && members().empty(); }

  /// Every member; only for finite sets.
  std::vector<std::uint64_t> members() const {
    if (is_infinite()) throw Error(ErrorKind::InfiniteResult, to_string() + " is infinite");
    if (kind_ == Kind::list) return list_;
    std::uint64_t g = std::gcd(residue_, modulus_);
    if (g > 1 && contains(g)) return {g};
    return {};
  }

  /// Members <= bound, ascending.
  std::vector<std::uint64_t> members_up_to(std::uint64_t bound) const {
    if (!is_infinite()) {
      auto all = members();
      all.erase(std::upper_bound(all.begin(), all.end(), bound), all.end());
      return all;
    }
    std::vector<std::uint64_t> out;
    for (auto p : primes_up_to(bound)) {
      if (contains(p)) out.push_back(p);
    }
    return out;
  }

  /// Smallest member >= from, if any.
  std::optional<std::uint64_t> first_member_from(std::uint64_t from) const {
    if (!is_infinite()) {
      for (auto p : members()) {
        if (p >= from) return p;
      }
      return std::nullopt;
    }
    std::uint64_t p = std::max<std::uint64_t>({from, lower_, 2});
    while (!contains(p)) ++p;
    return p;
  }

  /// Smallest member outside `avoid`, if any.
  std::optional<std::uint64_t> first_member_not_in(const std::set<std::uint64_t>& avoid) const {
    std::uint64_t from = 0;
    while (auto p = first_member_from(from)) {
      if (!avoid.contains(*p)) return p;
      from = *p + 1;
    }
    return std::nullopt;
  }

  /// The `count` smallest members (fewer when the set is smaller).
  std::vector<std::uint64_t> first_members(std::size_t count) const {
    std::vector<std::uint64_t> out;
    std::uint64_t from = 0;
    while (out.size() < count) {
      auto p = first_member_from(from);
      if (!p) break;
      out.push_back(*p);
      from = *p + 1;
    }
    return out;
  }

  std::string to_string() const {
    auto join = [](const auto& values) {
      std::string s;
      for (auto v : values) {
        if (!s.empty()) s += ",";
        s += std::to_string(v);
      }
      return s;
    };
    std::string out;
    switch (kind_) {
      case Kind::list:
        return "list:" + join(list_);
      case Kind::all_from:
        out = "all:>=" + std::to_string(lower_);
        break;
      case Kind::residue_class:
        out = "mod:" + std::to_string(residue_) + "/" + std::to_string(modulus_) + ",>=" +
              std::to_string(lower_);
        break;
    }
    if (!exclude_.empty()) out += ",exclude:" + join(exclude_);
    return out;
  }

  /// `list:2,3,5` | `all:>=b[,exclude:p,q]` | `mod:r/m,>=b[,exclude:p,q]`
  static PrimeSetDescriptor parse(std::string_view text) {
    auto fail = [&](const std::string& why) {
      return Error(ErrorKind::ParseError, "prime set '" + std::string(text) + "': " + why);
    };
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw fail("missing ':'");
    auto head = text.substr(0, colon);
    std::vector<std::string_view> parts;
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      parts.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    auto number = [&](std::string_view s) -> std::uint64_t {
      try {
        return to_u64(parse_bigint(s));
      } catch (const Error&) {
        throw fail("bad number '" + std::string(s) + "'");
      }
    };
    if (head == "list") {
      std::vector<std::uint64_t> primes;
      for (auto part : parts) {
        if (!part.empty()) primes.push_back(number(part));
      }
      return list(std::move(primes));
    }
    std::size_t i = 0;
    std::uint64_t residue = 0, modulus = 1;
    if (head == "mod") {
      auto slash = parts[0].find('/');
      if (slash == std::string_view::npos) throw fail("expected r/m");
      residue = number(parts[0].substr(0, slash));
      modulus = number(parts[0].substr(slash + 1));
      if (modulus == 0) throw fail("modulus must be positive");
      i = 1;
    } else if (head != "all") {
      throw fail("unknown kind '" + std::string(head) + "'");
    }
    if (i >= parts.size() || parts[i].substr(0, 2) != ">=") throw fail("expected '>=<bound>'");
    std::uint64_t lower = number(parts[i].substr(2));
    ++i;
    std::vector<std::uint64_t> exclude;
    if (i < parts.size()) {
      if (parts[i].substr(0, 8) != "exclude:") throw fail("expected 'exclude:'");
      exclude.push_back(number(parts[i].substr(8)));
      for (++i; i < parts.size(); ++i) exclude.push_back(number(parts[i]));
    }
    return head == "all" ? all_from(lower, std::move(exclude))
                         : residue_class(residue, modulus, lower, std::move(exclude));
  }

  /// A prime lying in both sets, the smallest when found by scanning.
  friend std::optional<std::uint64_t> common_prime(const PrimeSetDescriptor& a,
                                                   const PrimeSetDescriptor& b) {
    if (!a.is_infinite() || !b.is_infinite()) {
      const auto& finite = a.is_infinite() ? b : a;
      const auto& other = a.is_infinite() ? a : b;
      for (auto p : finite.members()) {
        if (other.contains(p)) return p;
      }
      return std::nullopt;
    }
    if (a.kind_ == Kind::residue_class && b.kind_ == Kind::residue_class) {
      std::uint64_t g = std::gcd(a.modulus_, b.modulus_);
      if (a.residue_ % g != b.residue_ % g) return std::nullopt;
    }
    // Both infinite and compatible: the intersection is an infinite set of
    // primes, so the scan terminates.
    std::uint64_t p = std::max<std::uint64_t>({a.lower_, b.lower_, 2});
    while (!(a.contains(p) && b.contains(p))) ++p;
    return p;
  }

 private:
  PrimeSetDescriptor() = default;

  Kind kind_ = Kind::list;
  std::vector<std::uint64_t> list_;
  std::uint64_t lower_ = 0;
  std::uint64_t residue_ = 0;
  std::uint64_t modulus_ = 1;
  std::set<std::uint64_t> exclude_;
};

}  // namespace molekul
