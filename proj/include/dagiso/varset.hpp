#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <dagiso/errors.hpp>

namespace dagiso {

/// Dense variable index, 0..|U|-1 in declaration order.
using VarId = int;

/// Set of variables packed into one machine word. All set algebra of the
/// engine (statement sides, separators, adjacency rows) runs on these masks,
/// which caps the universe at 64 variables.
class VarSet {
 public:
  static constexpr int kMaxVars = 64;

  constexpr VarSet() = default;

  static constexpr VarSet from_bits(std::uint64_t bits) {
    VarSet s;
    s.bits_ = bits;
    return s;
  }

  static VarSet single(VarId v) {
    check_range(v);
    return from_bits(std::uint64_t{1} << v);
  }

  static VarSet of(std::initializer_list<VarId> vars) {
    VarSet s;
    for (VarId v : vars) s = s.with(v);
    return s;
  }

  bool contains(VarId v) const { return v >= 0 && v < kMaxVars && ((bits_ >> v) & 1u); }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  std::uint64_t bits() const { return bits_; }

  VarSet with(VarId v) const {
    check_range(v);
    return from_bits(bits_ | (std::uint64_t{1} << v));
  }

  VarSet without(VarId v) const {
    check_range(v);
    return from_bits(bits_ & ~(std::uint64_t{1} << v));
  }

  bool intersects(VarSet other) const { return (bits_ & other.bits_) != 0; }
  bool subset_of(VarSet other) const { return (bits_ & ~other.bits_) == 0; }

  /// Smallest member; only valid on a nonempty set.
  VarId lowest() const { return std::countr_zero(bits_); }

  std::vector<VarId> to_vector() const {
    std::vector<VarId> out;
    out.reserve(size());
    for (std::uint64_t m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend VarSet operator|(VarSet a, VarSet b) { return from_bits(a.bits_ | b.bits_); }
  friend VarSet operator&(VarSet a, VarSet b) { return from_bits(a.bits_ & b.bits_); }
  /// Set difference.
  friend VarSet operator-(VarSet a, VarSet b) { return from_bits(a.bits_ & ~b.bits_); }
  friend bool operator==(VarSet a, VarSet b) = default;

  /// Total order used for every canonical form: lexicographic on the
  /// ascending element sequences, so {a,c} < {b} and {a} < {a,b}.
  static bool lex_less(VarSet a, VarSet b) {
    std::uint64_t x = a.bits_, y = b.bits_;
    while (x != 0 && y != 0) {
      int i = std::countr_zero(x);
      int j = std::countr_zero(y);
      if (i != j) return i < j;
      x &= x - 1;
      y &= y - 1;
    }
    return x == 0 && y != 0;
  }

 private:
  static void check_range(VarId v) {
    if (v < 0 || v >= kMaxVars)
      throw UnknownVariable("variable index " + std::to_string(v) + " out of range");
  }

  std::uint64_t bits_ = 0;
};

/// The declared variables. Index order is declaration order and fixes all
/// canonical forms, so results are reproducible across runs.
class Universe {
 public:
  explicit Universe(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw Error("universe must declare at least one variable");
    if (static_cast<int>(names_.size()) > VarSet::kMaxVars)
      throw UniverseTooLarge("universe exceeds " + std::to_string(VarSet::kMaxVars) +
                             " variables");
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
      const std::string& name = names_[i];
      if (name.empty() || !valid_name(name))
        throw Error("invalid variable name '" + name + "'");
      if (!index_.emplace(name, i).second)
        throw Error("duplicate variable name '" + name + "'");
    }
  }

  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(VarId v) const {
    if (v < 0 || v >= size())
      throw UnknownVariable("variable index " + std::to_string(v) + " out of range");
    return names_[v];
  }

  const std::vector<std::string>& names() const { return names_; }

  std::optional<VarId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VarId id(std::string_view name) const {
    auto v = find(name);
    if (!v) throw UnknownVariable("unknown variable '" + std::string(name) + "'");
    return *v;
  }

  VarSet all() const {
    if (size() == VarSet::kMaxVars) return VarSet::from_bits(~std::uint64_t{0});
    return VarSet::from_bits((std::uint64_t{1} << size()) - 1);
  }

  /// Renders a set as "{a,c}"; "{}" when empty.
  std::string format(VarSet set) const {
    std::string out = "{";
    bool first = true;
    for (VarId v : set.to_vector()) {
      if (!first) out += ",";
      out += name(v);
      first = false;
    }
    out += "}";
    return out;
  }

  friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

 private:
  static bool valid_name(const std::string& name) {
    for (char c : name) {
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '_';
      if (!ok) return false;
    }
    return true;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
};

/// Universe named a, b, c, ... for index-based callers (oracles, tests).
inline Universe default_universe(int n) {
  if (n < 1 || n > 26) throw Error("default universe supports 1..26 variables");
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return Universe(std::move(names));
}

}  // namespace dagiso
