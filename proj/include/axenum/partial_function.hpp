#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "axenum/coding.hpp"

namespace axenum {

// Which columns a restriction keeps.
enum class ColumnBand { below, at_or_above, at };

// A finite partial 0/1-valued function on positions.  Used for axiom
// conditions, restraint guesses, and finite binary strings (where the domain
// is an initial segment of omega).
class FinitePartialFunction {
 public:
  using Map = std::map<nat, unsigned char>;

  FinitePartialFunction() = default;
  FinitePartialFunction(std::initializer_list<std::pair<nat, int>> entries) {
    for (auto [pos, bit] : entries) define(pos, bit != 0);
  }

  void define(nat pos, bool bit) { entries_[pos] = bit ? 1 : 0; }

  std::optional<bool> value(nat pos) const {
    auto it = entries_.find(pos);
    if (it == entries_.end()) return std::nullopt;
    return it->second != 0;
  }

  bool defined(nat pos) const { return entries_.count(pos) != 0; }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  // 1 + max of the domain; 0 for the empty function.
  nat length() const {
    if (entries_.empty()) return 0;
    return entries_.rbegin()->first + 1;
  }

  bool compatible_with(const FinitePartialFunction& other) const {
    const auto& small = size() <= other.size() ? *this : other;
    const auto& large = size() <= other.size() ? other : *this;
    for (const auto& [pos, bit] : small.entries_) {
      auto it = large.entries_.find(pos);
      if (it != large.entries_.end() && it->second != bit) return false;
    }
    return true;
  }

  // True when every entry of other is an entry of this.
  bool extends(const FinitePartialFunction& other) const {
    for (const auto& [pos, bit] : other.entries_) {
      auto it = entries_.find(pos);
      if (it == entries_.end() || it->second != bit) return false;
    }
    return true;
  }

  FinitePartialFunction restricted(ColumnBand band, nat l) const {
    FinitePartialFunction out;
    for (const auto& [pos, bit] : entries_) {
      nat col = column_of(pos);
      bool keep = false;
      switch (band) {
        case ColumnBand::below: keep = col < l; break;
        case ColumnBand::at_or_above: keep = col >= l; break;
        case ColumnBand::at: keep = col == l; break;
      }
      if (keep) out.entries_[pos] = bit;
    }
    return out;
  }

  FinitePartialFunction union_with(const FinitePartialFunction& other) const {
    FinitePartialFunction out = *this;
    for (const auto& [pos, bit] : other.entries_) {
      auto [it, inserted] = out.entries_.emplace(pos, bit);
      if (!inserted && it->second != bit)
        throw std::invalid_argument("union of incompatible partial functions");
    }
    return out;
  }

  auto operator<=>(const FinitePartialFunction&) const = default;

 private:
  Map entries_;
};

inline bool compatible(const FinitePartialFunction& f, const FinitePartialFunction& g) {
  return f.compatible_with(g);
}

inline FinitePartialFunction restrict_columns(const FinitePartialFunction& f,
                                              ColumnBand band, nat l) {
  return f.restricted(band, l);
}

}  // namespace axenum
