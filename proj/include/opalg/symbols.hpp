#pragma once

// Process-wide interning of generator letters and operator names.
//
// Both tables are append-only. A Symbol or Operator never changes after it is
// created, so the raw pointers handed out here are stable identities that can
// be shared freely between threads.

#include <compare>
#include <deque>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>

#include "opalg/errors.hpp"

namespace opalg {

/// A generator letter of Y, or the hole symbol of a star-word.
struct Symbol {
  std::string name;
  int tier;   // 0 = declared order, 1 = default (by name), 2 = hole
  int index;  // position inside the declared order (tier 0 only)

  std::strong_ordering operator<=>(const Symbol& other) const noexcept {
    if (auto c = tier <=> other.tier; c != 0) return c;
    if (auto c = index <=> other.index; c != 0) return c;
    return name.compare(other.name) <=> 0;
  }
};

/// A unary operator name with its precedence rank (greater rank = greater).
struct Operator {
  std::string name;
  int rank;

  std::strong_ordering operator<=>(const Operator& other) const noexcept {
    if (auto c = rank <=> other.rank; c != 0) return c;
    return name.compare(other.name) <=> 0;
  }
};

inline std::strong_ordering compare_symbols(const Symbol* a, const Symbol* b) noexcept {
  if (a == b) return std::strong_ordering::equal;
  return *a <=> *b;
}

inline std::strong_ordering compare_operators(const Operator* a, const Operator* b) noexcept {
  if (a == b) return std::strong_ordering::equal;
  return *a <=> *b;
}

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  /// Returns the letter named `name`, creating it on first use.
  const Symbol* intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    return intern_locked(name);
  }

  const Symbol* find(std::string_view name) const {
    std::lock_guard lock(mutex_);
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : it->second;
  }

  /// The hole symbol of star-words. It sorts above every generator.
  const Symbol* star() const noexcept { return star_; }

  /// Fixes an explicit ascending order for the listed generators. Letters that
  /// already exist must agree with the declaration.
  void declare_order(std::span<const std::string> names) {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto it = by_name_.find(names[i]);
      if (it != by_name_.end()) {
        if (it->second->tier != 0 || it->second->index != static_cast<int>(i))
          throw Error(ErrorCode::SymbolOrderConflict,
                      "generator '" + names[i] + "' was used before its order was declared");
        continue;
      }
      storage_.push_back(Symbol{names[i], 0, static_cast<int>(i)});
      by_name_.emplace(names[i], &storage_.back());
    }
  }

 private:
  SymbolTable() {
    storage_.push_back(Symbol{"[]", 2, 0});
    star_ = &storage_.back();
  }

  const Symbol* intern_locked(std::string_view name) {
    std::string key(name);
    if (auto it = by_name_.find(key); it != by_name_.end()) return it->second;
    storage_.push_back(Symbol{key, 1, 0});
    by_name_.emplace(std::move(key), &storage_.back());
    return &storage_.back();
  }

  mutable std::mutex mutex_;
  std::deque<Symbol> storage_;
  std::map<std::string, const Symbol*, std::less<>> by_name_;
  const Symbol* star_ = nullptr;
};

class OperatorTable {
 public:
  static OperatorTable& instance() {
    static OperatorTable table;
    return table;
  }

  const Operator* find(std::string_view name) const {
    std::lock_guard lock(mutex_);
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : it->second;
  }

  /// Registers an operator; redeclaring with another rank is an error.
  const Operator* declare(std::string_view name, int rank) {
    std::lock_guard lock(mutex_);
    std::string key(name);
    if (auto it = by_name_.find(key); it != by_name_.end()) {
      if (it->second->rank != rank)
        throw Error(ErrorCode::SymbolOrderConflict,
                    "operator '" + key + "' already declared with rank " +
                        std::to_string(it->second->rank));
      return it->second;
    }
    storage_.push_back(Operator{key, rank});
    by_name_.emplace(std::move(key), &storage_.back());
    return &storage_.back();
  }

 private:
  OperatorTable() {
    // d > p
    declare_unlocked("d", 1);
    declare_unlocked("p", 0);
  }

  void declare_unlocked(std::string name, int rank) {
    storage_.push_back(Operator{name, rank});
    by_name_.emplace(std::move(name), &storage_.back());
  }

  mutable std::mutex mutex_;
  std::deque<Operator> storage_;
  std::map<std::string, const Operator*, std::less<>> by_name_;
};

inline const Symbol* letter_symbol(std::string_view name) { return SymbolTable::instance().intern(name); }
inline const Symbol* star_symbol() { return SymbolTable::instance().star(); }

inline const Operator* op_d() {
  static const Operator* d = OperatorTable::instance().find("d");
  return d;
}
inline const Operator* op_p() {
  static const Operator* p = OperatorTable::instance().find("p");
  return p;
}

}  // namespace opalg
