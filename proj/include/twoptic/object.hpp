#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace twoptic {

using SortId = std::uint32_t;
using GenId = std::uint32_t;

/// An object of the strict cartesian category: a list of base sorts.
/// Tensor is concatenation, so associativity and unit laws hold on the nose.
class Object {
public:
  Object() = default;
  Object(std::initializer_list<SortId> sorts) : sorts_(sorts) {}
  explicit Object(std::vector<SortId> sorts) : sorts_(std::move(sorts)) {}

  static Object unit() { return Object{}; }

  std::size_t size() const noexcept { return sorts_.size(); }
  bool empty() const noexcept { return sorts_.empty(); }
  SortId operator[](std::size_t i) const { return sorts_[i]; }
  const std::vector<SortId>& sorts() const noexcept { return sorts_; }
  auto begin() const noexcept { return sorts_.begin(); }
  auto end() const noexcept { return sorts_.end(); }

  /// Sub-object of `count` sorts starting at `pos`.
  Object slice(std::size_t pos, std::size_t count) const;
  bool starts_with(const Object& prefix) const;

  friend Object operator*(const Object& a, const Object& b);
  friend bool operator==(const Object&, const Object&) = default;
  friend auto operator<=>(const Object&, const Object&) = default;

private:
  std::vector<SortId> sorts_;
};

struct ObjectHash {
  std::size_t operator()(const Object& o) const noexcept;
};

std::string debug_string(const Object& o);

} // namespace twoptic
