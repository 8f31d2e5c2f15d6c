#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twoptic/object.hpp"

namespace twoptic {

struct FiniteCarrier {
  std::uint32_t size = 1;
  friend bool operator==(const FiniteCarrier&, const FiniteCarrier&) = default;
};

struct RealCarrier {
  std::uint32_t dimension = 1;
  friend bool operator==(const RealCarrier&, const RealCarrier&) = default;
};

using Carrier = std::variant<FiniteCarrier, RealCarrier>;

/// One wire's runtime value: an element index of a finite carrier, or a real vector.
using Value = std::variant<std::uint32_t, std::vector<double>>;
using Tuple = std::vector<Value>;

/// Total function between carrier tuples. Row index is the mixed-radix encoding
/// of the input tuple, first wire most significant.
struct FiniteTable {
  std::vector<std::vector<std::uint32_t>> rows;
};

/// A named real-vector primitive; `forward` maps the domain tuple to the codomain tuple.
struct RealPrimitive {
  std::string builtin;
  std::function<Tuple(const Tuple&)> forward;
};

/// A generator with no runtime meaning; usable symbolically only.
struct Opaque {};

using Semantics = std::variant<Opaque, FiniteTable, RealPrimitive>;

struct Sort {
  std::string name;
  Carrier carrier;
};

struct Generator {
  std::string name;
  Object dom;
  Object cod;
  Semantics semantics;
};

/// Sorts and generators presenting a free cartesian category, together with
/// their default interpretation. Alternative interpretations of the same
/// presentation are obtained with `with_semantics` / `with_carrier`; terms
/// only reference ids, so they evaluate under any of them.
class Signature {
public:
  SortId add_sort(std::string name, Carrier carrier);
  GenId add_generator(std::string name, Object dom, Object cod, Semantics semantics = Opaque{});

  const Sort& sort(SortId id) const { return sorts_.at(id); }
  const Generator& generator(GenId id) const { return generators_.at(id); }
  std::size_t sort_count() const noexcept { return sorts_.size(); }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }

  std::optional<SortId> find_sort(std::string_view name) const;
  std::optional<GenId> find_generator(std::string_view name) const;
  SortId sort_id(std::string_view name) const;
  GenId generator_id(std::string_view name) const;

  Object object(std::initializer_list<std::string_view> names) const;
  /// "A*B", or "1" for the unit.
  std::string render(const Object& o) const;

  bool is_finite(SortId id) const;
  bool all_finite(const Object& o) const;
  /// Number of input tuples of a finite object, saturating at `cap + 1`.
  std::uint64_t cardinality(const Object& o, std::uint64_t cap) const;
  /// Storage estimate: bytes per finite element (ceil(log2 n / 8), at least 1), 8 per real coordinate.
  std::size_t bytes(const Object& o) const;

  Signature with_semantics(GenId id, Semantics semantics) const;
  Signature with_carrier(SortId id, Carrier carrier) const;

private:
  void check_semantics(const Generator& g) const;

  std::vector<Sort> sorts_;
  std::vector<Generator> generators_;
  std::map<std::string, SortId, std::less<>> sort_index_;
  std::map<std::string, GenId, std::less<>> generator_index_;
};

/// Builds a real primitive from its textual name, e.g. "tanh_affine(0.5,0.1)".
/// Dimensions come from the generator's declared sorts.
RealPrimitive make_builtin(const Signature& sig, std::string_view spec, const Object& dom, const Object& cod);

} // namespace twoptic
