#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twoptic/object.hpp"
#include "twoptic/signature.hpp"

namespace twoptic {

enum class Kind : std::uint8_t {
  generator,
  identity,
  sequence,
  tensor,
  copy,
  discard,
  swap,
  proj1,
  proj2,
};

/// A term of the free cartesian category, typed at construction.
/// Immutable; copies share the underlying tree.
class Morphism {
public:
  static Morphism gen(const Signature& sig, GenId id);
  static Morphism gen(GenId id, Object dom, Object cod);
  static Morphism id(Object a);
  /// A -> A*A
  static Morphism copy(Object a);
  /// A -> 1
  static Morphism discard(Object a);
  /// A*B -> B*A
  static Morphism swap(Object a, Object b);
  /// A*B -> A
  static Morphism proj1(Object a, Object b);
  /// A*B -> B
  static Morphism proj2(Object a, Object b);

  Kind kind() const noexcept;
  const Object& dom() const noexcept;
  const Object& cod() const noexcept;

  /// Generator id; only for Kind::generator.
  GenId generator() const;
  /// Children of sequence / tensor nodes.
  Morphism left() const;
  Morphism right() const;
  /// Object parameters of structural nodes (copy/discard/identity use `first`).
  const Object& first() const;
  const Object& second() const;

  /// Number of nodes in the term tree.
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;

  friend Morphism seq(const Morphism& f, const Morphism& g);
  friend Morphism ten(const Morphism& f, const Morphism& g);

  /// Structural (syntactic) equality of terms.
  friend bool same_term(const Morphism& f, const Morphism& g);

private:
  struct Node;
  static Morphism make(Node node);
  explicit Morphism(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// f ; g. Throws TypeError unless cod(f) = dom(g).
Morphism seq(const Morphism& f, const Morphism& g);
Morphism seq(std::initializer_list<Morphism> fs);
/// f * g, parallel composition.
Morphism ten(const Morphism& f, const Morphism& g);

/// Copy A then apply f to the second copy: A -> A*B.
Morphism graph(const Morphism& f);
/// Copy A then apply f and g side by side: A -> B*C.
Morphism pairing(const Morphism& f, const Morphism& g);
/// Structural map A -> (A[w0], A[w1], ...), built from copies, discards and projections.
Morphism select(const Object& a, const std::vector<std::size_t>& wires);

/// Counts generator nodes in the term tree (syntactic occurrences).
std::size_t count_generators(const Morphism& f);
std::size_t count_generators(const Morphism& f, GenId id);

/// Renders in the CLI expression syntax (`;`, `*`, `copy[A]`, ...).
std::string to_string(const Morphism& f, const Signature& sig);

} // namespace twoptic
