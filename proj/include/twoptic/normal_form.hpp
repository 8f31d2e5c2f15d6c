#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "twoptic/morphism.hpp"

namespace twoptic {

struct CfTree;
using CfTreePtr = std::shared_ptr<const CfTree>;

/// A node of a canonical term: either an input wire of the domain, or one
/// output of a generator applied to an argument list.
struct CfTree {
  bool is_input = true;
  std::uint32_t index = 0;  // input wire, or generator output index
  GenId gen = 0;
  std::vector<CfTreePtr> args;
  std::size_t hash = 0;
  std::size_t occurrences = 0;  // generator nodes in the expanded tree

  static CfTreePtr input(std::uint32_t wire);
  static CfTreePtr apply(GenId gen, std::uint32_t output, std::vector<CfTreePtr> args);
};

bool equal_trees(const CfTreePtr& a, const CfTreePtr& b);

/// Decision procedure for equality in the free cartesian category: every
/// morphism X -> Y is a tuple of terms, one per output wire, whose leaves are
/// input wires. Copies are duplicated, discarded wires pruned, and swaps and
/// projections resolved into wire indices.
struct CanonicalForm {
  Object dom;
  Object cod;
  std::vector<CfTreePtr> outputs;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b);
  std::size_t hash() const noexcept;

  /// Generator occurrences over all output trees, counting duplicates.
  std::size_t occurrences() const;
  std::size_t occurrences(const std::function<bool(GenId)>& pred) const;
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& cf) const noexcept { return cf.hash(); }
};

CanonicalForm normalize(const Morphism& f);

/// Canonical form of `g` after `f`, by substitution (same result as normalize(f ; g)).
CanonicalForm compose(const CanonicalForm& f, const CanonicalForm& g);
CanonicalForm tensor(const CanonicalForm& f, const CanonicalForm& g);

/// True iff f and g are equal morphisms of the free cartesian category.
bool equal_morphisms(const Morphism& f, const Morphism& g);

/// Rebuilds a term with the given canonical form.
Morphism read_back(const CanonicalForm& cf, const Signature& sig);

/// "[f(x0), g.1(x0, x1)]"; multi-output generators show the output index.
std::string to_string(const CanonicalForm& cf, const Signature& sig);
std::string to_string(const CfTreePtr& t, const Signature& sig);

/// One step of a string diagram read top to bottom: `atom` with identity
/// wires `left` and `right` beside it.
struct Layer {
  Object left;
  Morphism atom;
  Object right;
};

/// Serializes a term modulo the strict monoidal axioms only: associativity and
/// units of ';' and '*', identities dropped, and a tensor f*g read as f beside
/// identities, then g. Two terms with equal flattenings are equal in any strict
/// monoidal category, with no use of copy/discard naturality.
std::vector<Layer> flatten(const Morphism& f);
bool same_flattening(const Morphism& f, const Morphism& g);
std::string flattening_key(const Morphism& f);

} // namespace twoptic
