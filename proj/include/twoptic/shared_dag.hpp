#pragma once

#include <functional>
#include <vector>

#include "twoptic/evaluate.hpp"
#include "twoptic/normal_form.hpp"

namespace twoptic {

/// A wire in a SharedDag: an input of the domain, or output `index` of node `node`.
struct DagPort {
  bool is_input = true;
  std::size_t node = 0;
  std::uint32_t index = 0;

  friend bool operator==(const DagPort&, const DagPort&) = default;
};

struct DagNode {
  GenId gen = 0;
  std::vector<DagPort> args;
};

/// Hash-consed generator applications in topological order. Fan-out is
/// explicit: a node used twice is still evaluated once.
struct SharedDag {
  Object dom;
  Object cod;
  std::vector<DagNode> nodes;
  std::vector<DagPort> outputs;

  std::size_t count_nodes(const std::function<bool(GenId)>& pred) const;
};

/// Copy-naturality pass: Δ;(h*h) becomes h;Δ everywhere, by hash-consing the
/// canonical form. No two nodes share (generator, arguments).
SharedDag share(const Morphism& f);
SharedDag share(const CanonicalForm& cf);

/// Each node is evaluated once and counted once.
Tuple evaluate(const SharedDag& dag, const Tuple& input, const Signature& sig, CostReport& cost);
Tuple evaluate(const SharedDag& dag, const Tuple& input, const Signature& sig);

} // namespace twoptic
