#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "twoptic/morphism.hpp"
#include "twoptic/signature.hpp"

namespace twoptic {

/// Instrumentation of one execution. Generator applications are counted by
/// name; copies, discards, swaps and projections cost no generator
/// evaluation but are tallied separately (copies also per copied object).
struct CostReport {
  std::map<std::string, std::size_t> generator_counts;
  std::size_t copies = 0;
  std::map<std::string, std::size_t> copies_by_object;
  std::size_t structural_ops = 0;
  std::size_t peak_residual_slots = 0;
  std::size_t peak_residual_bytes = 0;

  std::size_t generator_evaluations() const;
  std::size_t evaluations_of(const std::function<bool(const std::string&)>& pred) const;
  std::size_t count(const std::string& generator) const;
  void merge(const CostReport& other);
};

/// Upper bound on the input space an exhaustive check will enumerate.
inline constexpr std::uint64_t max_exhaustive_inputs = 1'000'000;

/// Throws CarrierError unless `values` is a well-typed element of `o`.
void check_tuple(const Object& o, const Tuple& values, const Signature& sig);

Tuple evaluate(const Morphism& f, const Tuple& input, const Signature& sig, CostReport& cost);
Tuple evaluate(const Morphism& f, const Tuple& input, const Signature& sig);

/// Calls `visit` on every element of a finite object, in mixed-radix order
/// (first wire most significant). Throws UnsupportedInterpretation for real
/// sorts or more than max_exhaustive_inputs elements.
void for_each_input(const Object& o, const Signature& sig, const std::function<void(const Tuple&)>& visit);

/// Exhaustive extensional comparison under the signature's interpretation.
bool eq_extensional(const Morphism& f, const Morphism& g, const Signature& sig);
/// First input (in enumeration order) on which f and g differ.
std::optional<Tuple> find_counterexample(const Morphism& f, const Morphism& g, const Signature& sig);

bool values_close(const Tuple& a, const Tuple& b, double abs_tol);

} // namespace twoptic
