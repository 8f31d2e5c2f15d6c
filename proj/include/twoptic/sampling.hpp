#pragma once

#include <random>

#include "twoptic/lens.hpp"
#include "twoptic/optic.hpp"
#include "twoptic/two_optic.hpp"

namespace twoptic {

using Rng = std::mt19937_64;

/// Uniform-enough index in [0, n); plain modulo keeps streams identical
/// across standard libraries.
inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

struct SignatureShape {
  std::size_t min_sorts = 1;
  std::size_t max_sorts = 3;
  std::uint32_t min_carrier = 2;
  std::uint32_t max_carrier = 3;
  std::size_t generators = 4;
  bool multi_output = true;
};

/// Finite sorts S0.., a constant k_Si : 1 -> Si per sort, and random
/// generators g0.. with random tables.
Signature random_signature(Rng& rng, const SignatureShape& shape = {});

/// Same presentation, fresh random tables for every table generator, sized
/// for the current carriers.
Signature reinterpret(Rng& rng, const Signature& sig);

Object random_object(Rng& rng, const Signature& sig, std::size_t min_size, std::size_t max_size);
Boundary random_boundary(Rng& rng, const Signature& sig, std::size_t min_size = 1, std::size_t max_size = 2);

/// A term dom -> cod applying about `steps` generators to earlier wires.
/// Output sorts with no available wire are filled by a constant generator;
/// throws std::invalid_argument if the signature has none for that sort.
Morphism random_morphism(Rng& rng, const Signature& sig, const Object& dom, const Object& cod, std::size_t steps);

/// A different term with the same canonical form, built from random
/// applications of the cartesian laws.
Morphism equivalent_variant(Rng& rng, const Morphism& f, std::size_t rewrites);

Lens random_lens(Rng& rng, const Signature& sig, const Boundary& dom, const Boundary& cod, std::size_t steps);
Optic random_optic(Rng& rng, const Signature& sig, const Boundary& dom, const Boundary& cod, std::size_t steps);

/// A chain of composable random lenses over random boundaries.
std::vector<Lens> random_lens_chain(Rng& rng, const Signature& sig, std::size_t length, std::size_t steps);

/// o1 = (M1, fw, (r*B');bw) and o2 = (M2, fw;(r*B), bw): valid by construction, checked anyway.
TwoCell random_valid_cell(Rng& rng, const Signature& sig, const Boundary& dom, const Boundary& cod, std::size_t steps);

} // namespace twoptic
