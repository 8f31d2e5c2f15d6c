#pragma once

#include "twoptic/lens.hpp"

namespace twoptic {

/// A representative (M, fw, bw) with fw : A -> M*B and bw : M*B' -> A'.
/// Never quotiented.
struct Optic {
  Boundary dom;
  Boundary cod;
  Object residual;
  Morphism fw;
  Morphism bw;
};

/// Infers B from cod(fw) after M and B' from dom(bw) after M.
Optic make_optic(Object residual, Morphism fw, Morphism bw);

/// M = 1, fw = id(A), bw = id(A').
Optic optic_id(const Boundary& b);

/// M = M1*M2, fw = fw1;(M1*fw2), bw = (M1*bw2);bw1.
Optic optic_compose(const Optic& o1, const Optic& o2);

Optic fold_left(const std::vector<Optic>& chain);

/// Runs fw, holds the residual m, hands b to the environment, runs bw on (m, env(b)).
ExecResult optic_exec(const Optic& o, const Tuple& a, const Environment& env, const Signature& sig);

} // namespace twoptic
