#pragma once

#include <functional>
#include <vector>

#include "twoptic/evaluate.hpp"
#include "twoptic/morphism.hpp"

namespace twoptic {

/// A pair (X, X') of forward and backward objects.
struct Boundary {
  Object fwd;
  Object bwd;

  friend bool operator==(const Boundary&, const Boundary&) = default;
};

/// get : A -> B, put : A*B' -> A'. No lens laws are assumed.
struct Lens {
  Boundary dom;
  Boundary cod;
  Morphism get;
  Morphism put;
};

/// Infers the boundaries: A = dom(get), B = cod(get), B' = dom(put) after A,
/// A' = cod(put). Throws TypeError if dom(put) does not start with A.
Lens make_lens(Morphism get, Morphism put);

/// get = id(A), put = pi2[A,A'].
Lens lens_id(const Boundary& b);

/// get = get1;get2, put = (graph(get1)*C');(A*put2);put1.
Lens lens_compose(const Lens& l1, const Lens& l2);

/// ((l1;l2);l3);... and l1;(l2;(l3;...)).
Lens fold_left(const std::vector<Lens>& chain);
Lens fold_right(const std::vector<Lens>& chain);

/// Boundaries equal and both components equal in the free cartesian category.
bool lens_equal(const Lens& a, const Lens& b);

/// The outside world between the passes: turns an output B into a response B'.
using Environment = std::function<Tuple(const Tuple&)>;

Environment identity_env();
Environment constant_env(Tuple response);
/// Applies a signature generator B -> B' (not counted in the executor's report).
Environment generator_env(const Signature& sig, GenId gen);

struct ExecResult {
  Tuple b;
  Tuple a_prime;
  CostReport cost;
};

/// Runs get, hands b to the environment, then runs put on (a, env(b)). The
/// input a is the only state held across the passes; keeping it costs one
/// copy of A.
ExecResult lens_exec(const Lens& l, const Tuple& a, const Environment& env, const Signature& sig);

} // namespace twoptic
