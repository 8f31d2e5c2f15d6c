#include <gtest/gtest.h>

#include "support.hpp"
#include "twoptic/bridge.hpp"
#include "twoptic/cost.hpp"
#include "twoptic/errors.hpp"
#include "twoptic/sampling.hpp"

using namespace twoptic;
using namespace twoptic::testing;

TEST(Optic, MakeOpticInfersBoundaries) {
  const Signature sig = small_signature();
  const Object a = sig.object({"A"}), b = sig.object({"B"});
  const Optic o = make_optic(a, graph(Morphism::gen(sig, sig.generator_id("f"))), Morphism::proj1(a, b));
  EXPECT_EQ(o.cod.fwd, b);
  EXPECT_EQ(o.cod.bwd, b);
  EXPECT_EQ(o.dom.bwd, a);
  EXPECT_THROW(make_optic(b, Morphism::id(a), Morphism::id(a)), TypeError);
}

TEST(Optic, IdentityHasUnitResidual) {
  Rng rng(4);
  const Signature sig = random_signature(rng);
  const Boundary a = random_boundary(rng, sig), b = random_boundary(rng, sig);
  const Optic o = random_optic(rng, sig, a, b, 2);
  const Optic left = optic_compose(optic_id(a), o);
  EXPECT_EQ(left.residual, o.residual);
  EXPECT_TRUE(same_flattening(left.fw, o.fw));
  EXPECT_TRUE(same_flattening(left.bw, o.bw));
  const Optic right = optic_compose(o, optic_id(b));
  EXPECT_TRUE(same_flattening(right.fw, o.fw));
  EXPECT_TRUE(same_flattening(right.bw, o.bw));
}

TEST(Optic, IdentityExecutesTheEnvironmentOnly) {
  const Signature sig = unary_signature();
  const Object a = sig.object({"A"});
  const ExecResult r = optic_exec(optic_id(Boundary{a, a}), Tuple{std::uint32_t{0}}, generator_env(sig, sig.generator_id("n")), sig);
  EXPECT_EQ(r.a_prime, (Tuple{std::uint32_t{1}}));
  EXPECT_EQ(r.cost.peak_residual_slots, 0u);
  EXPECT_EQ(r.cost.generator_evaluations(), 0u);
}

TEST(Optic, ResidualsConcatenate) {
  const Signature sig = small_signature();
  const Object a = sig.object({"A"}), b = sig.object({"B"}), c = sig.object({"C"});
  const Optic o1 = make_optic(a, graph(Morphism::gen(sig, sig.generator_id("f"))), Morphism::proj1(a, b));
  const Optic o2 = make_optic(b, graph(Morphism::gen(sig, sig.generator_id("g"))), Morphism::proj1(b, c));
  const Optic o3 = make_optic(c, Morphism::copy(c), Morphism::proj1(c, c));
  EXPECT_EQ(optic_compose(o1, o2).residual, a * b);
  const Optic left = optic_compose(optic_compose(o1, o2), o3);
  const Optic right = optic_compose(o1, optic_compose(o2, o3));
  EXPECT_EQ(left.residual, right.residual);
  EXPECT_FALSE(same_term(left.fw, right.fw));
  EXPECT_TRUE(same_flattening(left.fw, right.fw));
  EXPECT_TRUE(same_flattening(left.bw, right.bw));
}

TEST(Optic, CompositionIsStrictlyAssociative) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Signature sig = random_signature(rng);
    std::vector<Boundary> bs;
    for (int k = 0; k < 4; ++k) bs.push_back(random_boundary(rng, sig));
    const Optic o1 = random_optic(rng, sig, bs[0], bs[1], 2);
    const Optic o2 = random_optic(rng, sig, bs[1], bs[2], 2);
    const Optic o3 = random_optic(rng, sig, bs[2], bs[3], 2);
    const Optic left = optic_compose(optic_compose(o1, o2), o3);
    const Optic right = optic_compose(o1, optic_compose(o2, o3));
    EXPECT_EQ(left.residual, right.residual);
    EXPECT_TRUE(same_flattening(left.fw, right.fw));
    EXPECT_TRUE(same_flattening(left.bw, right.bw));
  }
}

TEST(Optic, ReifiedComposites) {
  const Chain c = build_chain(2, Interp::finite, 0);
  const Optic two = optic_compose(reify(c.lenses[0]), reify(c.lenses[1]));
  EXPECT_EQ(two.residual, c.sig.object({"X0", "X1"}));
  EXPECT_EQ(reify(lens_compose(c.lenses[0], c.lenses[1])).residual, c.sig.object({"X0"}));
}

TEST(Optic, ChainCountsAndSlots) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const Chain c = build_chain(n, Interp::finite, 1);
    std::vector<Optic> parts;
    for (const Lens& l : c.lenses) parts.push_back(reify(l));
    const Optic o = fold_left(parts);
    for (const Tuple& a : c.inputs) {
      const ExecResult r = optic_exec(o, a, chain_env(c), c.sig);
      EXPECT_EQ(r.cost.evaluations_of(is_get), n);
      EXPECT_EQ(r.cost.peak_residual_slots, n);
      EXPECT_EQ(r.cost.generator_evaluations(), count_generators(o.fw) + count_generators(o.bw));
      const ExecResult l = lens_exec(fold_left(c.lenses), a, chain_env(c), c.sig);
      EXPECT_EQ(r.b, l.b);
      EXPECT_EQ(r.a_prime, l.a_prime);
    }
  }
}

TEST(Optic, ExecutorAgreesWithErasedLens) {
  Rng rng(6);
  for (int i = 0; i < 40; ++i) {
    const Signature sig = random_signature(rng);
    std::vector<Boundary> bs;
    for (int k = 0; k < 3; ++k) bs.push_back(random_boundary(rng, sig));
    const Optic o = optic_compose(random_optic(rng, sig, bs[0], bs[1], 2), random_optic(rng, sig, bs[1], bs[2], 2));
    const Lens l = erase(o);
    const Morphism env = random_morphism(rng, sig, o.cod.fwd, o.cod.bwd, 1);
    const Environment e = [&](const Tuple& b) { return evaluate(env, b, sig); };
    for_each_input(o.dom.fwd, sig, [&](const Tuple& a) {
      const ExecResult x = optic_exec(o, a, e, sig);
      const ExecResult y = lens_exec(l, a, e, sig);
      EXPECT_EQ(x.b, y.b);
      EXPECT_EQ(x.a_prime, y.a_prime);
      EXPECT_EQ(x.cost.peak_residual_slots, o.residual.size());
    });
  }
}
