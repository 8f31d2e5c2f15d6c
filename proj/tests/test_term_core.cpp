#include <gtest/gtest.h>

#include <iostream>
#include <unordered_map>

#include "support.hpp"
#include "twoptic/enumerate.hpp"
#include "twoptic/errors.hpp"
#include "twoptic/sampling.hpp"
#include "twoptic/shared_dag.hpp"

using namespace twoptic;
using namespace twoptic::testing;

namespace {

Morphism gen(const Signature& sig, const char* name) { return Morphism::gen(sig, sig.generator_id(name)); }

}  // namespace

TEST(Object, TensorIsStrict) {
  const Object a{0}, b{1}, c{2, 0};
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * Object::unit(), a);
  EXPECT_EQ(Object::unit() * a, a);
  EXPECT_EQ((a * b * c).size(), 4u);
}

TEST(Compose, TypesAndErrors) {
  const Signature sig = small_signature();
  const Morphism f = gen(sig, "f"), g = gen(sig, "g");
  const Morphism fg = seq(f, g);
  EXPECT_EQ(fg.dom(), sig.object({"A"}));
  EXPECT_EQ(fg.cod(), sig.object({"C"}));
  EXPECT_TRUE(equal_morphisms(seq(Morphism::id(f.dom()), f), f));
  try {
    seq(f, f);
    FAIL() << "ill-typed composite accepted";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.expected(), sig.object({"B"}));
    EXPECT_EQ(e.actual(), sig.object({"A"}));
  }
}

TEST(Graph, OfIdentityIsCopy) {
  const Signature sig = small_signature();
  const Object a = sig.object({"A"});
  EXPECT_TRUE(equal_morphisms(graph(Morphism::id(a)), Morphism::copy(a)));
  const Morphism gf = graph(gen(sig, "f"));
  EXPECT_EQ(gf.dom(), a);
  EXPECT_EQ(gf.cod(), sig.object({"A", "B"}));
}

TEST(Graph, ProjectionLawsForEveryGeneratorAndRandomComposites) {
  Rng rng(11);
  std::vector<std::pair<Signature, Morphism>> cases;
  const Signature small = small_signature();
  for (GenId g = 0; g < small.generator_count(); ++g) cases.emplace_back(small, Morphism::gen(small, g));
  for (int sig_i = 0; sig_i < 4; ++sig_i) {
    const Signature sig = random_signature(rng);
    for (GenId g = 0; g < sig.generator_count(); ++g) cases.emplace_back(sig, Morphism::gen(sig, g));
    for (int k = 0; k < 25; ++k) {
      const Object a = random_object(rng, sig, 0, 2), b = random_object(rng, sig, 1, 2);
      cases.emplace_back(sig, random_morphism(rng, sig, a, b, 3));
    }
  }
  for (const auto& [sig, f] : cases) {
    const Morphism p1 = seq(graph(f), Morphism::proj1(f.dom(), f.cod()));
    const Morphism p2 = seq(graph(f), Morphism::proj2(f.dom(), f.cod()));
    EXPECT_TRUE(equal_morphisms(p1, Morphism::id(f.dom()))) << to_string(f, sig);
    EXPECT_TRUE(equal_morphisms(p2, f)) << to_string(f, sig);
    EXPECT_TRUE(eq_extensional(p1, Morphism::id(f.dom()), sig));
    EXPECT_TRUE(eq_extensional(p2, f, sig));
  }
}

TEST(Normalize, CopyNaturality) {
  const Signature sig = small_signature();
  const Morphism f = gen(sig, "f");
  const Object a = f.dom(), b = f.cod();
  EXPECT_EQ(normalize(seq(Morphism::copy(a), ten(f, f))), normalize(seq(f, Morphism::copy(b))));
  const Morphism s = gen(sig, "s");
  EXPECT_EQ(normalize(seq(Morphism::copy(a), ten(s, s))), normalize(seq(s, Morphism::copy(s.cod()))));
}

TEST(Normalize, DeleteIsTerminal) {
  const Signature sig = small_signature();
  const Morphism h = gen(sig, "h");
  EXPECT_EQ(normalize(seq(h, Morphism::discard(h.cod()))), normalize(Morphism::discard(h.dom())));
}

TEST(Normalize, TwoForwardPartsAgree) {
  const Signature sig = small_signature();
  const Morphism f = gen(sig, "f"), g = gen(sig, "g");
  const Morphism lhs = seq(graph(seq(f, g)), ten(graph(f), Morphism::id(g.cod())));
  const Morphism rhs = seq(graph(f), ten(Morphism::id(f.dom()), graph(g)));
  EXPECT_EQ(normalize(lhs), normalize(rhs));
  EXPECT_TRUE(eq_extensional(lhs, rhs, sig));
  // Same morphism, different amounts of work as written.
  EXPECT_EQ(count_generators(lhs), 3u);
  EXPECT_EQ(count_generators(rhs), 2u);
}

TEST(Normalize, SwapAndProjectionsResolveToWires) {
  const Signature sig = small_signature();
  const Object a = sig.object({"A"}), b = sig.object({"B"});
  EXPECT_EQ(normalize(seq(Morphism::swap(a, b), Morphism::swap(b, a))), normalize(Morphism::id(a * b)));
  EXPECT_EQ(normalize(seq(Morphism::swap(a, b), Morphism::proj1(b, a))), normalize(Morphism::proj2(a, b)));
  EXPECT_FALSE(normalize(Morphism::swap(a, a)) == normalize(Morphism::id(a * a)));
}

TEST(Normalize, MultiOutputGeneratorsKeepOutputIndex) {
  const Signature sig = small_signature();
  const Morphism s = gen(sig, "s");
  const Object b = sig.object({"B"}), c = sig.object({"C"});
  const CanonicalForm cf = normalize(s);
  ASSERT_EQ(cf.outputs.size(), 2u);
  EXPECT_FALSE(equal_trees(cf.outputs[0], cf.outputs[1]));
  EXPECT_EQ(to_string(cf, sig), "[s.0(x0), s.1(x0)]");
  EXPECT_FALSE(normalize(seq(s, Morphism::proj1(b, c))) == normalize(seq(gen(sig, "f"), Morphism::id(b))));
}

TEST(Normalize, ReadBackIsIdempotent) {
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    const Signature sig = random_signature(rng);
    const Morphism f = random_morphism(rng, sig, random_object(rng, sig, 0, 2), random_object(rng, sig, 0, 2), 3);
    const CanonicalForm cf = normalize(f);
    const Morphism back = read_back(cf, sig);
    EXPECT_EQ(normalize(back), cf);
    EXPECT_TRUE(eq_extensional(back, f, sig));
  }
}

TEST(Extensional, Basics) {
  const Signature sig = unary_signature(3);
  const Object a = sig.object({"A"});
  const Morphism n = gen(sig, "n");
  EXPECT_TRUE(eq_extensional(n, n, sig));
  EXPECT_TRUE(eq_extensional(seq(Morphism::copy(a), Morphism::proj1(a, a)), Morphism::id(a), sig));
  EXPECT_FALSE(eq_extensional(n, Morphism::id(a), sig));
  const auto cex = find_counterexample(n, Morphism::id(a), sig);
  ASSERT_TRUE(cex);
  EXPECT_EQ(*cex, (Tuple{std::uint32_t{0}}));
}

TEST(Extensional, RealSortsAreUnsupported) {
  Signature sig;
  const SortId r = sig.add_sort("R", RealCarrier{2});
  const Object o{r};
  EXPECT_THROW(eq_extensional(Morphism::id(o), Morphism::id(o), sig), UnsupportedInterpretation);
}

TEST(Extensional, InputSpaceIsCapped) {
  Signature sig;
  const SortId a = sig.add_sort("A", FiniteCarrier{1000});
  const Object big{a, a, a};
  EXPECT_THROW(eq_extensional(Morphism::id(big), Morphism::id(big), sig), UnsupportedInterpretation);
}

TEST(Evaluate, CountsGeneratorsAndStructure) {
  const Signature sig = unary_signature();
  const Object a = sig.object({"A"});
  const Morphism n = gen(sig, "n");
  CostReport cost;
  EXPECT_EQ(evaluate(Morphism::id(a), Tuple{std::uint32_t{1}}, sig, cost), (Tuple{std::uint32_t{1}}));
  EXPECT_EQ(cost.generator_evaluations(), 0u);
  CostReport twice;
  EXPECT_EQ(evaluate(seq(n, n), Tuple{std::uint32_t{1}}, sig, twice), (Tuple{std::uint32_t{1}}));
  EXPECT_EQ(twice.count("n"), 2u);
  CostReport structural;
  evaluate(seq(Morphism::copy(a), Morphism::swap(a, a)), Tuple{std::uint32_t{0}}, sig, structural);
  EXPECT_EQ(structural.copies, 1u);
  EXPECT_EQ(structural.copies_by_object.at("A"), 1u);
  EXPECT_EQ(structural.structural_ops, 2u);
  EXPECT_EQ(structural.generator_evaluations(), 0u);
  EXPECT_THROW(evaluate(n, Tuple{std::uint32_t{2}}, sig), CarrierError);
}

// Normalizer equality against exhaustive evaluation on random pairs: half the
// pairs are rewrites of one term by the cartesian laws, half are unrelated.
TEST(Normalize, AgreesWithExtensionalOracleOnRandomPairs) {
  Rng rng(2024);
  std::size_t equal_pairs = 0, distinct_pairs = 0;
  for (int i = 0; i < 200; ++i) {
    SignatureShape shape;
    shape.max_sorts = 2;
    const Signature sig = random_signature(rng, shape);
    std::vector<Signature> family{sig};
    for (int k = 0; k < 15; ++k) family.push_back(reinterpret(rng, sig));
    const Object a = random_object(rng, sig, 1, 2), b = random_object(rng, sig, 1, 2);
    const Morphism f = random_morphism(rng, sig, a, b, 2);
    const Morphism g = i % 2 == 0 ? equivalent_variant(rng, f, 3) : random_morphism(rng, sig, a, b, 2);
    const bool cf_equal = normalize(f) == normalize(g);
    bool ext_equal = true;
    for (const Signature& interp : family) ext_equal = ext_equal && eq_extensional(f, g, interp);
    EXPECT_EQ(cf_equal, ext_equal) << to_string(f, sig) << "  vs  " << to_string(g, sig);
    (cf_equal ? equal_pairs : distinct_pairs)++;
  }
  EXPECT_GE(equal_pairs, 100u);
  EXPECT_GT(distinct_pairs, 50u);
}

// Every term up to depth 4 over one sort with n : A -> A and m : A*A -> A,
// grouped by the function it denotes under all 64 carrier-2 interpretations.
// Terms in one group whose canonical forms differ are logged and must be told
// apart by some carrier-3 interpretation.
TEST(Normalize, CompletenessAtDeskScale) {
  Signature sig;
  const SortId a = sig.add_sort("A", FiniteCarrier{2});
  sig.add_generator("n", Object{a}, Object{a}, FiniteTable{{{1}, {0}}});
  sig.add_generator("m", Object{a, a}, Object{a}, FiniteTable{{{0}, {0}, {0}, {1}}});
  const auto terms = enumerate_terms(sig, a, 4, 2, 60'000);
  const auto interps = all_interpretations(sig, 2);
  ASSERT_EQ(interps.size(), 64u);

  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
  std::vector<CanonicalForm> cfs;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(terms[i].dom().size()),
                                   static_cast<std::uint32_t>(terms[i].cod().size())};
    for (const Signature& s : interps) {
      const auto t = table_of(terms[i], s);
      key.insert(key.end(), t.begin(), t.end());
    }
    groups[key].push_back(i);
    cfs.push_back(normalize(terms[i]));
  }

  // Soundness: equal canonical forms never land in different groups.
  std::unordered_map<CanonicalForm, std::vector<std::uint32_t>, CanonicalFormHash> seen;
  for (const auto& [key, members] : groups) {
    for (std::size_t i : members) {
      auto [it, fresh] = seen.try_emplace(cfs[i], key);
      EXPECT_TRUE(fresh || it->second == key) << to_string(terms[i], sig);
    }
  }

  Rng rng(3);
  std::size_t mismatches = 0, separated = 0;
  for (const auto& [key, members] : groups) {
    for (std::size_t k = 1; k < members.size(); ++k) {
      const std::size_t i = members[0], j = members[k];
      if (cfs[i] == cfs[j]) continue;
      ++mismatches;
      if (mismatches <= 5) {
        std::cout << "[ carrier-2 collision ] " << to_string(terms[i], sig) << "  ~  " << to_string(terms[j], sig) << '\n';
      }
      // Some pairs agree on every small carrier (n;n and n^8 up to size 3), so grow it.
      bool split = false;
      for (std::uint32_t size = 3; size <= 5 && !split; ++size) {
        const Signature wider = sig.with_carrier(a, FiniteCarrier{size});
        for (int attempt = 0; attempt < 2000 && !split; ++attempt) {
          split = !eq_extensional(terms[i], terms[j], reinterpret(rng, wider));
        }
      }
      EXPECT_TRUE(split) << to_string(terms[i], sig) << "  ~  " << to_string(terms[j], sig);
      separated += split;
    }
  }
  std::cout << "[ completeness ] terms=" << terms.size() << " classes=" << groups.size()
            << " carrier-2 collisions=" << mismatches << " separated at carriers 3..5=" << separated << '\n';
  EXPECT_GT(terms.size(), 1000u);
}

TEST(Share, CollapsesRecomputedGet) {
  const Signature sig = small_signature();
  const Morphism f = gen(sig, "f"), g = gen(sig, "g");
  const Morphism term = seq(graph(seq(f, g)), ten(graph(f), Morphism::id(g.cod())));
  const SharedDag dag = share(term);
  EXPECT_EQ(dag.nodes.size(), 2u);
  EXPECT_EQ(normalize(term).occurrences(), 3u);
  for_each_input(term.dom(), sig, [&](const Tuple& x) { EXPECT_EQ(evaluate(dag, x, sig), evaluate(term, x, sig)); });
}

TEST(Share, IdentityIsEmpty) {
  const Signature sig = small_signature();
  const Object o = sig.object({"A", "B"});
  const SharedDag dag = share(Morphism::id(o));
  EXPECT_TRUE(dag.nodes.empty());
  ASSERT_EQ(dag.outputs.size(), 2u);
  EXPECT_TRUE(dag.outputs[0].is_input);
  EXPECT_EQ(dag.outputs[1].index, 1u);
}

TEST(Share, MultiOutputNodeEvaluatedOnce) {
  const Signature sig = small_signature();
  const Morphism s = gen(sig, "s");
  const Object a = s.dom();
  const Morphism both = seq(Morphism::copy(a), ten(seq(s, Morphism::proj1(s.cod().slice(0, 1), s.cod().slice(1, 1))),
                                                  seq(s, Morphism::proj2(s.cod().slice(0, 1), s.cod().slice(1, 1)))));
  const SharedDag dag = share(both);
  EXPECT_EQ(dag.nodes.size(), 1u);
  CostReport cost;
  evaluate(dag, Tuple{std::uint32_t{1}}, sig, cost);
  EXPECT_EQ(cost.count("s"), 1u);
}

TEST(Share, PreservesSemanticsAndNeverGrows) {
  Rng rng(77);
  for (int i = 0; i < 80; ++i) {
    const Signature sig = random_signature(rng);
    const Morphism f = random_morphism(rng, sig, random_object(rng, sig, 0, 2), random_object(rng, sig, 1, 3), 4);
    const Morphism g = seq(f, Morphism::copy(f.cod()));
    for (const Morphism& m : {f, g}) {
      const SharedDag dag = share(m);
      EXPECT_LE(dag.nodes.size(), normalize(m).occurrences());
      std::set<std::pair<GenId, std::vector<std::tuple<bool, std::size_t, std::uint32_t>>>> keys;
      for (const auto& node : dag.nodes) {
        std::vector<std::tuple<bool, std::size_t, std::uint32_t>> args;
        for (const auto& p : node.args) args.emplace_back(p.is_input, p.node, p.index);
        EXPECT_TRUE(keys.emplace(node.gen, args).second);
      }
      for (int k = 0; k < 3; ++k) {
        const Signature interp = k == 0 ? sig : reinterpret(rng, sig);
        for_each_input(m.dom(), interp, [&](const Tuple& x) { EXPECT_EQ(evaluate(dag, x, interp), evaluate(m, x, interp)); });
      }
    }
  }
}

TEST(Flatten, StrictMonoidalLawsOnly) {
  const Signature sig = small_signature();
  const Morphism f = gen(sig, "f"), g = gen(sig, "g"), k = gen(sig, "k");
  const Object a = f.dom(), b = f.cod();
  EXPECT_TRUE(same_flattening(seq(seq(f, g), Morphism::id(g.cod())), seq(f, seq(Morphism::id(b), g))));
  EXPECT_TRUE(same_flattening(ten(ten(f, g), k), ten(f, ten(g, k))));
  EXPECT_TRUE(same_flattening(ten(f, g), seq(ten(f, Morphism::id(g.dom())), ten(Morphism::id(b), g))));
  EXPECT_TRUE(same_flattening(ten(Morphism::id(Object{}), f), f));
  EXPECT_FALSE(same_flattening(seq(Morphism::swap(a, a), Morphism::swap(a, a)), Morphism::id(a * a)));
  EXPECT_FALSE(same_flattening(seq(Morphism::copy(a), Morphism::proj1(a, a)), Morphism::id(a)));
}

TEST(Enumerate, CanonicalFormsByHeight) {
  const Signature sig = unary_signature();
  const Object a = sig.object({"A"});
  // x, c, n x, n c, n n x
  EXPECT_EQ(enumerate_canonical(a, a, 2, sig).size(), 5u);
  EXPECT_EQ(enumerate_canonical(a, Object{}, 3, sig).size(), 1u);
  EXPECT_EQ(enumerate_canonical(a, a * a, 1, sig).size(), 9u);
}
