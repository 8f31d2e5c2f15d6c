#include "twoptic/bridge.hpp"

#include "twoptic/evaluate.hpp"
#include "twoptic/normal_form.hpp"

namespace twoptic {

Optic reify(const Lens& l) { return Optic{l.dom, l.cod, l.dom.fwd, graph(l.get), l.put}; }

Lens erase(const Optic& o) {
  const Object& m = o.residual;
  const Object& b = o.cod.fwd;
  Morphism get = seq(o.fw, Morphism::proj2(m, b));
  Morphism put = seq(ten(seq(o.fw, Morphism::proj1(m, b)), Morphism::id(o.cod.bwd)), o.bw);
  return Lens{o.dom, o.cod, std::move(get), std::move(put)};
}

TwoCell counit(const Optic& o, const Signature& sig) {
  return mk_two_cell(reify(erase(o)), o, seq(o.fw, Morphism::proj1(o.residual, o.cod.fwd)), sig);
}

TwoCell oplaxator(const Lens& l1, const Lens& l2, const Signature& sig) {
  return mk_two_cell(reify(lens_compose(l1, l2)), optic_compose(reify(l1), reify(l2)), graph(l1.get), sig);
}

TwoCell opunitor(const Boundary& b, const Signature& sig) {
  Morphism w = b.fwd.empty() ? Morphism::id(Object{}) : Morphism::discard(b.fwd);
  return mk_two_cell(reify(lens_id(b)), optic_id(b), w, sig);
}

void LawResult::record(bool ok, const std::function<Counterexample()>& describe) {
  ++checked;
  if (ok) return;
  ++failed;
  if (!first_failure) first_failure = describe();
}

void LawResult::merge(const LawResult& other) {
  checked += other.checked;
  failed += other.failed;
  if (!first_failure && other.first_failure) first_failure = other.first_failure;
}

std::vector<const LawResult*> AdjunctionReport::laws() const {
  return {&re_identity, &counit_validity, &counit_naturality, &triangle_r, &triangle_e, &mutation_check};
}

bool AdjunctionReport::passed() const {
  for (const LawResult* l : laws()) {
    if (!l->passed()) return false;
  }
  return mutation_check.checked > 0;
}

void AdjunctionReport::merge(const AdjunctionReport& o) {
  re_identity.merge(o.re_identity);
  counit_validity.merge(o.counit_validity);
  counit_naturality.merge(o.counit_naturality);
  triangle_r.merge(o.triangle_r);
  triangle_e.merge(o.triangle_e);
  mutation_check.merge(o.mutation_check);
}

std::vector<const LawResult*> CoherenceReport::laws() const {
  return {&oplaxator_validity, &oplaxator_forward_extensional, &opunitor_validity,
          &lax_associativity,  &lax_left_unity,                &lax_right_unity};
}

bool CoherenceReport::passed() const {
  for (const LawResult* l : laws()) {
    if (!l->passed()) return false;
  }
  return true;
}

void CoherenceReport::merge(const CoherenceReport& o) {
  oplaxator_validity.merge(o.oplaxator_validity);
  oplaxator_forward_extensional.merge(o.oplaxator_forward_extensional);
  opunitor_validity.merge(o.opunitor_validity);
  lax_associativity.merge(o.lax_associativity);
  lax_left_unity.merge(o.lax_left_unity);
  lax_right_unity.merge(o.lax_right_unity);
}

bool same_flattened_optic(const Optic& a, const Optic& b) {
  return a.dom == b.dom && a.cod == b.cod && a.residual == b.residual && same_flattening(a.fw, b.fw) &&
         same_flattening(a.bw, b.bw);
}

bool equivalent_representatives(const Optic& a, const Optic& b) {
  return a.dom == b.dom && a.cod == b.cod && a.residual == b.residual && equal_morphisms(a.fw, b.fw) &&
         equal_morphisms(a.bw, b.bw);
}

namespace {

std::string describe(const Lens& l, const Signature& sig) {
  return "lens get=" + to_string(l.get, sig) + " put=" + to_string(l.put, sig);
}

std::string describe(const Optic& o, const Signature& sig) {
  return "optic M=" + sig.render(o.residual) + " fw=" + to_string(o.fw, sig) + " bw=" + to_string(o.bw, sig);
}

// Runs `f`, turning a rejected cell into a recorded failure.
template <class F>
std::optional<TwoCell> attempt(LawResult& law, const std::string& subject, F&& f) {
  try {
    std::optional<TwoCell> cell = f();
    law.record(true, {});
    return cell;
  } catch (const InvalidCell& e) {
    law.record(false, [&] { return Counterexample{subject, e.what(), e.rejection().counterexample}; });
  } catch (const std::exception& e) {
    law.record(false, [&] { return Counterexample{subject, e.what(), std::nullopt}; });
  }
  return std::nullopt;
}

bool finite(const Object& o, const Signature& sig) {
  return sig.all_finite(o) && sig.cardinality(o, max_exhaustive_inputs) <= max_exhaustive_inputs;
}

// Both checkers must agree: normalizer equality, and no extensional witness.
bool equal_checked(const Morphism& f, const Morphism& g, const Signature& sig, std::optional<Tuple>& cex) {
  const bool eq = equal_morphisms(f, g);
  if (finite(f.dom(), sig)) cex = find_counterexample(f, g, sig);
  return eq && !cex;
}

// Non-identity endomaps of the residual that replace one wire by a constant
// or by a unary generator applied to it.
std::vector<Morphism> corruptions(const Object& m, const Signature& sig) {
  std::vector<Morphism> out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Object before = m.slice(0, k), after = m.slice(k + 1, m.size() - k - 1), wire{m[k]};
    for (GenId g = 0; g < sig.generator_count(); ++g) {
      const Generator& gen = sig.generator(g);
      if (gen.cod != wire) continue;
      Morphism mid = gen.dom.empty()       ? seq(Morphism::discard(wire), Morphism::gen(sig, g))
                     : gen.dom == wire     ? Morphism::gen(sig, g)
                                           : Morphism::id(wire);
      if (mid.kind() == Kind::identity) continue;
      out.push_back(ten(ten(Morphism::id(before), mid), Morphism::id(after)));
    }
  }
  return out;
}

} // namespace

AdjunctionReport check_adjunction(const std::vector<Lens>& lenses, const std::vector<Optic>& optics,
                                  const std::vector<TwoCell>& cells, const Signature& sig) {
  AdjunctionReport rep;
  for (const Lens& l : lenses) {
    rep.re_identity.record(lens_equal(erase(reify(l)), l), [&] { return Counterexample{describe(l, sig), "E(R(l)) differs from l", std::nullopt}; });

    // R applied to the counit: its witness graph(get);pi1 must be the identity cell.
    const Optic r = reify(l);
    auto cell = attempt(rep.counit_validity, describe(r, sig), [&] { return std::optional(counit(r, sig)); });
    if (cell) {
      std::optional<Tuple> cex;
      const bool ok = equal_checked(cell->witness, Morphism::id(r.residual), sig, cex) &&
                      equivalent_representatives(cell->src, cell->tgt);
      rep.triangle_r.record(ok, [&] { return Counterexample{describe(l, sig), "counit(R(l)) is not the identity cell", cex}; });
    }
  }

  for (const Optic& o : optics) {
    auto cell = attempt(rep.counit_validity, describe(o, sig), [&] { return std::optional(counit(o, sig)); });
    if (!cell) continue;
    // E sends source and target of the counit to the same lens.
    rep.triangle_e.record(lens_equal(erase(cell->src), erase(cell->tgt)),
                          [&] { return Counterexample{describe(o, sig), "E(R(E(o))) differs from E(o)", std::nullopt}; });

    const Morphism original = cell->witness;
    const CanonicalForm original_cf = normalize(original);
    for (const Morphism& s : corruptions(o.residual, sig)) {
      Morphism mutant = seq(original, s);
      if (normalize(mutant) == original_cf) continue;
      auto verdict = try_two_cell(cell->src, o, mutant, sig);
      rep.mutation_check.record(std::holds_alternative<CellRejection>(verdict), [&] {
        return Counterexample{describe(o, sig), "corrupted counit witness " + to_string(mutant, sig) + " was accepted", std::nullopt};
      });
    }
  }

  for (const TwoCell& c : cells) {
    const Morphism lhs = seq({c.src.fw, Morphism::proj1(c.src.residual, c.src.cod.fwd), c.witness});
    const Morphism rhs = seq(c.tgt.fw, Morphism::proj1(c.tgt.residual, c.tgt.cod.fwd));
    std::optional<Tuple> cex;
    rep.counit_naturality.record(equal_checked(lhs, rhs, sig, cex), [&] {
      return Counterexample{describe(c.src, sig) + " => " + describe(c.tgt, sig), "fw1;pi1;r differs from fw2;pi1", cex};
    });
    rep.triangle_e.record(lens_equal(erase(c.src), erase(c.tgt)), [&] {
      return Counterexample{describe(c.src, sig) + " => " + describe(c.tgt, sig), "E does not identify the ends of a cell", std::nullopt};
    });
  }
  return rep;
}

CoherenceReport check_oplax_coherence(const Lens& l1, const Lens& l2, const Lens& l3, const Signature& sig) {
  CoherenceReport rep;
  const std::string subject = describe(l1, sig) + " | " + describe(l2, sig) + " | " + describe(l3, sig);

  auto d12 = attempt(rep.oplaxator_validity, subject, [&] { return std::optional(oplaxator(l1, l2, sig)); });
  auto d23 = attempt(rep.oplaxator_validity, subject, [&] { return std::optional(oplaxator(l2, l3, sig)); });
  for (const auto* d : {&d12, &d23}) {
    if (!*d || !finite((*d)->src.dom.fwd, sig)) continue;
    std::optional<Tuple> cex = find_counterexample(left_square((*d)->src, (*d)->witness), (*d)->tgt.fw, sig);
    rep.oplaxator_forward_extensional.record(!cex, [&] { return Counterexample{subject, "forward square differs", cex}; });
  }

  const Boundary a = l1.dom, b = l1.cod;
  auto unit_a = attempt(rep.opunitor_validity, subject, [&] { return std::optional(opunitor(a, sig)); });
  auto unit_b = attempt(rep.opunitor_validity, subject, [&] { return std::optional(opunitor(b, sig)); });

  if (!d12 || !d23) return rep;
  const Lens l12 = lens_compose(l1, l2), l23 = lens_compose(l2, l3);
  auto lhs = attempt(rep.lax_associativity, subject, [&] {
    return std::optional(vcompose(oplaxator(l12, l3, sig), hcompose(*d12, identity_cell(reify(l3)), sig), sig));
  });
  auto rhs = attempt(rep.lax_associativity, subject, [&] {
    return std::optional(vcompose(oplaxator(l1, l23, sig), hcompose(identity_cell(reify(l1)), *d23, sig), sig));
  });
  if (lhs && rhs) {
    std::optional<Tuple> cex;
    const bool ok = equal_checked(lhs->witness, rhs->witness, sig, cex) &&
                    equivalent_representatives(lhs->src, rhs->src) && same_flattened_optic(lhs->tgt, rhs->tgt);
    rep.lax_associativity.record(ok, [&] { return Counterexample{subject, "associativity composites differ", cex}; });
  }

  if (unit_a) {
    auto left = attempt(rep.lax_left_unity, subject, [&] {
      return std::optional(vcompose(oplaxator(lens_id(a), l1, sig), hcompose(*unit_a, identity_cell(reify(l1)), sig), sig));
    });
    if (left) {
      std::optional<Tuple> cex;
      const bool ok = equal_checked(left->witness, Morphism::id(a.fwd), sig, cex) &&
                      equivalent_representatives(left->src, reify(l1)) && same_flattened_optic(left->tgt, reify(l1));
      rep.lax_left_unity.record(ok, [&] { return Counterexample{subject, "left unity composite is not the identity", cex}; });
    }
  }
  if (unit_b) {
    auto right = attempt(rep.lax_right_unity, subject, [&] {
      return std::optional(vcompose(oplaxator(l1, lens_id(b), sig), hcompose(identity_cell(reify(l1)), *unit_b, sig), sig));
    });
    if (right) {
      std::optional<Tuple> cex;
      const bool ok = equal_checked(right->witness, Morphism::id(a.fwd), sig, cex) &&
                      equivalent_representatives(right->src, reify(l1)) && same_flattened_optic(right->tgt, reify(l1));
      rep.lax_right_unity.record(ok, [&] { return Counterexample{subject, "right unity composite is not the identity", cex}; });
    }
  }
  return rep;
}

} // namespace twoptic
