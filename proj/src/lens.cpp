#include "twoptic/lens.hpp"

#include <stdexcept>

#include "twoptic/errors.hpp"
#include "twoptic/normal_form.hpp"

namespace twoptic {

Lens make_lens(Morphism get, Morphism put) {
  const Object& a = get.dom();
  if (!put.dom().starts_with(a)) {
    throw TypeError("lens put domain must start with get domain", a, put.dom().slice(0, std::min(a.size(), put.dom().size())));
  }
  Boundary dom{a, put.cod()};
  Boundary cod{get.cod(), put.dom().slice(a.size(), put.dom().size() - a.size())};
  return Lens{std::move(dom), std::move(cod), std::move(get), std::move(put)};
}

Lens lens_id(const Boundary& b) {
  return Lens{b, b, Morphism::id(b.fwd), Morphism::proj2(b.fwd, b.bwd)};
}

Lens lens_compose(const Lens& l1, const Lens& l2) {
  if (l1.cod.fwd != l2.dom.fwd) throw TypeError("lens composition (forward boundary)", l1.cod.fwd, l2.dom.fwd);
  if (l1.cod.bwd != l2.dom.bwd) throw TypeError("lens composition (backward boundary)", l1.cod.bwd, l2.dom.bwd);
  const Object& a = l1.dom.fwd;
  const Object& c_prime = l2.cod.bwd;
  Morphism get = seq(l1.get, l2.get);
  Morphism put = seq({ten(graph(l1.get), Morphism::id(c_prime)), ten(Morphism::id(a), l2.put), l1.put});
  return Lens{l1.dom, l2.cod, std::move(get), std::move(put)};
}

Lens fold_left(const std::vector<Lens>& chain) {
  if (chain.empty()) throw std::invalid_argument("fold of an empty lens chain");
  Lens acc = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) acc = lens_compose(acc, chain[i]);
  return acc;
}

Lens fold_right(const std::vector<Lens>& chain) {
  if (chain.empty()) throw std::invalid_argument("fold of an empty lens chain");
  Lens acc = chain.back();
  for (std::size_t i = chain.size() - 1; i-- > 0;) acc = lens_compose(chain[i], acc);
  return acc;
}

bool lens_equal(const Lens& a, const Lens& b) {
  return a.dom == b.dom && a.cod == b.cod && equal_morphisms(a.get, b.get) && equal_morphisms(a.put, b.put);
}

Environment identity_env() {
  return [](const Tuple& b) { return b; };
}

Environment constant_env(Tuple response) {
  return [response = std::move(response)](const Tuple&) { return response; };
}

Environment generator_env(const Signature& sig, GenId gen) {
  Morphism m = Morphism::gen(sig, gen);
  return [&sig, m](const Tuple& b) { return evaluate(m, b, sig); };
}

ExecResult lens_exec(const Lens& l, const Tuple& a, const Environment& env, const Signature& sig) {
  ExecResult r;
  r.b = evaluate(l.get, a, sig, r.cost);
  // a is retained for the backward pass.
  ++r.cost.copies;
  ++r.cost.copies_by_object[sig.render(l.dom.fwd)];
  r.cost.peak_residual_slots = l.dom.fwd.size();
  r.cost.peak_residual_bytes = sig.bytes(l.dom.fwd);
  Tuple response = env(r.b);
  check_tuple(l.cod.bwd, response, sig);
  Tuple put_in = a;
  put_in.insert(put_in.end(), response.begin(), response.end());
  r.a_prime = evaluate(l.put, put_in, sig, r.cost);
  return r;
}

} // namespace twoptic
