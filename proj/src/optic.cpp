#include "twoptic/optic.hpp"

#include <stdexcept>

#include "twoptic/errors.hpp"

namespace twoptic {

Optic make_optic(Object residual, Morphism fw, Morphism bw) {
  if (!fw.cod().starts_with(residual)) throw TypeError("optic forward codomain must start with the residual", residual, fw.cod());
  if (!bw.dom().starts_with(residual)) throw TypeError("optic backward domain must start with the residual", residual, bw.dom());
  const std::size_t m = residual.size();
  Boundary dom{fw.dom(), bw.cod()};
  Boundary cod{fw.cod().slice(m, fw.cod().size() - m), bw.dom().slice(m, bw.dom().size() - m)};
  return Optic{std::move(dom), std::move(cod), std::move(residual), std::move(fw), std::move(bw)};
}

Optic optic_id(const Boundary& b) { return Optic{b, b, Object{}, Morphism::id(b.fwd), Morphism::id(b.bwd)}; }

Optic optic_compose(const Optic& o1, const Optic& o2) {
  if (o1.cod.fwd != o2.dom.fwd) throw TypeError("optic composition (forward boundary)", o1.cod.fwd, o2.dom.fwd);
  if (o1.cod.bwd != o2.dom.bwd) throw TypeError("optic composition (backward boundary)", o1.cod.bwd, o2.dom.bwd);
  const Morphism m1 = Morphism::id(o1.residual);
  return Optic{o1.dom, o2.cod, o1.residual * o2.residual, seq(o1.fw, ten(m1, o2.fw)), seq(ten(m1, o2.bw), o1.bw)};
}

Optic fold_left(const std::vector<Optic>& chain) {
  if (chain.empty()) throw std::invalid_argument("fold of an empty optic chain");
  Optic acc = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) acc = optic_compose(acc, chain[i]);
  return acc;
}

ExecResult optic_exec(const Optic& o, const Tuple& a, const Environment& env, const Signature& sig) {
  ExecResult r;
  Tuple out = evaluate(o.fw, a, sig, r.cost);
  const auto m = static_cast<std::ptrdiff_t>(o.residual.size());
  Tuple held(out.begin(), out.begin() + m);
  r.b.assign(out.begin() + m, out.end());
  r.cost.peak_residual_slots = o.residual.size();
  r.cost.peak_residual_bytes = sig.bytes(o.residual);
  Tuple response = env(r.b);
  check_tuple(o.cod.bwd, response, sig);
  held.insert(held.end(), response.begin(), response.end());
  r.a_prime = evaluate(o.bw, held, sig, r.cost);
  return r;
}

} // namespace twoptic
