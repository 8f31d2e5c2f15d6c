#include "twoptic/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace twoptic {

Signature random_signature(Rng& rng, const SignatureShape& shape) {
  Signature sig;
  const std::size_t n_sorts = shape.min_sorts + pick(rng, shape.max_sorts - shape.min_sorts + 1);
  std::vector<std::uint32_t> sizes;
  for (std::size_t i = 0; i < n_sorts; ++i) {
    sizes.push_back(shape.min_carrier + static_cast<std::uint32_t>(pick(rng, shape.max_carrier - shape.min_carrier + 1)));
    sig.add_sort("S" + std::to_string(i), FiniteCarrier{sizes.back()});
  }
  auto random_table = [&](const Object& dom, const Object& cod) {
    std::size_t rows = 1;
    for (SortId s : dom) rows *= sizes[s];
    FiniteTable t;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::uint32_t> row;
      for (SortId s : cod) row.push_back(static_cast<std::uint32_t>(pick(rng, sizes[s])));
      t.rows.push_back(std::move(row));
    }
    return t;
  };
  for (SortId s = 0; s < n_sorts; ++s) {
    const Object cod{s};
    sig.add_generator("k_S" + std::to_string(s), Object{}, cod, random_table(Object{}, cod));
  }
  for (std::size_t g = 0; g < shape.generators; ++g) {
    const std::size_t arity = 1 + pick(rng, 2);
    const std::size_t coarity = shape.multi_output && pick(rng, 4) == 0 ? 2 : 1;
    std::vector<SortId> dom, cod;
    for (std::size_t k = 0; k < arity; ++k) dom.push_back(static_cast<SortId>(pick(rng, n_sorts)));
    for (std::size_t k = 0; k < coarity; ++k) cod.push_back(static_cast<SortId>(pick(rng, n_sorts)));
    Object d(dom), c(cod);
    sig.add_generator("g" + std::to_string(g), d, c, random_table(d, c));
  }
  return sig;
}

Signature reinterpret(Rng& rng, const Signature& sig) {
  Signature out = sig;
  for (GenId g = 0; g < sig.generator_count(); ++g) {
    const Generator& gen = sig.generator(g);
    const auto* old = std::get_if<FiniteTable>(&gen.semantics);
    if (!old) continue;
    // Row count follows the current carriers, which may differ from the old table's.
    const auto rows = sig.cardinality(gen.dom, max_exhaustive_inputs);
    FiniteTable t;
    for (std::uint64_t r = 0; r < rows; ++r) {
      std::vector<std::uint32_t> row;
      for (SortId s : gen.cod) row.push_back(static_cast<std::uint32_t>(pick(rng, std::get<FiniteCarrier>(sig.sort(s).carrier).size)));
      t.rows.push_back(std::move(row));
    }
    out = out.with_semantics(g, std::move(t));
  }
  return out;
}

Object random_object(Rng& rng, const Signature& sig, std::size_t min_size, std::size_t max_size) {
  const std::size_t n = min_size + pick(rng, max_size - min_size + 1);
  std::vector<SortId> sorts;
  for (std::size_t i = 0; i < n; ++i) sorts.push_back(static_cast<SortId>(pick(rng, sig.sort_count())));
  return Object(std::move(sorts));
}

Boundary random_boundary(Rng& rng, const Signature& sig, std::size_t min_size, std::size_t max_size) {
  Object fwd = random_object(rng, sig, min_size, max_size);
  Object bwd = random_object(rng, sig, min_size, max_size);
  return Boundary{std::move(fwd), std::move(bwd)};
}

namespace {

std::optional<GenId> constant_for(const Signature& sig, SortId s) {
  for (GenId g = 0; g < sig.generator_count(); ++g) {
    const Generator& gen = sig.generator(g);
    if (gen.dom.empty() && gen.cod == Object{s}) return g;
  }
  return std::nullopt;
}

// X -> Y from one morphism X -> [y] per output sort.
Morphism tuple_of(const Object& x, const std::vector<Morphism>& parts) {
  if (parts.empty()) return Morphism::discard(x);
  Morphism acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = pairing(acc, parts[i]);
  return acc;
}

} // namespace

Morphism random_morphism(Rng& rng, const Signature& sig, const Object& dom, const Object& cod, std::size_t steps) {
  Morphism t = Morphism::id(dom);
  Object x = dom;
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<GenId> usable;
    for (GenId g = 0; g < sig.generator_count(); ++g) {
      const Generator& gen = sig.generator(g);
      bool ok = !gen.dom.empty() || x.empty() || pick(rng, 4) == 0;
      for (SortId s : gen.dom) ok = ok && std::find(x.begin(), x.end(), s) != x.end();
      if (ok) usable.push_back(g);
    }
    if (usable.empty()) break;
    const GenId g = usable[pick(rng, usable.size())];
    const Generator& gen = sig.generator(g);
    std::vector<std::size_t> wires;
    for (SortId s : gen.dom) {
      std::vector<std::size_t> match;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == s) match.push_back(i);
      }
      wires.push_back(match[pick(rng, match.size())]);
    }
    t = seq(t, pairing(Morphism::id(x), seq(select(x, wires), Morphism::gen(sig, g))));
    x = x * gen.cod;
  }
  std::vector<Morphism> parts;
  for (SortId s : cod) {
    std::vector<std::size_t> match;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == s) match.push_back(i);
    }
    if (match.empty()) {
      auto k = constant_for(sig, s);
      if (!k) throw std::invalid_argument("no wire or constant available for sort '" + sig.sort(s).name + "'");
      parts.push_back(seq(Morphism::discard(x), Morphism::gen(sig, *k)));
    } else {
      // Favour the most recent wires so generated work is used.
      const std::size_t i = pick(rng, 3) == 0 ? match[pick(rng, match.size())] : match.back();
      parts.push_back(select(x, {i}));
    }
  }
  return seq(t, tuple_of(x, parts));
}

Morphism equivalent_variant(Rng& rng, const Morphism& f, std::size_t rewrites) {
  if (rewrites == 0) return f;
  const Object& a = f.dom();
  const Object& b = f.cod();
  Morphism g = f;
  switch (pick(rng, 7)) {
    case 0:
      g = seq(Morphism::id(a), f);
      break;
    case 1:
      g = seq({Morphism::copy(a), Morphism::proj1(a, a), f});
      break;
    case 2:
      g = seq(Morphism::copy(a), ten(f, Morphism::discard(a)));
      break;
    case 3: {
      // f;copy = copy;(f*f), then project the first copy away.
      g = seq({Morphism::copy(a), ten(f, f), Morphism::proj2(b, b)});
      break;
    }
    case 4: {
      const std::size_t k = pick(rng, b.size() + 1);
      const Object b1 = b.slice(0, k), b2 = b.slice(k, b.size() - k);
      g = seq({f, Morphism::swap(b1, b2), Morphism::swap(b2, b1)});
      break;
    }
    case 5:
      if (f.kind() == Kind::sequence) {
        g = seq(equivalent_variant(rng, f.left(), 1), equivalent_variant(rng, f.right(), 1));
      } else if (f.kind() == Kind::tensor) {
        const Morphism l = f.left(), r = f.right();
        g = seq(ten(l, Morphism::id(r.dom())), ten(Morphism::id(l.cod()), r));
      }
      break;
    default:
      if (f.kind() == Kind::sequence && f.left().kind() == Kind::sequence) {
        g = seq(f.left().left(), seq(f.left().right(), f.right()));
      } else {
        g = seq(f, Morphism::id(b));
      }
      break;
  }
  return equivalent_variant(rng, g, rewrites - 1);
}

Lens random_lens(Rng& rng, const Signature& sig, const Boundary& dom, const Boundary& cod, std::size_t steps) {
  Morphism get = random_morphism(rng, sig, dom.fwd, cod.fwd, steps);
  Morphism put = random_morphism(rng, sig, dom.fwd * cod.bwd, dom.bwd, steps);
  return Lens{dom, cod, std::move(get), std::move(put)};
}

Optic random_optic(Rng& rng, const Signature& sig, const Boundary& dom, const Boundary& cod, std::size_t steps) {
  Object m = random_object(rng, sig, 0, 2);
  Morphism fw = random_morphism(rng, sig, dom.fwd, m * cod.fwd, steps);
  Morphism bw = random_morphism(rng, sig, m * cod.bwd, dom.bwd, steps);
  return Optic{dom, cod, std::move(m), std::move(fw), std::move(bw)};
}

std::vector<Lens> random_lens_chain(Rng& rng, const Signature& sig, std::size_t length, std::size_t steps) {
  std::vector<Boundary> bs;
  for (std::size_t i = 0; i <= length; ++i) bs.push_back(random_boundary(rng, sig));
  std::vector<Lens> chain;
  for (std::size_t i = 0; i < length; ++i) chain.push_back(random_lens(rng, sig, bs[i], bs[i + 1], steps));
  return chain;
}

TwoCell random_valid_cell(Rng& rng, const Signature& sig, const Boundary& dom, const Boundary& cod, std::size_t steps) {
  Object m1 = random_object(rng, sig, 0, 2);
  Object m2 = random_object(rng, sig, 0, 2);
  Morphism r = random_morphism(rng, sig, m1, m2, 1);
  Morphism fw = random_morphism(rng, sig, dom.fwd, m1 * cod.fwd, steps);
  Morphism bw = random_morphism(rng, sig, m2 * cod.bwd, dom.bwd, steps);
  Optic o1{dom, cod, m1, fw, seq(ten(r, Morphism::id(cod.bwd)), bw)};
  Optic o2{dom, cod, m2, seq(fw, ten(r, Morphism::id(cod.fwd))), bw};
  return mk_two_cell(o1, o2, r, sig);
}

} // namespace twoptic
