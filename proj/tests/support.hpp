#pragma once

#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "twoptic/evaluate.hpp"
#include "twoptic/normal_form.hpp"
#include "twoptic/signature.hpp"

namespace twoptic::testing {

/// One sort A of the given size, n : A -> A (swap of 0 and 1), c : 1 -> A (constant 1).
inline Signature unary_signature(std::uint32_t size = 2) {
  Signature sig;
  const SortId a = sig.add_sort("A", FiniteCarrier{size});
  FiniteTable n;
  for (std::uint32_t v = 0; v < size; ++v) n.rows.push_back({v < 2 ? 1 - v : v});
  sig.add_generator("n", Object{a}, Object{a}, n);
  sig.add_generator("c", Object{}, Object{a}, FiniteTable{{{1}}});
  return sig;
}

/// Sorts A (3), B (2), C (3) with f : A -> B, g : B -> C, h : A*B -> C,
/// s : A -> B*C (two outputs), k : 1 -> A.
inline Signature small_signature() {
  Signature sig;
  const SortId a = sig.add_sort("A", FiniteCarrier{3});
  const SortId b = sig.add_sort("B", FiniteCarrier{2});
  const SortId c = sig.add_sort("C", FiniteCarrier{3});
  sig.add_generator("f", Object{a}, Object{b}, FiniteTable{{{0}, {1}, {1}}});
  sig.add_generator("g", Object{b}, Object{c}, FiniteTable{{{2}, {0}}});
  sig.add_generator("h", Object{a, b}, Object{c}, FiniteTable{{{0}, {1}, {2}, {0}, {1}, {1}}});
  sig.add_generator("s", Object{a}, Object{b, c}, FiniteTable{{{1, 0}, {0, 2}, {1, 1}}});
  sig.add_generator("k", Object{}, Object{a}, FiniteTable{{{2}}});
  return sig;
}

/// Terms up to a nesting depth over a one-sort signature, restricted to
/// objects of at most `width` wires and deduplicated by strict-monoidal
/// flattening (which is independent of the normalizer).
inline std::vector<Morphism> enumerate_terms(const Signature& sig, SortId a, std::size_t depth, std::size_t width,
                                             std::size_t cap) {
  std::vector<Object> objs;
  for (std::size_t k = 0; k <= width; ++k) objs.push_back(Object(std::vector<SortId>(k, a)));
  std::vector<Morphism> all;
  std::unordered_set<std::string> seen;
  auto add = [&](const Morphism& m) {
    if (m.dom().size() > width || m.cod().size() > width) return false;
    if (!seen.insert(debug_string(m.dom()) + ">" + debug_string(m.cod()) + ":" + flattening_key(m)).second) return false;
    all.push_back(m);
    return true;
  };
  for (GenId g = 0; g < sig.generator_count(); ++g) add(Morphism::gen(sig, g));
  const Object one{a};
  add(Morphism::id(one));
  add(Morphism::copy(one));
  add(Morphism::discard(one));
  add(Morphism::swap(one, one));
  add(Morphism::proj1(one, one));
  add(Morphism::proj2(one, one));
  std::size_t begin = 0;
  for (std::size_t d = 1; d < depth; ++d) {
    const std::size_t end = all.size();
    for (std::size_t i = 0; i < end; ++i) {
      for (std::size_t j = (i < begin ? begin : 0); j < end; ++j) {
        if (all.size() > cap) return all;
        const Morphism f = all[i];
        const Morphism g = all[j];
        if (f.cod() == g.dom()) add(seq(f, g));
        if (f.dom().size() + g.dom().size() <= width && f.cod().size() + g.cod().size() <= width) add(ten(f, g));
        if (j >= begin && i < begin) {
          if (g.cod() == f.dom()) add(seq(g, f));
          if (g.dom().size() + f.dom().size() <= width && g.cod().size() + f.cod().size() <= width) add(ten(g, f));
        }
      }
    }
    begin = end;
  }
  return all;
}

/// The function a term denotes, as the concatenation of its outputs over all inputs.
inline std::vector<std::uint32_t> table_of(const Morphism& f, const Signature& sig) {
  std::vector<std::uint32_t> out;
  for_each_input(f.dom(), sig, [&](const Tuple& x) {
    for (const Value& v : evaluate(f, x, sig)) out.push_back(std::get<std::uint32_t>(v));
  });
  return out;
}

/// Every interpretation of a one-sort signature over carrier `size` whose
/// generators all have table semantics. Returns the reinterpreted signatures.
inline std::vector<Signature> all_interpretations(const Signature& sig, std::uint32_t size) {
  std::vector<Signature> out{sig.with_carrier(0, FiniteCarrier{size})};
  for (GenId g = 0; g < sig.generator_count(); ++g) {
    const Generator& gen = sig.generator(g);
    std::size_t rows = 1;
    for (std::size_t k = 0; k < gen.dom.size(); ++k) rows *= size;
    std::size_t cells = rows * gen.cod.size();
    std::size_t tables = 1;
    for (std::size_t k = 0; k < cells; ++k) tables *= size;
    std::vector<Signature> next;
    for (const Signature& base : out) {
      for (std::size_t t = 0; t < tables; ++t) {
        FiniteTable table;
        std::size_t code = t;
        for (std::size_t r = 0; r < rows; ++r) {
          std::vector<std::uint32_t> row;
          for (std::size_t k = 0; k < gen.cod.size(); ++k) {
            row.push_back(static_cast<std::uint32_t>(code % size));
            code /= size;
          }
          table.rows.push_back(std::move(row));
        }
        next.push_back(base.with_semantics(g, std::move(table)));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Get evaluations of one run of a left-associated chain, by unfolding the
/// composition rule: the composite get runs n gets; the composite put runs
/// graph(get of the first n-1), i.e. n-1 gets, then the put of the first n-1.
inline std::size_t left_chain_gets(std::size_t n) {
  std::size_t put = 0;
  for (std::size_t k = 2; k <= n; ++k) put += k - 1;
  return n + put;
}

/// Right association: the outer put only recomputes get1 once per level.
inline std::size_t right_chain_gets(std::size_t n) { return n + (n - 1); }

} // namespace twoptic::testing
