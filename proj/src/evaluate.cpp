#include "twoptic/evaluate.hpp"

#include <cmath>
#include <span>

#include "twoptic/errors.hpp"

namespace twoptic {

std::size_t CostReport::generator_evaluations() const {
  std::size_t n = 0;
  for (const auto& [_, c] : generator_counts) n += c;
  return n;
}

std::size_t CostReport::evaluations_of(const std::function<bool(const std::string&)>& pred) const {
  std::size_t n = 0;
  for (const auto& [name, c] : generator_counts) {
    if (pred(name)) n += c;
  }
  return n;
}

std::size_t CostReport::count(const std::string& generator) const {
  auto it = generator_counts.find(generator);
  return it == generator_counts.end() ? 0 : it->second;
}

void CostReport::merge(const CostReport& other) {
  for (const auto& [k, v] : other.generator_counts) generator_counts[k] += v;
  for (const auto& [k, v] : other.copies_by_object) copies_by_object[k] += v;
  copies += other.copies;
  structural_ops += other.structural_ops;
  peak_residual_slots = std::max(peak_residual_slots, other.peak_residual_slots);
  peak_residual_bytes = std::max(peak_residual_bytes, other.peak_residual_bytes);
}

void check_tuple(const Object& o, const Tuple& values, const Signature& sig) {
  if (values.size() != o.size()) {
    throw CarrierError("expected " + std::to_string(o.size()) + " values for " + sig.render(o) + ", got " +
                       std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < o.size(); ++i) {
    const Sort& s = sig.sort(o[i]);
    if (const auto* fc = std::get_if<FiniteCarrier>(&s.carrier)) {
      const auto* v = std::get_if<std::uint32_t>(&values[i]);
      if (!v || *v >= fc->size) {
        throw CarrierError("value " + std::to_string(i) + " is not an element of finite sort '" + s.name + "'");
      }
    } else {
      const auto* v = std::get_if<std::vector<double>>(&values[i]);
      const auto dim = std::get<RealCarrier>(s.carrier).dimension;
      if (!v || v->size() != dim) {
        throw CarrierError("value " + std::to_string(i) + " is not a vector of dimension " + std::to_string(dim) +
                           " for sort '" + s.name + "'");
      }
    }
  }
}

namespace {

class Evaluator {
public:
  Evaluator(const Signature& sig, CostReport* cost) : sig_(sig), cost_(cost) {}

  void run(const Morphism& f, std::span<const Value> in, Tuple& out) {
    switch (f.kind()) {
      case Kind::generator:
        apply(f.generator(), in, out);
        return;
      case Kind::identity:
        out.insert(out.end(), in.begin(), in.end());
        return;
      case Kind::sequence: {
        Tuple mid;
        run(f.left(), in, mid);
        run(f.right(), mid, out);
        return;
      }
      case Kind::tensor: {
        const std::size_t k = f.left().dom().size();
        run(f.left(), in.first(k), out);
        run(f.right(), in.subspan(k), out);
        return;
      }
      case Kind::copy:
        if (cost_) {
          ++cost_->copies;
          ++cost_->copies_by_object[sig_.render(f.first())];
          ++cost_->structural_ops;
        }
        out.insert(out.end(), in.begin(), in.end());
        out.insert(out.end(), in.begin(), in.end());
        return;
      case Kind::discard:
        structural();
        return;
      case Kind::swap: {
        structural();
        const auto k = static_cast<std::ptrdiff_t>(f.first().size());
        out.insert(out.end(), in.begin() + k, in.end());
        out.insert(out.end(), in.begin(), in.begin() + k);
        return;
      }
      case Kind::proj1:
        structural();
        out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(f.first().size()));
        return;
      case Kind::proj2:
        structural();
        out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(f.first().size()), in.end());
        return;
    }
  }

private:
  void structural() {
    if (cost_) ++cost_->structural_ops;
  }

  void apply(GenId id, std::span<const Value> in, Tuple& out) {
    const Generator& g = sig_.generator(id);
    if (cost_) ++cost_->generator_counts[g.name];
    if (const auto* table = std::get_if<FiniteTable>(&g.semantics)) {
      std::size_t row = 0;
      for (std::size_t i = 0; i < in.size(); ++i) {
        const auto size = std::get<FiniteCarrier>(sig_.sort(g.dom[i]).carrier).size;
        const auto* v = std::get_if<std::uint32_t>(&in[i]);
        if (!v || *v >= size) throw CarrierError("generator '" + g.name + "' applied outside its carrier");
        row = row * size + *v;
      }
      for (std::uint32_t x : table->rows.at(row)) out.emplace_back(x);
    } else if (const auto* prim = std::get_if<RealPrimitive>(&g.semantics)) {
      Tuple result = prim->forward(Tuple(in.begin(), in.end()));
      if (result.size() != g.cod.size()) throw CarrierError("primitive '" + g.name + "' returned wrong arity");
      for (auto& v : result) out.push_back(std::move(v));
    } else {
      throw UnsupportedInterpretation("generator '" + g.name + "' has no semantics");
    }
  }

  const Signature& sig_;
  CostReport* cost_;
};

} // namespace

Tuple evaluate(const Morphism& f, const Tuple& input, const Signature& sig, CostReport& cost) {
  check_tuple(f.dom(), input, sig);
  Tuple out;
  Evaluator(sig, &cost).run(f, input, out);
  return out;
}

Tuple evaluate(const Morphism& f, const Tuple& input, const Signature& sig) {
  check_tuple(f.dom(), input, sig);
  Tuple out;
  Evaluator(sig, nullptr).run(f, input, out);
  return out;
}

void for_each_input(const Object& o, const Signature& sig, const std::function<void(const Tuple&)>& visit) {
  if (!sig.all_finite(o)) throw UnsupportedInterpretation("exhaustive enumeration over real sorts in " + sig.render(o));
  if (sig.cardinality(o, max_exhaustive_inputs) > max_exhaustive_inputs) {
    throw UnsupportedInterpretation("input space of " + sig.render(o) + " exceeds " +
                                    std::to_string(max_exhaustive_inputs) + " tuples");
  }
  std::vector<std::uint32_t> sizes;
  for (SortId s : o) sizes.push_back(std::get<FiniteCarrier>(sig.sort(s).carrier).size);
  Tuple current(o.size(), Value{std::uint32_t{0}});
  while (true) {
    visit(current);
    // Odometer increment, last wire fastest.
    std::size_t i = o.size();
    while (i > 0) {
      --i;
      auto& v = std::get<std::uint32_t>(current[i]);
      if (++v < sizes[i]) break;
      v = 0;
      if (i == 0) return;
    }
    if (o.empty()) return;
  }
}

std::optional<Tuple> find_counterexample(const Morphism& f, const Morphism& g, const Signature& sig) {
  if (f.dom() != g.dom()) throw TypeError("extensional comparison (domains)", f.dom(), g.dom());
  if (f.cod() != g.cod()) throw TypeError("extensional comparison (codomains)", f.cod(), g.cod());
  std::optional<Tuple> witness;
  // for_each_input has no early exit; a found witness short-circuits the rest.
  for_each_input(f.dom(), sig, [&](const Tuple& x) {
    if (witness) return;
    if (evaluate(f, x, sig) != evaluate(g, x, sig)) witness = x;
  });
  return witness;
}

bool eq_extensional(const Morphism& f, const Morphism& g, const Signature& sig) {
  return !find_counterexample(f, g, sig).has_value();
}

bool values_close(const Tuple& a, const Tuple& b, double abs_tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return false;
    if (const auto* x = std::get_if<std::uint32_t>(&a[i])) {
      if (*x != std::get<std::uint32_t>(b[i])) return false;
      continue;
    }
    const auto& x = std::get<std::vector<double>>(a[i]);
    const auto& y = std::get<std::vector<double>>(b[i]);
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!(std::abs(x[k] - y[k]) <= abs_tol)) return false;
    }
  }
  return true;
}

} // namespace twoptic
