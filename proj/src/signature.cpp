#include "twoptic/signature.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "twoptic/errors.hpp"

namespace twoptic {

SortId Signature::add_sort(std::string name, Carrier carrier) {
  if (name.empty()) throw std::invalid_argument("sort name must be non-empty");
  if (sort_index_.contains(name)) throw std::invalid_argument("duplicate sort '" + name + "'");
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, FiniteCarrier>) {
          if (c.size < 1) throw std::invalid_argument("sort '" + name + "': finite carrier size must be >= 1");
        } else {
          if (c.dimension < 1) throw std::invalid_argument("sort '" + name + "': real dimension must be >= 1");
        }
      },
      carrier);
  auto id = static_cast<SortId>(sorts_.size());
  sort_index_.emplace(name, id);
  sorts_.push_back(Sort{std::move(name), carrier});
  return id;
}

GenId Signature::add_generator(std::string name, Object dom, Object cod, Semantics semantics) {
  if (name.empty()) throw std::invalid_argument("generator name must be non-empty");
  if (generator_index_.contains(name)) throw std::invalid_argument("duplicate generator '" + name + "'");
  for (const Object* o : {&dom, &cod}) {
    for (SortId s : *o) {
      if (s >= sorts_.size()) throw std::invalid_argument("generator '" + name + "' references unknown sort");
    }
  }
  Generator g{std::move(name), std::move(dom), std::move(cod), std::move(semantics)};
  check_semantics(g);
  auto id = static_cast<GenId>(generators_.size());
  generator_index_.emplace(g.name, id);
  generators_.push_back(std::move(g));
  return id;
}

void Signature::check_semantics(const Generator& g) const {
  if (const auto* table = std::get_if<FiniteTable>(&g.semantics)) {
    if (!all_finite(g.dom) || !all_finite(g.cod)) {
      throw std::invalid_argument("generator '" + g.name + "': tables need finite sorts");
    }
    const std::uint64_t rows = cardinality(g.dom, 1'000'000);
    if (rows > 1'000'000 || table->rows.size() != rows) {
      throw std::invalid_argument("generator '" + g.name + "': table has " + std::to_string(table->rows.size()) +
                                  " rows, expected " + std::to_string(rows));
    }
    for (std::size_t r = 0; r < table->rows.size(); ++r) {
      const auto& row = table->rows[r];
      if (row.size() != g.cod.size()) {
        throw std::invalid_argument("generator '" + g.name + "': row " + std::to_string(r) + " has " +
                                    std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(g.cod.size()));
      }
      for (std::size_t j = 0; j < row.size(); ++j) {
        const auto size = std::get<FiniteCarrier>(sorts_[g.cod[j]].carrier).size;
        if (row[j] >= size) {
          throw std::invalid_argument("generator '" + g.name + "': row " + std::to_string(r) + " value " +
                                      std::to_string(row[j]) + " outside carrier of size " + std::to_string(size));
        }
      }
    }
  }
}

std::optional<SortId> Signature::find_sort(std::string_view name) const {
  auto it = sort_index_.find(name);
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<GenId> Signature::find_generator(std::string_view name) const {
  auto it = generator_index_.find(name);
  if (it == generator_index_.end()) return std::nullopt;
  return it->second;
}

SortId Signature::sort_id(std::string_view name) const {
  if (auto id = find_sort(name)) return *id;
  throw std::invalid_argument("unknown sort '" + std::string(name) + "'");
}

GenId Signature::generator_id(std::string_view name) const {
  if (auto id = find_generator(name)) return *id;
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

Object Signature::object(std::initializer_list<std::string_view> names) const {
  std::vector<SortId> sorts;
  for (auto n : names) sorts.push_back(sort_id(n));
  return Object(std::move(sorts));
}

std::string Signature::render(const Object& o) const {
  if (o.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) out += '*';
    out += o[i] < sorts_.size() ? sorts_[o[i]].name : "#" + std::to_string(o[i]);
  }
  return out;
}

bool Signature::is_finite(SortId id) const { return std::holds_alternative<FiniteCarrier>(sorts_.at(id).carrier); }

bool Signature::all_finite(const Object& o) const {
  for (SortId s : o) {
    if (!is_finite(s)) return false;
  }
  return true;
}

std::uint64_t Signature::cardinality(const Object& o, std::uint64_t cap) const {
  std::uint64_t n = 1;
  for (SortId s : o) {
    const auto* fc = std::get_if<FiniteCarrier>(&sorts_.at(s).carrier);
    if (!fc) throw UnsupportedInterpretation("sort '" + sorts_[s].name + "' is not finite");
    n *= fc->size;
    if (n > cap) return cap + 1;
  }
  return n;
}

std::size_t Signature::bytes(const Object& o) const {
  std::size_t total = 0;
  for (SortId s : o) {
    const auto& c = sorts_.at(s).carrier;
    if (const auto* fc = std::get_if<FiniteCarrier>(&c)) {
      std::size_t bits = 0;
      while ((std::uint64_t{1} << bits) < fc->size) ++bits;
      total += std::max<std::size_t>(1, (bits + 7) / 8);
    } else {
      total += 8 * std::get<RealCarrier>(c).dimension;
    }
  }
  return total;
}

Signature Signature::with_semantics(GenId id, Semantics semantics) const {
  Signature copy = *this;
  Generator& g = copy.generators_.at(id);
  g.semantics = std::move(semantics);
  copy.check_semantics(g);
  return copy;
}

Signature Signature::with_carrier(SortId id, Carrier carrier) const {
  Signature copy = *this;
  copy.sorts_.at(id).carrier = carrier;
  return copy;
}

namespace {

struct BuiltinSpec {
  std::string name;
  std::vector<double> params;
};

BuiltinSpec parse_builtin(std::string_view text) {
  BuiltinSpec spec;
  auto open = text.find('(');
  spec.name = std::string(text.substr(0, open));
  if (open == std::string_view::npos) return spec;
  if (text.back() != ')') throw std::invalid_argument("builtin '" + std::string(text) + "': missing ')'");
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  while (!args.empty()) {
    auto comma = args.find(',');
    std::string item(args.substr(0, comma));
    try {
      std::size_t used = 0;
      spec.params.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("builtin '" + std::string(text) + "': bad parameter '" + item + "'");
    }
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return spec;
}

std::uint32_t real_dim(const Signature& sig, SortId s, std::string_view what) {
  const auto* rc = std::get_if<RealCarrier>(&sig.sort(s).carrier);
  if (!rc) throw std::invalid_argument(std::string(what) + ": sort '" + sig.sort(s).name + "' is not real");
  return rc->dimension;
}

const std::vector<double>& real(const Value& v) {
  const auto* r = std::get_if<std::vector<double>>(&v);
  if (!r) throw CarrierError("real primitive applied to a finite value");
  return *r;
}


// Unary pointwise map y_i = f(x_i) and its transpose-derivative dx_i = f'(x_i) * dy_i.
RealPrimitive pointwise(std::string builtin, std::function<double(double)> f) {
  RealPrimitive p;
  p.builtin = std::move(builtin);
  p.forward = [f = std::move(f)](const Tuple& in) {
    std::vector<double> out = real(in.at(0));
    for (double& x : out) x = f(x);
    return Tuple{std::move(out)};
  };
  return p;
}

RealPrimitive pointwise_vjp(std::string builtin, std::function<double(double)> df) {
  RealPrimitive p;
  p.builtin = std::move(builtin);
  p.forward = [df = std::move(df)](const Tuple& in) {
    const auto& x = real(in.at(0));
    std::vector<double> out = real(in.at(1));
    if (out.size() != x.size()) throw CarrierError("vjp: dimension mismatch");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= df(x[i]);
    return Tuple{std::move(out)};
  };
  return p;
}

} // namespace

RealPrimitive make_builtin(const Signature& sig, std::string_view text, const Object& dom, const Object& cod) {
  const BuiltinSpec spec = parse_builtin(text);
  const std::string label(text);
  auto need = [&](std::size_t dom_n, std::size_t cod_n, std::size_t params) {
    if (dom.size() != dom_n || cod.size() != cod_n) {
      throw std::invalid_argument("builtin '" + label + "' expects " + std::to_string(dom_n) + " input and " +
                                  std::to_string(cod_n) + " output sorts");
    }
    if (spec.params.size() != params) {
      throw std::invalid_argument("builtin '" + label + "' expects " + std::to_string(params) + " parameters");
    }
    std::uint32_t d = 0;
    for (const Object* o : {&dom, &cod}) {
      for (SortId s : *o) {
        auto k = real_dim(sig, s, label);
        if (d != 0 && k != d) throw std::invalid_argument("builtin '" + label + "': dimension mismatch");
        d = k;
      }
    }
  };

  if (spec.name == "const") {
    if (!dom.empty() || cod.size() != 1) throw std::invalid_argument("builtin 'const' has type 1 -> R^d");
    const auto d = real_dim(sig, cod[0], label);
    std::vector<double> v = spec.params;
    if (v.size() == 1) v.assign(d, v[0]);
    if (v.size() != d) throw std::invalid_argument("builtin '" + label + "': expected " + std::to_string(d) + " values");
    RealPrimitive p;
    p.builtin = label;
    p.forward = [v](const Tuple&) { return Tuple{v}; };
    return p;
  }
  if (spec.name == "add") {
    need(2, 1, 0);
    RealPrimitive p;
    p.builtin = label;
    p.forward = [](const Tuple& in) {
      std::vector<double> out = real(in.at(0));
      const auto& y = real(in.at(1));
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += y.at(i);
      return Tuple{std::move(out)};
    };
    return p;
  }
  if (spec.name == "tanh_affine" || spec.name == "tanh_affine_vjp") {
    const bool vjp = spec.name.ends_with("_vjp");
    need(vjp ? 2 : 1, 1, 2);
    const double w = spec.params[0];
    const double b = spec.params[1];
    if (!vjp) return pointwise(label, [w, b](double x) { return std::tanh(w * x + b); });
    return pointwise_vjp(label, [w, b](double x) {
      const double t = std::tanh(w * x + b);
      return w * (1.0 - t * t);
    });
  }
  if (spec.name == "scale" || spec.name == "scale_vjp") {
    const bool vjp = spec.name.ends_with("_vjp");
    need(vjp ? 2 : 1, 1, 1);
    const double c = spec.params[0];
    if (!vjp) return pointwise(label, [c](double x) { return c * x; });
    return pointwise_vjp(label, [c](double) { return c; });
  }
  if (spec.name == "sin" || spec.name == "sin_vjp") {
    const bool vjp = spec.name.ends_with("_vjp");
    need(vjp ? 2 : 1, 1, 0);
    if (!vjp) return pointwise(label, [](double x) { return std::sin(x); });
    return pointwise_vjp(label, [](double x) { return std::cos(x); });
  }
  if (spec.name == "square" || spec.name == "square_vjp") {
    const bool vjp = spec.name.ends_with("_vjp");
    need(vjp ? 2 : 1, 1, 0);
    if (!vjp) return pointwise(label, [](double x) { return x * x; });
    return pointwise_vjp(label, [](double x) { return 2.0 * x; });
  }
  throw std::invalid_argument("unknown builtin '" + label + "'");
}

} // namespace twoptic
