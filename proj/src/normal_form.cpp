#include "twoptic/normal_form.hpp"

#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "twoptic/errors.hpp"

namespace twoptic {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t saturating_add(std::size_t a, std::size_t b) {
  const std::size_t s = a + b;
  return s < a ? SIZE_MAX : s;
}

} // namespace

CfTreePtr CfTree::input(std::uint32_t wire) {
  auto t = std::make_shared<CfTree>();
  t->is_input = true;
  t->index = wire;
  t->hash = mix(1, wire);
  return t;
}

CfTreePtr CfTree::apply(GenId gen, std::uint32_t output, std::vector<CfTreePtr> args) {
  auto t = std::make_shared<CfTree>();
  t->is_input = false;
  t->index = output;
  t->gen = gen;
  std::size_t h = mix(mix(2, gen), output);
  std::size_t occ = 1;
  for (const auto& a : args) {
    h = mix(h, a->hash);
    occ = saturating_add(occ, a->occurrences);
  }
  t->args = std::move(args);
  t->hash = h;
  t->occurrences = occ;
  return t;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const CfTree*, const CfTree*>& p) const noexcept {
    return mix(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
  }
};

// Trees produced by substitution share subtrees, so expanded sizes can be
// exponential; pairs already proven equal are remembered.
class TreeComparator {
public:
  bool equal(const CfTree* a, const CfTree* b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->is_input != b->is_input || a->index != b->index || a->gen != b->gen ||
        a->args.size() != b->args.size() || a->occurrences != b->occurrences) {
      return false;
    }
    if (known_.contains({a, b})) return true;
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (!equal(a->args[i].get(), b->args[i].get())) return false;
    }
    known_.insert({a, b});
    return true;
  }

private:
  std::unordered_set<std::pair<const CfTree*, const CfTree*>, PairHash> known_;
};

void normalize_into(const Morphism& f, std::span<const CfTreePtr> in, std::vector<CfTreePtr>& out) {
  switch (f.kind()) {
    case Kind::generator: {
      std::vector<CfTreePtr> args(in.begin(), in.end());
      for (std::uint32_t j = 0; j < f.cod().size(); ++j) out.push_back(CfTree::apply(f.generator(), j, args));
      return;
    }
    case Kind::identity:
      out.insert(out.end(), in.begin(), in.end());
      return;
    case Kind::sequence: {
      std::vector<CfTreePtr> mid;
      normalize_into(f.left(), in, mid);
      normalize_into(f.right(), mid, out);
      return;
    }
    case Kind::tensor: {
      const std::size_t k = f.left().dom().size();
      normalize_into(f.left(), in.first(k), out);
      normalize_into(f.right(), in.subspan(k), out);
      return;
    }
    case Kind::copy:
      out.insert(out.end(), in.begin(), in.end());
      out.insert(out.end(), in.begin(), in.end());
      return;
    case Kind::discard:
      return;
    case Kind::swap: {
      const std::size_t k = f.first().size();
      out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(k), in.end());
      out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(k));
      return;
    }
    case Kind::proj1: {
      const std::size_t k = f.first().size();
      out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(k));
      return;
    }
    case Kind::proj2: {
      const std::size_t k = f.first().size();
      out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(k), in.end());
      return;
    }
  }
}

std::vector<CfTreePtr> inputs(std::size_t n) {
  std::vector<CfTreePtr> in;
  in.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) in.push_back(CfTree::input(i));
  return in;
}

class Substitution {
public:
  explicit Substitution(const std::vector<CfTreePtr>& values) : values_(values) {}

  CfTreePtr operator()(const CfTreePtr& t) {
    if (t->is_input) return values_.at(t->index);
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    std::vector<CfTreePtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) args.push_back((*this)(a));
    auto result = CfTree::apply(t->gen, t->index, std::move(args));
    memo_.emplace(t.get(), result);
    return result;
  }

private:
  const std::vector<CfTreePtr>& values_;
  std::unordered_map<const CfTree*, CfTreePtr> memo_;
};

CfTreePtr shift(const CfTreePtr& t, std::uint32_t by, std::unordered_map<const CfTree*, CfTreePtr>& memo) {
  if (t->is_input) return CfTree::input(t->index + by);
  if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
  std::vector<CfTreePtr> args;
  for (const auto& a : t->args) args.push_back(shift(a, by, memo));
  auto r = CfTree::apply(t->gen, t->index, std::move(args));
  memo.emplace(t.get(), r);
  return r;
}

} // namespace

bool equal_trees(const CfTreePtr& a, const CfTreePtr& b) {
  TreeComparator cmp;
  return cmp.equal(a.get(), b.get());
}

bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
  if (a.dom != b.dom || a.cod != b.cod || a.outputs.size() != b.outputs.size()) return false;
  TreeComparator cmp;
  for (std::size_t i = 0; i < a.outputs.size(); ++i) {
    if (!cmp.equal(a.outputs[i].get(), b.outputs[i].get())) return false;
  }
  return true;
}

std::size_t CanonicalForm::hash() const noexcept {
  std::size_t h = mix(ObjectHash{}(dom), ObjectHash{}(cod));
  for (const auto& t : outputs) h = mix(h, t->hash);
  return h;
}

std::size_t CanonicalForm::occurrences() const {
  std::size_t n = 0;
  for (const auto& t : outputs) n = saturating_add(n, t->occurrences);
  return n;
}

namespace {

std::size_t count_matching(const CfTree& t, const std::function<bool(GenId)>& pred) {
  if (t.is_input) return 0;
  std::size_t n = pred(t.gen) ? 1 : 0;
  for (const auto& a : t.args) n = saturating_add(n, count_matching(*a, pred));
  return n;
}

} // namespace

std::size_t CanonicalForm::occurrences(const std::function<bool(GenId)>& pred) const {
  std::size_t n = 0;
  for (const auto& t : outputs) n = saturating_add(n, count_matching(*t, pred));
  return n;
}

CanonicalForm normalize(const Morphism& f) {
  CanonicalForm cf{f.dom(), f.cod(), {}};
  const auto in = inputs(f.dom().size());
  cf.outputs.reserve(f.cod().size());
  normalize_into(f, in, cf.outputs);
  return cf;
}

CanonicalForm compose(const CanonicalForm& f, const CanonicalForm& g) {
  if (f.cod != g.dom) throw TypeError("canonical composition", f.cod, g.dom);
  CanonicalForm cf{f.dom, g.cod, {}};
  Substitution subst(f.outputs);
  for (const auto& t : g.outputs) cf.outputs.push_back(subst(t));
  return cf;
}

CanonicalForm tensor(const CanonicalForm& f, const CanonicalForm& g) {
  CanonicalForm cf{f.dom * g.dom, f.cod * g.cod, f.outputs};
  std::unordered_map<const CfTree*, CfTreePtr> memo;
  const auto by = static_cast<std::uint32_t>(f.dom.size());
  for (const auto& t : g.outputs) cf.outputs.push_back(shift(t, by, memo));
  return cf;
}

bool equal_morphisms(const Morphism& f, const Morphism& g) {
  return f.dom() == g.dom() && f.cod() == g.cod() && normalize(f) == normalize(g);
}

namespace {

Morphism tuple_term(const Object& dom, const std::vector<CfTreePtr>& trees, const Signature& sig);

Morphism tree_term(const Object& dom, const CfTreePtr& t, const Signature& sig) {
  if (t->is_input) return select(dom, {t->index});
  const Generator& g = sig.generator(t->gen);
  if (g.dom.size() != t->args.size() || t->index >= g.cod.size()) {
    throw std::invalid_argument("canonical tree does not match generator '" + g.name + "'");
  }
  Morphism args = tuple_term(dom, t->args, sig);
  Morphism applied = seq(args, Morphism::gen(sig, t->gen));
  if (g.cod.size() == 1) return applied;
  return seq(applied, select(g.cod, {t->index}));
}

Morphism tuple_term(const Object& dom, const std::vector<CfTreePtr>& trees, const Signature& sig) {
  bool all_inputs = true;
  std::vector<std::size_t> wires;
  for (const auto& t : trees) {
    all_inputs = all_inputs && t->is_input;
    if (t->is_input) wires.push_back(t->index);
  }
  if (all_inputs) return select(dom, wires);
  Morphism acc = tree_term(dom, trees.back(), sig);
  for (std::size_t k = trees.size() - 1; k-- > 0;) acc = pairing(tree_term(dom, trees[k], sig), acc);
  return acc;
}

} // namespace

Morphism read_back(const CanonicalForm& cf, const Signature& sig) {
  Morphism m = tuple_term(cf.dom, cf.outputs, sig);
  if (m.cod() != cf.cod) throw TypeError("read_back", cf.cod, m.cod());
  return m;
}

std::string to_string(const CfTreePtr& t, const Signature& sig) {
  if (t->is_input) return "x" + std::to_string(t->index);
  const Generator& g = sig.generator(t->gen);
  std::string out = g.name;
  if (g.cod.size() != 1) out += "." + std::to_string(t->index);
  out += '(';
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t->args[i], sig);
  }
  out += ')';
  return out;
}

std::string to_string(const CanonicalForm& cf, const Signature& sig) {
  std::string out = "[";
  for (std::size_t i = 0; i < cf.outputs.size(); ++i) {
    if (i) out += ", ";
    out += to_string(cf.outputs[i], sig);
  }
  out += ']';
  return out;
}

namespace {

void flatten_into(const Morphism& f, const Object& left, const Object& right, std::vector<Layer>& out) {
  switch (f.kind()) {
    case Kind::identity:
      return;
    case Kind::sequence:
      flatten_into(f.left(), left, right, out);
      flatten_into(f.right(), left, right, out);
      return;
    case Kind::tensor:
      flatten_into(f.left(), left, f.right().dom() * right, out);
      flatten_into(f.right(), left * f.left().cod(), right, out);
      return;
    default:
      out.push_back(Layer{left, f, right});
      return;
  }
}

} // namespace

std::vector<Layer> flatten(const Morphism& f) {
  std::vector<Layer> layers;
  flatten_into(f, Object{}, Object{}, layers);
  return layers;
}

bool same_flattening(const Morphism& f, const Morphism& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) return false;
  const auto a = flatten(f);
  const auto b = flatten(g);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].left != b[i].left || a[i].right != b[i].right || !same_term(a[i].atom, b[i].atom)) return false;
  }
  return true;
}

std::string flattening_key(const Morphism& f) {
  std::string key = debug_string(f.dom()) + ">" + debug_string(f.cod()) + ":";
  for (const Layer& l : flatten(f)) {
    key += debug_string(l.left) + "|" + std::to_string(static_cast<int>(l.atom.kind()));
    if (l.atom.kind() == Kind::generator) key += "g" + std::to_string(l.atom.generator());
    key += "(" + debug_string(l.atom.first()) + "," + debug_string(l.atom.second()) + ")|" + debug_string(l.right) + ";";
  }
  return key;
}

} // namespace twoptic
