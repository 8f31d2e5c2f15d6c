#include "twoptic/morphism.hpp"

#include <stdexcept>

#include "twoptic/errors.hpp"

namespace twoptic {

struct Morphism::Node {
  Kind kind;
  Object dom;
  Object cod;
  GenId gen = 0;
  Object first{};
  Object second{};
  std::shared_ptr<const Node> left{};
  std::shared_ptr<const Node> right{};
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

} // namespace

namespace {

template <class N>
N finish(N n) {
  std::size_t h = mix(static_cast<std::size_t>(n.kind), n.gen);
  h = mix(h, ObjectHash{}(n.first));
  h = mix(h, ObjectHash{}(n.second));
  h = mix(h, ObjectHash{}(n.dom));
  h = mix(h, ObjectHash{}(n.cod));
  n.size = 1;
  if (n.left) {
    h = mix(h, n.left->hash);
    n.size += n.left->size;
  }
  if (n.right) {
    h = mix(h, n.right->hash);
    n.size += n.right->size;
  }
  n.hash = h;
  return n;
}

} // namespace

Morphism Morphism::make(Node node) { return Morphism(std::make_shared<const Node>(finish(std::move(node)))); }

Morphism Morphism::gen(const Signature& sig, GenId id) {
  const Generator& g = sig.generator(id);
  return gen(id, g.dom, g.cod);
}

Morphism Morphism::gen(GenId id, Object dom, Object cod) {
  return make(Node{Kind::generator, std::move(dom), std::move(cod), id});
}

Morphism Morphism::id(Object a) { return make(Node{Kind::identity, a, a, 0, a}); }

Morphism Morphism::copy(Object a) { return make(Node{Kind::copy, a, a * a, 0, a}); }

Morphism Morphism::discard(Object a) { return make(Node{Kind::discard, a, Object{}, 0, a}); }

Morphism Morphism::swap(Object a, Object b) {
  return make(Node{Kind::swap, a * b, b * a, 0, a, b});
}

Morphism Morphism::proj1(Object a, Object b) { return make(Node{Kind::proj1, a * b, a, 0, a, b}); }

Morphism Morphism::proj2(Object a, Object b) { return make(Node{Kind::proj2, a * b, b, 0, a, b}); }

Kind Morphism::kind() const noexcept { return node_->kind; }
const Object& Morphism::dom() const noexcept { return node_->dom; }
const Object& Morphism::cod() const noexcept { return node_->cod; }
std::size_t Morphism::size() const noexcept { return node_->size; }
std::size_t Morphism::hash() const noexcept { return node_->hash; }

GenId Morphism::generator() const {
  if (node_->kind != Kind::generator) throw std::logic_error("Morphism::generator on non-generator node");
  return node_->gen;
}

Morphism Morphism::left() const {
  if (!node_->left) throw std::logic_error("Morphism::left on leaf node");
  return Morphism(node_->left);
}

Morphism Morphism::right() const {
  if (!node_->right) throw std::logic_error("Morphism::right on leaf node");
  return Morphism(node_->right);
}

const Object& Morphism::first() const { return node_->first; }
const Object& Morphism::second() const { return node_->second; }

Morphism seq(const Morphism& f, const Morphism& g) {
  if (f.cod() != g.dom()) throw TypeError("';' (codomain of left vs domain of right)", f.cod(), g.dom());
  return Morphism::make(Morphism::Node{Kind::sequence, f.dom(), g.cod(), 0, {}, {}, f.node_, g.node_});
}

Morphism seq(std::initializer_list<Morphism> fs) {
  if (fs.size() == 0) throw std::invalid_argument("seq of an empty list");
  auto it = fs.begin();
  Morphism acc = *it++;
  for (; it != fs.end(); ++it) acc = seq(acc, *it);
  return acc;
}

Morphism ten(const Morphism& f, const Morphism& g) {
  return Morphism::make(
      Morphism::Node{Kind::tensor, f.dom() * g.dom(), f.cod() * g.cod(), 0, {}, {}, f.node_, g.node_});
}

bool same_term(const Morphism& f, const Morphism& g) {
  const Morphism::Node* a = f.node_.get();
  const Morphism::Node* b = g.node_.get();
  if (a == b) return true;
  if (a->hash != b->hash || a->size != b->size || a->kind != b->kind || a->dom != b->dom || a->cod != b->cod ||
      a->gen != b->gen || a->first != b->first || a->second != b->second) {
    return false;
  }
  if (a->left && !same_term(Morphism(a->left), Morphism(b->left))) return false;
  if (a->right && !same_term(Morphism(a->right), Morphism(b->right))) return false;
  return true;
}

Morphism graph(const Morphism& f) { return seq(Morphism::copy(f.dom()), ten(Morphism::id(f.dom()), f)); }

Morphism pairing(const Morphism& f, const Morphism& g) {
  if (f.dom() != g.dom()) throw TypeError("pairing (domains)", f.dom(), g.dom());
  return seq(Morphism::copy(f.dom()), ten(f, g));
}

namespace {

// A -> A[i], discarding everything else.
Morphism wire(const Object& a, std::size_t i) {
  const Object before = a.slice(0, i);
  const Object after = a.slice(i + 1, a.size() - i - 1);
  const Object mid = a.slice(i, 1);
  return ten(ten(Morphism::discard(before), Morphism::id(mid)), Morphism::discard(after));
}

} // namespace

Morphism select(const Object& a, const std::vector<std::size_t>& wires) {
  for (std::size_t w : wires) {
    if (w >= a.size()) throw std::out_of_range("select: wire index out of range");
  }
  if (wires.empty()) return Morphism::discard(a);
  // Identity selection stays an identity term.
  bool identity = wires.size() == a.size();
  for (std::size_t i = 0; identity && i < wires.size(); ++i) identity = wires[i] == i;
  if (identity) return Morphism::id(a);
  Morphism acc = wire(a, wires.back());
  for (std::size_t k = wires.size() - 1; k-- > 0;) {
    acc = pairing(wire(a, wires[k]), acc);
  }
  return acc;
}

std::size_t count_generators(const Morphism& f) {
  switch (f.kind()) {
    case Kind::generator:
      return 1;
    case Kind::sequence:
    case Kind::tensor:
      return count_generators(f.left()) + count_generators(f.right());
    default:
      return 0;
  }
}

std::size_t count_generators(const Morphism& f, GenId id) {
  switch (f.kind()) {
    case Kind::generator:
      return f.generator() == id ? 1 : 0;
    case Kind::sequence:
    case Kind::tensor:
      return count_generators(f.left(), id) + count_generators(f.right(), id);
    default:
      return 0;
  }
}

namespace {

// Precedence: 0 = sequence, 1 = tensor, 2 = atom.
void render(const Morphism& f, const Signature& sig, int context, std::string& out) {
  const int own = f.kind() == Kind::sequence ? 0 : f.kind() == Kind::tensor ? 1 : 2;
  const bool parens = own < context;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::generator:
      out += sig.generator(f.generator()).name;
      break;
    case Kind::identity:
      out += "id[" + sig.render(f.first()) + "]";
      break;
    case Kind::copy:
      out += "copy[" + sig.render(f.first()) + "]";
      break;
    case Kind::discard:
      out += "del[" + sig.render(f.first()) + "]";
      break;
    case Kind::swap:
      out += "swap[" + sig.render(f.first()) + "," + sig.render(f.second()) + "]";
      break;
    case Kind::proj1:
      out += "pi1[" + sig.render(f.first()) + "," + sig.render(f.second()) + "]";
      break;
    case Kind::proj2:
      out += "pi2[" + sig.render(f.first()) + "," + sig.render(f.second()) + "]";
      break;
    case Kind::sequence:
      render(f.left(), sig, 0, out);
      out += " ; ";
      // ';' is parsed left-associatively, so a right-nested sequence needs parentheses.
      render(f.right(), sig, 1, out);
      break;
    case Kind::tensor:
      render(f.left(), sig, 1, out);
      out += " * ";
      render(f.right(), sig, 2, out);
      break;
  }
  if (parens) out += ')';
}

} // namespace

std::string to_string(const Morphism& f, const Signature& sig) {
  std::string out;
  render(f, sig, 0, out);
  return out;
}

} // namespace twoptic
