#include "twoptic/shared_dag.hpp"

#include <map>
#include <unordered_map>


namespace twoptic {

std::size_t SharedDag::count_nodes(const std::function<bool(GenId)>& pred) const {
  std::size_t n = 0;
  for (const auto& node : nodes) {
    if (pred(node.gen)) ++n;
  }
  return n;
}

namespace {

using NodeKey = std::pair<GenId, std::vector<std::tuple<bool, std::size_t, std::uint32_t>>>;

class Builder {
public:
  explicit Builder(SharedDag& dag) : dag_(dag) {}

  DagPort port(const CfTreePtr& t) {
    if (t->is_input) return DagPort{true, 0, t->index};
    if (auto it = ports_.find(t.get()); it != ports_.end()) return it->second;
    NodeKey key{t->gen, {}};
    std::vector<DagPort> args;
    for (const auto& a : t->args) {
      DagPort p = port(a);
      key.second.emplace_back(p.is_input, p.node, p.index);
      args.push_back(p);
    }
    auto [it, fresh] = index_.try_emplace(std::move(key), dag_.nodes.size());
    if (fresh) dag_.nodes.push_back(DagNode{t->gen, std::move(args)});
    DagPort result{false, it->second, t->index};
    ports_.emplace(t.get(), result);
    return result;
  }

private:
  SharedDag& dag_;
  std::map<NodeKey, std::size_t> index_;
  std::unordered_map<const CfTree*, DagPort> ports_;
};

} // namespace

SharedDag share(const CanonicalForm& cf) {
  SharedDag dag{cf.dom, cf.cod, {}, {}};
  Builder b(dag);
  for (const auto& t : cf.outputs) dag.outputs.push_back(b.port(t));
  return dag;
}

SharedDag share(const Morphism& f) { return share(normalize(f)); }

namespace {

Tuple run(const SharedDag& dag, const Tuple& input, const Signature& sig, CostReport* cost) {
  check_tuple(dag.dom, input, sig);
  std::vector<Tuple> results;
  results.reserve(dag.nodes.size());
  auto fetch = [&](const DagPort& p) -> const Value& {
    return p.is_input ? input.at(p.index) : results.at(p.node).at(p.index);
  };
  for (const auto& node : dag.nodes) {
    const Generator& g = sig.generator(node.gen);
    Tuple args;
    for (const auto& p : node.args) args.push_back(fetch(p));
    Morphism atom = Morphism::gen(node.gen, g.dom, g.cod);
    results.push_back(cost ? evaluate(atom, args, sig, *cost) : evaluate(atom, args, sig));
  }
  Tuple out;
  for (const auto& p : dag.outputs) out.push_back(fetch(p));
  return out;
}

} // namespace

Tuple evaluate(const SharedDag& dag, const Tuple& input, const Signature& sig, CostReport& cost) {
  return run(dag, input, sig, &cost);
}

Tuple evaluate(const SharedDag& dag, const Tuple& input, const Signature& sig) {
  return run(dag, input, sig, nullptr);
}

} // namespace twoptic
