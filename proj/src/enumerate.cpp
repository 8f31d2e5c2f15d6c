#include "twoptic/enumerate.hpp"

#include <stdexcept>
#include <unordered_set>

namespace twoptic {

namespace {

struct TreeHash {
  std::size_t operator()(const CfTreePtr& t) const noexcept { return t->hash; }
};
struct TreeEq {
  bool operator()(const CfTreePtr& a, const CfTreePtr& b) const { return equal_trees(a, b); }
};

} // namespace

std::map<SortId, std::vector<CfTreePtr>> enumerate_trees(const Object& dom, std::size_t height, const Signature& sig,
                                                         std::size_t cap) {
  std::map<SortId, std::vector<CfTreePtr>> level;
  std::unordered_set<CfTreePtr, TreeHash, TreeEq> seen;
  std::size_t total = 0;
  auto add = [&](SortId s, CfTreePtr t) {
    if (!seen.insert(t).second) return;
    if (++total > cap) throw std::length_error("tree enumeration exceeds cap");
    level[s].push_back(std::move(t));
  };
  for (std::uint32_t i = 0; i < dom.size(); ++i) add(dom[i], CfTree::input(i));
  for (std::size_t h = 0; h < height; ++h) {
    const auto previous = level;
    for (GenId g = 0; g < sig.generator_count(); ++g) {
      const Generator& gen = sig.generator(g);
      // Odometer over argument choices from the previous level.
      std::vector<const std::vector<CfTreePtr>*> pools;
      bool empty = false;
      for (SortId s : gen.dom) {
        auto it = previous.find(s);
        if (it == previous.end()) {
          empty = true;
          break;
        }
        pools.push_back(&it->second);
      }
      if (empty) continue;
      std::vector<std::size_t> pick(pools.size(), 0);
      while (true) {
        std::vector<CfTreePtr> args;
        for (std::size_t k = 0; k < pools.size(); ++k) args.push_back((*pools[k])[pick[k]]);
        for (std::uint32_t j = 0; j < gen.cod.size(); ++j) add(gen.cod[j], CfTree::apply(g, j, args));
        std::size_t k = pools.size();
        while (k > 0 && ++pick[k - 1] == pools[k - 1]->size()) pick[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  return level;
}

std::vector<CanonicalForm> enumerate_canonical(const Object& dom, const Object& cod, std::size_t height,
                                               const Signature& sig, std::size_t cap) {
  const auto trees = enumerate_trees(dom, height, sig, cap);
  std::vector<const std::vector<CfTreePtr>*> pools;
  for (SortId s : cod) {
    auto it = trees.find(s);
    if (it == trees.end()) return {};
    pools.push_back(&it->second);
  }
  std::vector<CanonicalForm> out;
  std::vector<std::size_t> pick(pools.size(), 0);
  while (true) {
    CanonicalForm cf{dom, cod, {}};
    for (std::size_t k = 0; k < pools.size(); ++k) cf.outputs.push_back((*pools[k])[pick[k]]);
    out.push_back(std::move(cf));
    if (out.size() > cap) throw std::length_error("canonical-form enumeration exceeds cap");
    std::size_t k = pools.size();
    while (k > 0 && ++pick[k - 1] == pools[k - 1]->size()) pick[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

const std::vector<CanonicalForm>& WitnessCatalog::operator()(const Object& from, const Object& to) {
  auto key = std::make_pair(from, to);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, enumerate_canonical(from, to, height_, sig_)).first;
  return it->second;
}

} // namespace twoptic
