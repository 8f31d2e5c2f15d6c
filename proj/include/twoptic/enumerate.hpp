#pragma once

#include <map>
#include <vector>

#include "twoptic/normal_form.hpp"

namespace twoptic {

/// Distinct trees over the wires of `dom`, per sort, with at most `height`
/// nested generator applications.
std::map<SortId, std::vector<CfTreePtr>> enumerate_trees(const Object& dom, std::size_t height, const Signature& sig,
                                                         std::size_t cap = 200'000);

/// Every canonical form dom -> cod of the given height, i.e. every morphism of
/// the free category up to equality. Throws std::length_error past `cap`.
std::vector<CanonicalForm> enumerate_canonical(const Object& dom, const Object& cod, std::size_t height,
                                               const Signature& sig, std::size_t cap = 1'000'000);

/// Memoized enumerate_canonical; usable as a WitnessSource.
class WitnessCatalog {
public:
  WitnessCatalog(const Signature& sig, std::size_t height) : sig_(sig), height_(height) {}

  const std::vector<CanonicalForm>& operator()(const Object& from, const Object& to);
  std::size_t height() const noexcept { return height_; }

private:
  const Signature& sig_;
  std::size_t height_;
  std::map<std::pair<Object, Object>, std::vector<CanonicalForm>> cache_;
};

} // namespace twoptic
