#include "twoptic/object.hpp"

#include <algorithm>
#include <stdexcept>

#include "twoptic/errors.hpp"

namespace twoptic {

Object Object::slice(std::size_t pos, std::size_t count) const {
  if (pos + count > sorts_.size()) {
    throw std::out_of_range("Object::slice past end");
  }
  return Object(std::vector<SortId>(sorts_.begin() + static_cast<std::ptrdiff_t>(pos),
                                    sorts_.begin() + static_cast<std::ptrdiff_t>(pos + count)));
}

bool Object::starts_with(const Object& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.begin(), prefix.end(), begin());
}

Object operator*(const Object& a, const Object& b) {
  std::vector<SortId> sorts = a.sorts_;
  sorts.insert(sorts.end(), b.sorts_.begin(), b.sorts_.end());
  return Object(std::move(sorts));
}

std::size_t ObjectHash::operator()(const Object& o) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ o.size();
  for (SortId s : o) {
    h ^= std::hash<SortId>{}(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string debug_string(const Object& o) {
  if (o.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) out += '*';
    out += '#' + std::to_string(o[i]);
  }
  return out;
}

TypeError::TypeError(std::string where, Object expected, Object actual)
    : std::runtime_error("type mismatch in " + where + ": expected " + debug_string(expected) +
                         ", got " + debug_string(actual)),
      where_(std::move(where)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

} // namespace twoptic
