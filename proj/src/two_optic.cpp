#include "twoptic/two_optic.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "twoptic/errors.hpp"
#include "twoptic/evaluate.hpp"

namespace twoptic {

std::string to_string(CellFailure f) {
  switch (f) {
    case CellFailure::boundary: return "boundary-mismatch";
    case CellFailure::witness_type: return "witness-type";
    case CellFailure::left_square: return "invalid-left-square";
    case CellFailure::right_square: return "invalid-right-square";
  }
  return "unknown";
}

InvalidCell::InvalidCell(CellRejection r)
    : std::runtime_error(to_string(r.failure) + ": " + r.detail), rejection_(std::move(r)) {}

Morphism left_square(const Optic& src, const Morphism& r) {
  return seq(src.fw, ten(r, Morphism::id(src.cod.fwd)));
}

Morphism right_square(const Optic& tgt, const Morphism& r) {
  return seq(ten(r, Morphism::id(tgt.cod.bwd)), tgt.bw);
}

namespace {

bool exhaustively_checkable(const Object& o, const Signature& sig) {
  return sig.all_finite(o) && sig.cardinality(o, max_exhaustive_inputs) <= max_exhaustive_inputs;
}

// Normalizer verdict, cross-checked by the oracle where one applies.
std::optional<CellRejection> check_square(const Morphism& lhs, const Morphism& rhs, CellFailure which,
                                          const Signature& sig) {
  const bool equal = equal_morphisms(lhs, rhs);
  std::optional<Tuple> cex;
  const bool checkable = exhaustively_checkable(lhs.dom(), sig);
  if (checkable) cex = find_counterexample(lhs, rhs, sig);
  if (equal) {
    if (cex) throw std::logic_error("normalizer and extensional oracle disagree on a " + to_string(which));
    return std::nullopt;
  }
  std::string detail = to_string(lhs, sig) + "  vs  " + to_string(rhs, sig);
  if (checkable && !cex) detail += " (distinct in the free category, equal under this interpretation)";
  return CellRejection{which, std::move(detail), std::move(cex)};
}

} // namespace

std::variant<TwoCell, CellRejection> try_two_cell(const Optic& src, const Optic& tgt, const Morphism& r,
                                                  const Signature& sig) {
  if (src.dom != tgt.dom || src.cod != tgt.cod) {
    return CellRejection{CellFailure::boundary, "source and target optics have different boundaries", std::nullopt};
  }
  if (r.dom() != src.residual || r.cod() != tgt.residual) {
    return CellRejection{CellFailure::witness_type,
                         "witness " + sig.render(r.dom()) + " -> " + sig.render(r.cod()) + " but residuals are " +
                             sig.render(src.residual) + " and " + sig.render(tgt.residual),
                         std::nullopt};
  }
  if (auto bad = check_square(left_square(src, r), tgt.fw, CellFailure::left_square, sig)) return *bad;
  if (auto bad = check_square(right_square(tgt, r), src.bw, CellFailure::right_square, sig)) return *bad;
  return TwoCell{src, tgt, r};
}

TwoCell mk_two_cell(const Optic& src, const Optic& tgt, const Morphism& r, const Signature& sig) {
  auto result = try_two_cell(src, tgt, r, sig);
  if (auto* bad = std::get_if<CellRejection>(&result)) throw InvalidCell(std::move(*bad));
  return std::get<TwoCell>(std::move(result));
}

TwoCell identity_cell(const Optic& o) { return TwoCell{o, o, Morphism::id(o.residual)}; }

bool same_optic(const Optic& a, const Optic& b) {
  return a.dom == b.dom && a.cod == b.cod && a.residual == b.residual && same_term(a.fw, b.fw) &&
         same_term(a.bw, b.bw);
}

TwoCell vcompose(const TwoCell& c1, const TwoCell& c2, const Signature& sig) {
  if (!same_optic(c1.tgt, c2.src)) {
    throw InvalidCell(CellRejection{CellFailure::boundary, "vertical composition: target of the first cell is not the source of the second", std::nullopt});
  }
  return mk_two_cell(c1.src, c2.tgt, seq(c1.witness, c2.witness), sig);
}

TwoCell hcompose(const TwoCell& c1, const TwoCell& c2, const Signature& sig) {
  return mk_two_cell(optic_compose(c1.src, c2.src), optic_compose(c1.tgt, c2.tgt), ten(c1.witness, c2.witness), sig);
}

std::size_t HomCatSample::add_optic(Optic o) {
  optics_.push_back(std::move(o));
  return optics_.size() - 1;
}

std::optional<CellRejection> HomCatSample::add_cell(std::size_t src, std::size_t tgt, const Morphism& witness,
                                                    const Signature& sig) {
  auto result = try_two_cell(optics_.at(src), optics_.at(tgt), witness, sig);
  if (auto* bad = std::get_if<CellRejection>(&result)) return std::move(*bad);
  edges_.push_back(Edge{src, tgt, witness});
  return std::nullopt;
}

void HomCatSample::add_cell(std::size_t src, std::size_t tgt, TwoCell cell) {
  edges_.push_back(Edge{src, tgt, std::move(cell.witness)});
}

std::vector<std::vector<std::size_t>> pi0_classes(const HomCatSample& s) {
  const std::size_t n = s.optics().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : s.edges()) {
    auto a = find(e.src), b = find(e.tgt);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = classes.size();
      classes.emplace_back();
    }
    classes[slot[root]].push_back(i);
  }
  return classes;
}

SearchStats search_cells(HomCatSample& s, const WitnessSource& candidates, const Signature& sig) {
  SearchStats stats;
  const auto& optics = s.optics();
  std::vector<CanonicalForm> fw, bw;
  std::unordered_map<CanonicalForm, std::vector<std::size_t>, CanonicalFormHash> by_fw;
  for (std::size_t i = 0; i < optics.size(); ++i) {
    fw.push_back(normalize(optics[i].fw));
    bw.push_back(normalize(optics[i].bw));
    by_fw[fw.back()].push_back(i);
  }
  std::vector<Object> residuals;
  for (const auto& o : optics) {
    if (std::find(residuals.begin(), residuals.end(), o.residual) == residuals.end()) residuals.push_back(o.residual);
  }
  if (optics.empty()) return stats;
  const CanonicalForm id_b = normalize(Morphism::id(optics.front().cod.fwd));
  const CanonicalForm id_b_prime = normalize(Morphism::id(optics.front().cod.bwd));
  for (std::size_t i = 0; i < optics.size(); ++i) {
    for (const Object& m2 : residuals) {
      for (const CanonicalForm& r : candidates(optics[i].residual, m2)) {
        ++stats.witnesses_tried;
        auto hit = by_fw.find(compose(fw[i], tensor(r, id_b)));
        if (hit == by_fw.end()) continue;
        const CanonicalForm r_b = tensor(r, id_b_prime);
        for (std::size_t j : hit->second) {
          if (j == i || optics[j].residual != m2) continue;
          if (!(compose(r_b, bw[j]) == bw[i])) continue;
          if (auto bad = s.add_cell(i, j, read_back(r, sig), sig)) {
            throw std::logic_error("canonical-form search accepted a cell the checker rejects: " + bad->detail);
          }
          ++stats.cells_found;
        }
      }
    }
  }
  return stats;
}

} // namespace twoptic
