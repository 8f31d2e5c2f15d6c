#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "twoptic/normal_form.hpp"
#include "twoptic/optic.hpp"

namespace twoptic {

/// A reparameterisation r : M1 -> M2 from src = (M1, fw1, bw1) to
/// tgt = (M2, fw2, bw2) with fw1;(r*B) = fw2 and (r*B');bw2 = bw1.
struct TwoCell {
  Optic src;
  Optic tgt;
  Morphism witness;
};

enum class CellFailure { boundary, witness_type, left_square, right_square };

std::string to_string(CellFailure f);

struct CellRejection {
  CellFailure failure;
  std::string detail;
  /// An input on which the two sides of the failing square differ, when the
  /// interpretation is finite and one exists.
  std::optional<Tuple> counterexample;
};

class InvalidCell : public std::runtime_error {
public:
  explicit InvalidCell(CellRejection r);
  const CellRejection& rejection() const noexcept { return rejection_; }

private:
  CellRejection rejection_;
};

/// Left square fw1;(r*B) and right square (r*B');bw2, as terms.
Morphism left_square(const Optic& src, const Morphism& r);
Morphism right_square(const Optic& tgt, const Morphism& r);

/// Checks both squares with the normalizer. When every sort involved is finite,
/// the verdict is cross-checked by exhaustive evaluation under `sig`, and a
/// failing square carries a witness input.
std::variant<TwoCell, CellRejection> try_two_cell(const Optic& src, const Optic& tgt, const Morphism& r,
                                                  const Signature& sig);
/// Throws InvalidCell.
TwoCell mk_two_cell(const Optic& src, const Optic& tgt, const Morphism& r, const Signature& sig);

TwoCell identity_cell(const Optic& o);

/// True iff the two optics are the same representative (same residual, same terms).
bool same_optic(const Optic& a, const Optic& b);

/// Witness r1;r2. Requires tgt(c1) and src(c2) to be the same representative.
TwoCell vcompose(const TwoCell& c1, const TwoCell& c2, const Signature& sig);
/// Witness r1*r2, on src(c1);src(c2) => tgt(c1);tgt(c2).
TwoCell hcompose(const TwoCell& c1, const TwoCell& c2, const Signature& sig);

/// A finite fragment of a hom-category: optics sharing one boundary and
/// validated cells between them, addressed by index.
class HomCatSample {
public:
  struct Edge {
    std::size_t src;
    std::size_t tgt;
    Morphism witness;
  };

  std::size_t add_optic(Optic o);
  /// Validates and records the cell; returns the rejection otherwise.
  std::optional<CellRejection> add_cell(std::size_t src, std::size_t tgt, const Morphism& witness, const Signature& sig);
  /// Records an already validated cell.
  void add_cell(std::size_t src, std::size_t tgt, TwoCell cell);

  const std::vector<Optic>& optics() const noexcept { return optics_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

private:
  std::vector<Optic> optics_;
  std::vector<Edge> edges_;
};

/// Connected components of the undirected graph of cells. Classes list optic
/// indices in increasing order; classes are ordered by their least member.
std::vector<std::vector<std::size_t>> pi0_classes(const HomCatSample& s);

/// Candidate witnesses M1 -> M2 as canonical forms.
using WitnessSource = std::function<const std::vector<CanonicalForm>&(const Object& from, const Object& to)>;

struct SearchStats {
  std::size_t witnesses_tried = 0;
  std::size_t cells_found = 0;
};

/// Adds every cell (i -> j, i != j) whose witness is among the candidates.
/// Squares are decided on canonical forms; forward parts are bucketed by
/// canonical form so each (source, witness) pair costs one lookup.
SearchStats search_cells(HomCatSample& s, const WitnessSource& candidates, const Signature& sig);

} // namespace twoptic
