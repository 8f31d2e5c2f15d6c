#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twoptic/lens.hpp"
#include "twoptic/optic.hpp"
#include "twoptic/two_optic.hpp"

namespace twoptic {

/// R(l) = (A, graph(get), put).
Optic reify(const Lens& l);
/// E(M, fw, bw) = (fw;pi2, ((fw;pi1)*B');bw).
Lens erase(const Optic& o);

/// R(E(o)) => o, witness fw;pi1.
TwoCell counit(const Optic& o, const Signature& sig);
/// R(l1;l2) => R(l1);R(l2), witness graph(get1).
TwoCell oplaxator(const Lens& l1, const Lens& l2, const Signature& sig);
/// R(lens_id) => optic_id, witness del(A), or id(1) when A is the unit.
TwoCell opunitor(const Boundary& b, const Signature& sig);

struct Counterexample {
  std::string subject;
  std::string detail;
  std::optional<Tuple> input;
};

struct LawResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<Counterexample> first_failure{};

  bool passed() const noexcept { return failed == 0; }
  void record(bool ok, const std::function<Counterexample()>& describe);
  void merge(const LawResult& other);
};

struct AdjunctionReport {
  LawResult re_identity{"RE_identity"};
  LawResult counit_validity{"counit_validity"};
  LawResult counit_naturality{"counit_naturality"};
  LawResult triangle_r{"triangle_R"};
  LawResult triangle_e{"triangle_E"};
  /// Passes when every corrupted counit witness is rejected and at least one was tried.
  LawResult mutation_check{"mutation_check"};

  std::vector<const LawResult*> laws() const;
  bool passed() const;
  void merge(const AdjunctionReport& other);
};

struct CoherenceReport {
  LawResult oplaxator_validity{"oplaxator_validity"};
  LawResult oplaxator_forward_extensional{"oplaxator_forward_extensional"};
  LawResult opunitor_validity{"opunitor_validity"};
  LawResult lax_associativity{"lax_associativity"};
  LawResult lax_left_unity{"lax_left_unity"};
  LawResult lax_right_unity{"lax_right_unity"};

  std::vector<const LawResult*> laws() const;
  bool passed() const;
  void merge(const CoherenceReport& other);
};

/// `cells` are valid cells between sampled optics, used for counit naturality
/// and for the E half of the triangle identities.
AdjunctionReport check_adjunction(const std::vector<Lens>& lenses, const std::vector<Optic>& optics,
                                  const std::vector<TwoCell>& cells, const Signature& sig);

/// Oplaxator on (l1,l2) and (l2,l3), opunitors, lax associativity of the
/// triple and lax unity of l1, all at witness level.
CoherenceReport check_oplax_coherence(const Lens& l1, const Lens& l2, const Lens& l3, const Signature& sig);

/// Same residual, and fw and bw equal after strict-monoidal flattening.
bool same_flattened_optic(const Optic& a, const Optic& b);
/// Same boundaries and residual, fw and bw equal in the free cartesian category.
bool equivalent_representatives(const Optic& a, const Optic& b);

} // namespace twoptic
