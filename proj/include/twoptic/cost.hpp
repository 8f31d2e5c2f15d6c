#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twoptic/bridge.hpp"
#include "twoptic/shared_dag.hpp"

namespace twoptic {

enum class Interp { finite, real };

/// n lenses over sorts X0..Xn (forward) and dX0..dXn (backward), with
/// get_i : X(i-1) -> Xi and put_i : X(i-1)*dXi -> dX(i-1). `env` is a term
/// Xn -> dXn: a table for finite chains, a constant cotangent for real ones,
/// whose puts are the transpose derivatives of the gets.
struct Chain {
  Signature sig;
  std::vector<Lens> lenses;
  Morphism env;
  std::vector<Tuple> inputs;
};

Chain build_chain(std::size_t n, Interp interp, std::uint64_t seed);
Environment chain_env(const Chain& c);

/// fw;(M*env);bw : A -> A'.
Morphism round_trip(const Optic& o, const Morphism& env);
/// The same run keeping the forward output: A -> B*A'.
Morphism round_trip_with_output(const Optic& o, const Morphism& env);

bool is_get(const std::string& generator);

struct TradeoffRow {
  std::size_t n = 0;
  std::size_t lens_get_evals = 0;
  std::size_t optic_get_evals = 0;
  std::size_t lens_copies_of_A = 0;
  std::size_t lens_residual_slots = 0;
  std::size_t optic_residual_slots = 0;
  std::size_t shared_dag_get_nodes = 0;
  double wall_time_lens_us = 0;
  double wall_time_optic_us = 0;
  double wall_time_shared_us = 0;
};

/// Column names in field order.
std::vector<std::string> tradeoff_columns();
std::string to_csv(const std::vector<TradeoffRow>& rows);

/// Left-associated lens fold, reified optic fold, and the shared DAG of the
/// reified lens composite. Every input of the chain is run through all three
/// paths, which must agree (exactly on finite carriers, within 1e-12 on real
/// ones) before anything is reported; a disagreement throws.
TradeoffRow run_tradeoff_row(std::size_t n, Interp interp, std::uint64_t seed, bool timing = true);
std::vector<TradeoffRow> run_tradeoff(std::size_t min_n, std::size_t max_n, Interp interp, std::uint64_t seed,
                                      bool timing = true);

/// Get evaluations of one lens_exec under both associations, and the number
/// of recomputation levels (n-1).
struct AssociationRow {
  std::size_t n = 0;
  std::size_t lens_get_evals_left = 0;
  std::size_t lens_get_evals_right = 0;
  std::size_t recompute_levels = 0;
};
AssociationRow association_row(std::size_t n, std::uint64_t seed);

inline constexpr double fd_step = 1e-6;
inline constexpr double fd_rel_tol = 1e-4;
inline constexpr double path_abs_tol = 1e-12;

struct FdCheck {
  std::size_t coordinates = 0;
  double max_rel_error = 0;
  bool passed = false;
};

/// Compares the backward output of the lens composite on a real chain with
/// central differences of the forward composite against the env cotangent.
FdCheck finite_difference_check(const Chain& c);

} // namespace twoptic
