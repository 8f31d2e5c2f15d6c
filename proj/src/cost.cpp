#include "twoptic/cost.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "twoptic/sampling.hpp"

namespace twoptic {

namespace {

constexpr std::uint32_t forward_carrier = 3;
constexpr std::uint32_t backward_carrier = 2;
constexpr std::uint32_t real_dim = 2;

FiniteTable random_table(Rng& rng, std::size_t rows, std::uint32_t range) {
  FiniteTable t;
  for (std::size_t r = 0; r < rows; ++r) t.rows.push_back({static_cast<std::uint32_t>(pick(rng, range))});
  return t;
}

std::string real_param(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  std::ostringstream s;
  s << std::setprecision(6) << lo + (hi - lo) * u;
  return s.str();
}

} // namespace

Chain build_chain(std::size_t n, Interp interp, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("chain length must be at least 1");
  Rng rng(seed ^ (0x5851f42d4c957f2dULL * (n + 1)));
  Signature sig;
  std::vector<SortId> x, dx;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::string k = std::to_string(i);
    if (interp == Interp::finite) {
      x.push_back(sig.add_sort("X" + k, FiniteCarrier{forward_carrier}));
      dx.push_back(sig.add_sort("dX" + k, FiniteCarrier{backward_carrier}));
    } else {
      x.push_back(sig.add_sort("X" + k, RealCarrier{real_dim}));
      dx.push_back(sig.add_sort("dX" + k, RealCarrier{real_dim}));
    }
  }
  std::vector<Lens> lenses;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string k = std::to_string(i);
    const Object a{x[i - 1]}, b{x[i]}, a_prime{dx[i - 1]}, b_prime{dx[i]};
    Semantics get_sem, put_sem;
    if (interp == Interp::finite) {
      get_sem = random_table(rng, forward_carrier, forward_carrier);
      put_sem = random_table(rng, forward_carrier * backward_carrier, backward_carrier);
    } else {
      std::string prim;
      switch ((i - 1) % 3) {
        case 0: prim = "tanh_affine(" + real_param(rng, 0.5, 1.5) + "," + real_param(rng, -0.3, 0.3) + ")"; break;
        case 1: prim = "sin"; break;
        default: prim = "scale(" + real_param(rng, 0.5, 2.0) + ")"; break;
      }
      const auto open = prim.find('(');
      const std::string vjp = open == std::string::npos ? prim + "_vjp" : prim.substr(0, open) + "_vjp" + prim.substr(open);
      get_sem = make_builtin(sig, prim, a, b);
      put_sem = make_builtin(sig, vjp, a * b_prime, a_prime);
    }
    const GenId get = sig.add_generator("get" + k, a, b, std::move(get_sem));
    const GenId put = sig.add_generator("put" + k, a * b_prime, a_prime, std::move(put_sem));
    lenses.push_back(Lens{Boundary{a, a_prime}, Boundary{b, b_prime}, Morphism::gen(sig, get), Morphism::gen(sig, put)});
  }
  const Object xn{x[n]}, dxn{dx[n]};
  Morphism env = Morphism::id(xn);
  std::vector<Tuple> inputs;
  if (interp == Interp::finite) {
    env = Morphism::gen(sig, sig.add_generator("env", xn, dxn, random_table(rng, forward_carrier, backward_carrier)));
    for (std::uint32_t v = 0; v < forward_carrier; ++v) inputs.push_back(Tuple{v});
  } else {
    const std::string cot = "const(" + real_param(rng, 0.5, 1.0) + "," + real_param(rng, -1.0, -0.5) + ")";
    const GenId k = sig.add_generator("env", Object{}, dxn, make_builtin(sig, cot, Object{}, dxn));
    env = seq(Morphism::discard(xn), Morphism::gen(sig, k));
    for (int s = 0; s < 3; ++s) {
      inputs.push_back(Tuple{std::vector<double>{std::stod(real_param(rng, -1.0, 1.0)), std::stod(real_param(rng, -1.0, 1.0))}});
    }
  }
  return Chain{std::move(sig), std::move(lenses), std::move(env), std::move(inputs)};
}

Environment chain_env(const Chain& c) {
  const Signature* sig = &c.sig;
  Morphism env = c.env;
  return [sig, env](const Tuple& b) { return evaluate(env, b, *sig); };
}

Morphism round_trip(const Optic& o, const Morphism& env) {
  return seq({o.fw, ten(Morphism::id(o.residual), env), o.bw});
}

Morphism round_trip_with_output(const Optic& o, const Morphism& env) {
  const Object& m = o.residual;
  const Object& b = o.cod.fwd;
  return seq({o.fw, ten(Morphism::id(m), Morphism::copy(b)), ten(Morphism::id(m * b), env),
              ten(Morphism::swap(m, b), Morphism::id(o.cod.bwd)), ten(Morphism::id(b), o.bw)});
}

bool is_get(const std::string& generator) { return generator.starts_with("get"); }

std::vector<std::string> tradeoff_columns() {
  return {"n", "lens_get_evals", "optic_get_evals", "lens_copies_of_A", "lens_residual_slots", "optic_residual_slots",
          "shared_dag_get_nodes", "wall_time_lens_us", "wall_time_optic_us", "wall_time_shared_us"};
}

std::string to_csv(const std::vector<TradeoffRow>& rows) {
  std::ostringstream out;
  const auto cols = tradeoff_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n' << std::fixed << std::setprecision(1);
  for (const auto& r : rows) {
    out << r.n << ',' << r.lens_get_evals << ',' << r.optic_get_evals << ',' << r.lens_copies_of_A << ','
        << r.lens_residual_slots << ',' << r.optic_residual_slots << ',' << r.shared_dag_get_nodes << ','
        << r.wall_time_lens_us << ',' << r.wall_time_optic_us << ',' << r.wall_time_shared_us << '\n';
  }
  return out.str();
}

namespace {

bool agree(const Tuple& a, const Tuple& b, Interp interp) {
  return interp == Interp::finite ? a == b : values_close(a, b, path_abs_tol);
}

template <class F>
double timed_us(bool timing, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  if (!timing) return 0;
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TradeoffRow run_tradeoff_row(std::size_t n, Interp interp, std::uint64_t seed, bool timing) {
  const Chain c = build_chain(n, interp, seed);
  const Signature& sig = c.sig;
  const Lens lens = fold_left(c.lenses);
  std::vector<Optic> reified;
  for (const Lens& l : c.lenses) reified.push_back(reify(l));
  const Optic optic = fold_left(reified);
  const Morphism shared_term = round_trip_with_output(reify(lens), c.env);
  const SharedDag dag = share(shared_term);
  const Environment env = chain_env(c);
  const std::string a_name = sig.render(lens.dom.fwd);

  TradeoffRow row;
  row.n = n;
  row.shared_dag_get_nodes = dag.count_nodes([&](GenId g) { return is_get(sig.generator(g).name); });
  std::vector<ExecResult> lens_runs, optic_runs;
  std::vector<Tuple> shared_runs;
  row.wall_time_lens_us = timed_us(timing, [&] {
    for (const Tuple& a : c.inputs) lens_runs.push_back(lens_exec(lens, a, env, sig));
  });
  row.wall_time_optic_us = timed_us(timing, [&] {
    for (const Tuple& a : c.inputs) optic_runs.push_back(optic_exec(optic, a, env, sig));
  });
  row.wall_time_shared_us = timed_us(timing, [&] {
    for (const Tuple& a : c.inputs) shared_runs.push_back(evaluate(dag, a, sig));
  });

  const std::size_t nb = lens.cod.fwd.size();
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    const Tuple shared_b(shared_runs[i].begin(), shared_runs[i].begin() + static_cast<std::ptrdiff_t>(nb));
    const Tuple shared_a(shared_runs[i].begin() + static_cast<std::ptrdiff_t>(nb), shared_runs[i].end());
    const bool ok = agree(lens_runs[i].b, optic_runs[i].b, interp) && agree(lens_runs[i].b, shared_b, interp) &&
                    agree(lens_runs[i].a_prime, optic_runs[i].a_prime, interp) &&
                    agree(lens_runs[i].a_prime, shared_a, interp);
    if (!ok) throw std::runtime_error("execution paths disagree on chain n=" + std::to_string(n) + " input " + std::to_string(i));
  }
  const CostReport& lc = lens_runs.front().cost;
  const CostReport& oc = optic_runs.front().cost;
  row.lens_get_evals = lc.evaluations_of(is_get);
  row.optic_get_evals = oc.evaluations_of(is_get);
  auto copies = lc.copies_by_object.find(a_name);
  row.lens_copies_of_A = copies == lc.copies_by_object.end() ? 0 : copies->second;
  row.lens_residual_slots = lc.peak_residual_slots;
  row.optic_residual_slots = oc.peak_residual_slots;
  return row;
}

std::vector<TradeoffRow> run_tradeoff(std::size_t min_n, std::size_t max_n, Interp interp, std::uint64_t seed,
                                      bool timing) {
  std::vector<TradeoffRow> rows;
  for (std::size_t n = min_n; n <= max_n; ++n) rows.push_back(run_tradeoff_row(n, interp, seed, timing));
  return rows;
}

AssociationRow association_row(std::size_t n, std::uint64_t seed) {
  const Chain c = build_chain(n, Interp::finite, seed);
  const Environment env = chain_env(c);
  AssociationRow row{n, 0, 0, n - 1};
  row.lens_get_evals_left = lens_exec(fold_left(c.lenses), c.inputs.front(), env, c.sig).cost.evaluations_of(is_get);
  row.lens_get_evals_right = lens_exec(fold_right(c.lenses), c.inputs.front(), env, c.sig).cost.evaluations_of(is_get);
  return row;
}

FdCheck finite_difference_check(const Chain& c) {
  const Signature& sig = c.sig;
  const Lens lens = fold_left(c.lenses);
  const Tuple cotangent = evaluate(c.env, evaluate(lens.get, c.inputs.front(), sig), sig);
  const auto& v = std::get<std::vector<double>>(cotangent.at(0));
  const Environment env = chain_env(c);
  FdCheck check;
  check.passed = true;
  for (const Tuple& a : c.inputs) {
    const auto& x = std::get<std::vector<double>>(a.at(0));
    const ExecResult run = lens_exec(lens, a, env, sig);
    const auto& grad = std::get<std::vector<double>>(run.a_prime.at(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
      auto shifted = [&](double h) {
        std::vector<double> y = x;
        y[j] += h;
        return std::get<std::vector<double>>(evaluate(lens.get, Tuple{y}, sig).at(0));
      };
      const auto plus = shifted(fd_step), minus = shifted(-fd_step);
      double fd = 0;
      for (std::size_t i = 0; i < v.size(); ++i) fd += v[i] * (plus[i] - minus[i]) / (2 * fd_step);
      const double scale = std::max({std::abs(fd), std::abs(grad[j]), 1e-8});
      const double rel = std::abs(grad[j] - fd) / scale;
      check.max_rel_error = std::max(check.max_rel_error, rel);
      ++check.coordinates;
      if (!(rel <= fd_rel_tol)) check.passed = false;
    }
  }
  return check;
}

} // namespace twoptic
