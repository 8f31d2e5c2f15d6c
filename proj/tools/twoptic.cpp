#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twoptic/bridge.hpp"
#include "twoptic/cost.hpp"
#include "twoptic/enumerate.hpp"
#include "twoptic/errors.hpp"
#include "twoptic/io.hpp"
#include "twoptic/sampling.hpp"

using namespace twoptic;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_law_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

Signature signature_from(const std::string& path) {
  if (path.empty()) throw UsageError("--signature is required");
  try {
    return load_signature(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path);
  }
}

Environment parse_env(const std::string& spec, const Object& b_prime, const Signature& sig) {
  if (spec == "id") return identity_env();
  if (spec.starts_with("vector:")) {
    const std::string body = spec.substr(7);
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) j = json::parse("[" + body + "]", nullptr, false);
    if (j.is_discarded()) throw UsageError("cannot parse --env vector '" + body + "'");
    if (!j.is_array()) j = json::array({j});
    const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_number(); });
    if (b_prime.size() == 1 && !sig.is_finite(b_prime[0]) && flat) j = json::array({j});
    return constant_env(tuple_from_json(j, b_prime, sig));
  }
  if (spec.starts_with("gen:")) {
    auto id = sig.find_generator(spec.substr(4));
    if (!id) throw UsageError("unknown env generator '" + spec.substr(4) + "'");
    return generator_env(sig, *id);
  }
  throw UsageError("--env must be id, vector:<values> or gen:<name>");
}

int cmd_normalize(const std::string& sig_path, const std::string& expr) {
  const Signature sig = signature_from(sig_path);
  const Morphism f = parse_expression(expr, sig);
  const CanonicalForm cf = normalize(f);
  emit(json{{"dom", sig.render(f.dom())},
            {"cod", sig.render(f.cod())},
            {"canonical", to_string(cf, sig)},
            {"term", to_string(read_back(cf, sig), sig)}});
  return exit_ok;
}

int cmd_optimize(const std::string& sig_path, const std::string& expr) {
  const Signature sig = signature_from(sig_path);
  const Morphism f = parse_expression(expr, sig);
  const CanonicalForm cf = normalize(f);
  const SharedDag dag = share(cf);
  emit(json{{"dom", sig.render(f.dom())},
            {"cod", sig.render(f.cod())},
            {"term_generator_occurrences", count_generators(f)},
            {"canonical_generator_occurrences", cf.occurrences()},
            {"dag_nodes", dag.nodes.size()},
            {"dag", to_json(dag, sig)}});
  return exit_ok;
}

int cmd_run(const std::string& sig_path, const std::string& lens_path, const std::string& optic_path,
            const std::string& input, const std::string& env_spec) {
  const Signature sig = signature_from(sig_path);
  if (lens_path.empty() == optic_path.empty()) throw UsageError("give exactly one of --lens and --optic");
  json in = json::parse(input, nullptr, false);
  if (in.is_discarded()) throw UsageError("--input is not JSON");
  ExecResult r;
  if (!lens_path.empty()) {
    const Lens l = load_lens(read_json_file(lens_path), sig);
    r = lens_exec(l, tuple_from_json(in, l.dom.fwd, sig), parse_env(env_spec, l.cod.bwd, sig), sig);
  } else {
    const Optic o = load_optic(read_json_file(optic_path), sig);
    r = optic_exec(o, tuple_from_json(in, o.dom.fwd, sig), parse_env(env_spec, o.cod.bwd, sig), sig);
  }
  emit(json{{"b", to_json(r.b)}, {"a_prime", to_json(r.a_prime)}, {"cost", to_json(r.cost)}});
  return exit_ok;
}

int cmd_check_cell(const std::string& sig_path, const std::string& src, const std::string& tgt,
                   const std::string& witness) {
  const Signature sig = signature_from(sig_path);
  const Optic s = load_optic(read_json_file(src), sig);
  const Optic t = load_optic(read_json_file(tgt), sig);
  const Morphism r = parse_expression(witness, sig);
  auto result = try_two_cell(s, t, r, sig);
  if (auto* bad = std::get_if<CellRejection>(&result)) {
    json out = to_json(*bad);
    out["valid"] = false;
    emit(out);
    return exit_law_failure;
  }
  emit(json{{"valid", true}, {"witness", to_string(r, sig)}});
  return exit_ok;
}

int cmd_pi0(const std::string& sig_path, const std::string& homcat, std::size_t depth) {
  const Signature sig = signature_from(sig_path);
  const json j = read_json_file(homcat);
  if (!j.contains("optics") || !j["optics"].is_array()) throw ParseError("expected an array", "/optics");
  HomCatSample s;
  for (const auto& o : j["optics"]) s.add_optic(load_optic(o, sig));
  for (std::size_t i = 1; i < s.optics().size(); ++i) {
    if (s.optics()[i].dom != s.optics()[0].dom || s.optics()[i].cod != s.optics()[0].cod) {
      throw ParseError("optics of a hom-category sample must share their boundary", "/optics/" + std::to_string(i));
    }
  }
  json rejected = json::array();
  if (j.contains("cells")) {
    for (std::size_t k = 0; k < j["cells"].size(); ++k) {
      const json& c = j["cells"][k];
      const auto src = c.at("src").get<std::size_t>(), tgt = c.at("tgt").get<std::size_t>();
      if (src >= s.optics().size() || tgt >= s.optics().size()) throw ParseError("optic index out of range", "/cells/" + std::to_string(k));
      if (auto bad = s.add_cell(src, tgt, parse_expression(c.at("witness").get<std::string>(), sig), sig)) {
        json r = to_json(*bad);
        r["cell"] = k;
        rejected.push_back(std::move(r));
      }
    }
  }
  SearchStats stats;
  if (depth > 0) {
    WitnessCatalog catalog(sig, depth);
    stats = search_cells(s, catalog, sig);
  }
  const bool clean = rejected.empty();
  emit(json{{"classes", pi0_classes(s)},
            {"cells", s.edges().size()},
            {"search_depth", depth},
            {"witnesses_tried", stats.witnesses_tried},
            {"rejected", std::move(rejected)}});
  return clean ? exit_ok : exit_law_failure;
}

bool run_laws(const Signature& sig, std::size_t samples, Rng& rng, std::size_t index) {
  constexpr std::size_t steps = 2;
  std::vector<Lens> lenses;
  std::vector<Optic> optics;
  std::vector<TwoCell> cells;
  for (std::size_t i = 0; i < samples; ++i) {
    const Boundary a = random_boundary(rng, sig), b = random_boundary(rng, sig);
    lenses.push_back(random_lens(rng, sig, a, b, steps));
    optics.push_back(random_optic(rng, sig, a, b, steps));
    cells.push_back(random_valid_cell(rng, sig, a, b, steps));
  }
  const AdjunctionReport adj = check_adjunction(lenses, optics, cells, sig);
  CoherenceReport coh;
  for (std::size_t i = 0; i < samples / 2; ++i) {
    const auto chain = random_lens_chain(rng, sig, 3, steps);
    coh.merge(check_oplax_coherence(chain[0], chain[1], chain[2], sig));
  }
  json a = to_json(adj), c = to_json(coh);
  a["signature"] = index;
  c["signature"] = index;
  emit(a);
  emit(c);
  return adj.passed() && coh.passed();
}

int cmd_check_laws(const std::string& sig_path, std::size_t samples, std::uint64_t seed, std::size_t signatures) {
  Rng rng(seed);
  bool ok = true;
  std::size_t count = 0;
  if (!sig_path.empty()) {
    ok = run_laws(signature_from(sig_path), samples, rng, 0);
    count = 1;
  } else {
    for (std::size_t i = 0; i < signatures; ++i, ++count) ok = run_laws(random_signature(rng), samples, rng, i) && ok;
  }
  emit(json{{"report", "summary"}, {"passed", ok}, {"signatures", count}, {"samples", samples}, {"seed", seed}});
  return ok ? exit_ok : exit_law_failure;
}

int cmd_bench(std::size_t max_n, const std::string& interp_name, const std::string& out_path, std::uint64_t seed,
              bool timing) {
  if (interp_name != "finite" && interp_name != "real") throw UsageError("--interp must be finite or real");
  if (max_n < 1) throw UsageError("--max-n must be at least 1");
  const Interp interp = interp_name == "finite" ? Interp::finite : Interp::real;
  const auto rows = run_tradeoff(1, max_n, interp, seed, timing);
  std::ostream& notes = out_path.empty() ? std::cerr : std::cout;
  if (out_path.empty()) {
    std::cout << to_csv(rows);
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << to_csv(rows);
  }
  for (std::size_t n = 1; n <= max_n; ++n) {
    const AssociationRow a = association_row(n, seed);
    notes << json{{"n", a.n},
                  {"lens_get_evals_left", a.lens_get_evals_left},
                  {"lens_get_evals_right", a.lens_get_evals_right},
                  {"recompute_levels", a.recompute_levels}}
                 .dump()
          << '\n';
  }
  if (interp == Interp::real) {
    bool ok = true;
    for (std::size_t n = 1; n <= max_n; ++n) {
      const FdCheck fd = finite_difference_check(build_chain(n, Interp::real, seed));
      ok = ok && fd.passed;
      notes << json{{"n", n}, {"fd_coordinates", fd.coordinates}, {"fd_max_rel_error", fd.max_rel_error},
                    {"fd_passed", fd.passed}}
                   .dump()
            << '\n';
    }
    if (!ok) return exit_law_failure;
  }
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartesian lenses, optics and 2-optics over a free cartesian category"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string("twoptic ") + TWOPTIC_VERSION + " (signature format " +
                                        std::to_string(signature_format_version) + ")");

  std::string sig_path, expr, lens_path, optic_path, input = "[]", env = "id", src, tgt, witness, homcat, out,
                                                    interp = "finite";
  std::size_t samples = 100, signatures = 3, max_n = 8, depth = 0;
  std::uint64_t seed = 0;
  bool no_timing = false;

  auto* laws = app.add_subcommand("check-laws", "Adjunction and oplax coherence law suites");
  laws->add_option("--signature", sig_path, "Signature JSON (default: random signatures)");
  laws->add_option("--samples", samples, "Random lenses, optics and cells per signature");
  laws->add_option("--seed", seed);
  laws->add_option("--signatures", signatures, "Random signatures when none is given");

  auto* bench = app.add_subcommand("bench", "Space-time tradeoff table for n-chains");
  bench->add_option("--max-n", max_n);
  bench->add_option("--interp", interp, "finite or real");
  bench->add_option("--out", out, "CSV output file (default stdout)");
  bench->add_option("--seed", seed);
  bench->add_flag("--no-timing", no_timing, "Report zero wall times for reproducible output");

  auto* run = app.add_subcommand("run", "Execute a lens or optic");
  run->add_option("--signature", sig_path)->required();
  run->add_option("--lens", lens_path);
  run->add_option("--optic", optic_path);
  run->add_option("--input", input, "JSON array of values");
  run->add_option("--env", env, "id | vector:<values> | gen:<name>");
  run->add_option("--seed", seed);

  auto* norm = app.add_subcommand("normalize", "Print the canonical form of an expression");
  norm->add_option("--signature", sig_path)->required();
  norm->add_option("--expr", expr)->required();

  auto* opt = app.add_subcommand("optimize", "Share repeated work in an expression");
  opt->add_option("--signature", sig_path)->required();
  opt->add_option("--expr", expr)->required();

  auto* cell = app.add_subcommand("check-cell", "Validate a reparameterisation between two optics");
  cell->add_option("--signature", sig_path)->required();
  cell->add_option("--src", src)->required();
  cell->add_option("--tgt", tgt)->required();
  cell->add_option("--witness", witness)->required();

  auto* pi0 = app.add_subcommand("pi0", "Connected components of a hom-category sample");
  pi0->add_option("--signature", sig_path)->required();
  pi0->add_option("--homcat", homcat)->required();
  pi0->add_option("--search-depth", depth, "Also search for witnesses up to this height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*laws) return cmd_check_laws(sig_path, samples, seed, signatures);
    if (*bench) return cmd_bench(max_n, interp, out, seed, !no_timing);
    if (*run) return cmd_run(sig_path, lens_path, optic_path, input, env);
    if (*norm) return cmd_normalize(sig_path, expr);
    if (*opt) return cmd_optimize(sig_path, expr);
    if (*cell) return cmd_check_cell(sig_path, src, tgt, witness);
    if (*pi0) return cmd_pi0(sig_path, homcat, depth);
    std::cout << app.help();
    return exit_usage;
  } catch (const ParseError& e) {
    std::cerr << json{{"error", "parse"}, {"message", e.what()}, {"location", e.location()}}.dump() << '\n';
  } catch (const TypeError& e) {
    std::string msg = e.what();
    try {
      if (!sig_path.empty()) msg = describe_type_error(e, signature_from(sig_path));
    } catch (...) {
    }
    std::cerr << json{{"error", "type"}, {"message", msg}}.dump() << '\n';
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
  }
  return exit_usage;
}
