#include <gtest/gtest.h>

#include "support.hpp"
#include "twoptic/io.hpp"

using namespace twoptic;
using namespace twoptic::testing;

namespace {

json small_signature_json() {
  return json::parse(R"j({
    "sorts": [{"name": "A", "carrier": {"finite": 3}}, {"name": "B", "carrier": {"finite": 2}}],
    "generators": [
      {"name": "f", "dom": ["A"], "cod": ["B"], "table": [[0], [1], [1]]},
      {"name": "u", "dom": [], "cod": ["A"], "table": [[2]]},
      {"name": "m", "dom": ["A", "B"], "cod": ["A"], "table": [[0], [1], [2], [0], [1], [2]]}
    ]})j");
}

std::string location_of(const json& j) {
  try {
    load_signature(j);
  } catch (const ParseError& e) {
    return e.location();
  }
  return "<accepted>";
}

}  // namespace

TEST(Signature, Loads) {
  const Signature sig = load_signature(small_signature_json());
  EXPECT_EQ(sig.sort_count(), 2u);
  EXPECT_EQ(sig.generator_count(), 3u);
  EXPECT_EQ(sig.render(sig.generator(sig.generator_id("m")).dom), "A*B");
}

TEST(Signature, ErrorsAreLocated) {
  json j = small_signature_json();
  j["generators"][0]["table"][2] = json::array({5});
  EXPECT_EQ(location_of(j), "/generators/0/table/2/0");

  j = small_signature_json();
  j["generators"][2]["table"].erase(5);
  EXPECT_EQ(location_of(j), "/generators/2/table");

  j = small_signature_json();
  j["generators"][1]["cod"] = json::array({"Z"});
  EXPECT_EQ(location_of(j), "/generators/1/cod/0");

  j = small_signature_json();
  j["sorts"][1]["carrier"] = json::object({{"finite", 0}});
  EXPECT_EQ(location_of(j), "/sorts/1/carrier/finite");

  j = small_signature_json();
  j["generators"][0]["name"] = "u";
  EXPECT_EQ(location_of(j), "/generators/1/name");

  EXPECT_EQ(location_of(json::array()), "/");
}

TEST(Signature, RealBuiltins) {
  const json j = json::parse(R"j({
    "sorts": [{"name": "R", "carrier": {"real": 2}}],
    "generators": [{"name": "t", "dom": ["R"], "cod": ["R"], "builtin": "tanh_affine(0.5,0.1)"}]})j");
  const Signature sig = load_signature(j);
  const Tuple out = evaluate(Morphism::gen(sig, 0), Tuple{std::vector<double>{0.0, 1.0}}, sig);
  const auto& v = std::get<std::vector<double>>(out[0]);
  EXPECT_NEAR(v[0], std::tanh(0.1), 1e-15);
  EXPECT_NEAR(v[1], std::tanh(0.6), 1e-15);
}

TEST(Expressions, PrecedenceAndAssociativity) {
  const Signature sig = small_signature();
  const Morphism f = Morphism::gen(sig, sig.generator_id("f"));
  const Morphism g = Morphism::gen(sig, sig.generator_id("g"));
  const Object a = sig.object({"A"});
  EXPECT_TRUE(same_term(parse_expression("copy[A] ; f * f", sig), seq(Morphism::copy(a), ten(f, f))));
  EXPECT_TRUE(same_term(parse_expression("f;g;id[C]", sig), seq(seq(f, g), Morphism::id(sig.object({"C"})))));
  EXPECT_TRUE(same_term(parse_expression("f*f*f", sig), ten(ten(f, f), f)));
  EXPECT_TRUE(same_term(parse_expression("graph(f)", sig), graph(f)));
  EXPECT_TRUE(same_term(parse_expression("pi2[A*B,C]", sig), Morphism::proj2(sig.object({"A", "B"}), sig.object({"C"}))));
  EXPECT_TRUE(same_term(parse_expression("del[1]", sig), Morphism::discard(Object{})));
}

TEST(Expressions, RenderingParsesBack) {
  const Signature sig = small_signature();
  for (const char* text : {"copy[A] ; (f * f)", "f ; (g ; id[C])", "(k * id[B]) ; h", "swap[A,B*C] ; pi1[B*C,A]",
                           "s ; (g * id[C])"}) {
    const Morphism m = parse_expression(text, sig);
    EXPECT_TRUE(same_term(parse_expression(to_string(m, sig), sig), m)) << text;
  }
}

TEST(Expressions, ErrorsAreLocated) {
  const Signature sig = small_signature();
  auto column = [&](const char* text) {
    try {
      parse_expression(text, sig);
    } catch (const ParseError& e) {
      return e.location();
    }
    return std::string("<accepted>");
  };
  EXPECT_EQ(column("f ; zz"), "column 5");
  EXPECT_EQ(column("copy[A"), "column 7");
  EXPECT_EQ(column("(f"), "column 3");
  EXPECT_EQ(column("f g"), "column 3");
  EXPECT_THROW(parse_expression("f ; f", sig), TypeError);
}

TEST(Files, LensAndOptic) {
  const Signature sig = small_signature();
  const Lens l = load_lens(json{{"get", "f"}, {"put", "pi1[A,C]"}}, sig);
  EXPECT_EQ(l.cod.bwd, sig.object({"C"}));
  const Optic o = load_optic(json{{"M", {"A"}}, {"fw", "graph(f)"}, {"bw", "pi1[A,C]"}}, sig);
  EXPECT_EQ(o.residual, sig.object({"A"}));
  EXPECT_THROW(load_optic(json{{"M", {"A"}}, {"fw", "f"}, {"bw", "pi1[A,C]"}}, sig), TypeError);
  EXPECT_THROW(load_lens(json{{"get", "f"}}, sig), ParseError);
}

TEST(Tuples, RoundTrip) {
  const Signature sig = small_signature();
  const Object ab = sig.object({"A", "B"});
  const Tuple t{std::uint32_t{2}, std::uint32_t{1}};
  EXPECT_EQ(to_json(t), json::array({2, 1}));
  EXPECT_EQ(tuple_from_json(to_json(t), ab, sig), t);
  EXPECT_THROW(tuple_from_json(json::array({3, 1}), ab, sig), CarrierError);
  EXPECT_THROW(tuple_from_json(json::array({1}), ab, sig), ParseError);
}

TEST(Reports, CellRejectionJson) {
  const Signature sig = small_signature();
  const Object a = sig.object({"A"});
  const Optic o = make_optic(a, graph(Morphism::gen(sig, sig.generator_id("f"))), Morphism::proj1(a, sig.object({"B"})));
  auto r = try_two_cell(o, o, seq(Morphism::discard(a), Morphism::gen(sig, sig.generator_id("k"))), sig);
  ASSERT_TRUE(std::holds_alternative<CellRejection>(r));
  const json j = to_json(std::get<CellRejection>(r));
  EXPECT_EQ(j.at("failure"), "invalid-left-square");
  EXPECT_TRUE(j.at("counterexample").is_array());
}
