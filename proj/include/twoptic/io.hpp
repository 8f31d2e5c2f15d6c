#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "twoptic/bridge.hpp"
#include "twoptic/errors.hpp"
#include "twoptic/shared_dag.hpp"

namespace twoptic {

using nlohmann::json;

/// Version of the signature file format accepted by load_signature.
inline constexpr int signature_format_version = 1;

/// {"sorts":[{"name":..,"carrier":{"finite":n}|{"real":d}}],
///  "generators":[{"name":..,"dom":[..],"cod":[..],"table":[[..],..]|"builtin":".."}]}
/// Errors are ParseError located by JSON pointer ("/generators/1/table/3").
Signature load_signature(const json& j);
json read_json_file(const std::string& path);

/// Morphism expressions: `f ; g`, `f * g`, `copy[A]`, `del[A]`, `id[A*B]`,
/// `id[1]`, `swap[A,B]`, `pi1[A,B]`, `pi2[A,B]`, `graph(f)`, parentheses.
/// ';' binds loosest; both operators associate to the left. Syntax errors are
/// ParseError located by column; ill-typed composites raise TypeError.
Morphism parse_expression(std::string_view text, const Signature& sig);
Object parse_object(std::string_view text, const Signature& sig);

/// {"get": expr, "put": expr}
Lens load_lens(const json& j, const Signature& sig);
/// {"M": [sorts], "fw": expr, "bw": expr}
Optic load_optic(const json& j, const Signature& sig);

/// Finite values are integers, real values arrays of numbers.
json to_json(const Tuple& t);
Tuple tuple_from_json(const json& j, const Object& o, const Signature& sig);

/// Renders a TypeError with sort names.
std::string describe_type_error(const TypeError& e, const Signature& sig);

json to_json(const CostReport& c);
json to_json(const LawResult& r);
json to_json(const AdjunctionReport& r);
json to_json(const CoherenceReport& r);
json to_json(const Lens& l, const Signature& sig);
json to_json(const Optic& o, const Signature& sig);
json to_json(const SharedDag& dag, const Signature& sig);
json to_json(const CellRejection& r);

} // namespace twoptic
