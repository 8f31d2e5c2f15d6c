#include "twoptic/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "twoptic/errors.hpp"

namespace twoptic {

namespace {

std::string pointer(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& obj, const char* key, const std::string& at) {
  if (!obj.is_object()) throw ParseError("expected an object", at.empty() ? "/" : at);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", at.empty() ? "/" : at);
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& at) {
  const json& v = field(obj, key, at);
  if (!v.is_string()) throw ParseError("expected a string", pointer(at, key));
  return v.get<std::string>();
}

Object sort_list(const json& arr, const Signature& sig, const std::string& at) {
  if (!arr.is_array()) throw ParseError("expected an array of sort names", at);
  std::vector<SortId> sorts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) throw ParseError("expected a sort name", pointer(at, i));
    auto id = sig.find_sort(arr[i].get<std::string>());
    if (!id) throw ParseError("unknown sort '" + arr[i].get<std::string>() + "'", pointer(at, i));
    sorts.push_back(*id);
  }
  return Object(std::move(sorts));
}

// Non-negative integers built in code are signed in nlohmann::json, parsed ones unsigned.
bool is_index(const json& v) {
  return v.is_number_integer() && v.get<long long>() >= 0 && v.get<long long>() <= 0xffffffffLL;
}

std::uint32_t positive(const json& v, const std::string& at) {
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 0xffffffffLL) {
    throw ParseError("expected a positive integer", at);
  }
  return v.get<std::uint32_t>();
}

} // namespace

Signature load_signature(const json& j) {
  Signature sig;
  const json& sorts = field(j, "sorts", "");
  if (!sorts.is_array()) throw ParseError("expected an array", "/sorts");
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    const std::string at = pointer("/sorts", i);
    const std::string name = string_field(sorts[i], "name", at);
    const json& c = field(sorts[i], "carrier", at);
    const std::string cat = pointer(at, "carrier");
    Carrier carrier;
    if (c.is_object() && c.contains("finite")) {
      carrier = FiniteCarrier{positive(c["finite"], pointer(cat, "finite"))};
    } else if (c.is_object() && c.contains("real")) {
      carrier = RealCarrier{positive(c["real"], pointer(cat, "real"))};
    } else {
      throw ParseError("carrier must be {\"finite\": n} or {\"real\": d}", cat);
    }
    try {
      sig.add_sort(name, carrier);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
  }
  if (!j.contains("generators")) return sig;
  const json& gens = j["generators"];
  if (!gens.is_array()) throw ParseError("expected an array", "/generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string at = pointer("/generators", i);
    const std::string name = string_field(gens[i], "name", at);
    if (sig.find_generator(name)) throw ParseError("duplicate name '" + name + "'", pointer(at, "name"));
    const Object dom = sort_list(field(gens[i], "dom", at), sig, pointer(at, "dom"));
    const Object cod = sort_list(field(gens[i], "cod", at), sig, pointer(at, "cod"));
    Semantics sem = Opaque{};
    std::string sem_at = at;
    if (gens[i].contains("table")) {
      sem_at = pointer(at, "table");
      const json& rows = gens[i]["table"];
      if (!rows.is_array()) throw ParseError("expected an array of rows", sem_at);
      FiniteTable table;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const json& row = rows[r];
        std::vector<std::uint32_t> values;
        if (is_index(row)) {
          values.push_back(row.get<std::uint32_t>());
        } else if (row.is_array()) {
          for (std::size_t k = 0; k < row.size(); ++k) {
            const std::string cell = pointer(pointer(sem_at, r), k);
            if (!is_index(row[k])) throw ParseError("expected a carrier index", cell);
            const auto v = row[k].get<std::uint64_t>();
            if (k < cod.size() && sig.is_finite(cod[k]) &&
                v >= std::get<FiniteCarrier>(sig.sort(cod[k]).carrier).size) {
              throw ParseError("value outside the carrier of '" + sig.sort(cod[k]).name + "'", cell);
            }
            values.push_back(static_cast<std::uint32_t>(v));
          }
        } else {
          throw ParseError("expected a row of carrier indices", pointer(sem_at, r));
        }
        table.rows.push_back(std::move(values));
      }
      sem = std::move(table);
    } else if (gens[i].contains("builtin")) {
      sem_at = pointer(at, "builtin");
      if (!gens[i]["builtin"].is_string()) throw ParseError("expected a string", sem_at);
      try {
        sem = make_builtin(sig, gens[i]["builtin"].get<std::string>(), dom, cod);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), sem_at);
      }
    }
    try {
      sig.add_generator(name, dom, cod, std::move(sem));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), sem_at);
    }
  }
  return sig;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), path + " byte " + std::to_string(e.byte));
  }
}

namespace {

class ExprParser {
public:
  ExprParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Morphism parse() {
    Morphism m = sequence();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return m;
  }

  Object object_only() {
    Object o = object();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return o;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, "column " + std::to_string(pos_ + 1)); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail("expected a name");
    }
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Morphism sequence() {
    Morphism m = tensor();
    while (accept(';')) m = seq(m, tensor());
    return m;
  }

  Morphism tensor() {
    Morphism m = factor();
    while (accept('*')) m = ten(m, factor());
    return m;
  }

  Object object() {
    skip();
    if (accept('1')) return Object{};
    Object o{sort()};
    while (accept('*')) o = o * Object{sort()};
    return o;
  }

  SortId sort() {
    const std::size_t at = pos_;
    std::string name = ident();
    auto id = sig_.find_sort(name);
    if (!id) {
      pos_ = at;
      skip();
      fail("unknown sort '" + name + "'");
    }
    return *id;
  }

  Morphism factor() {
    if (accept('(')) {
      Morphism m = sequence();
      expect(')');
      return m;
    }
    skip();
    const std::size_t at = pos_;
    const std::string name = ident();
    skip();
    const bool bracket = pos_ < text_.size() && text_[pos_] == '[';
    if (bracket && (name == "copy" || name == "del" || name == "id")) {
      expect('[');
      Object a = object();
      expect(']');
      if (name == "copy") return Morphism::copy(a);
      if (name == "del") return Morphism::discard(a);
      return Morphism::id(a);
    }
    if (bracket && (name == "swap" || name == "pi1" || name == "pi2")) {
      expect('[');
      Object a = object();
      expect(',');
      Object b = object();
      expect(']');
      if (name == "swap") return Morphism::swap(a, b);
      if (name == "pi1") return Morphism::proj1(a, b);
      return Morphism::proj2(a, b);
    }
    if (name == "graph" && pos_ < text_.size() && text_[pos_] == '(') {
      expect('(');
      Morphism m = sequence();
      expect(')');
      return graph(m);
    }
    auto id = sig_.find_generator(name);
    if (!id) {
      pos_ = at;
      fail("unknown generator '" + name + "'");
    }
    return Morphism::gen(sig_, *id);
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

Morphism expression_field(const json& j, const char* key, const Signature& sig) {
  const std::string text = string_field(j, key, "");
  try {
    return parse_expression(text, sig);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), std::string("/") + key);
  }
}

} // namespace

Morphism parse_expression(std::string_view text, const Signature& sig) { return ExprParser(text, sig).parse(); }

Object parse_object(std::string_view text, const Signature& sig) { return ExprParser(text, sig).object_only(); }

Lens load_lens(const json& j, const Signature& sig) {
  return make_lens(expression_field(j, "get", sig), expression_field(j, "put", sig));
}

Optic load_optic(const json& j, const Signature& sig) {
  Object m = sort_list(field(j, "M", ""), sig, "/M");
  return make_optic(std::move(m), expression_field(j, "fw", sig), expression_field(j, "bw", sig));
}

json to_json(const Tuple& t) {
  json out = json::array();
  for (const Value& v : t) {
    if (const auto* x = std::get_if<std::uint32_t>(&v)) {
      out.push_back(*x);
    } else {
      out.push_back(std::get<std::vector<double>>(v));
    }
  }
  return out;
}

Tuple tuple_from_json(const json& j, const Object& o, const Signature& sig) {
  if (!j.is_array()) throw ParseError("expected an array of values", "/");
  if (j.size() != o.size()) {
    throw ParseError("expected " + std::to_string(o.size()) + " values for " + sig.render(o), "/");
  }
  Tuple t;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const std::string at = pointer("", i);
    if (sig.is_finite(o[i])) {
      if (!is_index(j[i])) throw ParseError("expected a carrier index", at);
      t.emplace_back(j[i].get<std::uint32_t>());
    } else if (j[i].is_array()) {
      std::vector<double> v;
      for (const auto& x : j[i]) {
        if (!x.is_number()) throw ParseError("expected a number", at);
        v.push_back(x.get<double>());
      }
      t.emplace_back(std::move(v));
    } else if (j[i].is_number()) {
      t.emplace_back(std::vector<double>{j[i].get<double>()});
    } else {
      throw ParseError("expected a real vector", at);
    }
  }
  check_tuple(o, t, sig);
  return t;
}

std::string describe_type_error(const TypeError& e, const Signature& sig) {
  return "type mismatch in " + e.where() + ": expected " + sig.render(e.expected()) + ", got " +
         sig.render(e.actual());
}

json to_json(const CostReport& c) {
  return json{{"generator_counts", c.generator_counts},
              {"copies", c.copies},
              {"peak_residual_slots", c.peak_residual_slots},
              {"peak_residual_bytes", c.peak_residual_bytes}};
}

json to_json(const LawResult& r) {
  json out{{"law", r.name}, {"passed", r.passed()}, {"checked", r.checked}, {"failed", r.failed}};
  if (r.first_failure) {
    json cex{{"subject", r.first_failure->subject}, {"detail", r.first_failure->detail}};
    cex["input"] = r.first_failure->input ? to_json(*r.first_failure->input) : json(nullptr);
    out["counterexample"] = std::move(cex);
  }
  return out;
}

namespace {

template <class Report>
json report_json(const char* kind, const Report& r) {
  json laws = json::array();
  for (const LawResult* l : r.laws()) laws.push_back(to_json(*l));
  return json{{"report", kind}, {"passed", r.passed()}, {"laws", std::move(laws)}};
}

} // namespace

json to_json(const AdjunctionReport& r) { return report_json("adjunction", r); }
json to_json(const CoherenceReport& r) { return report_json("coherence", r); }

json to_json(const Lens& l, const Signature& sig) {
  return json{{"get", to_string(l.get, sig)}, {"put", to_string(l.put, sig)}};
}

json to_json(const Optic& o, const Signature& sig) {
  json m = json::array();
  for (SortId s : o.residual) m.push_back(sig.sort(s).name);
  return json{{"M", std::move(m)}, {"fw", to_string(o.fw, sig)}, {"bw", to_string(o.bw, sig)}};
}

json to_json(const SharedDag& dag, const Signature& sig) {
  auto port = [](const DagPort& p) {
    return p.is_input ? json{{"input", p.index}} : json{{"node", p.node}, {"output", p.index}};
  };
  json nodes = json::array();
  for (const auto& n : dag.nodes) {
    json args = json::array();
    for (const auto& a : n.args) args.push_back(port(a));
    nodes.push_back(json{{"gen", sig.generator(n.gen).name}, {"args", std::move(args)}});
  }
  json outputs = json::array();
  for (const auto& p : dag.outputs) outputs.push_back(port(p));
  return json{{"nodes", std::move(nodes)}, {"outputs", std::move(outputs)}};
}

json to_json(const CellRejection& r) {
  return json{{"failure", to_string(r.failure)},
              {"detail", r.detail},
              {"counterexample", r.counterexample ? to_json(*r.counterexample) : json(nullptr)}};
}

} // namespace twoptic
