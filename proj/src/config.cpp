#include "vdf/config.hpp"

#include <fstream>
#include <sstream>

#include "vdf/errors.hpp"
#include "vdf/expr.hpp"

namespace vdf {

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw ParseError("field config: " + msg, 0, 0); }

const Json& member(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) schema_error(std::string("missing '") + key + "'");
  return obj.at(key);
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) schema_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Truncation truncation_from_json(const Json& j) {
  if (j.is_null()) return Truncation::infinite();
  GroupElement at = element_from_json(member(j, "at"));
  bool open = j.contains("open") && j.at("open").get<bool>();
  return open ? Truncation::open_at(at) : Truncation::closed(at);
}

// Line/column of a byte offset, for JSON syntax errors.
std::pair<int, int> locate(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string term_monomial(const Series& s, const GroupElement& v) {
  std::string m = monomial_to_string(*s.field(), s.field()->monomial_of(v));
  return m.empty() ? "1" : m;
}

void dump_to(const Json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ", ";
      first = false;
      out += Json(k).dump();
      out += ": ";
      dump_to(v, out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      dump_to(j[i], out);
    }
    out += ']';
  } else {
    out += j.dump();
  }
}

}  // namespace

GroupElement element_from_json(const Json& j) {
  if (!j.is_array()) schema_error("group element must be an array of rational strings");
  std::vector<Rational> coords;
  for (const auto& c : j) {
    std::string s = string_of(c, "coordinate");
    try {
      coords.push_back(parse_rational(s));
    } catch (const std::invalid_argument&) {
      schema_error("bad rational '" + s + "'");
    }
  }
  return GroupElement(std::move(coords));
}

Cut cut_from_json(const Json& j, std::size_t rank) {
  std::string kind = string_of(member(j, "kind"), "kind");
  if (kind == "all") return Cut::all(rank);
  if (kind == "empty") return Cut::empty(rank);
  if (kind != "prefix") schema_error("unknown cut kind '" + kind + "'");
  GroupElement bound = element_from_json(member(j, "bound"));
  if (j.contains("depth") && j.at("depth").get<std::size_t>() != bound.rank())
    schema_error("cut depth does not match bound length");
  return Cut::prefix(rank, bound, member(j, "inclusive").get<bool>());
}

FieldPtr field_from_json(const Json& doc) {
  try {
    std::string name = doc.contains("name") ? string_of(doc.at("name"), "name") : "field";
    std::size_t rank = member(doc, "rank").get<std::size_t>();
    const Json& gens = member(doc, "generators");
    if (!gens.is_array()) schema_error("'generators' must be an array");

    std::vector<FieldInstance::Generator> skeleton;
    for (const auto& g : gens) {
      GroupElement v = element_from_json(member(g, "value"));
      if (v.rank() != rank) throw RankMismatch("generator value has the wrong rank");
      skeleton.push_back({string_of(member(g, "name"), "generator name"), std::move(v), std::nullopt});
    }
    auto bare = std::make_shared<const FieldInstance>(name, skeleton, GroupElement::zero(rank));

    std::vector<FieldInstance::Generator> full = skeleton;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Json& g = gens[i];
      if (!g.contains("logder")) continue;
      Series s = parse_series(string_of(g.at("logder"), "logder"), bare);
      Truncation tau = g.contains("logder_tau") ? truncation_from_json(g.at("logder_tau")) : s.truncation();
      full[i].logder = LogderSpec{s.terms(), tau};
    }
    std::optional<GroupElement> shift;
    if (doc.contains("shift")) shift = element_from_json(doc.at("shift"));
    std::optional<Cut> cut;
    if (doc.contains("gamma_der")) cut = cut_from_json(doc.at("gamma_der"), rank);
    return std::make_shared<const FieldInstance>(name, std::move(full), shift, cut);
  } catch (const nlohmann::json::exception& e) {
    schema_error(e.what());
  }
}

FieldPtr field_from_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("field config is not valid JSON", line, col);
  }
  return field_from_json(doc);
}

FieldPtr load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open field config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return field_from_text(buf.str());
}

Json to_json(const GroupElement& g) {
  Json out = Json::array();
  for (const auto& s : g.to_strings()) out.push_back(s);
  return out;
}

Json to_json(const Truncation& t) {
  if (!t.is_finite()) return nullptr;
  return Json{{"at", to_json(*t.at)}, {"open", t.open}};
}

Json to_json(const Cut& c) {
  switch (c.kind()) {
    case Cut::Kind::all:
      return Json{{"kind", "all"}};
    case Cut::Kind::empty:
      return Json{{"kind", "empty"}};
    case Cut::Kind::prefix:
      break;
  }
  return Json{{"kind", "prefix"}, {"depth", c.depth()}, {"bound", to_json(c.bound())}, {"inclusive", c.inclusive()}};
}

Json to_json(const Series& s) {
  Json terms = Json::array();
  for (const auto& [v, c] : s.terms())
    terms.push_back(Json{{"c", to_string(c)}, {"m", term_monomial(s, v)},
                         {"v", to_json(v)}});
  return Json{{"terms", terms}, {"tau", to_json(s.truncation())}};
}

Json field_to_json(const FieldInstance& f) {
  Json gens = Json::array();
  auto self = std::shared_ptr<const FieldInstance>(&f, [](const FieldInstance*) {});
  for (const auto& g : f.generators()) {
    Json entry{{"name", g.name}, {"value", to_json(g.value)}};
    if (g.logder) {
      Series s = Series::from_terms(self, g.logder->terms);
      entry["logder"] = s.to_string();
      if (g.logder->tau.is_finite()) entry["logder_tau"] = to_json(g.logder->tau);
    }
    gens.push_back(std::move(entry));
  }
  Json out{{"name", f.name()}, {"rank", f.rank()}, {"generators", gens}, {"shift", to_json(f.shift())}};
  if (f.declared_gamma_der()) out["gamma_der"] = to_json(*f.declared_gamma_der());
  return out;
}

std::string dump(const Json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

}  // namespace vdf
