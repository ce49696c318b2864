#include "hpt/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hpt::io {

namespace {

[[noreturn]] void content_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what, 0, 0, where);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) content_error(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (!j.is_string()) content_error(where, "scalar must be a string \"p\" or \"p/q\"");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const std::exception& e) {
    content_error(where, e.what());
  }
}

std::size_t lookup(const GradedModule& m, const Json& name, const std::string& where) {
  if (!name.is_string()) content_error(where, "generator name must be a string");
  const auto i = m.find(name.get<std::string>());
  if (!i) content_error(where, "unknown generator \"" + name.get<std::string>() + "\"");
  return *i;
}

Vector vector_from_json(const Json& j, const GradedModule& m, const std::string& where) {
  if (!j.is_object()) content_error(where, "expected {generator: scalar}");
  Vector v;
  for (const auto& [name, x] : j.items()) add_term(v, lookup(m, Json(name), where), scalar_from_json(x, where + "/" + name));
  return v;
}

Json vector_to_json(const Vector& v, const GradedModule& m) {
  Json out = Json::object();
  for (const auto& [i, x] : v) out[m.name(i)] = format_scalar(x);
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, 0, 0, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column),
                     line, column);
  }
}

GradedModule module_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) content_error(where, "expected a list of generators");
  std::vector<Generator> gens;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    const Json& name = require(j[i], "name", at);
    const Json& degree = require(j[i], "degree", at);
    if (!name.is_string() || name.get<std::string>().empty()) content_error(at, "name must be a nonempty string");
    if (!degree.is_number_integer()) content_error(at, "degree must be an integer");
    if (!seen.insert(name.get<std::string>()).second) content_error(at, "duplicate generator name");
    gens.push_back({name.get<std::string>(), degree.get<int>()});
  }
  return GradedModule(std::move(gens));
}

Json module_to_json(const GradedModule& m) {
  Json out = Json::array();
  for (const auto& g : m.generators()) out.push_back({{"name", g.name}, {"degree", g.degree}});
  return out;
}

GradedMap map_from_json(const Json& j, const GradedModule& source, const GradedModule& target, int degree,
                        const std::string& where) {
  GradedMap f(source, target, degree);
  if (j.is_null()) return f;
  if (!j.is_object()) content_error(where, "expected {source: {target: scalar}}");
  for (const auto& [src, column] : j.items()) {
    const std::size_t s = lookup(source, Json(src), where);
    try {
      f.add_to_column(s, Scalar(1), vector_from_json(column, target, where + "/" + src));
    } catch (const StructuralError& e) {
      content_error(where + "/" + src, e.what());
    }
  }
  return f;
}

Json map_to_json(const GradedMap& f) {
  Json out = Json::object();
  for (std::size_t s = 0; s < f.source().size(); ++s)
    if (!f.column(s).empty()) out[f.source().name(s)] = vector_to_json(f.column(s), f.target());
  return out;
}

Json map_to_json_blocks(const GradedMap& f, const SymCoalgebra& source, const SymCoalgebra& target) {
  Json blocks = Json::object();
  for (std::size_t s = 0; s < f.source().size(); ++s)
    for (const auto& [t, x] : f.column(s)) {
      const std::string key = std::to_string(source.weight(s)) + "->" + std::to_string(target.weight(t));
      blocks[key][f.source().name(s)][f.target().name(t)] = format_scalar(x);
    }
  return Json{{"degree", f.degree()}, {"blocks", blocks}};
}

Problem parse_problem(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) content_error("", "top level must be an object");
  const GradedModule m = module_from_json(require(j, "generators", ""), "/generators");
  const GradedMap d = map_from_json(j.value("differential", Json()), m, m, -1, "/differential");

  std::vector<BracketEntry> constants;
  const Json bracket = j.value("bracket", Json::array());
  if (!bracket.is_array()) content_error("/bracket", "expected a list of [left, right, value]");
  for (std::size_t i = 0; i < bracket.size(); ++i) {
    const std::string at = "/bracket/" + std::to_string(i);
    const Json& e = bracket[i];
    if (!e.is_array() || e.size() != 3) content_error(at, "expected [left, right, value]");
    constants.push_back({lookup(m, e[0], at), lookup(m, e[1], at), vector_from_json(e[2], m, at + "/2")});
  }
  std::optional<PreBracket> g;
  try {
    g.emplace(ChainComplex(m, d), constants);
  } catch (const StructuralError& e) {
    content_error("/bracket", e.what());
  }

  std::optional<RawContraction> contraction;
  if (j.contains("contraction")) {
    const Json& c = j.at("contraction");
    const GradedModule small = module_from_json(require(c, "generators", "/contraction"), "/contraction/generators");
    ChainComplex big(m, d);
    ChainComplex sm(small, map_from_json(c.value("differential", Json()), small, small, -1,
                                         "/contraction/differential"));
    contraction = RawContraction{big, sm, map_from_json(c.value("nabla", Json()), small, m, 0, "/contraction/nabla"),
                                 map_from_json(c.value("pi", Json()), m, small, 0, "/contraction/pi"),
                                 map_from_json(c.value("h", Json()), m, m, 1, "/contraction/h")};
  }
  std::optional<int> w;
  if (j.contains("maxWeight")) {
    if (!j.at("maxWeight").is_number_integer()) content_error("/maxWeight", "must be an integer");
    w = j.at("maxWeight").get<int>();
  }
  return Problem{std::move(*g), std::move(contraction), w};
}

Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

Json problem_to_json(const PreBracket& g, const RawContraction* contraction, std::optional<int> max_weight) {
  Json out = Json::object();
  out["generators"] = module_to_json(g.module());
  out["differential"] = map_to_json(g.d());
  Json bracket = Json::array();
  for (const auto& e : g.constants())
    bracket.push_back({g.module().name(e.left), g.module().name(e.right), vector_to_json(e.value, g.module())});
  out["bracket"] = bracket;
  if (contraction) {
    out["contraction"] = {{"generators", module_to_json(contraction->small.module)},
                          {"differential", map_to_json(contraction->small.d)},
                          {"nabla", map_to_json(contraction->nabla)},
                          {"pi", map_to_json(contraction->pi)},
                          {"h", map_to_json(contraction->h)}};
  }
  if (max_weight) out["maxWeight"] = *max_weight;
  return out;
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks()) {
    Json e{{"identity", c.identity}, {"stage", c.stage}, {"passed", c.passed}};
    if (!c.passed) e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  return Json{{"ok", r.ok()}, {"checks", checks}};
}

std::string pretty_report(const Report& r, const std::string& title) {
  std::ostringstream out;
  out << title << "\n";
  for (const auto& c : r.checks()) {
    out << "  " << (c.passed ? "pass" : "FAIL") << "  ";
    if (c.stage > 0) out << "[stage " << c.stage << "] ";
    out << c.identity;
    if (!c.passed) out << "  at " << c.witness;
    out << "\n";
  }
  return out.str();
}

Json linf_to_json(const LInftyStructure& l) {
  const SymCoalgebra& c = l.coalgebra();
  Json brackets = Json::object();
  for (int k = 1; k <= l.max_arity(); ++k) {
    Json entries = Json::array();
    for (auto w : c.words_of_weight(static_cast<std::size_t>(k))) {
      const Vector& v = l.table(k).column(w);
      if (v.empty()) continue;
      Json args = Json::array();
      for (auto letter : c.word(w).letters) args.push_back(l.m().name(letter));
      entries.push_back({{"args", args}, {"value", vector_to_json(v, l.m())}});
    }
    brackets[std::to_string(k)] = entries;
  }
  return Json{{"module", module_to_json(l.m())}, {"maxArity", l.max_arity()}, {"brackets", brackets}};
}

LInftyStructure linf_from_json(const Json& j) {
  const GradedModule m = module_from_json(require(j, "module", ""), "/module");
  const Json& arity = require(j, "maxArity", "");
  if (!arity.is_number_integer() || arity.get<int>() < 1) content_error("/maxArity", "must be a positive integer");
  const int w = arity.get<int>();
  GradedModule letters = m.shifted(1, "s");
  auto c = std::make_shared<const SymCoalgebra>(letters, w);
  std::map<int, GradedMap> tables;
  for (int k = 1; k <= w; ++k) tables.emplace(k, GradedMap(c->words(), m, -2));
  const Json& brackets = require(j, "brackets", "");
  if (!brackets.is_object()) content_error("/brackets", "expected {arity: [...]}");
  for (const auto& [key, entries] : brackets.items()) {
    const std::string at = "/brackets/" + key;
    int k = 0;
    try {
      k = std::stoi(key);
    } catch (const std::exception&) {
      content_error(at, "arity must be an integer");
    }
    if (k < 1 || k > w) content_error(at, "arity out of range");
    if (!entries.is_array()) content_error(at, "expected a list");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string e_at = at + "/" + std::to_string(i);
      const Json& args = require(entries[i], "args", e_at);
      if (!args.is_array() || static_cast<int>(args.size()) != k) content_error(e_at, "expected " + key + " args");
      std::vector<std::size_t> seq;
      for (const auto& a : args) seq.push_back(lookup(m, a, e_at));
      const auto normal = c->normalize(seq);
      if (!normal || normal->sign != 1 || c->word(normal->index).letters != seq)
        content_error(e_at, "args must be a canonical word");
      try {
        tables.at(k).add_to_column(normal->index, Scalar(1), vector_from_json(require(entries[i], "value", e_at), m,
                                                                                e_at + "/value"));
      } catch (const StructuralError& e) {
        content_error(e_at, e.what());
      }
    }
  }
  return LInftyStructure(std::move(c), m, std::move(tables));
}

Json tau_to_json(const TransferState& s) {
  Json out = Json::object();
  for (int j = 1; j <= s.computed(); ++j) out[std::to_string(j)] = map_to_json(s.tau(j));
  return out;
}

Json coderivation_to_json(const TransferState& s) {
  Json out = Json::object();
  for (int j = 1; j < s.computed(); ++j) out[std::to_string(j)] = map_to_json(s.coderivation(j).corestriction);
  return out;
}

Json final_contraction_to_json(const FinalContraction& f) {
  const SymCoalgebra& small = *f.functor.small_words;
  const SymCoalgebra& big = *f.functor.big_words;
  return Json{{"taubar", map_to_json_blocks(f.tau_bar, small, big)},
              {"Pi", map_to_json_blocks(f.pi, big, small)},
              {"H", map_to_json_blocks(f.h, big, big)},
              {"Phi", map_to_json_blocks(f.phi, small, small)},
              {"Psi", map_to_json_blocks(f.psi, small, small)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hpt::io
