#include "adelic/scenario.hpp"

#include <fstream>
#include <sstream>

namespace adelic {

namespace {

[[noreturn]] void bad(const std::string& origin, const std::string& path, const std::string& what) {
  fail(ErrorKind::InvalidScenario, origin + ": " + path + ": " + what);
}

std::string at_index(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Line and column of a byte offset.
std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

Flag flag_from_json(const Json& j, const std::string& origin, const std::string& path) {
  if (!j.is_array()) bad(origin, path, "a flag is an array of dimensions");
  std::vector<int> dims;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) bad(origin, at_index(path, i), "expected an integer");
    dims.push_back(j[i].get<int>());
  }
  return Flag::make(dims);
}

std::vector<AlgPrime> primes_from_spec(const BaseRing& r, const std::string& spec) {
  std::vector<AlgPrime> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::vector<std::string> gens;
    std::stringstream gs(item);
    std::string g;
    while (std::getline(gs, g, ',')) {
      const auto a = g.find_first_not_of(" \t"), b = g.find_last_not_of(" \t");
      if (a != std::string::npos) gens.push_back(g.substr(a, b - a + 1));
    }
    if (gens.empty()) fail(ErrorKind::InvalidScenario, "--poset-primes: empty prime in \"" + spec + "\"");
    out.push_back(AlgPrime::parse(r, gens));
  }
  if (out.empty()) fail(ErrorKind::InvalidScenario, "--poset-primes: no primes");
  return out;
}

SpectrumPoset parse_poset(const BaseRing& r, const Json& doc, const std::string& origin) {
  if (!doc.contains("primes")) {
    if (r.krull_dim() > 0 && !r.is_semilocal()) bad(origin, "$", "missing field \"primes\" (" + r.key() + " has infinitely many primes)");
    return SpectrumPoset::full(r);
  }
  const Json& ps = doc.at("primes");
  if (!ps.is_array() || ps.empty()) bad(origin, "$.primes", "expected a nonempty array");
  std::vector<AlgPrime> primes;
  std::vector<std::optional<int>> dims;
  bool any_dim = false;
  for (size_t i = 0; i < ps.size(); ++i) {
    const std::string path = at_index("$.primes", i);
    if (ps[i].is_array()) {
      primes.push_back(prime_from_json(r, ps[i], path));
      dims.emplace_back();
      continue;
    }
    check_keys(ps[i], {"generators", "dim"}, origin + ": " + path);
    if (!ps[i].contains("generators")) bad(origin, path, "missing field \"generators\"");
    primes.push_back(prime_from_json(r, ps[i].at("generators"), path + ".generators"));
    if (ps[i].contains("dim")) {
      if (!ps[i].at("dim").is_number_integer()) bad(origin, path + ".dim", "expected an integer");
      dims.push_back(ps[i].at("dim").get<int>());
      any_dim = true;
    } else {
      dims.emplace_back();
    }
  }
  std::optional<std::vector<int>> d;
  if (any_dim) {
    d.emplace();
    for (size_t i = 0; i < primes.size(); ++i) d->push_back(dims[i] ? *dims[i] : primes[i].dim());
  }
  std::vector<std::pair<int, int>> cont;
  if (doc.contains("containments")) {
    const Json& cs = doc.at("containments");
    if (!cs.is_array()) bad(origin, "$.containments", "expected an array of index pairs");
    for (size_t i = 0; i < cs.size(); ++i) {
      const Json& c = cs[i];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
        bad(origin, at_index("$.containments", i), "expected [a, b] with primes[a] ⊆ primes[b]");
      const int a = c[0].get<int>(), b = c[1].get<int>();
      if (a < 0 || b < 0 || a >= static_cast<int>(primes.size()) || b >= static_cast<int>(primes.size()))
        bad(origin, at_index("$.containments", i), "prime index out of range");
      cont.emplace_back(a, b);
    }
  }
  try {
    return SpectrumPoset::make(r, primes, d, cont);
  } catch (const Error& e) {
    const std::string w = e.what();
    fail(e.kind(), origin + ": $.primes: " + w.substr(w.find(": ") + 2));
  }
}

Json with_carrier(const Json& complex, const Json& carrier) {
  if (!complex.is_object() || complex.contains("carrier") || complex.contains("carriers")) return complex;
  Json c = complex;
  c["carrier"] = carrier;
  return c;
}

AdelicModule parse_cospan(const BaseRing& r, const Json& j, const std::string& origin) {
  const std::string path = "$.adelic_module";
  check_keys(j, {"shape", "names", "left", "corner", "right", "vertices", "maps"}, origin + ": " + path);
  if (j.contains("shape") && j.at("shape") != "cospan") bad(origin, path + ".shape", "only \"cospan\" is supported");
  std::vector<std::string> names = {"left", "corner", "right"};
  if (j.contains("names")) {
    const Json& ns = j.at("names");
    if (!ns.is_array() || ns.size() != 3 || !ns[0].is_string() || !ns[1].is_string() || !ns[2].is_string())
      bad(origin, path + ".names", "expected three strings (left, corner, right)");
    names = {ns[0].get<std::string>(), ns[1].get<std::string>(), ns[2].get<std::string>()};
  }
  Json rings[3];
  const char* roles[3] = {"left", "corner", "right"};
  for (int k = 0; k < 3; ++k) {
    if (!j.contains(roles[k])) bad(origin, path, std::string("missing field \"") + roles[k] + "\"");
    rings[k] = j.at(roles[k]);
  }
  const RingExpr left = ring_expr_from_json(r, rings[0], origin + ": " + path + ".left");
  const RingExpr corner = ring_expr_from_json(r, rings[1], origin + ": " + path + ".corner");
  const RingExpr right = ring_expr_from_json(r, rings[2], origin + ": " + path + ".right");

  AdelicModule x;
  x.rings = RingCube::cospan(r, left, corner, right, names);
  x.modules.assign(3, BoundedComplex(r));
  x.faces.assign(3, {});
  // Vertex order in the ring cube: left, right, corner.
  const int slot[3] = {0, 2, 1};
  const Json vs = j.contains("vertices") ? j.at("vertices") : Json::object();
  check_keys(vs, {"left", "corner", "right"}, origin + ": " + path + ".vertices");
  for (int k = 0; k < 3; ++k)
    if (vs.contains(roles[k]))
      x.modules[slot[k]] = complex_from_json(r, with_carrier(vs.at(roles[k]), rings[k]), origin + ": " + path + ".vertices." + roles[k]);

  const Json ms = j.contains("maps") ? j.at("maps") : Json::object();
  check_keys(ms, {"left", "right"}, origin + ": " + path + ".maps");
  auto face = [&](const char* role, int src) {
    if (!ms.contains(role)) return ComplexMap{x.modules[src], x.modules[2], {}};
    return map_from_json(r, ms.at(role), x.modules[src], x.modules[2], origin + ": " + path + ".maps." + role);
  };
  // faces[corner][0] omits dimension 1 (from the right), faces[corner][1] omits dimension 0.
  x.faces[2] = {face("right", 1), face("left", 0)};
  x.validate();
  return x;
}

Corruption parse_corruption(const BaseRing& r, const Json& j, const std::string& origin) {
  const std::string path = "$.corruption";
  check_keys(j, {"kind", "flag", "face", "block", "prime"}, origin + ": " + path);
  Corruption c;
  if (!j.contains("kind") || !j.at("kind").is_string()) bad(origin, path + ".kind", "expected \"sign\" or \"quotient\"");
  c.kind = j.at("kind").get<std::string>();
  if (c.kind == "sign") {
    if (!j.contains("flag")) bad(origin, path, "missing field \"flag\"");
    c.flag = flag_from_json(j.at("flag"), origin, path + ".flag");
    for (const char* k : {"face", "block"})
      if (j.contains(k) && !j.at(k).is_number_integer()) bad(origin, path + "." + k, "expected an integer");
    c.face = j.value("face", 0);
    c.block = j.value("block", 0);
  } else if (c.kind == "quotient") {
    if (!j.contains("prime")) bad(origin, path, "missing field \"prime\"");
    c.prime = prime_from_json(r, j.at("prime"), path + ".prime");
  } else {
    bad(origin, path + ".kind", "unknown corruption \"" + c.kind + "\"");
  }
  return c;
}

FunctorParams parse_functor(const BaseRing& r, const Json& j, const std::string& origin) {
  const std::string path = "$.functor";
  check_keys(j, {"prime", "generators", "i"}, origin + ": " + path);
  FunctorParams f;
  if (j.contains("prime")) f.prime = prime_from_json(r, j.at("prime"), path + ".prime");
  if (j.contains("generators")) {
    const Json& gs = j.at("generators");
    if (!gs.is_array()) bad(origin, path + ".generators", "expected an array of strings");
    for (size_t i = 0; i < gs.size(); ++i) {
      if (!gs[i].is_string()) bad(origin, at_index(path + ".generators", i), "expected a string");
      try {
        f.generators.push_back(r.element(gs[i].get<std::string>()));
      } catch (const Error& e) {
        bad(origin, at_index(path + ".generators", i), e.what());
      }
    }
  }
  if (j.contains("i")) {
    if (!j.at("i").is_number_integer()) bad(origin, path + ".i", "expected an integer");
    f.i = j.at("i").get<int>();
  }
  return f;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
    fail(ErrorKind::Parse, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  if (!doc.is_object()) bad(origin, "$", "a scenario is a JSON object");
  check_keys(doc, {"schema", "name", "description", "ring", "primes", "containments", "variant", "module", "adelic_module",
                   "functor", "corruption", "commands"},
             origin + ": $");
  if (!doc.contains("schema")) bad(origin, "$", "missing field \"schema\"");
  if (doc.at("schema") != kScenarioSchema) bad(origin, "$.schema", std::string("expected \"") + kScenarioSchema + "\"");

  Scenario s;
  s.source = doc;
  try {
    if (doc.contains("name")) {
      if (!doc.at("name").is_string()) bad(origin, "$.name", "expected a string");
      s.name = doc.at("name").get<std::string>();
    }
    if (doc.contains("description")) {
      if (!doc.at("description").is_string()) bad(origin, "$.description", "expected a string");
      s.description = doc.at("description").get<std::string>();
    }
    if (!doc.contains("ring")) bad(origin, "$", "missing field \"ring\"");
    s.ring = base_ring_from_json(doc.at("ring"), "$.ring");
    s.poset = parse_poset(s.ring, doc, origin);
    if (doc.contains("variant")) {
      const Json& v = doc.at("variant");
      if (v == "adelic" || v == "Adelic") s.variant = CubeVariant::Adelic;
      else if (v == "bp" || v == "BP" || v == "BeilinsonParshin") s.variant = CubeVariant::BeilinsonParshin;
      else bad(origin, "$.variant", "expected \"adelic\" or \"bp\"");
    }
    if (doc.contains("module")) s.module = complex_from_json(s.ring, doc.at("module"), "$.module");
    if (doc.contains("adelic_module")) s.adelic_module = parse_cospan(s.ring, doc.at("adelic_module"), origin);
    if (doc.contains("functor")) s.functor = parse_functor(s.ring, doc.at("functor"), origin);
    if (doc.contains("corruption")) s.corruption = parse_corruption(s.ring, doc.at("corruption"), origin);
    if (doc.contains("commands")) {
      const Json& cs = doc.at("commands");
      if (!cs.is_array()) bad(origin, "$.commands", "expected an array of strings");
      for (size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].is_string()) bad(origin, at_index("$.commands", i), "expected a string");
        s.commands.push_back(cs[i].get<std::string>());
      }
    }
  } catch (const Error& e) {
    const std::string w = e.what();
    if (w.find(origin + ": ") != std::string::npos) throw;
    fail(e.kind(), origin + ": " + w.substr(w.find(": ") + 2));
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidScenario, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

void override_primes(Scenario& s, const std::string& spec) { s.poset = SpectrumPoset::make(s.ring, primes_from_spec(s.ring, spec)); }

BoundedComplex scenario_module(const Scenario& s) { return s.module ? *s.module : BoundedComplex::unit(s.ring); }

CubeDiagram scenario_cube(const Scenario& s) {
  const BoundedComplex m = scenario_module(s);
  if (s.corruption && s.corruption->kind == "quotient") return build_quotient_corrupted(m, s.poset, *s.corruption->prime);
  CubeDiagram c = build_cube(m, s.poset, s.variant);
  if (s.corruption) corrupt_sign(c, s.corruption->flag, s.corruption->face, s.corruption->block);
  return c;
}

AdelicModule scenario_adelic_module(const Scenario& s) {
  if (s.adelic_module) return *s.adelic_module;
  return tensor_up(scenario_module(s), s.poset);
}

}  // namespace adelic
