#include "adelic/serialize.hpp"

#include <algorithm>

namespace adelic {

namespace {

Json strings(const std::vector<std::string>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

Json polys(const std::vector<Poly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.str());
  return a;
}

Json prime_keys(const std::vector<AlgPrime>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.key());
  return a;
}

Json flag_json(const Flag& f) {
  Json a = Json::array();
  for (int d : f.dims) a.push_back(d);
  return a;
}

[[noreturn]] void bad(const std::string& path, const std::string& what) { fail(ErrorKind::InvalidScenario, path + ": " + what); }

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad(path, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string need_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

int need_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

// Runs f, prefixing errors that carry no path with `path`.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidScenario) throw;
    const std::string w = e.what();
    fail(e.kind(), path + ": " + w.substr(w.find(": ") + 2));
  }
}

}  // namespace

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) bad(path, "unknown field \"" + k + "\"");
}

// ---------------------------------------------------------------- rings and primes

Json to_json(const BaseRing& r) {
  Json j;
  switch (r.kind) {
    case RingKind::Integers:
      if (r.is_semilocal()) {
        j["kind"] = "semilocal";
        Json ps = Json::array();
        for (const auto& p : r.local_primes) ps.push_back(p.str());
        j["primes"] = ps;
      } else {
        j["kind"] = "integers";
      }
      break;
    case RingKind::Rationals: j["kind"] = "rationals"; break;
    case RingKind::PrimeField: j["kind"] = "prime_field", j["p"] = r.charp; break;
    case RingKind::UnivariatePoly: j["kind"] = "univariate", j["char"] = r.charp; break;
    case RingKind::BivariatePoly: j["kind"] = "bivariate", j["char"] = r.charp; break;
  }
  j["key"] = r.key();
  return j;
}

BaseRing base_ring_from_json(const Json& j, const std::string& path) {
  const std::string kind = need_string(need(j, "kind", path), path + ".kind");
  if (kind == "integers" || kind == "rationals") {
    check_keys(j, {"kind"}, path);
    return kind == "integers" ? BaseRing::integers() : BaseRing::rationals();
  }
  if (kind == "semilocal") {
    check_keys(j, {"kind", "primes"}, path);
    std::vector<Int> ps;
    const Json& a = need(j, "primes", path);
    if (!a.is_array()) bad(path + ".primes", "expected an array");
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_number_integer()) ps.push_back(Int(a[i].get<long long>()));
      else ps.push_back(Int(need_string(a[i], path + ".primes[" + std::to_string(i) + "]")));
    }
    return BaseRing::semilocal_integers(ps);
  }
  if (kind == "prime_field") {
    check_keys(j, {"kind", "p"}, path);
    return BaseRing::prime_field(static_cast<unsigned>(need_int(need(j, "p", path), path + ".p")));
  }
  if (kind == "univariate" || kind == "bivariate") {
    check_keys(j, {"kind", "char"}, path);
    const unsigned c = j.contains("char") ? static_cast<unsigned>(need_int(j.at("char"), path + ".char")) : 0;
    return kind == "univariate" ? BaseRing::univariate(c) : BaseRing::bivariate(c);
  }
  bad(path + ".kind", "unknown ring kind \"" + kind + "\"");
}

Json to_json(const AlgPrime& p) { return polys(p.generators()); }

AlgPrime prime_from_json(const BaseRing& r, const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "a prime is an array of generator strings");
  std::vector<std::string> gens;
  for (size_t i = 0; i < j.size(); ++i) gens.push_back(need_string(j[i], path + "[" + std::to_string(i) + "]"));
  return at_path(path, [&] { return AlgPrime::parse(r, gens); });
}

Json to_json(const PrimeRef& r) {
  if (r.is_bound()) return Json{{"var", r.bound}};
  return to_json(*r.prime);
}

namespace {

PrimeRef ref_from_json(const BaseRing& r, const Json& j, const std::string& path) {
  if (j.is_object()) {
    check_keys(j, {"var"}, path);
    return PrimeRef::var(need_int(need(j, "var", path), path + ".var"));
  }
  return PrimeRef::of(prime_from_json(r, j, path));
}

}  // namespace

Json to_json(const RingExpr& e) {
  Json j;
  j["kind"] = expr_kind_name(e.kind());
  switch (e.kind()) {
    case ExprKind::Base:
    case ExprKind::Zero: break;
    case ExprKind::Localize:
    case ExprKind::Complete:
      j["at"] = to_json(e.at());
      j["of"] = to_json(e.child());
      break;
    case ExprKind::Invert:
      j["elements"] = polys(e.inverted());
      j["of"] = to_json(e.child());
      break;
    case ExprKind::FiniteProduct: {
      Json fs = Json::array();
      for (const auto& c : e.children()) fs.push_back(to_json(c));
      j["factors"] = fs;
      break;
    }
    case ExprKind::FamilyProduct: {
      j["dim"] = e.fam().dim;
      if (e.fam().above) j["above"] = to_json(*e.fam().above);
      Json ex = Json::array();
      for (const auto& p : e.fam().except) ex.push_back(to_json(p));
      j["except"] = ex;
      j["template"] = to_json(e.child());
      break;
    }
  }
  return j;
}

RingExpr ring_expr_from_json(const BaseRing& r, const Json& j, const std::string& path) {
  std::string kind = need_string(need(j, "kind", path), path + ".kind");
  std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::tolower(c); });
  auto child = [&]() { return j.contains("of") ? ring_expr_from_json(r, j.at("of"), path + ".of") : RingExpr::base(r); };
  if (kind == "base") {
    check_keys(j, {"kind"}, path);
    return RingExpr::base(r);
  }
  if (kind == "zero") {
    check_keys(j, {"kind"}, path);
    return RingExpr::zero(r);
  }
  if (kind == "localize" || kind == "complete") {
    check_keys(j, {"kind", "at", "of"}, path);
    PrimeRef at = ref_from_json(r, need(j, "at", path), path + ".at");
    return kind == "localize" ? RingExpr::localize(child(), at) : RingExpr::complete(child(), at);
  }
  if (kind == "invert") {
    check_keys(j, {"kind", "elements", "of"}, path);
    const Json& a = need(j, "elements", path);
    if (!a.is_array()) bad(path + ".elements", "expected an array");
    std::vector<Poly> es;
    for (size_t i = 0; i < a.size(); ++i) {
      const std::string ep = path + ".elements[" + std::to_string(i) + "]";
      es.push_back(at_path(ep, [&] { return r.element(need_string(a[i], ep)); }));
    }
    return RingExpr::invert(child(), es);
  }
  if (kind == "finiteproduct" || kind == "product") {
    check_keys(j, {"kind", "factors"}, path);
    const Json& a = need(j, "factors", path);
    if (!a.is_array() || a.empty()) bad(path + ".factors", "expected a nonempty array");
    std::vector<RingExpr> fs;
    for (size_t i = 0; i < a.size(); ++i) fs.push_back(ring_expr_from_json(r, a[i], path + ".factors[" + std::to_string(i) + "]"));
    return RingExpr::product(fs);
  }
  if (kind == "familyproduct" || kind == "family") {
    check_keys(j, {"kind", "dim", "above", "except", "template"}, path);
    PrimeFamily fam;
    fam.dim = need_int(need(j, "dim", path), path + ".dim");
    if (j.contains("above")) fam.above = ref_from_json(r, j.at("above"), path + ".above");
    if (j.contains("except")) {
      const Json& a = j.at("except");
      if (!a.is_array()) bad(path + ".except", "expected an array of primes");
      for (size_t i = 0; i < a.size(); ++i) fam.except.push_back(prime_from_json(r, a[i], path + ".except[" + std::to_string(i) + "]"));
    }
    return RingExpr::family(ring_expr_from_json(r, need(j, "template", path), path + ".template"), fam);
  }
  bad(path + ".kind", "unknown expression kind \"" + kind + "\"");
}

// ---------------------------------------------------------------- matrices and complexes

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols; ++k) row.push_back(m.at(i, k).str());
    a.push_back(row);
  }
  return a;
}

Matrix matrix_from_json(const BaseRing& r, const Json& j, int rows, int cols, const std::string& path) {
  if (!j.is_array()) bad(path, "a matrix is an array of rows");
  Matrix m(rows, cols, r.charp);
  if (rows == 0 || cols == 0) {
    if (!j.empty() && !(j.size() == static_cast<size_t>(rows) && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_array() && x.empty(); })))
      bad(path, "expected an empty " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    return m;
  }
  if (j.size() != static_cast<size_t>(rows)) bad(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != static_cast<size_t>(cols)) bad(rp, "expected " + std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k) {
      const Json& e = row[k];
      const std::string ep = rp + "[" + std::to_string(k) + "]";
      m.at(i, k) = at_path(ep, [&] { return r.element(e.is_number_integer() ? std::to_string(e.get<long long>()) : need_string(e, ep)); });
    }
  }
  return m;
}

Json to_json(const BoundedComplex& c) {
  Json j;
  if (c.empty()) {
    j["lo"] = 0;
    j["ranks"] = Json::array();
    j["differentials"] = Json::array();
    return j;
  }
  j["lo"] = c.lo();
  Json ranks = Json::array(), carriers = Json::array(), labels = Json::array(), diffs = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    ranks.push_back(c.rank(n));
    Json cs = Json::array(), ls = Json::array();
    for (const auto& g : c.gens(n)) {
      cs.push_back(to_json(g.carrier));
      ls.push_back(g.label);
    }
    carriers.push_back(cs);
    labels.push_back(ls);
    if (n < c.hi()) diffs.push_back(to_json(c.diff(n)));
  }
  j["ranks"] = ranks;
  j["differentials"] = diffs;
  j["carriers"] = carriers;
  j["labels"] = labels;
  return j;
}

BoundedComplex complex_from_json(const BaseRing& r, const Json& j, const std::string& path) {
  check_keys(j, {"lo", "ranks", "differentials", "carriers", "carrier", "labels"}, path);
  BoundedComplex c(r);
  const int lo = j.contains("lo") ? need_int(j.at("lo"), path + ".lo") : 0;
  const Json& ranks = need(j, "ranks", path);
  if (!ranks.is_array()) bad(path + ".ranks", "expected an array");
  RingExpr common = j.contains("carrier") ? ring_expr_from_json(r, j.at("carrier"), path + ".carrier") : RingExpr::base(r);
  for (size_t k = 0; k < ranks.size(); ++k) {
    const int n = lo + static_cast<int>(k);
    const int rk = need_int(ranks[k], path + ".ranks[" + std::to_string(k) + "]");
    if (rk < 0) bad(path + ".ranks[" + std::to_string(k) + "]", "negative rank");
    for (int i = 0; i < rk; ++i) {
      RingExpr carrier = common;
      std::string label = "e" + std::to_string(n) + "_" + std::to_string(i);
      if (j.contains("carriers")) {
        const std::string cp = path + ".carriers[" + std::to_string(k) + "][" + std::to_string(i) + "]";
        const Json& cs = j.at("carriers");
        if (!cs.is_array() || cs.size() != ranks.size() || !cs[k].is_array() || cs[k].size() != static_cast<size_t>(rk))
          bad(path + ".carriers", "expected one carrier per generator");
        carrier = ring_expr_from_json(r, cs[k][i], cp);
      }
      if (j.contains("labels")) {
        const Json& ls = j.at("labels");
        if (!ls.is_array() || ls.size() != ranks.size() || !ls[k].is_array() || ls[k].size() != static_cast<size_t>(rk))
          bad(path + ".labels", "expected one label per generator");
        label = need_string(ls[k][i], path + ".labels");
      }
      c.add_gen(n, {carrier, label});
    }
  }
  if (j.contains("differentials")) {
    const Json& ds = j.at("differentials");
    if (!ds.is_array() || (ranks.size() > 0 && ds.size() + 1 != ranks.size() && !ds.empty()))
      bad(path + ".differentials", "expected " + std::to_string(ranks.empty() ? 0 : ranks.size() - 1) + " matrices");
    for (size_t k = 0; k < ds.size(); ++k) {
      const int n = lo + static_cast<int>(k);
      c.set_diff(n, matrix_from_json(r, ds[k], c.rank(n + 1), c.rank(n), path + ".differentials[" + std::to_string(k) + "]"));
    }
  }
  c.validate();
  return c;
}

Json to_json(const ComplexMap& f) {
  Json comps = Json::object();
  for (const auto& [n, m] : f.components)
    if (m.rows && m.cols) comps[std::to_string(n)] = to_json(m);
  return Json{{"components", comps}};
}

ComplexMap map_from_json(const BaseRing& r, const Json& j, const BoundedComplex& source, const BoundedComplex& target,
                         const std::string& path) {
  check_keys(j, {"components"}, path);
  ComplexMap f{source, target, {}};
  if (j.contains("components")) {
    const Json& cs = j.at("components");
    if (!cs.is_object()) bad(path + ".components", "expected an object keyed by degree");
    for (const auto& [k, m] : cs.items()) {
      int n = 0;
      try {
        n = std::stoi(k);
      } catch (const std::exception&) {
        bad(path + ".components", "degree key \"" + k + "\" is not an integer");
      }
      f.components[n] = matrix_from_json(r, m, target.rank(n), source.rank(n), path + ".components." + k);
    }
  }
  f.validate();
  return f;
}

// ---------------------------------------------------------------- homology and tests

Json to_json(const HomologyGroup& h) {
  Json j{{"degree", h.degree}, {"zero", h.zero}, {"free_rank", h.free_rank}, {"torsion", polys(h.torsion)},
         {"core", h.core}, {"completed", h.completed}};
  if (!h.hilbert.empty()) j["hilbert"] = h.hilbert;
  j["str"] = h.str();
  return j;
}

Json to_json(const TestReport& t) {
  Json hs = Json::array();
  for (const auto& h : t.homology) hs.push_back(to_json(h));
  return Json{{"name", t.name},
              {"prime", t.prime ? Json(t.prime->key()) : Json(nullptr)},
              {"status", test_status_name(t.status)},
              {"core", t.core},
              {"homology", hs},
              {"generators", t.generators},
              {"killed", t.killed},
              {"cancelled", t.cancelled},
              {"survivors", prime_keys(t.survivors)},
              {"omitted", strings(t.omitted)},
              {"certificates", strings(t.certificates)},
              {"summary", t.summary()}};
}

Json to_json(const SpectrumPoset& p) {
  Json ps = Json::array();
  for (const auto& q : p.primes()) ps.push_back(Json{{"key", q.key()}, {"generators", to_json(q)}, {"dim", p.dim(q)}});
  return Json{{"ring", to_json(p.ring())}, {"primes", ps}, {"r", p.r()}, {"warnings", strings(p.warnings())}};
}

// ---------------------------------------------------------------- cubes

Json to_json(const CubeDiagram& c) {
  Json vs = Json::array();
  for (const auto& v : c.vertices) {
    Json blocks = Json::array();
    for (const auto& b : v.blocks) {
      Json a = Json::array();
      for (const auto& p : b.assignment) a.push_back(p ? p->key() : std::string("*"));
      blocks.push_back(Json{{"assignment", a}, {"key", b.key()}, {"carrier", to_json(b.carrier)}, {"carrier_key", b.carrier.key()},
                            {"quotient", b.quotient}, {"complex", to_json(b.complex)}});
    }
    Json faces = Json::array();
    if (v.flag.size() >= 1)
      for (int i = 0; i < v.flag.size(); ++i) {
        Json tags = Json::array();
        const CubeVertex& src = c.at(v.flag.without(i));
        for (int b = 0; b < static_cast<int>(v.blocks.size()); ++b) {
          const int sb = c.source_block(v.flag, i, b);
          std::string kind = "identity";
          if (!src.blocks[sb].quotient && v.blocks[b].quotient) kind = "koszul-unit";
          const bool flip = c.sign_flips.count({v.flag.str(), i, b}) > 0;
          tags.push_back(Json{{"block", v.blocks[b].key()}, {"source", src.blocks[sb].key()}, {"map", kind}, {"sign", flip ? -1 : 1}});
        }
        faces.push_back(Json{{"omit", i}, {"source", flag_json(v.flag.without(i))}, {"tags", tags}});
      }
    vs.push_back(Json{{"flag", flag_json(v.flag)}, {"name", v.flag.size() ? v.flag.str() : std::string("()")}, {"blocks", blocks}, {"faces", faces}});
  }
  return Json{{"variant", cube_variant_name(c.variant)}, {"r", c.r}, {"poset", to_json(c.poset)}, {"module", to_json(c.m)},
              {"vertices", vs}, {"omitted", strings(c.omitted)}, {"corruption", c.corruption}};
}

Json to_json(const LawReport& l) {
  Json checks = Json::array(), aug = Json::array();
  for (const auto& c : l.checks) {
    Json j{{"flag", flag_json(c.flag)}, {"a", c.a}, {"b", c.b}, {"ok", c.ok}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    (c.augmented ? aug : checks).push_back(j);
  }
  return Json{{"ok", l.ok()}, {"violations", l.violations}, {"checks", checks}, {"augmentation_checks", aug}};
}

Json to_json(const ReductionPlan& p) {
  Json ts = Json::array();
  for (const auto& t : p.tests) {
    Json just = Json::array();
    for (const auto& u : t.justification)
      just.push_back(Json{{"element", u.element.str()}, {"ring", u.expr.key()}, {"verdict", unit_verdict_name(u.verdict)}, {"witness", u.witness}});
    ts.push_back(Json{{"name", t.name()},
                      {"kind", reduction_kind_name(t.kind)},
                      {"prime", t.prime ? Json(t.prime->key()) : Json(nullptr)},
                      {"origin", t.origin},
                      {"survivors", prime_keys(t.survivors)},
                      {"infinite", t.infinite},
                      {"omitted", strings(t.omitted)},
                      {"justification", just}});
  }
  return Json{{"covers", p.covers}, {"tests", ts}};
}

Json to_json(const VerificationReport& v) {
  Json ts = Json::array();
  for (const auto& t : v.tests) ts.push_back(to_json(t));
  return Json{{"cube", v.cube_id},
              {"verdict", verdict_name(v.verdict)},
              {"exit_code", verdict_exit_code(v.verdict)},
              {"plan", to_json(v.plan)},
              {"tests", ts},
              {"omitted", strings(v.omitted)},
              {"witness", v.witness},
              {"errors", strings(v.errors)}};
}

Json to_json(const BpReport& b) {
  Json es = Json::array();
  for (const auto& e : b.entries) {
    Json ts = Json::array();
    for (const auto& t : e.tests) ts.push_back(to_json(t));
    es.push_back(Json{{"flag", flag_json(e.flag)}, {"block", e.block}, {"same_carrier", e.same_carrier}, {"quasi_iso", e.quasi_iso},
                      {"tests", ts}, {"note", e.note}});
  }
  return Json{{"equivalent", b.equivalent}, {"entries", es}};
}

// ---------------------------------------------------------------- functors

Json to_json(const TowerReport& t) {
  Json lim = Json::array();
  for (const auto& d : t.limit)
    lim.push_back(Json{{"degree", d.degree}, {"rank", d.rank}, {"torsion", polys(d.torsion)}, {"cokernel", polys(d.cokernel)},
                       {"cokernel_rank", d.cokernel_rank}, {"str", d.str()}});
  return Json{{"name", t.name}, {"stable", t.stable}, {"stable_from", t.stable_from}, {"levels", t.levels},
              {"window", tower_window()}, {"limit", lim}, {"note", t.note}};
}

Json to_json(const GammaDegree& g) {
  return Json{{"degree", g.degree}, {"torsion", polys(g.torsion)}, {"divisible_rank", g.divisible_rank},
              {"divisible", g.divisible_rank ? Json(g.ring + "[1/" + g.inverted.str() + "]/" + g.ring) : Json(nullptr)}, {"str", g.str()}};
}

Json to_json(const SupportReport& s) {
  Json w = Json::object();
  for (const auto& [k, v] : s.witnesses) w[k] = v;
  return Json{{"support", prime_keys(s.support)}, {"cosupport", prime_keys(s.cosupport)}, {"undecided", prime_keys(s.undecided)},
              {"witnesses", w}, {"acyclic", s.acyclic}};
}

Json to_json(const DimFiltration& f) {
  return Json{{"i", f.i}, {"family", prime_keys(f.family)}, {"generators", polys(f.generators)}, {"low", to_json(f.low)},
              {"high", to_json(f.high)}, {"support_checked", f.support_checked}};
}

// ---------------------------------------------------------------- modules

Json to_json(const AdelicModule& x) {
  Json vs = Json::array();
  for (int k : x.rings.display) {
    Json fs = Json::array();
    for (size_t b = 0; b < x.rings.factors[k].size(); ++b)
      fs.push_back(Json{{"label", x.rings.factor_labels[k][b]}, {"carrier", to_json(x.rings.factors[k][b])}});
    Json maps = Json::array();
    for (const auto& f : x.faces[k]) maps.push_back(to_json(f));
    vs.push_back(Json{{"name", x.rings.names[k]}, {"flag", flag_json(x.rings.flags[k])}, {"factors", fs}, {"complex", to_json(x.modules[k])},
                      {"faces", maps}});
  }
  return Json{{"ring", to_json(x.rings.base)}, {"r", x.rings.r}, {"vertices", vs}};
}

Json to_json(const CocartesianStatus& s) {
  Json fs = Json::array();
  for (const auto& f : s.faces) {
    Json ts = Json::array();
    for (const auto& t : f.tests) ts.push_back(to_json(t));
    fs.push_back(Json{{"target", flag_json(f.target)}, {"face", f.face}, {"quasi_iso", f.quasi_iso}, {"witness", f.witness}, {"tests", ts}});
  }
  return Json{{"cocartesian", s.cocartesian}, {"faces", fs}};
}

Json to_json(const RoundtripReport& r) {
  Json ts = Json::array();
  for (const auto& t : r.tests) ts.push_back(to_json(t));
  return Json{{"pass", r.pass}, {"verdict", verdict_name(r.verdict)}, {"original", r.original}, {"image", r.image},
              {"witness", r.witness}, {"tests", ts}};
}

Json to_json(const FdStage& s) {
  return Json{{"d", s.d}, {"eta_d_qiso", s.eta_d_qiso}, {"cone_support", strings(s.cone_support)}, {"cone_dim", s.cone_dim},
              {"certified", s.certified}, {"module", to_json(s.fd)}};
}

Json to_json(const Reconstruction& r) {
  Json st = Json::array();
  for (const auto& s : r.stages) {
    Json j = to_json(s);
    j.erase("module");
    st.push_back(j);
  }
  return Json{{"ok", r.ok}, {"stages", st}};
}

}  // namespace adelic
