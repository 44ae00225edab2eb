#include "adelic/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <functional>
#include <map>

using namespace adelic;

namespace {

struct Result {
  Json json;
  std::string text;
  int exit_code = 0;
};

struct Settings {
  std::string format = "json";
  int degree_cap = kDefaultDegreeCap;
  int window = kTowerWindow;
  std::string poset_primes;
};

Json homology_json(const BoundedComplex& c, const TestOptions& opt, std::string* text) {
  try {
    Json hs = Json::array();
    for (const auto& h : homology(c, opt.degree_cap)) {
      hs.push_back(to_json(h));
      *text += "  H^" + std::to_string(h.degree) + " = " + h.str() + "\n";
    }
    return Json{{"homology", hs}};
  } catch (const Error&) {
    Json ts = Json::array();
    for (const auto& t : test_battery(c, {}, opt)) {
      ts.push_back(to_json(t));
      *text += "  " + t.summary() + "\n";
    }
    return Json{{"tests", ts}};
  }
}

const AlgPrime& need_prime(const Scenario& s) {
  if (!s.functor.prime) fail(ErrorKind::InvalidScenario, "functor commands need $.functor.prime");
  return *s.functor.prime;
}

Result cube_build(const Scenario& s, const TestOptions&) {
  const CubeDiagram c = scenario_cube(s);
  std::string text = std::string(cube_variant_name(c.variant)) + " cube, r = " + std::to_string(c.r) + "\n";
  for (const auto& v : c.vertices) {
    text += "  " + (v.flag.size() ? v.flag.str() : std::string("()")) + ":";
    for (const auto& b : v.blocks) text += " " + b.key();
    text += "\n";
  }
  for (const auto& o : c.omitted) text += "  omitted: " + o + "\n";
  return {to_json(c), text, 0};
}

Result cube_check_law(const Scenario& s, const TestOptions&) {
  const LawReport l = check_cochain_law(scenario_cube(s));
  std::string text;
  for (const auto& c : l.checks)
    text += std::string(c.ok ? "ok  " : "BAD ") + (c.augmented ? "(augmented) " : "") + c.flag.str() + " a=" + std::to_string(c.a) +
            " b=" + std::to_string(c.b) + (c.witness.empty() ? "" : "  " + c.witness) + "\n";
  text += l.ok() ? "law holds\n" : std::to_string(l.violations) + " violation(s)\n";
  return {to_json(l), text, l.ok() ? 0 : 2};
}

Result verify_pullback_cmd(const Scenario& s, const TestOptions& opt) {
  const VerificationReport v = verify_pullback(scenario_cube(s), opt, s.name.empty() ? "cube" : s.name);
  return {to_json(v), v.str(), verdict_exit_code(v.verdict)};
}

Result verify_bp(const Scenario& s, const TestOptions& opt) {
  const BpReport b = verify_bp_equivalence(scenario_module(s), s.poset, opt);
  return {to_json(b), b.str(), b.equivalent ? 0 : 2};
}

Result functor_gamma(const Scenario& s, const TestOptions& opt) {
  const AlgPrime& p = need_prime(s);
  const BoundedComplex m = scenario_module(s);
  const KoszulData k = s.functor.generators.empty() ? KoszulData::of(p) : KoszulData::with(p, s.functor.generators);
  const BoundedComplex g = gamma(k, m);
  Json gens = Json::array();
  for (const auto& e : k.generators) gens.push_back(e.str());
  std::string text = "Gamma_" + p.key() + " M\n";
  Json j{{"prime", p.key()}, {"generators", gens}, {"complex", to_json(g)}};
  try {
    Json lc = Json::array();
    for (const auto& d : gamma_report(p, m)) {
      lc.push_back(to_json(d));
      text += "  " + d.str() + "\n";
    }
    j["local_cohomology"] = lc;
  } catch (const Error& e) {
    j["local_cohomology_note"] = e.what();
    j.update(homology_json(g, opt, &text));
  }
  return {j, text, 0};
}

Result functor_localize(const Scenario& s, const TestOptions& opt) {
  const AlgPrime& p = need_prime(s);
  const BoundedComplex l = localize(p, scenario_module(s));
  std::string text = "L_" + p.key() + " M\n";
  Json j{{"prime", p.key()}, {"complex", to_json(l)}};
  j.update(homology_json(l, opt, &text));
  return {j, text, 0};
}

Result functor_complete(const Scenario& s, const TestOptions& opt) {
  const AlgPrime& p = need_prime(s);
  const BoundedComplex m = scenario_module(s);
  const TowerReport t = completion_tower(p, m);
  const BoundedComplex c = complete(p, m);
  std::string text = t.str() + "\nLambda_" + p.key() + " M\n";
  Json j{{"prime", p.key()}, {"tower", to_json(t)}, {"complex", to_json(c)}};
  j.update(homology_json(c, opt, &text));
  return {j, text, t.stable ? 0 : 2};
}

Result functor_support(const Scenario& s, const TestOptions&, bool cosupport) {
  const BoundedComplex m = scenario_module(s);
  const SupportReport r = cosupport ? support_and_cosupport(m, s.poset) : support(m, s.poset);
  Json j = to_json(r);
  if (!cosupport) j.erase("cosupport");
  return {j, r.str(), 0};
}

Result functor_filtration(const Scenario& s, const TestOptions& opt) {
  const DimFiltration f = dim_filtration(scenario_module(s), s.functor.i, s.poset);
  std::string text = "M_{<=" + std::to_string(f.i) + "} = Gamma_I M, I = (";
  for (size_t k = 0; k < f.generators.size(); ++k) text += (k ? ", " : "") + f.generators[k].str();
  text += ")\n low:\n";
  Json j = to_json(f);
  j["low_invariants"] = homology_json(f.low, opt, &text);
  text += " high:\n";
  j["high_invariants"] = homology_json(f.high, opt, &text);
  return {j, text, 0};
}

Result module_tensor_up(const Scenario& s, const TestOptions& opt) {
  const AdelicModule x = tensor_up(scenario_module(s), s.poset);
  const std::string tuple = module_tuple(x, opt);
  Json j = to_json(x);
  j["tuple"] = tuple;
  return {j, x.str() + tuple + "\n", 0};
}

Result module_cocartesian(const Scenario& s, const TestOptions& opt) {
  const CocartesianStatus c = is_cocartesian(scenario_adelic_module(s), opt);
  return {to_json(c), c.str(), c.cocartesian ? 0 : 2};
}

Result module_holim(const Scenario& s, const TestOptions& opt) {
  const AdelicModule x = scenario_adelic_module(s);
  const BoundedComplex h = holim_module(x);
  const auto base = reduce_to_base(h);
  std::string text = "holim X:\n" + h.str();
  Json j{{"tuple", module_tuple(x, opt)}, {"holim", to_json(h)}};
  j["over_base"] = base ? to_json(*base) : Json(nullptr);
  j.update(homology_json(base ? *base : h, opt, &text));
  return {j, text, 0};
}

Result module_roundtrip(const Scenario& s, const TestOptions& opt) {
  const RoundtripReport r =
      s.adelic_module ? roundtrip_module(*s.adelic_module, opt) : roundtrip_check(scenario_module(s), s.poset, opt);
  const int code = !r.pass ? 2 : r.verdict == Verdict::RelativePullback ? 3 : 0;
  return {to_json(r), r.str(), code};
}

Result module_reconstruct(const Scenario& s, const TestOptions& opt) {
  const Reconstruction r = reconstruct(scenario_adelic_module(s), opt);
  return {to_json(r), r.str(), r.ok ? 0 : 2};
}

using Handler = std::function<Result(const Scenario&, const TestOptions&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"cube build", cube_build},
      {"cube check-law", cube_check_law},
      {"verify pullback", verify_pullback_cmd},
      {"verify bp-equivalence", verify_bp},
      {"functor gamma", functor_gamma},
      {"functor localize", functor_localize},
      {"functor complete", functor_complete},
      {"functor support", [](const Scenario& s, const TestOptions& o) { return functor_support(s, o, false); }},
      {"functor cosupport", [](const Scenario& s, const TestOptions& o) { return functor_support(s, o, true); }},
      {"functor filtration", functor_filtration},
      {"module tensor-up", module_tensor_up},
      {"module cocartesian", module_cocartesian},
      {"module holim", module_holim},
      {"module roundtrip", module_roundtrip},
      {"module reconstruct", module_reconstruct},
  };
  return h;
}

// Exit codes rank as error > fail > relative > pass.
int worse(int a, int b) {
  auto rank = [](int c) { return c == 1 ? 3 : c == 2 ? 2 : c == 3 ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

int run(const std::vector<std::string>& commands, const std::string& file, const Settings& st) {
  Json out = Json::array();
  std::string text;
  int code = 0;
  try {
    Scenario s = load_scenario(file);
    if (!st.poset_primes.empty()) override_primes(s, st.poset_primes);
    TestOptions opt;
    opt.degree_cap = st.degree_cap;
    for (const auto& c : commands) {
      const auto it = handlers().find(c);
      if (it == handlers().end()) fail(ErrorKind::InvalidScenario, file + ": unknown command \"" + c + "\"");
      Result r;
      try {
        r = it->second(s, opt);
      } catch (const Error& e) {
        r = {Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}, std::string("error: ") + e.what() + "\n", 1};
      }
      code = worse(code, r.exit_code);
      if (!r.text.empty() && r.text.back() != '\n') r.text += "\n";
      out.push_back(Json{{"command", c}, {"scenario", s.name}, {"exit_code", r.exit_code}, {"result", r.json}});
      text += "== " + c + " (" + (s.name.empty() ? file : s.name) + ")\n" + r.text + "exit " + std::to_string(r.exit_code) + "\n";
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (st.format == "json") std::cout << Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}, {"exit_code", 1}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (st.format == "json") std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
  else std::cout << text;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of adelic cubes and adelic modules over D(R)."};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  app.add_option("--format", st.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--degree-cap", st.degree_cap, "Groebner degree cap")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--stabilization-window", st.window, "Equal levels required for a stable tower")
      ->check(CLI::Range(2, 16))
      ->capture_default_str();
  app.add_option("--poset-primes", st.poset_primes, "Override the declared primes, e.g. \"0;2;3\" or \"0;x;x,y\"");

  std::string file;
  std::string chosen;
  const std::map<std::string, std::vector<std::string>> groups = {
      {"cube", {"build", "check-law"}},
      {"verify", {"pullback", "bp-equivalence"}},
      {"functor", {"gamma", "localize", "complete", "support", "cosupport", "filtration"}},
      {"module", {"tensor-up", "cocartesian", "holim", "roundtrip", "reconstruct"}},
  };
  for (const auto& [g, subs] : groups) {
    CLI::App* gc = app.add_subcommand(g, g + " commands");
    gc->require_subcommand(1);
    gc->fallthrough();
    for (const auto& sub : subs) {
      CLI::App* sc = gc->add_subcommand(sub);
      sc->fallthrough();
      sc->add_option("scenario", file, "Scenario file")->required()->check(CLI::ExistingFile);
      sc->callback([&chosen, g = g, sub] { chosen = g + " " + sub; });
    }
  }
  CLI::App* runc = app.add_subcommand("run", "Run the commands listed in the scenario");
  runc->fallthrough();
  runc->add_option("scenario", file, "Scenario file")->required()->check(CLI::ExistingFile);
  runc->callback([&chosen] { chosen = "run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  set_tower_window(st.window);
  if (chosen != "run") return run({chosen}, file, st);
  std::vector<std::string> commands;
  try {
    commands = load_scenario(file).commands;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (commands.empty()) {
    std::cerr << file << ": no commands listed\n";
    return 1;
  }
  return run(commands, file, st);
}
