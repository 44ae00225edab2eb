#pragma once

#include "adelic/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adelic {

inline constexpr const char* kScenarioSchema = "adelic-scenario/1";

struct FunctorParams {
  std::optional<AlgPrime> prime;
  std::vector<Poly> generators;  // Koszul generators for gamma; empty means the prime's own
  int i = 0;                     // filtration index
};

struct Corruption {
  std::string kind;  // "sign" or "quotient"
  Flag flag;
  int face = 0;
  int block = 0;
  std::optional<AlgPrime> prime;
};

struct Scenario {
  std::string name;
  std::string description;
  BaseRing ring;
  SpectrumPoset poset;
  CubeVariant variant = CubeVariant::Adelic;
  std::optional<BoundedComplex> module;
  std::optional<AdelicModule> adelic_module;
  FunctorParams functor;
  std::optional<Corruption> corruption;
  std::vector<std::string> commands;
  Json source;  // the parsed document
};

/// Parses a scenario document. Errors carry "file:line:col" for syntax and "file: $.path" for fields.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");
Scenario load_scenario(const std::string& path);

/// Replaces the declared primes by `spec` ("0;2;3", generators separated by commas); dims and
/// containments are recomputed.
void override_primes(Scenario& s, const std::string& spec);

/// The scenario's cube with its corruption applied.
CubeDiagram scenario_cube(const Scenario& s);
/// The scenario's module: `module` when present, else the unit.
BoundedComplex scenario_module(const Scenario& s);
/// The explicit adelic module, or `module` tensored up along the poset.
AdelicModule scenario_adelic_module(const Scenario& s);

}  // namespace adelic
