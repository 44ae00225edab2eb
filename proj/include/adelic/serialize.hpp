#pragma once

#include "adelic/adelic_module.hpp"
#include "adelic/local_functors.hpp"
#include "adelic/verifier.hpp"

#include "json.hpp"

namespace adelic {

using Json = nlohmann::ordered_json;

Json to_json(const BaseRing& r);
Json to_json(const AlgPrime& p);  // generator strings
Json to_json(const PrimeRef& r);
Json to_json(const RingExpr& e);
Json to_json(const Matrix& m);
Json to_json(const BoundedComplex& c);
Json to_json(const ComplexMap& f);
Json to_json(const HomologyGroup& h);
Json to_json(const TestReport& t);
Json to_json(const SpectrumPoset& p);
Json to_json(const CubeDiagram& c);
Json to_json(const LawReport& l);
Json to_json(const ReductionPlan& p);
Json to_json(const VerificationReport& v);
Json to_json(const BpReport& b);
Json to_json(const TowerReport& t);
Json to_json(const GammaDegree& g);
Json to_json(const SupportReport& s);
Json to_json(const DimFiltration& f);
Json to_json(const AdelicModule& x);
Json to_json(const CocartesianStatus& s);
Json to_json(const RoundtripReport& r);
Json to_json(const FdStage& s);
Json to_json(const Reconstruction& r);

BaseRing base_ring_from_json(const Json& j, const std::string& path);
AlgPrime prime_from_json(const BaseRing& r, const Json& j, const std::string& path);
RingExpr ring_expr_from_json(const BaseRing& r, const Json& j, const std::string& path);
Matrix matrix_from_json(const BaseRing& r, const Json& j, int rows, int cols, const std::string& path);
BoundedComplex complex_from_json(const BaseRing& r, const Json& j, const std::string& path);
ComplexMap map_from_json(const BaseRing& r, const Json& j, const BoundedComplex& source, const BoundedComplex& target,
                         const std::string& path);

/// Throws InvalidScenario naming `path` when `j` has a key outside `allowed`.
void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& path);

}  // namespace adelic
