#include "adelic/verifier.hpp"

#include <algorithm>
#include <exception>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adelic {

const char* reduction_kind_name(ReductionKind k) {
  return k == ReductionKind::TensorKoszul ? "TensorKoszul" : "LocalizeGeneric";
}

std::string PlannedTest::name() const { return kind == ReductionKind::LocalizeGeneric ? "L_(0)" : "K_" + prime->key(); }

std::string ReductionPlan::str() const {
  std::string s;
  for (const auto& t : tests) {
    s += t.name() + " [" + t.origin + "]";
    if (!t.survivors.empty()) s += " survivors " + primes_str(t.survivors);
    if (t.infinite) s += " (infinite)";
    s += "\n";
  }
  return s + (covers ? "covers the declared poset\n" : "does not cover the declared poset\n");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pullback: return "Pullback";
    case Verdict::NotPullback: return "NotPullback";
    case Verdict::RelativePullback: return "RelativePullback";
  }
  return "?";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pullback: return 0;
    case Verdict::NotPullback: return 2;
    case Verdict::RelativePullback: return 3;
  }
  return 1;
}

std::optional<AlgPrime> representative_closed_point(const BaseRing& r, const std::vector<AlgPrime>& avoid) {
  if (r.finite_spectrum() || r.is_field()) return std::nullopt;
  auto fresh = [&](const AlgPrime& p) { return std::find(avoid.begin(), avoid.end(), p) == avoid.end(); };
  const long bound = r.charp ? static_cast<long>(r.charp) : 1000;
  switch (r.kind) {
    case RingKind::Integers:
      for (long n = 2;; ++n)
        if (is_prime(Int(n))) {
          AlgPrime p = AlgPrime::make(r, {Poly(Rat(n))});
          if (fresh(p)) return p;
        }
    case RingKind::UnivariatePoly:
      for (long c = 0; c < bound; ++c) {
        AlgPrime p = AlgPrime::make(r, {Poly::var_x(r.charp) - Poly(Rat(c), r.charp)});
        if (fresh(p)) return p;
      }
      return std::nullopt;
    case RingKind::BivariatePoly:
      for (long c = 1; c <= bound; ++c) {
        const long cc = r.charp ? c % static_cast<long>(r.charp) : c;
        AlgPrime p = AlgPrime::make(r, {r.element("x") - Poly(Rat(cc), r.charp), r.element("y") - Poly(Rat(cc), r.charp)});
        if (fresh(p)) return p;
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::vector<TestReport> reduction_tests(const BoundedComplex& x, const std::vector<AlgPrime>& primes, const TestOptions& opt) {
  std::vector<AlgPrime> order;
  for (const auto& p : primes)
    if (!p.is_zero() && p.is_maximal()) order.push_back(p);
  for (const auto& p : primes)
    if (!p.is_zero() && !p.is_maximal()) order.push_back(p);
  const int n = static_cast<int>(order.size()) + 1;
  std::vector<TestReport> out(n);
  std::vector<std::exception_ptr> thrown(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = i + 1 == n ? generic_test(x, opt) : koszul_test(x, order[i], opt);
    } catch (...) {
      thrown[i] = std::current_exception();
    }
  }
  for (const auto& e : thrown)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

std::vector<AlgPrime> entry_primes(const CubeDiagram& cube) {
  const BaseRing& r = cube.poset.ring();
  std::set<AlgPrime> out;
  if (r.is_field() || r.kind == RingKind::BivariatePoly || cube.m.empty()) return {};
  for (int n = cube.m.lo(); n < cube.m.hi(); ++n) {
    Matrix d = cube.m.diff(n);
    for (int i = 0; i < d.rows; ++i)
      for (int j = 0; j < d.cols; ++j)
        if (!d.at(i, j).is_zero())
          for (const auto& p : prime_divisors(r, d.at(i, j)))
            if (!cube.poset.contains(p)) out.insert(p);
  }
  return {out.begin(), out.end()};
}

void annotate(PlannedTest& t, const CubeDiagram& cube, const std::vector<AlgPrime>& declared) {
  if (t.kind == ReductionKind::LocalizeGeneric) {
    t.survivors.push_back(AlgPrime::zero(cube.poset.ring()));
    return;
  }
  const AlgPrime& q = *t.prime;
  std::set<AlgPrime> surv;
  std::set<std::string> om;
  for (const auto& v : cube.vertices)
    for (const auto& b : v.blocks) {
      RelevantPrimes rp = relevant_primes(b.carrier, {q});
      surv.insert(rp.primes.begin(), rp.primes.end());
      // A surviving block is indexed by its innermost declared prime.
      if (!b.assignment.empty() && b.assignment.back() && !kill_under_koszul(b.carrier, q).expr.is_zero())
        surv.insert(*b.assignment.back());
      t.infinite = t.infinite || rp.infinite;
      for (const auto& o : rp.omitted)
        if (om.insert(o).second) t.omitted.push_back(o);
    }
  t.survivors.assign(surv.begin(), surv.end());
  for (const auto& p : declared) {
    if (p.contains(q)) continue;
    for (const auto& g : q.generators())
      if (!p.contains(g)) {
        t.justification.push_back(is_unit(g, RingExpr::localize(RingExpr::base(cube.poset.ring()), PrimeRef::of(p))));
        break;
      }
  }
}

}  // namespace

ReductionPlan plan_reductions(const CubeDiagram& cube) {
  const SpectrumPoset& poset = cube.poset;
  ReductionPlan plan;
  auto koszul_test_of = [&](const AlgPrime& p, const char* origin) {
    if (p.generators().empty()) fail(ErrorKind::MissingGenerators, "no Koszul generators for " + p.key());
    PlannedTest t;
    t.kind = ReductionKind::TensorKoszul;
    t.prime = p;
    t.origin = origin;
    return t;
  };

  for (const auto& p : poset.of_dim(0))
    if (!p.is_zero()) plan.tests.push_back(koszul_test_of(p, "declared"));
  for (const auto& p : entry_primes(cube)) plan.tests.push_back(koszul_test_of(p, "entry"));
  if (auto rep = representative_closed_point(poset.ring(), poset.primes())) {
    bool seen = false;
    for (const auto& t : plan.tests) seen = seen || *t.prime == *rep;
    if (!seen) plan.tests.push_back(koszul_test_of(*rep, "representative"));
  }
  for (int d = 1; d <= poset.r(); ++d)
    for (const auto& p : poset.of_dim(d))
      if (!p.is_zero()) plan.tests.push_back(koszul_test_of(p, "declared"));
  if (poset.generic()) {
    PlannedTest g;
    g.kind = ReductionKind::LocalizeGeneric;
    g.origin = "generic";
    plan.tests.push_back(g);
  }

  const std::vector<AlgPrime> declared = cube_primes(cube);
  for (auto& t : plan.tests) annotate(t, cube, declared);

  // supp K_q = V(q); the generic test sees (0).
  plan.covers = true;
  for (const auto& p : poset.primes()) {
    bool hit = false;
    for (const auto& t : plan.tests)
      hit = hit || (t.kind == ReductionKind::LocalizeGeneric ? p.is_zero() : p.contains(*t.prime));
    plan.covers = plan.covers && hit;
  }
  return plan;
}

VerificationReport verify_pullback(const CubeDiagram& cube, const TestOptions& opt, const std::string& cube_id) {
  VerificationReport rep;
  rep.cube_id = cube_id;
  rep.plan = plan_reductions(cube);
  const LawReport law = check_cochain_law(cube);
  if (!law.ok()) {
    rep.verdict = Verdict::NotPullback;
    for (const auto& c : law.checks)
      if (!c.ok) {
        rep.witness = "cochain law at " + c.flag.str() + ": " + c.witness;
        break;
      }
    return rep;
  }
  const BoundedComplex tot = total_complex(cube, true);

  const int n = static_cast<int>(rep.plan.tests.size());
  std::vector<TestReport> results(n);
  std::vector<std::string> errors(n);
  std::vector<std::exception_ptr> thrown(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const PlannedTest& t = rep.plan.tests[i];
    try {
      results[i] = t.kind == ReductionKind::LocalizeGeneric ? generic_test(tot, opt) : koszul_test(tot, *t.prime, opt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      thrown[i] = std::current_exception();
    }
  }

  std::set<std::string> seen;
  auto add_omitted = [&](const std::string& o) {
    if (seen.insert(o).second) rep.omitted.push_back(o);
  };
  for (const auto& o : cube.omitted) add_omitted(o);
  bool not_acyclic = false, relative = false;
  for (int i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      rep.errors.push_back(rep.plan.tests[i].name() + ": " + errors[i]);
      continue;
    }
    const TestReport& t = results[i];
    if (t.status == TestStatus::NotAcyclic) {
      if (!not_acyclic) rep.witness = t.name + ": " + (t.homology.empty() ? std::string("?") : t.homology.front().str());
      not_acyclic = true;
    } else if (t.status == TestStatus::Relative) {
      relative = true;
      for (const auto& o : t.omitted) add_omitted(t.name + ": " + o);
    }
    rep.tests.push_back(t);
  }
  if (not_acyclic) {
    rep.verdict = Verdict::NotPullback;
    return rep;
  }
  for (int i = 0; i < n; ++i)
    if (thrown[i]) std::rethrow_exception(thrown[i]);
  rep.verdict = relative || !rep.omitted.empty() ? Verdict::RelativePullback : Verdict::Pullback;
  return rep;
}

std::string VerificationReport::str() const {
  std::string s = "cube " + cube_id + ": " + verdict_name(verdict) + "\n";
  for (const auto& t : tests) s += "  " + t.summary() + "\n";
  for (const auto& e : errors) s += "  error " + e + "\n";
  if (!witness.empty()) s += "witness " + witness + "\n";
  for (const auto& o : omitted) s += "omitted " + o + "\n";
  return s;
}

// ---------------------------------------------------------------- BP comparison

BpReport verify_bp_equivalence(const BoundedComplex& m, const SpectrumPoset& poset, const TestOptions& opt) {
  if (poset.r() != 1) fail(ErrorKind::UnsupportedExpression, "Beilinson-Parshin comparison needs r = 1, got r = " + std::to_string(poset.r()));
  const CubeDiagram ad = build_adelic_cube(m, poset);
  const CubeDiagram bp = build_bp_cube(m, poset);
  std::vector<AlgPrime> extra;
  for (const auto& p : poset.primes())
    if (!p.is_zero()) extra.push_back(p);

  BpReport rep;
  rep.equivalent = true;
  for (size_t v = 1; v < ad.vertices.size(); ++v) {
    const CubeVertex& va = ad.vertices[v];
    const CubeVertex& vb = bp.at(va.flag);
    for (const auto& blk : va.blocks) {
      BpEntry e;
      e.flag = va.flag;
      e.block = blk.key();
      const int j = vb.block_index(blk.assignment);
      if (j < 0) {
        e.note = "no matching block";
        rep.equivalent = false;
        rep.entries.push_back(e);
        continue;
      }
      const CubeBlock& other = vb.blocks[j];
      e.same_carrier = blk.carrier == other.carrier;
      if (!maps_to(blk.carrier, other.carrier)) {
        e.note = "no structural map " + blk.carrier.key() + " -> " + other.carrier.key();
        rep.equivalent = false;
        rep.entries.push_back(e);
        continue;
      }
      ComplexMap f{blk.complex, other.complex, {}};
      for (int n = blk.complex.lo(); n <= blk.complex.hi(); ++n) f.components[n] = Matrix::identity(blk.complex.rank(n), m.ring().charp);
      const BoundedComplex c = cone(f);
      try {
        if (e.same_carrier) {
          e.tests = {koszul_test(c, extra.front(), opt)};
          for (size_t k = 1; k < extra.size(); ++k) e.tests.push_back(koszul_test(c, extra[k], opt));
          e.tests.push_back(generic_test(c, opt));
        } else {
          e.tests = test_battery(c, extra, opt);
        }
        e.quasi_iso = std::all_of(e.tests.begin(), e.tests.end(), [](const TestReport& t) { return t.acyclic(); });
      } catch (const Error& err) {
        e.note = err.what();
      }
      rep.equivalent = rep.equivalent && e.quasi_iso;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

std::string BpReport::str() const {
  std::string s = equivalent ? "equivalent\n" : "not equivalent\n";
  for (const auto& e : entries) {
    s += "  " + e.flag.str() + " " + e.block + ": " + (e.quasi_iso ? "quasi-iso" : "not quasi-iso");
    if (e.same_carrier) s += " (same carrier)";
    if (!e.note.empty()) s += " [" + e.note + "]";
    s += "\n";
  }
  return s;
}

}  // namespace adelic
