#include "huppert/verifier.hpp"

#include <algorithm>
#include <set>

#include "huppert/degreelogic.hpp"

namespace huppert {

std::string_view to_string(StepStatus status) {
  switch (status) {
    case StepStatus::Pass: return "PASS";
    case StepStatus::Fail: return "FAIL";
    case StepStatus::DataMissing: return "DATA_MISSING";
  }
  return "UNKNOWN";
}

std::optional<StepStatus> step_status_from_string(std::string_view text) {
  if (text == "PASS") return StepStatus::Pass;
  if (text == "FAIL") return StepStatus::Fail;
  if (text == "DATA_MISSING") return StepStatus::DataMissing;
  return std::nullopt;
}

StepStatus VerificationReport::overall() const {
  if (steps.size() != 5) return StepStatus::DataMissing;
  bool missing = false;
  for (const auto& s : steps) {
    if (s.status == StepStatus::Fail) return StepStatus::Fail;
    if (s.status == StepStatus::DataMissing) missing = true;
  }
  return missing ? StepStatus::DataMissing : StepStatus::Pass;
}

namespace {

// Accumulates a step's outcome; the worst reported status wins.
class StepBuilder {
 public:
  explicit StepBuilder(int step) { result_.step = step; }

  void fail(std::string note) {
    failed_ = true;
    result_.notes.push_back(std::move(note));
  }
  void missing(std::string note) {
    missing_ = true;
    result_.notes.push_back(std::move(note));
  }
  void note(std::string note) { result_.notes.push_back(std::move(note)); }
  void witness(EliminationWitness w) { result_.witnesses.push_back(std::move(w)); }
  void assume(Assumption a) {
    if (std::find(result_.assumptions.begin(), result_.assumptions.end(), a) == result_.assumptions.end()) {
      result_.assumptions.push_back(std::move(a));
    }
  }

  StepResult finish() {
    if (failed_) {
      result_.status = StepStatus::Fail;
    } else if (missing_) {
      result_.status = StepStatus::DataMissing;
    } else if (result_.witnesses.empty()) {
      result_.status = StepStatus::DataMissing;
      result_.notes.push_back("no witnesses were produced");
    } else {
      result_.status = StepStatus::Pass;
    }
    return std::move(result_);
  }

 private:
  StepResult result_;
  bool failed_ = false;
  bool missing_ = false;
};

std::string join(const std::vector<Int>& values) {
  std::string out;
  for (Int v : values) out += (out.empty() ? "" : ", ") + std::to_string(v);
  return out;
}

StepResult step1(const GroupProfile& target) {
  StepBuilder b(1);
  const DegreeSet& cd = *target.degrees;
  auto case_a = case_a_eliminate(cd, target.name);
  if (!case_a.ok) {
    b.fail("case (a): the prime " + std::to_string(*case_a.stuck_prime) +
           " has a prime-power degree that no coprime degree blocks");
  }
  for (auto& w : case_a.witnesses) b.witness(std::move(w));

  auto frob = frobenius_eliminate(cd, target.name);
  if (!frob.ok) b.fail("case (b): no Frobenius witness for f in {" + join(frob.stuck) + "}");
  std::size_t b1 = 0, b2 = 0;
  for (auto& [f, w] : frob.by_f) {
    (w.rule == Rule::FrobB1 ? b1 : b2)++;
    b.witness(std::move(w));
  }
  b.note("case (b): " + std::to_string(b1) + " degrees by FROB_B1, " + std::to_string(b2) + " by FROB_B2");
  return b.finish();
}

StepResult step2(const Catalog& catalog, const GroupProfile& target, const GroupProfile& socle,
                 std::vector<std::string>& row_out) {
  StepBuilder b(2);
  const DegreeSet& cd = *target.degrees;
  const auto spectrum = prime_spectrum(cd.values());
  const CandidatePool* pool = nullptr;
  try {
    pool = &pool_for(catalog, spectrum);
  } catch (const DataError& e) {
    b.missing(e.what());
    return b.finish();
  }

  const Table1Row row = table1_row(target, *pool, catalog);
  row_out = row.accepted();
  for (const auto& v : row.verdicts) {
    if (v.witness) b.witness(*v.witness);
  }
  if (std::find(row_out.begin(), row_out.end(), socle.name) == row_out.end()) {
    b.fail("the socle " + socle.name + " does not survive the divisibility filter");
  }

  const Certificate* cert = catalog.certificate(target.name);
  for (const auto& name : row_out) {
    if (name == socle.name) continue;
    const GroupProfile& s = *catalog.find(name);
    if (!s.degrees) {
      b.missing(name + " has no full degree set");
      continue;
    }
    b.witness(k_bound_witness(s, cd, target.name));
    if (const Int k = k_bound(s, cd); k != 1) {
      b.fail(name + ": k_bound is " + std::to_string(k) + ", not 1");
      continue;
    }
    std::optional<Int> preferred;
    if (cert) {
      if (auto it = cert->step2_psi.find(name); it != cert->step2_psi.end()) preferred = it->second;
    }
    auto w = socle_eliminate(s, cd, target.name, preferred);
    if (!w) {
      b.fail(name + ": every psi has some t*psi among the degrees");
      continue;
    }
    if (preferred && w->field("psi").front() != *preferred) {
      b.note(name + ": preferred psi " + std::to_string(*preferred) + " does not eliminate; used " +
             std::to_string(w->field("psi").front()));
    }
    b.witness(std::move(*w));
  }
  return b.finish();
}

StepResult step3(const Catalog& catalog, const GroupProfile& target, const GroupProfile& socle) {
  StepBuilder b(3);
  if (!socle.max_subgroups) {
    b.missing("no maximal subgroup list for " + socle.name);
    return b.finish();
  }
  const Certificate* cert = catalog.certificate(target.name);
  if (!cert) {
    b.missing("no certificate script for " + target.name);
    return b.finish();
  }
  const DegreeSet& cd = *target.degrees;

  const auto qps = maximal_index_quotients(socle, cd);
  std::set<std::string> emitted;
  for (const auto& q : qps) {
    emitted.insert(q.subgroup->name);
    b.witness(max_index_witness(socle, q, target.name));
  }

  std::set<std::string> disposed;
  std::set<Int> covered;
  for (const auto& check : cert->step3) {
    if (!check.subgroup.empty() && !emitted.count(check.subgroup)) {
      b.fail("script names " + check.subgroup + ", whose index divides no degree");
      continue;
    }
    switch (check.kind) {
      case CheckKind::ProductNonmember: {
        ProductRequest req;
        req.factors = check.factors;
        req.reference = check.reference;
        req.subgroup = check.subgroup;
        req.tau = check.tau;
        req.tau_group = check.tau_group;
        if (check.reference.starts_with("quotients:")) {
          const std::string sub = check.reference.substr(10);
          auto it = std::find_if(qps.begin(), qps.end(), [&](const QuotientProfile& q) { return q.subgroup->name == sub; });
          if (it == qps.end()) {
            b.fail("quotient reference " + sub + " was not emitted");
            break;
          }
          req.reference_values = it->quotients;
          req.group = socle.name;
          req.set = target.name;
        } else {
          const GroupProfile* ref = catalog.find(check.reference);
          if (!ref || !ref->degrees) {
            b.missing("reference " + check.reference + " has no full degree set");
            break;
          }
          req.reference_values.assign(ref->degrees->begin(), ref->degrees->end());
        }
        if (check.tau && !catalog.find(check.tau_group)->available_degrees().contains(*check.tau)) {
          b.fail("tau " + std::to_string(*check.tau) + " is not a degree of " + check.tau_group);
          break;
        }
        auto w = product_nonmember_witness(req);
        if (!w) {
          b.fail("product of {" + join(check.factors) + "} divides a degree of " + check.reference);
          break;
        }
        b.witness(std::move(*w));
        disposed.insert(check.subgroup);
        break;
      }
      case CheckKind::Cover: {
        covered.insert(check.multiplier);
        const CoverRecord* rec = socle.find_cover(check.multiplier);
        if (!rec) {
          b.missing("no cover record for multiplier " + std::to_string(check.multiplier));
          break;
        }
        const GroupProfile* ref = catalog.find(rec->reference_set);
        auto w = cover_eliminate(socle, *rec, *ref->degrees);
        if (!w) {
          b.fail(std::to_string(rec->multiplier) + "." + socle.name + ": witness degree " +
                 std::to_string(rec->witness_degree) + " divides a degree of " + rec->reference_set);
          break;
        }
        b.witness(std::move(*w));
        break;
      }
      case CheckKind::OddParity: {
        const MaximalSubgroupRecord* m = socle.find_subgroup(check.subgroup);
        const StructuralFact* proj = m ? m->find_fact("PROJECTIVE_DEGREES") : nullptr;
        if (proj && proj->args != check.values) {
          b.fail("odd_parity values differ from the recorded projective degrees of " + check.subgroup);
          break;
        }
        auto w = odd_parity_witness(check.values, socle.name, check.subgroup);
        if (!w) {
          b.fail("odd_parity: {" + join(check.values) + "} is not all odd and above 1");
          break;
        }
        b.witness(std::move(*w));
        disposed.insert(check.subgroup);
        break;
      }
      case CheckKind::Fact: {
        const GroupProfile* owner = catalog.find(check.owner);
        const MaximalSubgroupRecord* m = owner->find_subgroup(check.subgroup);
        const StructuralFact* fact = m ? m->find_fact(check.tag) : nullptr;
        if (!fact || (!check.fact_args.empty() && fact->args != check.fact_args)) {
          b.missing("fact " + check.tag + " for " + check.owner + "/" + check.subgroup + " is not recorded");
          break;
        }
        b.assume({check.owner, check.subgroup, fact->tag, fact->args, fact->source});
        break;
      }
    }
  }

  for (const auto& name : emitted) {
    if (!disposed.count(name)) b.missing("no arithmetic check disposes of " + name);
  }
  for (Int m : divisors(socle.schur_multiplier_order)) {
    if (m == 1) continue;
    if (!covered.count(m)) b.missing("no cover check for multiplier " + std::to_string(m));
  }
  for (Int m : covered) {
    if (m < 2 || socle.schur_multiplier_order % m != 0) {
      b.fail("cover multiplier " + std::to_string(m) + " does not divide the Schur multiplier order");
    }
  }
  return b.finish();
}

StepResult step4(const GroupProfile& target, const GroupProfile& socle) {
  StepBuilder b(4);
  auto w = overflow_check(*socle.degrees, *target.degrees, socle.name, target.name);
  if (w) {
    b.witness(std::move(*w));
  } else {
    b.fail("twice the largest degree of " + socle.name + " divides a degree of " + target.name);
  }
  return b.finish();
}

StepResult step5(const Catalog& catalog, const GroupProfile& target, const GroupProfile& socle) {
  StepBuilder b(5);
  std::vector<std::string> family{socle.name};
  family.insert(family.end(), socle.overgroups.begin(), socle.overgroups.end());
  std::erase(family, target.name);

  if (family.empty()) {
    if (socle.out_order == 1) {
      EliminationWitness w(Rule::Distinguishing);
      w.ref("target", target.name).ref("other", "").add("out_order", {1});
      b.witness(std::move(w));
    } else {
      b.missing("no extensions of " + socle.name + " are recorded");
    }
    return b.finish();
  }

  for (const auto& name : family) {
    const GroupProfile& other = *catalog.find(name);
    if (!other.degrees) {
      b.missing(name + " has no full degree set");
      continue;
    }
    const auto least = distinguishing_degree(*target.degrees, *other.degrees);
    if (!least) {
      b.fail("every degree of " + target.name + " is a degree of " + name);
      continue;
    }
    Int d = *least;
    if (const auto* cert = catalog.certificate(target.name)) {
      if (auto it = cert->step5_degree.find(name); it != cert->step5_degree.end()) d = it->second;
    }
    if (!target.degrees->contains(d) || other.degrees->contains(d)) {
      b.fail("certificate degree " + std::to_string(d) + " does not separate " + target.name + " from " + name);
      continue;
    }
    EliminationWitness w(Rule::Distinguishing);
    w.ref("target", target.name).ref("other", name).add("degree", {d}).add("least", {*least});

    std::optional<Int> p = prime_index(target, other);
    const bool target_larger = p.has_value();
    if (!p) p = prime_index(other, target);
    if (p) {
      const auto pairing = target_larger ? clifford_pairing(*target.degrees, *other.degrees, *p)
                                         : clifford_pairing(*other.degrees, *target.degrees, *p);
      if (!pairing) {
        b.fail(target.name + " and " + name + " have index " + std::to_string(*p) +
               " but their degree sets do not pair up");
        continue;
      }
      w.add("index_prime", {*p}).add("restrictions", pairing->restrictions).add("inductions", pairing->inductions);
    } else {
      w.add("index_prime", {}).add("restrictions", {}).add("inductions", {});
      b.note("orders of " + target.name + " and " + name + " do not give a prime index; pairing skipped");
    }
    b.witness(std::move(w));
  }
  return b.finish();
}

}  // namespace

VerificationReport verify(const Catalog& catalog, std::string_view name) {
  const GroupProfile& target = profile(catalog, name);
  if (!target.degrees) throw DataError(DataErrorKind::Unusable, target.name + " has no full degree set");
  const GroupProfile* socle = catalog.find(target.socle);
  if (!socle || !socle->degrees) {
    throw DataError(DataErrorKind::Unusable, "socle " + target.socle + " has no full degree set");
  }

  VerificationReport report;
  report.engine_version = std::string(kEngineVersion);
  report.dataset_fingerprint = catalog.fingerprint();
  report.target = target.name;
  report.socle = socle->name;
  report.steps.push_back(step1(target));
  report.steps.push_back(step2(catalog, target, *socle, report.table1_row));
  report.steps.push_back(step3(catalog, target, *socle));
  report.steps.push_back(step4(target, *socle));
  report.steps.push_back(step5(catalog, target, *socle));
  return report;
}

namespace {

// Checks that a PASS step carries every witness its claim depends on.
// Everything here is recomputed from the catalog; no search is rerun.
class Completeness {
 public:
  Completeness(const VerificationReport& report, const Catalog& catalog, std::vector<std::string>& problems)
      : report_(report), catalog_(catalog), problems_(problems) {}

  void run() {
    const GroupProfile* target = catalog_.find(report_.target);
    const GroupProfile* socle = target ? catalog_.find(target->socle) : nullptr;
    if (!target || !target->degrees || !socle || !socle->degrees || socle->name != report_.socle) {
      problem("target or socle does not match the catalog");
      return;
    }
    target_ = target;
    socle_ = socle;
    for (const auto& step : report_.steps) {
      for (const auto& w : step.witnesses) {
        const std::string set = w.ref_or_empty("set");
        if (w.refs.count("set") && set != report_.target) problem("witness refers to set " + set);
      }
      for (const auto& a : step.assumptions) check_assumption(a);
      if (step.status != StepStatus::Pass) continue;
      switch (step.step) {
        case 1: step1(step); break;
        case 2: step2(step); break;
        case 3: step3(step); break;
        case 4: step4(step); break;
        case 5: step5(step); break;
      }
    }
  }

 private:
  void problem(std::string message) { problems_.push_back(std::move(message)); }

  static std::vector<const EliminationWitness*> of(const StepResult& s, std::initializer_list<Rule> rules) {
    std::vector<const EliminationWitness*> out;
    for (const auto& w : s.witnesses) {
      if (std::find(rules.begin(), rules.end(), w.rule) != rules.end()) out.push_back(&w);
    }
    return out;
  }

  static Int first(const EliminationWitness& w, std::string_view field) {
    const auto* v = w.find(field);
    return v && !v->empty() ? v->front() : 0;
  }

  void check_assumption(const Assumption& a) {
    const GroupProfile* owner = catalog_.find(a.owner);
    const MaximalSubgroupRecord* m = owner ? owner->find_subgroup(a.subgroup) : nullptr;
    const StructuralFact* fact = m ? m->find_fact(a.tag) : nullptr;
    if (!fact || fact->args != a.args || fact->source != a.source) {
      problem("assumption " + a.tag + " on " + a.owner + "/" + a.subgroup + " is not in the dataset");
    }
  }

  void step1(const StepResult& s) {
    const DegreeSet& cd = *target_->degrees;
    std::vector<Int> fs;
    for (const auto* w : of(s, {Rule::FrobB1, Rule::FrobB2})) fs.push_back(first(*w, "f"));
    std::sort(fs.begin(), fs.end());
    if (fs != std::vector<Int>(cd.nontrivial().begin(), cd.nontrivial().end())) {
      problem("step 1: Frobenius witnesses do not cover each nontrivial degree exactly once");
    }
    const auto none = of(s, {Rule::CaseANoPrimePower});
    const auto gall = of(s, {Rule::CaseAGallagher});
    std::vector<Int> rs;
    for (const auto* w : gall) rs.push_back(first(*w, "r"));
    std::vector<Int> expected;
    for (Int r : prime_spectrum(cd.values())) {
      if (std::any_of(cd.nontrivial().begin(), cd.nontrivial().end(), [&](Int d) {
            const auto pp = is_prime_power(d);
            return pp && pp->base == r;
          })) {
        expected.push_back(r);
      }
    }
    const bool ok = expected.empty() ? (none.size() == 1 && gall.empty()) : (none.empty() && rs == expected);
    if (!ok) problem("step 1: case (a) witnesses do not cover every prime with a prime-power degree");
  }

  void step2(const StepResult& s) {
    const CandidatePool* pool = nullptr;
    const auto spectrum = prime_spectrum(target_->degrees->values());
    try {
      pool = &pool_for(catalog_, spectrum);
    } catch (const DataError&) {
      problem("step 2: no pool for the target spectrum");
      return;
    }
    std::set<std::string> rejected, bounded, eliminated;
    for (const auto* w : of(s, {Rule::WitnessDegree})) rejected.insert(w->ref_or_empty("candidate"));
    for (const auto* w : of(s, {Rule::KBound})) {
      if (first(*w, "k") == 1) bounded.insert(w->ref_or_empty("candidate"));
    }
    for (const auto* w : of(s, {Rule::OutProduct})) eliminated.insert(w->ref_or_empty("candidate"));
    std::vector<std::string> accepted;
    for (const auto& m : pool->members) {
      if (!rejected.count(m)) accepted.push_back(m);
    }
    if (accepted != report_.table1_row) problem("step 2: table1_row disagrees with the rejection witnesses");
    bool socle_seen = false;
    for (const auto& m : accepted) {
      if (m == socle_->name) {
        socle_seen = true;
        continue;
      }
      if (!bounded.count(m) || !eliminated.count(m)) problem("step 2: survivor " + m + " is not eliminated");
    }
    if (!socle_seen) problem("step 2: the socle is not among the survivors");
  }

  void step3(const StepResult& s) {
    if (!socle_->max_subgroups) {
      problem("step 3: socle has no maximal subgroup list");
      return;
    }
    std::set<std::string> expected, got;
    for (const auto& m : *socle_->max_subgroups) {
      if (std::any_of(target_->degrees->begin(), target_->degrees->end(), [&](Int d) { return d % m.index == 0; })) {
        expected.insert(m.name);
      }
    }
    for (const auto* w : of(s, {Rule::MaxIndex})) got.insert(w->ref_or_empty("subgroup"));
    if (expected != got) problem("step 3: MAX_INDEX witnesses do not match the maximal subgroups");
    std::set<std::string> disposed;
    for (const auto* w : of(s, {Rule::ProductNonmember, Rule::OddParity})) disposed.insert(w->ref_or_empty("subgroup"));
    for (const auto& name : expected) {
      if (!disposed.count(name)) problem("step 3: nothing disposes of " + name);
    }
    std::set<Int> covers;
    for (const auto* w : of(s, {Rule::Cover})) {
      if (w->ref_or_empty("group") == socle_->name) covers.insert(first(*w, "multiplier"));
    }
    for (Int m : divisors(socle_->schur_multiplier_order)) {
      if (m > 1 && !covers.count(m)) problem("step 3: no cover witness for multiplier " + std::to_string(m));
    }
  }

  void step4(const StepResult& s) {
    const auto ws = of(s, {Rule::Overflow});
    if (ws.size() != 1 || ws[0]->ref_or_empty("socle") != socle_->name) problem("step 4: overflow witness missing");
  }

  void step5(const StepResult& s) {
    std::set<std::string> family{socle_->name};
    family.insert(socle_->overgroups.begin(), socle_->overgroups.end());
    family.erase(target_->name);
    std::set<std::string> got;
    const auto ws = of(s, {Rule::Distinguishing});
    for (const auto* w : ws) {
      if (w->ref_or_empty("target") != target_->name) problem("step 5: witness has the wrong target");
      got.insert(w->ref_or_empty("other"));
    }
    const bool ok = family.empty() ? (ws.size() == 1 && got == std::set<std::string>{""}) : (got == family);
    if (!ok) problem("step 5: distinguishing witnesses do not cover every sibling group");
  }

  const VerificationReport& report_;
  const Catalog& catalog_;
  std::vector<std::string>& problems_;
  const GroupProfile* target_ = nullptr;
  const GroupProfile* socle_ = nullptr;
};

}  // namespace

RecheckResult recheck(const VerificationReport& report, const Catalog& catalog) {
  if (report.dataset_fingerprint != catalog.fingerprint()) {
    throw FingerprintMismatch(report.dataset_fingerprint, catalog.fingerprint());
  }
  RecheckResult result;
  if (report.steps.size() != 5) result.problems.push_back("report must have five steps");
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const StepResult& s = report.steps[i];
    if (s.step != static_cast<int>(i) + 1) result.problems.push_back("steps are out of order");
    if (s.status == StepStatus::Pass && s.witnesses.empty()) {
      result.problems.push_back("step " + std::to_string(s.step) + " passes without witnesses");
    }
    for (const auto& w : s.witnesses) {
      if (auto v = validate(w, catalog); !v) {
        result.problems.push_back("step " + std::to_string(s.step) + ": " + v.reason);
      }
    }
  }
  Completeness(report, catalog, result.problems).run();
  result.ok = result.problems.empty();
  return result;
}

}  // namespace huppert
