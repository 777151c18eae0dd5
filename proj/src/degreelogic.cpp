#include "huppert/degreelogic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace huppert {

namespace {

const DegreeSet& full_degrees(const GroupProfile& g) {
  if (!g.degrees) throw DataError(DataErrorKind::Unusable, g.name + " has no full degree set");
  return *g.degrees;
}

std::vector<Int> as_vector(std::span<const Int> s) { return {s.begin(), s.end()}; }

// Flat [h, h/d, h%d] rows.
std::vector<Int> residue_rows(std::span<const Int> hs, Int d) {
  std::vector<Int> out;
  out.reserve(hs.size() * 3);
  for (Int h : hs) {
    out.push_back(h);
    out.push_back(h / d);
    out.push_back(h % d);
  }
  return out;
}

std::vector<Int> products_with(Int x, std::span<const Int> ys) {
  std::vector<Int> out;
  for (Int y : ys) out.push_back(checked_mul(x, y));
  return out;
}

bool is_power_of(Int q, Int r) {
  if (q < r) return false;
  while (q % r == 0) q /= r;
  return q == 1;
}

// Prime powers dividing chi^2, ascending by prime then exponent.
std::vector<Int> square_prime_powers(Int chi) {
  std::vector<Int> out;
  for (const auto& p : prime_power_divisors(checked_mul(chi, chi))) out.push_back(p.value);
  return out;
}

bool b2_works(Int f, Int chi) {
  if (chi % f == 0) return false;
  for (Int q : square_prime_powers(chi)) {
    if (q % f == 1) return false;
  }
  return true;
}

EliminationWitness b2_witness(Int f, Int chi, const std::string& set_name) {
  const Int sq = checked_mul(chi, chi);
  const auto qs = square_prime_powers(chi);
  EliminationWitness w(Rule::FrobB2);
  w.ref("set", set_name)
      .add("f", {f})
      .add("chi", {chi, chi / f, chi % f})
      .add("chi_squared", {sq})
      .add("residues", residue_rows(qs, f));
  return w;
}

std::optional<EliminationWitness> b1_witness(const DegreeSet& cd, Int f, const std::string& set_name) {
  const auto spectrum = prime_spectrum(cd.values());
  const Int max = cd.max();
  std::vector<Int> rows;
  for (Int r : spectrum) {
    std::vector<Int> coprime;
    for (Int d : cd.nontrivial()) {
      if (d % r != 0) coprime.push_back(d);
    }
    if (coprime.empty()) return std::nullopt;
    const Int b = coprime.back();
    std::optional<Int> a;
    for (Int x : coprime) {
      if (checked_lcm(x, b) > max) {
        a = x;
        break;
      }
    }
    if (!a) {
      for (Int x : coprime) {
        if (f % checked_lcm(x, b) != 0) {
          a = x;
          break;
        }
      }
    }
    if (!a) return std::nullopt;
    const Int l = checked_lcm(*a, b);
    rows.insert(rows.end(), {r, *a, b, l, checked_mul(*a, b), f / l, f % l});
  }
  const Int all = lcm_of(cd.values());
  if (f % all == 0) return std::nullopt;
  EliminationWitness w(Rule::FrobB1);
  w.ref("set", set_name).add("f", {f}).add("rows", std::move(rows)).add("lcm_all", {all, f / all, f % all});
  return w;
}

}  // namespace

bool divides_some(Int d, std::span<const Int> s) {
  return std::any_of(s.begin(), s.end(), [d](Int x) { return x % d == 0; });
}

DivisibilityResult degrees_divide(const GroupProfile& S, const GroupProfile& H) {
  const DegreeSet& host = full_degrees(H);
  DivisibilityResult r;
  for (Int d : S.available_degrees()) {
    if (!divides_some(d, host)) r.failing.push_back(d);
  }
  r.divides = r.failing.empty();
  if (!r.divides) r.witness = r.failing.front();
  return r;
}

std::vector<std::string> Table1Row::accepted() const {
  std::vector<std::string> out;
  for (const auto& v : verdicts) {
    if (v.accepted) out.push_back(v.name);
  }
  return out;
}

const CandidateVerdict* Table1Row::verdict(std::string_view name) const {
  auto it = std::find_if(verdicts.begin(), verdicts.end(), [&](const CandidateVerdict& v) { return v.name == name; });
  return it == verdicts.end() ? nullptr : &*it;
}

Table1Row table1_row(const GroupProfile& H, const CandidatePool& pool, const Catalog& catalog) {
  const DegreeSet& host = full_degrees(H);
  Table1Row row;
  row.target = H.name;
  for (const auto& name : pool.members) {
    const GroupProfile& S = profile(catalog, name);
    const auto result = degrees_divide(S, H);
    CandidateVerdict v;
    v.name = S.name;
    v.accepted = result.divides;
    v.failing = result.failing;
    if (!v.accepted) {
      EliminationWitness w(Rule::WitnessDegree);
      w.ref("candidate", S.name)
          .ref("set", H.name)
          .add("degree", {*result.witness})
          .add("failing", result.failing)
          .add("residues", residue_rows(host.values(), *result.witness));
      v.witness = std::move(w);
    }
    row.verdicts.push_back(std::move(v));
  }
  return row;
}

CaseAResult case_a_eliminate(const DegreeSet& cd, const std::string& set_name) {
  CaseAResult result;
  const bool any_prime_power = std::any_of(cd.nontrivial().begin(), cd.nontrivial().end(),
                                           [](Int d) { return is_prime_power(d).has_value(); });
  if (!any_prime_power) {
    std::vector<Int> counts;
    for (Int d : cd.nontrivial()) counts.push_back(static_cast<Int>(factorize(d).size()));
    EliminationWitness w(Rule::CaseANoPrimePower);
    w.ref("set", set_name).add("degrees", as_vector(cd.nontrivial())).add("distinct_primes", std::move(counts));
    result.ok = true;
    result.witnesses.push_back(std::move(w));
    return result;
  }

  for (Int r : prime_spectrum(cd.values())) {
    std::vector<Int> powers;
    for (Int d : cd.nontrivial()) {
      if (is_power_of(d, r)) powers.push_back(d);
    }
    if (powers.empty()) continue;
    std::optional<Int> chosen;
    for (auto it = cd.values().rbegin(); it != cd.values().rend(); ++it) {
      const Int chi = *it;
      if (chi % r == 0) continue;
      const bool blocks = std::none_of(powers.begin(), powers.end(),
                                       [&](Int q) { return cd.contains(checked_mul(chi, q)); });
      if (blocks) {
        chosen = chi;
        break;
      }
    }
    if (!chosen) {
      result.ok = false;
      result.stuck_prime = r;
      result.witnesses.clear();
      return result;
    }
    EliminationWitness w(Rule::CaseAGallagher);
    w.ref("set", set_name)
        .add("r", {r})
        .add("chi", {*chosen, *chosen % r})
        .add("powers", powers)
        .add("products", products_with(*chosen, powers));
    result.witnesses.push_back(std::move(w));
  }
  result.ok = true;
  return result;
}

FrobeniusResult frobenius_eliminate(const DegreeSet& cd, const std::string& set_name) {
  FrobeniusResult result;
  std::vector<Int> needed;
  for (Int f : cd.nontrivial()) {
    if (!cd.has_proper_multiple_of(f)) {
      if (auto w = b1_witness(cd, f, set_name)) {
        result.by_f.emplace(f, std::move(*w));
        continue;
      }
    }
    needed.push_back(f);
  }

  // Pick chi greedily: the one discharging the most remaining f, larger
  // chi on ties.
  std::vector<Int> candidates;
  for (Int chi : cd.nontrivial()) {
    if (!cd.has_proper_multiple_of(chi)) candidates.push_back(chi);
  }
  std::set<Int> remaining(needed.begin(), needed.end());
  while (!remaining.empty()) {
    Int best = 0;
    std::size_t best_count = 0;
    for (Int chi : candidates) {
      std::size_t count = 0;
      for (Int f : remaining) count += b2_works(f, chi) ? 1 : 0;
      if (count > best_count || (count == best_count && count > 0 && chi > best)) {
        best = chi;
        best_count = count;
      }
    }
    if (best_count == 0) break;
    for (auto it = remaining.begin(); it != remaining.end();) {
      if (b2_works(*it, best)) {
        result.by_f.emplace(*it, b2_witness(*it, best, set_name));
        it = remaining.erase(it);
      } else {
        ++it;
      }
    }
  }
  result.stuck.assign(remaining.begin(), remaining.end());
  result.ok = remaining.empty();
  return result;
}

Int k_bound(const GroupProfile& S, const DegreeSet& cdH) {
  const DegreeSet& cd = full_degrees(S);
  Int k = 1;
  try {
    while (k < kBoundCap) {
      const bool all = std::all_of(cd.begin(), cd.end(),
                                   [&](Int psi) { return divides_some(checked_pow(psi, static_cast<int>(k + 1)), cdH); });
      if (!all) break;
      ++k;
    }
  } catch (const std::overflow_error&) {
  }
  return k;
}

EliminationWitness k_bound_witness(const GroupProfile& S, const DegreeSet& cdH, const std::string& set_name) {
  const Int k = k_bound(S, cdH);
  std::vector<Int> hosts;
  std::vector<Int> blocking;
  for (Int psi : S.degrees->nontrivial()) {
    const Int pk = checked_pow(psi, static_cast<int>(k));
    auto it = std::find_if(cdH.begin(), cdH.end(), [&](Int h) { return h % pk == 0; });
    hosts.push_back(pk);
    hosts.push_back(it == cdH.end() ? 0 : *it);
  }
  if (k < kBoundCap) {
    for (Int psi : S.degrees->nontrivial()) {
      Int next = 0;
      try {
        next = checked_pow(psi, static_cast<int>(k + 1));
      } catch (const std::overflow_error&) {
        continue;
      }
      if (!divides_some(next, cdH)) {
        blocking = {psi, next};
        break;
      }
    }
  }
  EliminationWitness w(Rule::KBound);
  w.ref("candidate", S.name)
      .ref("set", set_name)
      .add("k", {k})
      .add("cap", {kBoundCap})
      .add("hosts", std::move(hosts))
      .add("blocking", std::move(blocking));
  return w;
}

std::optional<EliminationWitness> socle_eliminate(const GroupProfile& S, const DegreeSet& cdH,
                                                  const std::string& set_name, std::optional<Int> preferred) {
  const DegreeSet& cd = full_degrees(S);
  const auto ts = divisors(S.out_order);
  auto blocked = [&](Int psi) {
    return std::none_of(ts.begin(), ts.end(), [&](Int t) { return cdH.contains(checked_mul(t, psi)); });
  };
  std::optional<Int> chosen;
  if (preferred && *preferred != 1 && cd.contains(*preferred) && blocked(*preferred)) chosen = preferred;
  for (auto it = cd.nontrivial().begin(); !chosen && it != cd.nontrivial().end(); ++it) {
    if (blocked(*it)) chosen = *it;
  }
  if (!chosen) return std::nullopt;
  EliminationWitness w(Rule::OutProduct);
  w.ref("candidate", S.name)
      .ref("set", set_name)
      .add("psi", {*chosen})
      .add("out_order", {S.out_order})
      .add("divisors", ts)
      .add("products", products_with(*chosen, ts));
  return w;
}

std::vector<QuotientProfile> maximal_index_quotients(const GroupProfile& H0, const DegreeSet& cdH) {
  if (!H0.max_subgroups) throw DataError(DataErrorKind::Unusable, H0.name + " has no maximal subgroup list");
  std::vector<QuotientProfile> out;
  for (const auto& m : *H0.max_subgroups) {
    QuotientProfile q;
    q.subgroup = &m;
    for (Int d : cdH) {
      if (d % m.index == 0) q.quotients.push_back(d / m.index);
    }
    if (!q.quotients.empty()) out.push_back(std::move(q));
  }
  return out;
}

EliminationWitness max_index_witness(const GroupProfile& H0, const QuotientProfile& q, const std::string& set_name) {
  EliminationWitness w(Rule::MaxIndex);
  w.ref("group", H0.name)
      .ref("subgroup", q.subgroup->name)
      .ref("set", set_name)
      .add("index", {q.subgroup->index})
      .add("quotients", q.quotients)
      .add("hosts", products_with(q.subgroup->index, q.quotients));
  return w;
}

bool product_nonmember(std::span<const Int> factors, std::span<const Int> cd) {
  if (factors.empty()) throw std::invalid_argument("product_nonmember needs at least one factor");
  Int p = 1;
  for (Int f : factors) {
    if (f < 1) throw std::invalid_argument("factors must be positive");
    p = checked_mul(p, f);
  }
  return !divides_some(p, cd);
}

std::optional<EliminationWitness> product_nonmember_witness(const ProductRequest& req) {
  if (!product_nonmember(req.factors, req.reference_values)) return std::nullopt;
  if (req.tau && std::find(req.factors.begin(), req.factors.end(), *req.tau) == req.factors.end()) return std::nullopt;
  Int p = 1;
  for (Int f : req.factors) p = checked_mul(p, f);
  EliminationWitness w(Rule::ProductNonmember);
  w.ref("reference", req.reference);
  if (!req.subgroup.empty()) w.ref("subgroup", req.subgroup);
  if (!req.group.empty()) w.ref("group", req.group);
  if (!req.set.empty()) w.ref("set", req.set);
  if (req.tau) w.ref("tau_group", req.tau_group);
  w.add("factors", req.factors).add("product", {p}).add("residues", residue_rows(req.reference_values, p));
  if (req.tau) w.add("tau", {*req.tau});
  return w;
}

std::optional<EliminationWitness> cover_eliminate(const GroupProfile& owner, const CoverRecord& cover,
                                                  const DegreeSet& reference) {
  if (divides_some(cover.witness_degree, reference)) return std::nullopt;
  EliminationWitness w(Rule::Cover);
  w.ref("group", owner.name)
      .ref("reference", cover.reference_set)
      .add("multiplier", {cover.multiplier})
      .add("schur", {owner.schur_multiplier_order})
      .add("witness", {cover.witness_degree})
      .add("residues", residue_rows(reference.values(), cover.witness_degree));
  return w;
}

bool odd_parity_eliminate(std::span<const Int> values) {
  if (values.empty()) throw std::invalid_argument("odd_parity_eliminate needs at least one value");
  return std::all_of(values.begin(), values.end(), [](Int v) { return v > 1 && v % 2 == 1; });
}

std::optional<EliminationWitness> odd_parity_witness(std::span<const Int> values, const std::string& group,
                                                     const std::string& subgroup) {
  if (!odd_parity_eliminate(values)) return std::nullopt;
  EliminationWitness w(Rule::OddParity);
  if (!group.empty()) w.ref("group", group);
  if (!subgroup.empty()) w.ref("subgroup", subgroup);
  w.add("values", residue_rows(values, 2));
  return w;
}

std::optional<EliminationWitness> overflow_check(const DegreeSet& cd_socle, const DegreeSet& cdH,
                                                 const std::string& socle_name, const std::string& set_name) {
  const Int bound = checked_mul(2, cd_socle.max());
  if (divides_some(bound, cdH)) return std::nullopt;
  EliminationWitness w(Rule::Overflow);
  w.ref("socle", socle_name)
      .ref("set", set_name)
      .add("socle_max", {cd_socle.max()})
      .add("bound", {bound})
      .add("target_max", {cdH.max()})
      .add("residues", residue_rows(cdH.values(), bound));
  return w;
}

std::optional<Int> distinguishing_degree(const DegreeSet& cdH, const DegreeSet& cdX) {
  for (Int d : cdH) {
    if (!cdX.contains(d)) return d;
  }
  return std::nullopt;
}

}  // namespace huppert
