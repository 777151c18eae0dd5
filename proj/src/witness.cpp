#include "huppert/witness.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace huppert {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 13> kRuleNames{{
    {Rule::CaseANoPrimePower, "CASE_A_NO_PRIME_POWER"},
    {Rule::CaseAGallagher, "CASE_A_GALLAGHER"},
    {Rule::FrobB2, "FROB_B2"},
    {Rule::FrobB1, "FROB_B1"},
    {Rule::KBound, "K_BOUND"},
    {Rule::OutProduct, "OUT_PRODUCT"},
    {Rule::WitnessDegree, "WITNESS_DEGREE"},
    {Rule::Cover, "COVER"},
    {Rule::MaxIndex, "MAX_INDEX"},
    {Rule::ProductNonmember, "PRODUCT_NONMEMBER"},
    {Rule::OddParity, "ODD_PARITY"},
    {Rule::Overflow, "OVERFLOW"},
    {Rule::Distinguishing, "DISTINGUISHING"},
}};

// The k-bound search cap; mirrors the engine constant without depending
// on the engine.
constexpr Int kCap = 10;

struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Invalid(message);
}

Int scalar(const EliminationWitness& w, std::string_view name) {
  const auto& v = w.field(name);
  require(v.size() == 1, std::string(name) + " must hold exactly one value");
  return v[0];
}

void require_equal(const std::vector<Int>& got, const std::vector<Int>& expected, std::string_view name) {
  require(got == expected, std::string(name) + " does not match the recomputed values");
}

const GroupProfile& group_ref(const EliminationWitness& w, const Catalog& cat, std::string_view key) {
  const std::string name = w.ref_or_empty(key);
  const GroupProfile* g = cat.find(name);
  require(g != nullptr, "reference " + std::string(key) + " = \"" + name + "\" is not in the catalog");
  return *g;
}

const DegreeSet& full_set(const EliminationWitness& w, const Catalog& cat, std::string_view key) {
  const GroupProfile& g = group_ref(w, cat, key);
  require(g.degrees.has_value(), g.name + " has no full degree set");
  return *g.degrees;
}

// Rows [h, h/d, h%d] for each h in hs, in order.
void check_rows(const std::vector<Int>& flat, std::span<const Int> hs, Int d, std::string_view name) {
  require(d >= 1, std::string(name) + ": divisor must be positive");
  require(flat.size() == 3 * hs.size(), std::string(name) + ": wrong number of rows");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    require(flat[3 * i] == hs[i] && flat[3 * i + 1] == hs[i] / d && flat[3 * i + 2] == hs[i] % d,
            std::string(name) + ": row " + std::to_string(i) + " is inconsistent");
  }
}

void check_nonzero_remainders(const std::vector<Int>& flat, std::string_view name) {
  for (std::size_t i = 2; i < flat.size(); i += 3) {
    require(flat[i] != 0, std::string(name) + ": " + std::to_string(flat[i - 2]) + " is divisible");
  }
}

bool divides_any(Int d, std::span<const Int> s) {
  return std::any_of(s.begin(), s.end(), [d](Int x) { return x % d == 0; });
}

bool power_of(Int q, Int r) {
  if (q < r) return false;
  while (q % r == 0) q /= r;
  return q == 1;
}

std::vector<Int> nontrivial(const DegreeSet& s) { return {s.nontrivial().begin(), s.nontrivial().end()}; }

void case_a_no_prime_power(const EliminationWitness& w, const Catalog& cat) {
  const DegreeSet& cd = full_set(w, cat, "set");
  require_equal(w.field("degrees"), nontrivial(cd), "degrees");
  std::vector<Int> counts;
  for (Int d : cd.nontrivial()) counts.push_back(static_cast<Int>(factorize(d).size()));
  require_equal(w.field("distinct_primes"), counts, "distinct_primes");
  for (Int c : counts) require(c >= 2, "a degree is a prime power");
}

void case_a_gallagher(const EliminationWitness& w, const Catalog& cat) {
  const DegreeSet& cd = full_set(w, cat, "set");
  const Int r = scalar(w, "r");
  require(is_prime(r), "r is not prime");
  std::vector<Int> powers;
  for (Int d : cd.nontrivial()) {
    if (power_of(d, r)) powers.push_back(d);
  }
  require(!powers.empty(), "no r-power degree");
  require_equal(w.field("powers"), powers, "powers");
  const auto& chi = w.field("chi");
  require(chi.size() == 2, "chi must be [chi, chi mod r]");
  require(chi[0] >= 1 && cd.contains(chi[0]), "chi is not a degree");
  require(chi[1] == chi[0] % r && chi[1] != 0, "chi is not coprime to r");
  std::vector<Int> products;
  for (Int q : powers) products.push_back(checked_mul(chi[0], q));
  require_equal(w.field("products"), products, "products");
  for (Int p : products) require(!cd.contains(p), "product " + std::to_string(p) + " is a degree");
}

void frob_b2(const EliminationWitness& w, const Catalog& cat) {
  const DegreeSet& cd = full_set(w, cat, "set");
  const Int f = scalar(w, "f");
  require(f > 1 && cd.contains(f), "f is not a nontrivial degree");
  const auto& chi = w.field("chi");
  require(chi.size() == 3, "chi must be [chi, chi/f, chi%f]");
  const Int c = chi[0];
  require(c >= 1 && cd.contains(c), "chi is not a degree");
  require(!cd.has_proper_multiple_of(c), "chi has a proper multiple among the degrees");
  require(chi[1] == c / f && chi[2] == c % f, "chi quotient row is inconsistent");
  require(chi[2] != 0, "f divides chi");
  const Int sq = checked_mul(c, c);
  require(scalar(w, "chi_squared") == sq, "chi_squared is wrong");
  std::vector<Int> qs;
  for (const auto& p : prime_power_divisors(sq)) qs.push_back(p.value);
  const auto& rows = w.field("residues");
  check_rows(rows, qs, f, "residues");
  for (std::size_t i = 2; i < rows.size(); i += 3) {
    require(rows[i] != 1, "prime power " + std::to_string(rows[i - 2]) + " is 1 mod f");
  }
}

void frob_b1(const EliminationWitness& w, const Catalog& cat) {
  const DegreeSet& cd = full_set(w, cat, "set");
  const Int f = scalar(w, "f");
  require(f > 1 && cd.contains(f), "f is not a nontrivial degree");
  require(!cd.has_proper_multiple_of(f), "f has a proper multiple among the degrees");
  const auto spectrum = prime_spectrum(cd.values());
  const auto& rows = w.field("rows");
  require(rows.size() == 7 * spectrum.size(), "rows must cover exactly the prime spectrum");
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const Int* row = &rows[7 * i];
    const Int r = row[0], a = row[1], b = row[2], l = row[3];
    require(r == spectrum[i], "row prime does not match the spectrum");
    require(a >= 1 && b >= 1 && cd.contains(a) && cd.contains(b), "pair is not in the degree set");
    require(a % r != 0 && b % r != 0, "pair is not coprime to r");
    require(l == checked_lcm(a, b), "lcm is wrong");
    require(row[4] == checked_mul(a, b), "product is wrong");
    require(row[5] == f / l && row[6] == f % l, "quotient row is inconsistent");
    require(row[6] != 0, "lcm divides f");
  }
  const auto& all = w.field("lcm_all");
  const Int l = lcm_of(cd.values());
  require(all.size() == 3 && all[0] == l && all[1] == f / l && all[2] == f % l, "lcm_all is inconsistent");
  require(all[2] != 0, "lcm of all degrees divides f");
}

void k_bound(const EliminationWitness& w, const Catalog& cat) {
  const DegreeSet& cd = full_set(w, cat, "candidate");
  const DegreeSet& host = full_set(w, cat, "set");
  const Int k = scalar(w, "k");
  require(scalar(w, "cap") == kCap, "cap is wrong");
  require(k >= 1 && k <= kCap, "k is out of range");
  const auto& hosts = w.field("hosts");
  require(hosts.size() == 2 * cd.nontrivial().size(), "hosts must cover every nontrivial degree");
  for (std::size_t i = 0; i < cd.nontrivial().size(); ++i) {
    const Int pk = checked_pow(cd.nontrivial()[i], static_cast<int>(k));
    require(hosts[2 * i] == pk, "power is wrong");
    require(host.contains(hosts[2 * i + 1]) && hosts[2 * i + 1] % pk == 0, "host does not absorb the power");
  }
  const auto& blocking = w.field("blocking");
  if (k == kCap) {
    require(blocking.empty(), "blocking must be empty at the cap");
    return;
  }
  require(blocking.size() == 2, "blocking must be [psi, psi^(k+1)]");
  require(blocking[0] > 1 && cd.contains(blocking[0]), "blocking psi is not a degree");
  require(blocking[1] == checked_pow(blocking[0], static_cast<int>(k + 1)), "blocking power is wrong");
  require(!divides_any(blocking[1], host.values()), "blocking power divides a degree");
}

void out_product(const EliminationWitness& w, const Catalog& cat) {
  const GroupProfile& s = group_ref(w, cat, "candidate");
  require(s.degrees.has_value(), s.name + " has no full degree set");
  const DegreeSet& host = full_set(w, cat, "set");
  const Int psi = scalar(w, "psi");
  require(psi > 1 && s.degrees->contains(psi), "psi is not a nontrivial degree");
  require(scalar(w, "out_order") == s.out_order, "out_order is wrong");
  const auto ts = divisors(s.out_order);
  require_equal(w.field("divisors"), ts, "divisors");
  std::vector<Int> products;
  for (Int t : ts) products.push_back(checked_mul(t, psi));
  require_equal(w.field("products"), products, "products");
  for (Int p : products) require(!host.contains(p), "product " + std::to_string(p) + " is a degree");
}

void witness_degree(const EliminationWitness& w, const Catalog& cat) {
  const GroupProfile& s = group_ref(w, cat, "candidate");
  const DegreeSet& host = full_set(w, cat, "set");
  std::vector<Int> failing;
  for (Int d : s.available_degrees()) {
    if (!divides_any(d, host.values())) failing.push_back(d);
  }
  require(!failing.empty(), "every degree divides some host degree");
  require_equal(w.field("failing"), failing, "failing");
  const Int d = scalar(w, "degree");
  require(d == failing.front(), "degree is not the least failing degree");
  check_rows(w.field("residues"), host.values(), d, "residues");
  check_nonzero_remainders(w.field("residues"), "residues");
}

void cover(const EliminationWitness& w, const Catalog& cat) {
  const GroupProfile& g = group_ref(w, cat, "group");
  const Int m = scalar(w, "multiplier");
  const Int s = scalar(w, "schur");
  require(s == g.schur_multiplier_order, "schur order is wrong");
  require(m >= 2 && s % m == 0, "multiplier does not divide the Schur multiplier order");
  const CoverRecord* rec = g.find_cover(m);
  require(rec != nullptr, "no cover record for this multiplier");
  require(rec->reference_set == w.ref_or_empty("reference"), "reference set differs from the record");
  const Int wd = scalar(w, "witness");
  require(wd == rec->witness_degree, "witness degree differs from the record");
  const DegreeSet& ref = full_set(w, cat, "reference");
  check_rows(w.field("residues"), ref.values(), wd, "residues");
  check_nonzero_remainders(w.field("residues"), "residues");
}

std::vector<Int> quotients_of(const MaximalSubgroupRecord& m, const DegreeSet& host) {
  std::vector<Int> out;
  for (Int d : host) {
    if (d % m.index == 0) out.push_back(d / m.index);
  }
  return out;
}

const MaximalSubgroupRecord& subgroup_ref(const EliminationWitness& w, const GroupProfile& g) {
  const MaximalSubgroupRecord* m = g.find_subgroup(w.ref_or_empty("subgroup"));
  require(m != nullptr, "subgroup is not recorded for " + g.name);
  return *m;
}

void max_index(const EliminationWitness& w, const Catalog& cat) {
  const GroupProfile& g = group_ref(w, cat, "group");
  const MaximalSubgroupRecord& m = subgroup_ref(w, g);
  const DegreeSet& host = full_set(w, cat, "set");
  require(scalar(w, "index") == m.index, "index differs from the record");
  const auto qs = quotients_of(m, host);
  require(!qs.empty(), "index divides no degree");
  require_equal(w.field("quotients"), qs, "quotients");
  std::vector<Int> hosts;
  for (Int q : qs) hosts.push_back(checked_mul(q, m.index));
  require_equal(w.field("hosts"), hosts, "hosts");
  for (Int h : hosts) require(host.contains(h), "host is not a degree");
}

void product_nonmember(const EliminationWitness& w, const Catalog& cat) {
  const auto& factors = w.field("factors");
  require(!factors.empty(), "no factors");
  Int p = 1;
  for (Int f : factors) {
    require(f >= 1, "factor must be positive");
    p = checked_mul(p, f);
  }
  require(scalar(w, "product") == p, "product is wrong");

  const std::string ref = w.ref_or_empty("reference");
  std::vector<Int> values;
  if (ref.starts_with("quotients:")) {
    const GroupProfile& g = group_ref(w, cat, "group");
    const MaximalSubgroupRecord* m = g.find_subgroup(std::string_view(ref).substr(10));
    require(m != nullptr, "quotient reference names an unknown subgroup");
    values = quotients_of(*m, full_set(w, cat, "set"));
  } else {
    const auto& s = full_set(w, cat, "reference");
    values.assign(s.begin(), s.end());
  }
  check_rows(w.field("residues"), values, p, "residues");
  check_nonzero_remainders(w.field("residues"), "residues");

  const auto* tau = w.find("tau");
  const std::string tau_group = w.ref_or_empty("tau_group");
  require((tau != nullptr) == !tau_group.empty(), "tau and tau_group must appear together");
  if (tau) {
    require(tau->size() == 1, "tau must hold exactly one value");
    const Int t = (*tau)[0];
    require(group_ref(w, cat, "tau_group").available_degrees().contains(t), "tau is not a degree of tau_group");
    require(std::find(factors.begin(), factors.end(), t) != factors.end(), "tau is not among the factors");
  }
}

void odd_parity(const EliminationWitness& w, const Catalog& cat) {
  const auto& rows = w.field("values");
  require(!rows.empty() && rows.size() % 3 == 0, "values must be nonempty [v, v/2, v%2] rows");
  std::vector<Int> values;
  for (std::size_t i = 0; i < rows.size(); i += 3) values.push_back(rows[i]);
  check_rows(rows, values, 2, "values");
  for (Int v : values) require(v > 1 && v % 2 == 1, "value " + std::to_string(v) + " is not odd and above 1");
  if (!w.ref_or_empty("group").empty() && !w.ref_or_empty("subgroup").empty()) {
    const MaximalSubgroupRecord& m = subgroup_ref(w, group_ref(w, cat, "group"));
    if (const auto* fact = m.find_fact("PROJECTIVE_DEGREES")) {
      require(fact->args == values, "values differ from the recorded projective degrees");
    }
  }
}

void overflow(const EliminationWitness& w, const Catalog& cat) {
  const DegreeSet& socle = full_set(w, cat, "socle");
  const DegreeSet& host = full_set(w, cat, "set");
  require(scalar(w, "socle_max") == socle.max(), "socle_max is wrong");
  const Int bound = checked_mul(2, socle.max());
  require(scalar(w, "bound") == bound, "bound is wrong");
  require(scalar(w, "target_max") == host.max(), "target_max is wrong");
  check_rows(w.field("residues"), host.values(), bound, "residues");
  check_nonzero_remainders(w.field("residues"), "residues");
}

void distinguishing(const EliminationWitness& w, const Catalog& cat) {
  const GroupProfile& target = group_ref(w, cat, "target");
  const GroupProfile* socle = cat.find(target.socle);
  require(socle != nullptr, "target socle is not in the catalog");
  const std::string other_name = w.ref_or_empty("other");

  if (other_name.empty()) {
    const Int out = scalar(w, "out_order");
    require(target.name == socle->name, "only a socle can stand alone");
    require(out == socle->out_order && out == 1 && socle->overgroups.empty(), "socle has other extensions");
    return;
  }

  std::vector<std::string> family{socle->name};
  family.insert(family.end(), socle->overgroups.begin(), socle->overgroups.end());
  require(other_name != target.name && std::find(family.begin(), family.end(), other_name) != family.end(),
          "other is not a sibling of the target");
  const GroupProfile& other = group_ref(w, cat, "other");
  require(target.degrees && other.degrees, "full degree sets required");
  const DegreeSet& cdh = *target.degrees;
  const DegreeSet& cdx = *other.degrees;
  const Int d = scalar(w, "degree");
  require(cdh.contains(d) && !cdx.contains(d), "degree does not distinguish");
  Int least = 0;
  for (Int h : cdh) {
    if (!cdx.contains(h)) {
      least = h;
      break;
    }
  }
  require_equal(w.field("least"), {least}, "least");
  Int expected = least;
  if (const auto* cert = cat.certificate(target.name)) {
    if (auto it = cert->step5_degree.find(other_name); it != cert->step5_degree.end()) expected = it->second;
  }
  require(d == expected, "degree differs from the recorded choice");

  std::optional<Int> p = prime_index(target, other);
  bool target_larger = true;
  if (!p) {
    p = prime_index(other, target);
    target_larger = false;
  }
  if (!p) {
    require(w.field("index_prime").empty() && w.field("restrictions").empty() && w.field("inductions").empty(),
            "no prime index, so no pairing expected");
    return;
  }
  require_equal(w.field("index_prime"), {*p}, "index_prime");
  const auto pairing = target_larger ? clifford_pairing(cdh, cdx, *p) : clifford_pairing(cdx, cdh, *p);
  require(pairing.has_value(), "degree sets are not Clifford-compatible");
  require_equal(w.field("restrictions"), pairing->restrictions, "restrictions");
  require_equal(w.field("inductions"), pairing->inductions, "inductions");
}

}  // namespace

std::string_view to_string(Rule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "UNKNOWN";
}

std::optional<Rule> rule_from_string(std::string_view tag) {
  for (const auto& [r, name] : kRuleNames) {
    if (name == tag) return r;
  }
  return std::nullopt;
}

EliminationWitness& EliminationWitness::ref(std::string key, std::string value) {
  refs[std::move(key)] = std::move(value);
  return *this;
}

EliminationWitness& EliminationWitness::add(std::string name, std::vector<Int> values) {
  payload.push_back({std::move(name), std::move(values)});
  return *this;
}

const std::vector<Int>* EliminationWitness::find(std::string_view name) const {
  auto it = std::find_if(payload.begin(), payload.end(), [&](const PayloadField& f) { return f.name == name; });
  return it == payload.end() ? nullptr : &it->values;
}

const std::vector<Int>& EliminationWitness::field(std::string_view name) const {
  if (const auto* v = find(name)) return *v;
  throw std::out_of_range("payload field " + std::string(name) + " is missing");
}

std::string EliminationWitness::ref_or_empty(std::string_view key) const {
  auto it = refs.find(std::string(key));
  return it == refs.end() ? std::string() : it->second;
}

ValidationResult validate(const EliminationWitness& witness, const Catalog& catalog) {
  try {
    switch (witness.rule) {
      case Rule::CaseANoPrimePower: case_a_no_prime_power(witness, catalog); break;
      case Rule::CaseAGallagher: case_a_gallagher(witness, catalog); break;
      case Rule::FrobB2: frob_b2(witness, catalog); break;
      case Rule::FrobB1: frob_b1(witness, catalog); break;
      case Rule::KBound: k_bound(witness, catalog); break;
      case Rule::OutProduct: out_product(witness, catalog); break;
      case Rule::WitnessDegree: witness_degree(witness, catalog); break;
      case Rule::Cover: cover(witness, catalog); break;
      case Rule::MaxIndex: max_index(witness, catalog); break;
      case Rule::ProductNonmember: product_nonmember(witness, catalog); break;
      case Rule::OddParity: odd_parity(witness, catalog); break;
      case Rule::Overflow: overflow(witness, catalog); break;
      case Rule::Distinguishing: distinguishing(witness, catalog); break;
    }
  } catch (const std::exception& e) {
    return {false, std::string(to_string(witness.rule)) + ": " + e.what()};
  }
  return {};
}

std::optional<CliffordPairing> clifford_pairing(const DegreeSet& larger, const DegreeSet& smaller, Int prime) {
  CliffordPairing out;
  out.prime = prime;
  for (Int d : larger) {
    Int e = 0;
    if (smaller.contains(d)) {
      e = 1;
    } else if (d % prime == 0 && smaller.contains(d / prime)) {
      e = prime;
    }
    if (e == 0) return std::nullopt;
    out.restrictions.insert(out.restrictions.end(), {d, e, d / e});
  }
  for (Int d : smaller) {
    Int e = 0;
    if (larger.contains(d)) {
      e = 1;
    } else if (larger.contains(checked_mul(d, prime))) {
      e = prime;
    }
    if (e == 0) return std::nullopt;
    out.inductions.insert(out.inductions.end(), {d, e, d * e});
  }
  return out;
}

std::optional<Int> prime_index(const GroupProfile& larger, const GroupProfile& smaller) {
  if (larger.order && smaller.order) {
    if (*larger.order % *smaller.order != 0) return std::nullopt;
    const Int p = *larger.order / *smaller.order;
    if (!is_prime(p)) return std::nullopt;
    return p;
  }
  // Without orders: a proper extension of the socle inside its automorphism
  // group has index dividing |Out|, so a prime |Out| is the index.
  if (larger.name != smaller.name && larger.socle == smaller.name && is_prime(smaller.out_order)) {
    return smaller.out_order;
  }
  return std::nullopt;
}

}  // namespace huppert
