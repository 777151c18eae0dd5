#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "huppert/degreelogic.hpp"
#include "support.hpp"

using namespace huppert;
using test_support::catalog;
using test_support::cd;

namespace {

const std::vector<const char*> kTargets{"M11", "M12", "M12:2", "M22", "M22:2", "M23", "M24"};

GroupProfile artificial(const std::string& name, DegreeSet degrees, Int out = 1) {
  GroupProfile g;
  g.name = name;
  g.degrees = std::move(degrees);
  g.out_order = out;
  g.socle = name;
  return g;
}

std::vector<std::string> row_of(const char* target) {
  const auto& h = profile(catalog(), target);
  const auto spectrum = prime_spectrum(h.degrees->values());
  return table1_row(h, pool_for(catalog(), spectrum), catalog()).accepted();
}

std::vector<Int> prime_powers_of_square(Int chi) {
  std::vector<Int> out;
  for (const auto& p : prime_power_divisors(chi * chi)) out.push_back(p.value);
  return out;
}

DegreeSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> size(1, 8), value(2, 400);
  std::vector<Int> v;
  const Int n = size(rng);
  for (Int i = 0; i < n; ++i) v.push_back(value(rng));
  return DegreeSet::closure_of(v);
}

void check_frobenius_soundness(const DegreeSet& s) {
  const auto result = frobenius_eliminate(s);
  for (const auto& [f, w] : result.by_f) {
    REQUIRE(w.field("f").front() == f);
    if (w.rule == Rule::FrobB2) {
      const Int chi = w.field("chi").front();
      REQUIRE(s.contains(chi));
      REQUIRE_FALSE(s.has_proper_multiple_of(chi));
      REQUIRE(chi % f != 0);
      for (Int q : prime_powers_of_square(chi)) REQUIRE(q % f != 1);
    } else {
      REQUIRE(w.rule == Rule::FrobB1);
      REQUIRE_FALSE(s.has_proper_multiple_of(f));
    }
  }
  std::set<Int> covered;
  for (const auto& [f, w] : result.by_f) covered.insert(f);
  for (Int f : result.stuck) REQUIRE_FALSE(covered.count(f));
  REQUIRE(covered.size() + result.stuck.size() == s.nontrivial().size());
  REQUIRE(result.ok == result.stuck.empty());
}

}  // namespace

TEST_CASE("divides_some examples") {
  CHECK_FALSE(divides_some(220, cd("M12:2")));
  CHECK(divides_some(1, cd("M12:2")));
  CHECK(divides_some(1, DegreeSet{}));
  CHECK_FALSE(divides_some(81, cd("M12:2")));
}

TEST_CASE("degrees_divide examples") {
  const auto& h = profile(catalog(), "M12:2");
  CHECK(degrees_divide(profile(catalog(), "A5"), h).divides);
  const auto u52 = degrees_divide(profile(catalog(), "U5(2)"), h);
  CHECK_FALSE(u52.divides);
  CHECK(u52.witness == 220);
  CHECK(degrees_divide(artificial("T", DegreeSet{}), h).divides);
}

TEST_CASE("table1_row examples") {
  CHECK(row_of("M12:2") == std::vector<std::string>{"A5", "A6", "L2(11)", "M11", "M12"});
  CHECK(row_of("M22:2") == std::vector<std::string>{"A5", "A6", "A7", "L2(7)", "L2(8)", "M22"});
  CHECK(row_of("M11") == std::vector<std::string>{"A5", "A6", "M11"});
}

TEST_CASE("table1_row keeps the socle of every shipped target") {
  for (const char* t : kTargets) {
    const auto row = row_of(t);
    CHECK(std::find(row.begin(), row.end(), profile(catalog(), t).socle) != row.end());
  }
}

TEST_CASE("degrees_divide is monotone in the host set") {
  std::mt19937_64 rng(7);
  for (const auto& s : catalog().groups()) {
    for (const char* t : kTargets) {
      const auto& h = profile(catalog(), t);
      if (!degrees_divide(s, h).divides) continue;
      std::vector<Int> bigger(h.degrees->begin(), h.degrees->end());
      std::uniform_int_distribution<Int> extra(2, 5000);
      for (int i = 0; i < 5; ++i) bigger.push_back(extra(rng));
      CHECK(degrees_divide(s, artificial("H", DegreeSet::closure_of(bigger))).divides);
    }
  }
}

TEST_CASE("case_a_eliminate examples") {
  const auto m22 = case_a_eliminate(cd("M22:2"));
  REQUIRE(m22.ok);
  REQUIRE(m22.witnesses.size() == 1);
  CHECK(m22.witnesses[0].rule == Rule::CaseANoPrimePower);

  const auto m12 = case_a_eliminate(cd("M12:2"));
  REQUIRE(m12.ok);
  REQUIRE(m12.witnesses.size() == 1);
  const auto& w = m12.witnesses[0];
  CHECK(w.rule == Rule::CaseAGallagher);
  CHECK(w.field("r") == std::vector<Int>{2});
  CHECK(w.field("chi").front() == 99);
  CHECK(w.field("powers") == std::vector<Int>{32});
  CHECK(w.field("products") == std::vector<Int>{3168});

  const auto small = case_a_eliminate(DegreeSet{1, 2, 3});
  REQUIRE(small.ok);
  REQUIRE(small.witnesses.size() == 2);
  CHECK(small.witnesses[0].field("chi").front() == 3);
  CHECK(small.witnesses[1].field("chi").front() == 2);

  // 2 and 4 with odd degree 3 and product 6 present: r = 2 is stuck.
  const auto stuck = case_a_eliminate(DegreeSet{1, 2, 3, 6, 12});
  CHECK_FALSE(stuck.ok);
  CHECK(stuck.stuck_prime == 2);
}

TEST_CASE("frobenius_eliminate examples") {
  const auto m12 = frobenius_eliminate(cd("M12:2"));
  REQUIRE(m12.ok);
  CHECK(m12.by_f.size() == 11);
  const auto& f55 = m12.by_f.at(55);
  CHECK(f55.rule == Rule::FrobB2);
  CHECK(f55.field("chi").front() == 144);
  CHECK(m12.by_f.at(22).field("chi").front() == 144);

  const auto& f99 = m12.by_f.at(99);
  CHECK(f99.rule == Rule::FrobB1);
  const auto& rows = f99.field("rows");
  REQUIRE(rows.size() == 28);
  CHECK(std::vector<Int>(rows.begin(), rows.begin() + 4) == std::vector<Int>{2, 45, 99, 495});
  CHECK(std::vector<Int>(rows.begin() + 7, rows.begin() + 10) == std::vector<Int>{3, 32, 176});
  CHECK(f99.field("lcm_all")[2] != 0);

  const auto m22 = frobenius_eliminate(cd("M22:2"));
  REQUIRE(m22.ok);
  CHECK(m22.by_f.at(21).rule == Rule::FrobB2);
  CHECK(m22.by_f.at(21).field("chi").front() == 154);
  CHECK(m22.by_f.at(55).field("chi").front() == 154);
  CHECK(prime_powers_of_square(154) == std::vector<Int>{2, 4, 7, 49, 11, 121});
}

TEST_CASE("frobenius_eliminate witnesses are sound") {
  for (const char* t : kTargets) check_frobenius_soundness(cd(t));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) check_frobenius_soundness(random_set(rng));
}

TEST_CASE("k_bound examples") {
  CHECK(k_bound(profile(catalog(), "A5"), cd("M12:2")) == 1);
  CHECK(k_bound(profile(catalog(), "L2(7)"), cd("M22:2")) == 1);
  CHECK(k_bound(artificial("T", DegreeSet{}), cd("M22:2")) == kBoundCap);
  CHECK(k_bound(artificial("T", DegreeSet{1, 2}), DegreeSet{1, 8}) == 3);
  CHECK_THROWS_AS(k_bound(profile(catalog(), "U5(2)"), cd("M12:2")), DataError);
}

TEST_CASE("k_bound is at least 1 and antitone in the degree set") {
  std::mt19937_64 rng(3);
  for (const auto& s : catalog().groups()) {
    if (!s.degrees) continue;
    for (const char* t : kTargets) {
      const Int k = k_bound(s, cd(t));
      CHECK(k >= 1);
      std::vector<Int> sub;
      for (Int d : s.degrees->nontrivial()) {
        if (rng() % 2) sub.push_back(d);
      }
      CHECK(k_bound(artificial("T", DegreeSet::closure_of(sub)), cd(t)) >= k);
    }
  }
}

TEST_CASE("socle_eliminate examples") {
  const auto a6 = socle_eliminate(profile(catalog(), "A6"), cd("M22:2"));
  REQUIRE(a6);
  CHECK(a6->field("psi") == std::vector<Int>{5});
  CHECK(a6->field("products") == std::vector<Int>{5, 10, 20});
  const auto l28 = socle_eliminate(profile(catalog(), "L2(8)"), cd("M22:2"));
  REQUIRE(l28);
  CHECK(l28->field("psi") == std::vector<Int>{8});
  CHECK(l28->field("products") == std::vector<Int>{8, 24});
  CHECK_FALSE(socle_eliminate(profile(catalog(), "M22"), cd("M22:2")));
  // A preferred psi is used when it works, ignored otherwise.
  CHECK(socle_eliminate(profile(catalog(), "A5"), cd("M22:2"), "", 5)->field("psi") == std::vector<Int>{5});
  CHECK(socle_eliminate(profile(catalog(), "A5"), cd("M22:2"), "", 4)->field("psi") == std::vector<Int>{4});
  CHECK(socle_eliminate(profile(catalog(), "A5"), cd("M22:2"), "", 1)->field("psi") == std::vector<Int>{3});
  CHECK_THROWS_AS(socle_eliminate(profile(catalog(), "U5(2)"), cd("M22:2")), DataError);
}

TEST_CASE("maximal_index_quotients examples") {
  const auto m12 = maximal_index_quotients(profile(catalog(), "M12"), cd("M12:2"));
  REQUIRE(m12.size() == 3);
  CHECK(m12[0].subgroup->name == "M11");
  CHECK(m12[0].quotients == std::vector<Int>{10, 12});
  CHECK(m12[1].subgroup->name == "M10:2");
  CHECK(m12[1].quotients == std::vector<Int>{1});
  CHECK(m12[2].subgroup->name == "L2(11)");
  CHECK(m12[2].quotients == std::vector<Int>{1});

  const auto m22 = maximal_index_quotients(profile(catalog(), "M22"), cd("M22:2"));
  REQUIRE(m22.size() == 3);
  CHECK(m22[0].subgroup->name == "L3(4)");
  for (Int q : m22[0].quotients) CHECK(7 % q == 0);
  CHECK(m22[1].subgroup->name == "2^4:A6");
  for (Int q : m22[1].quotients) CHECK((q == 1 || q == 2 || q == 3 || q == 5));
  CHECK(m22[2].subgroup->name == "2^4:S5");
  CHECK(m22[2].quotients == std::vector<Int>{1});

  CHECK_THROWS_AS(maximal_index_quotients(profile(catalog(), "M11"), cd("M11")), DataError);
}

TEST_CASE("maximal_index_quotients times index lands in the host set") {
  for (const char* h0 : {"M12", "M22"}) {
    for (const char* t : kTargets) {
      for (const auto& q : maximal_index_quotients(profile(catalog(), h0), cd(t))) {
        for (Int x : q.quotients) CHECK(cd(t).contains(x * q.subgroup->index));
      }
    }
  }
}

TEST_CASE("product_nonmember examples") {
  const std::vector<Int> a{12, 55, 1}, b{22, 64}, c{1};
  CHECK(product_nonmember(a, cd("M12:2").values()));
  CHECK(product_nonmember(b, cd("M22:2").values()));
  CHECK_FALSE(product_nonmember(c, cd("M22:2").values()));
  const std::vector<Int> huge{INT64_MAX / 2, 3};
  CHECK_THROWS_AS(product_nonmember(huge, cd("M22:2").values()), std::overflow_error);
  CHECK_THROWS(product_nonmember(std::vector<Int>{}, cd("M22:2").values()));
}

TEST_CASE("cover_eliminate examples") {
  const auto& m22 = profile(catalog(), "M22");
  CHECK(cover_eliminate(m22, *m22.find_cover(2), cd("M22:2")));
  CHECK(cover_eliminate(m22, *m22.find_cover(3), cd("M22:2")));
  const auto& m12 = profile(catalog(), "M12");
  const auto w = cover_eliminate(m12, *m12.find_cover(2), cd("M12"));
  REQUIRE(w);
  CHECK(w->field("witness") == std::vector<Int>{32});
  CoverRecord bad{2, 11, "M12"};
  CHECK_FALSE(cover_eliminate(m12, bad, cd("M12")));
}

TEST_CASE("odd_parity_eliminate examples") {
  CHECK(odd_parity_eliminate(std::vector<Int>{3, 5}));
  CHECK_FALSE(odd_parity_eliminate(std::vector<Int>{3, 4}));
  CHECK_FALSE(odd_parity_eliminate(std::vector<Int>{1, 3}));
}

TEST_CASE("overflow_check examples") {
  const auto m12 = overflow_check(cd("M12"), cd("M12:2"));
  REQUIRE(m12);
  CHECK(m12->field("bound") == std::vector<Int>{352});
  const auto m22 = overflow_check(cd("M22"), cd("M22:2"));
  REQUIRE(m22);
  CHECK(m22->field("bound") == std::vector<Int>{770});
  CHECK_FALSE(overflow_check(DegreeSet{1, 2}, DegreeSet{1, 2, 4}));
}

TEST_CASE("distinguishing_degree examples") {
  // Least element of the difference {22, 32, 110}; the report names 32.
  CHECK(distinguishing_degree(cd("M12:2"), cd("M12")) == 22);
  CHECK(distinguishing_degree(cd("M22:2"), cd("M22")) == 560);
  CHECK(distinguishing_degree(cd("M22"), cd("M22")) == std::nullopt);
}
