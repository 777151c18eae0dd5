#include <algorithm>

#include "doctest.h"
#include "huppert/report.hpp"
#include "huppert/verifier.hpp"
#include "support.hpp"

using namespace huppert;
using test_support::catalog;

namespace {

const std::vector<const char*> kTargets{"M11", "M12", "M12:2", "M22", "M22:2", "M23", "M24"};

const EliminationWitness* find_rule(const StepResult& s, Rule rule) {
  for (const auto& w : s.witnesses) {
    if (w.rule == rule) return &w;
  }
  return nullptr;
}

Catalog without_certificates() {
  auto doc = test_support::dataset_json();
  doc.erase("certificates");
  return parse_catalog(doc.dump());
}

}  // namespace

TEST_CASE("M12:2 passes all five steps") {
  const auto r = verify(catalog(), "M12:2");
  REQUIRE(r.steps.size() == 5);
  for (const auto& s : r.steps) CHECK(s.status == StepStatus::Pass);
  CHECK(r.overall() == StepStatus::Pass);
  CHECK(r.socle == "M12");
  const auto* d = find_rule(r.steps[4], Rule::Distinguishing);
  REQUIRE(d);
  CHECK(d->field("degree") == std::vector<Int>{32});
  CHECK(d->field("least") == std::vector<Int>{22});
}

TEST_CASE("M22:2 passes all five steps") {
  const auto r = verify(catalog(), "M22:2");
  for (const auto& s : r.steps) CHECK(s.status == StepStatus::Pass);
  CHECK(r.table1_row == std::vector<std::string>{"A5", "A6", "A7", "L2(7)", "L2(8)", "M22"});
  const auto* d = find_rule(r.steps[4], Rule::Distinguishing);
  REQUIRE(d);
  CHECK(d->field("degree") == std::vector<Int>{560});
}

TEST_CASE("step 2 leaves exactly the socle") {
  for (const char* t : {"M12:2", "M22:2"}) {
    const auto r = verify(catalog(), t);
    std::vector<std::string> left;
    for (const auto& name : r.table1_row) {
      const bool gone = std::any_of(r.steps[1].witnesses.begin(), r.steps[1].witnesses.end(), [&](const auto& w) {
        return w.rule == Rule::OutProduct && w.ref_or_empty("candidate") == name;
      });
      if (!gone) left.push_back(name);
    }
    CHECK(left == std::vector<std::string>{r.socle});
  }
}

TEST_CASE("socle targets never fabricate a step 3 certificate") {
  for (const char* t : {"M11", "M12", "M22", "M23", "M24"}) {
    const auto r = verify(catalog(), t);
    CHECK(r.steps[0].status == StepStatus::Pass);
    CHECK(r.steps[1].status == StepStatus::Pass);
    CHECK(r.steps[2].status == StepStatus::DataMissing);
    for (const auto& s : r.steps) CHECK(s.status != StepStatus::Fail);
    CHECK(r.overall() == StepStatus::DataMissing);
  }
}

TEST_CASE("missing certificate or cover entries give DATA_MISSING") {
  const auto bare = without_certificates();
  CHECK(verify(bare, "M12:2").steps[2].status == StepStatus::DataMissing);

  auto doc = test_support::dataset_json();
  auto& script = doc["certificates"]["M22:2"]["step3"];
  script.erase(script.size() - 1);
  const auto r = verify(parse_catalog(doc.dump()), "M22:2");
  CHECK(r.steps[2].status == StepStatus::DataMissing);
  CHECK(r.overall() != StepStatus::Pass);
}

TEST_CASE("a failing certificate check fails step 3") {
  auto doc = test_support::dataset_json();
  for (auto& c : doc["certificates"]["M12:2"]["step3"]) {
    if (c["check"] == "product_nonmember" && c["subgroup"] == "M10:2") c["args"]["factors"] = {66, 1};
  }
  CHECK(verify(parse_catalog(doc.dump()), "M12:2").steps[2].status == StepStatus::Fail);
}

TEST_CASE("a step 5 certificate degree must separate the groups") {
  auto doc = test_support::dataset_json();
  doc["certificates"]["M12:2"]["step5"]["M12"] = 45;
  CHECK(verify(parse_catalog(doc.dump()), "M12:2").steps[4].status == StepStatus::Fail);
  doc["certificates"]["M12:2"].erase("step5");
  const auto r = verify(parse_catalog(doc.dump()), "M12:2");
  CHECK(r.steps[4].status == StepStatus::Pass);
  CHECK(r.steps[4].witnesses[0].field("degree") == std::vector<Int>{22});
}

TEST_CASE("PASS steps carry witnesses and only recorded assumptions") {
  for (const char* t : kTargets) {
    const auto r = verify(catalog(), t);
    for (const auto& s : r.steps) {
      if (s.status == StepStatus::Pass) CHECK_FALSE(s.witnesses.empty());
      for (const auto& a : s.assumptions) {
        const auto* sub = profile(catalog(), a.owner).find_subgroup(a.subgroup);
        REQUIRE(sub);
        const auto* fact = sub->find_fact(a.tag);
        REQUIRE(fact);
        CHECK(fact->args == a.args);
        CHECK(fact->source == a.source);
      }
    }
  }
  const auto r = verify(catalog(), "M22:2");
  CHECK(r.steps[2].assumptions.size() == 4);
}

TEST_CASE("recheck round-trips through JSON for every target") {
  for (const char* t : kTargets) {
    const auto r = verify(catalog(), t);
    const auto back = report_from_text(to_json(r).dump(2));
    CHECK(back == r);
    const auto result = recheck(back, catalog());
    INFO(t);
    for (const auto& p : result.problems) INFO(p);
    CHECK(result.ok);
  }
}

TEST_CASE("recheck refuses a modified catalog") {
  const auto r = verify(catalog(), "M22:2");
  CHECK_THROWS_AS(recheck(r, without_certificates()), FingerprintMismatch);
}

TEST_CASE("recheck catches structural tampering") {
  auto r = verify(catalog(), "M12:2");
  auto dropped = r;
  auto& ws = dropped.steps[0].witnesses;
  ws.erase(ws.begin() + 1);
  CHECK_FALSE(recheck(dropped, catalog()).ok);

  auto emptied = r;
  emptied.steps[3].witnesses.clear();
  CHECK_FALSE(recheck(emptied, catalog()).ok);

  auto renamed = r;
  renamed.table1_row.pop_back();
  CHECK_FALSE(recheck(renamed, catalog()).ok);

  auto assumed = r;
  assumed.steps[2].assumptions[0].source = "made up";
  CHECK_FALSE(recheck(assumed, catalog()).ok);

  auto doc = to_json(r);
  doc["overall"] = "FAIL";
  CHECK_THROWS_AS(report_from_json(doc), DataError);
}

TEST_CASE("verify is deterministic") {
  for (const char* t : kTargets) {
    CHECK(to_json(verify(catalog(), t)).dump() == to_json(verify(catalog(), t)).dump());
    const auto fresh = load_dataset("mathieu");
    CHECK(to_json(verify(fresh, t)).dump() == to_json(verify(catalog(), t)).dump());
  }
}

TEST_CASE("verify rejects targets it cannot use") {
  CHECK_THROWS_AS(verify(catalog(), "NoSuchGroup"), DataError);
  CHECK_THROWS_AS(verify(catalog(), "U5(2)"), DataError);
}
