#include "huppert/report.hpp"

#include <sstream>

namespace huppert {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw DataError(DataErrorKind::ParseError, "report: " + message);
}

const ordered_json& at(const ordered_json& obj, const char* key) {
  if (!obj.is_object()) bad(std::string("expected an object around \"") + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing key \"") + key + "\"");
  return *it;
}

std::string str(const ordered_json& v, const char* what) {
  if (!v.is_string()) bad(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::vector<Int> ints(const ordered_json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array");
  std::vector<Int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) bad(what + " must hold integers");
    if (e.is_number_unsigned() && e.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      bad(what + " holds an out-of-range integer");
    }
    out.push_back(e.get<Int>());
  }
  return out;
}

std::vector<std::string> strings(const ordered_json& v, const char* what) {
  if (!v.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(str(e, what));
  return out;
}

std::string join(const std::vector<Int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + std::to_string(values[i]);
  return out + "]";
}

std::string join(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + values[i];
  return out;
}

EliminationWitness witness_from_json(const ordered_json& j) {
  auto rule = rule_from_string(str(at(j, "rule"), "rule"));
  if (!rule) bad("unknown rule " + j.at("rule").get<std::string>());
  EliminationWitness w(*rule);
  const auto& refs = at(j, "refs");
  if (!refs.is_object()) bad("refs must be an object");
  for (const auto& [k, v] : refs.items()) w.ref(k, str(v, "ref"));
  const auto& payload = at(j, "payload");
  if (!payload.is_object()) bad("payload must be an object");
  for (const auto& [k, v] : payload.items()) w.add(k, ints(v, "payload." + k));
  return w;
}

}  // namespace

ordered_json to_json(const EliminationWitness& w) {
  ordered_json j;
  j["rule"] = to_string(w.rule);
  j["refs"] = ordered_json::object();
  for (const auto& [k, v] : w.refs) j["refs"][k] = v;
  j["payload"] = ordered_json::object();
  for (const auto& f : w.payload) j["payload"][f.name] = f.values;
  return j;
}

ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["engine_version"] = r.engine_version;
  j["dataset_fingerprint"] = r.dataset_fingerprint;
  j["target"] = r.target;
  j["socle"] = r.socle;
  j["overall"] = to_string(r.overall());
  j["table1_row"] = r.table1_row;
  j["steps"] = ordered_json::array();
  for (const auto& s : r.steps) {
    ordered_json js;
    js["step"] = s.step;
    js["status"] = to_string(s.status);
    js["witnesses"] = ordered_json::array();
    for (const auto& w : s.witnesses) js["witnesses"].push_back(to_json(w));
    js["assumptions"] = ordered_json::array();
    for (const auto& a : s.assumptions) {
      js["assumptions"].push_back(
          {{"owner", a.owner}, {"subgroup", a.subgroup}, {"tag", a.tag}, {"args", a.args}, {"source", a.source}});
    }
    js["notes"] = s.notes;
    j["steps"].push_back(std::move(js));
  }
  return j;
}

ordered_json to_json(const Table1Row& row) {
  ordered_json j;
  j["target"] = row.target;
  j["accepted"] = row.accepted();
  j["candidates"] = ordered_json::array();
  for (const auto& v : row.verdicts) {
    ordered_json c;
    c["name"] = v.name;
    c["verdict"] = v.accepted ? "accepted" : "rejected";
    if (!v.accepted) c["witness_degree"] = v.failing.front();
    c["failing_degrees"] = v.failing;
    j["candidates"].push_back(std::move(c));
  }
  return j;
}

VerificationReport report_from_json(const ordered_json& j) {
  VerificationReport r;
  r.engine_version = str(at(j, "engine_version"), "engine_version");
  r.dataset_fingerprint = str(at(j, "dataset_fingerprint"), "dataset_fingerprint");
  r.target = str(at(j, "target"), "target");
  r.socle = str(at(j, "socle"), "socle");
  r.table1_row = strings(at(j, "table1_row"), "table1_row");
  const auto& steps = at(j, "steps");
  if (!steps.is_array()) bad("steps must be an array");
  for (const auto& js : steps) {
    StepResult s;
    const auto& step = at(js, "step");
    if (!step.is_number_integer()) bad("step must be an integer");
    s.step = step.get<int>();
    auto status = step_status_from_string(str(at(js, "status"), "status"));
    if (!status) bad("unknown step status");
    s.status = *status;
    const auto& ws = at(js, "witnesses");
    if (!ws.is_array()) bad("witnesses must be an array");
    for (const auto& w : ws) s.witnesses.push_back(witness_from_json(w));
    const auto& as = at(js, "assumptions");
    if (!as.is_array()) bad("assumptions must be an array");
    for (const auto& a : as) {
      s.assumptions.push_back({str(at(a, "owner"), "owner"), str(at(a, "subgroup"), "subgroup"),
                               str(at(a, "tag"), "tag"), ints(at(a, "args"), "args"),
                               str(at(a, "source"), "source")});
    }
    s.notes = strings(at(js, "notes"), "notes");
    r.steps.push_back(std::move(s));
  }
  // The stored overall verdict must agree with the step statuses.
  if (str(at(j, "overall"), "overall") != to_string(r.overall())) bad("overall verdict disagrees with the steps");
  return r;
}

VerificationReport report_from_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    bad(e.what());
  }
  return report_from_json(j);
}

std::string render_text(const EliminationWitness& w) {
  std::ostringstream out;
  out << to_string(w.rule);
  for (const auto& [k, v] : w.refs) out << " " << k << "=" << (v.empty() ? "-" : v);
  for (const auto& f : w.payload) out << "\n      " << f.name << " " << join(f.values);
  return out.str();
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "target " << r.target << " (socle " << r.socle << ")\n";
  out << "engine " << r.engine_version << ", dataset " << r.dataset_fingerprint << "\n";
  out << "table 1 row: " << join(r.table1_row) << "\n";
  for (const auto& s : r.steps) {
    out << "step " << s.step << ": " << to_string(s.status) << "\n";
    for (const auto& w : s.witnesses) out << "    " << render_text(w) << "\n";
    for (const auto& a : s.assumptions) {
      out << "    assumes " << a.owner << "/" << a.subgroup << " " << a.tag << " " << join(a.args) << " (" << a.source
          << ")\n";
    }
    for (const auto& n : s.notes) out << "    note: " << n << "\n";
  }
  out << "overall: " << to_string(r.overall()) << "\n";
  return out.str();
}

std::string render_text(const Table1Row& row) {
  std::ostringstream out;
  out << "table 1 row for " << row.target << ": " << join(row.accepted()) << "\n";
  for (const auto& v : row.verdicts) {
    out << "  " << v.name << ": " << (v.accepted ? "accepted" : "rejected");
    if (!v.accepted) out << ", witness degree " << v.failing.front() << ", failing " << join(v.failing);
    out << "\n";
  }
  return out.str();
}

}  // namespace huppert
