#include "huppert/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "huppert/degreelogic.hpp"
#include "huppert/report.hpp"
#include "huppert/verifier.hpp"

namespace huppert {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
  std::string format = "text";
  std::string dataset = "builtin:mathieu";
  std::string group;
  std::string file;
};

std::string join(std::span<const Int> values) {
  std::string out;
  for (Int v : values) out += (out.empty() ? "" : ", ") + std::to_string(v);
  return out;
}

nlohmann::ordered_json profile_json(const GroupProfile& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name;
  if (g.order) j["order"] = *g.order;
  if (g.degrees) j["degrees"] = std::vector<Int>(g.degrees->begin(), g.degrees->end());
  if (g.witness_degrees) j["witness_degrees"] = std::vector<Int>(g.witness_degrees->begin(), g.witness_degrees->end());
  j["out_order"] = g.out_order;
  j["schur_multiplier_order"] = g.schur_multiplier_order;
  j["socle"] = g.socle;
  if (!g.overgroups.empty()) j["overgroups"] = g.overgroups;
  if (g.max_subgroups) {
    j["max_subgroups"] = nlohmann::ordered_json::array();
    for (const auto& m : *g.max_subgroups) {
      nlohmann::ordered_json jm;
      jm["name"] = m.name;
      jm["index"] = m.index;
      if (m.order) jm["order"] = *m.order;
      jm["facts"] = nlohmann::ordered_json::array();
      for (const auto& f : m.facts) jm["facts"].push_back({{"tag", f.tag}, {"args", f.args}, {"source", f.source}});
      j["max_subgroups"].push_back(std::move(jm));
    }
  }
  if (!g.covers.empty()) {
    j["covers"] = nlohmann::ordered_json::array();
    for (const auto& c : g.covers) {
      j["covers"].push_back(
          {{"multiplier", c.multiplier}, {"witness_degree", c.witness_degree}, {"reference_set", c.reference_set}});
    }
  }
  j["source"] = g.source;
  return j;
}

void print_profile_text(const GroupProfile& g, std::ostream& out) {
  out << g.name << "\n";
  if (g.order) out << "  order: " << *g.order << "\n";
  if (g.degrees) out << "  degrees: " << join(g.degrees->values()) << "\n";
  if (g.witness_degrees) out << "  witness degrees: " << join(g.witness_degrees->values()) << "\n";
  out << "  |Out|: " << g.out_order << "\n";
  out << "  Schur multiplier order: " << g.schur_multiplier_order << "\n";
  if (g.socle != g.name) out << "  socle: " << g.socle << "\n";
  if (!g.overgroups.empty()) {
    out << "  overgroups:";
    for (const auto& o : g.overgroups) out << " " << o;
    out << "\n";
  }
  if (g.max_subgroups) {
    out << "  maximal subgroups:\n";
    for (const auto& m : *g.max_subgroups) {
      out << "    " << m.name << " index " << m.index << "\n";
      for (const auto& f : m.facts) out << "      " << f.tag << " [" << join(f.args) << "] (" << f.source << ")\n";
    }
  }
  for (const auto& c : g.covers) {
    out << "  cover " << c.multiplier << "." << g.name << ": degree " << c.witness_degree << " vs " << c.reference_set
        << "\n";
  }
  out << "  source: " << g.source << "\n";
}

int cmd_info(const Catalog& cat, const Options& o, std::ostream& out) {
  const GroupProfile& g = profile(cat, o.group);
  if (o.format == "json") {
    out << profile_json(g).dump(2) << "\n";
  } else {
    print_profile_text(g, out);
  }
  return kOk;
}

int cmd_table1(const Catalog& cat, const Options& o, std::ostream& out) {
  const GroupProfile& h = profile(cat, o.group);
  if (!h.degrees) throw DataError(DataErrorKind::Unusable, h.name + " has no full degree set");
  const auto spectrum = prime_spectrum(h.degrees->values());
  const Table1Row row = table1_row(h, pool_for(cat, spectrum), cat);
  if (o.format == "json") {
    out << to_json(row).dump(2) << "\n";
  } else {
    out << render_text(row);
  }
  return kOk;
}

int cmd_verify(const Catalog& cat, const Options& o, std::ostream& out) {
  const VerificationReport report = verify(cat, o.group);
  if (o.format == "json") {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << render_text(report);
  }
  return report.overall() == StepStatus::Pass ? kOk : kFail;
}

int cmd_recheck(const Catalog& cat, const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.file, std::ios::binary);
  if (!in) {
    err << "cannot open report file " << o.file << "\n";
    return kUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const VerificationReport report = report_from_text(buf.str());
  RecheckResult result;
  try {
    result = recheck(report, cat);
  } catch (const FingerprintMismatch& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["target"] = report.target;
    j["recheck"] = result.ok ? "PASS" : "FAIL";
    j["problems"] = result.problems;
    out << j.dump(2) << "\n";
  } else {
    out << "recheck " << report.target << ": " << (result.ok ? "PASS" : "FAIL") << "\n";
    for (const auto& p : result.problems) out << "  " << p << "\n";
  }
  return result.ok ? kOk : kFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks character-degree arithmetic for almost simple Mathieu groups", "huppert"};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--dataset", o.dataset, "Dataset file (default: the built-in dataset)");

  auto* info = app.add_subcommand("info", "Print a group profile");
  info->add_option("group", o.group, "Group name")->required();
  auto* table1 = app.add_subcommand("table1", "Candidate simple groups whose degrees divide the target's");
  table1->add_option("group", o.group, "Target group")->required();
  auto* verify_cmd = app.add_subcommand("verify", "Run the five steps for a target");
  verify_cmd->add_option("group", o.group, "Target group")->required();
  auto* recheck_cmd = app.add_subcommand("recheck", "Re-validate a saved JSON report");
  recheck_cmd->add_option("file", o.file, "Report file")->required();
  auto* export_cmd = app.add_subcommand("export-dataset", "Print the dataset JSON");
  for (auto* sub : {info, table1, verify_cmd, recheck_cmd, export_cmd}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kEngineVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    const Catalog cat = load_dataset(o.dataset);
    if (*info) return cmd_info(cat, o, out);
    if (*table1) return cmd_table1(cat, o, out);
    if (*verify_cmd) return cmd_verify(cat, o, out);
    if (*recheck_cmd) return cmd_recheck(cat, o, out, err);
    out << cat.text();
    if (!cat.text().empty() && cat.text().back() != '\n') out << "\n";
    return kOk;
  } catch (const DataError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace huppert
