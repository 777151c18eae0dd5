#include "huppert/groupdata.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace huppert {

using nlohmann::json;

std::string_view to_string(DataErrorKind kind) {
  switch (kind) {
    case DataErrorKind::ParseError: return "PARSE_ERROR";
    case DataErrorKind::ValidationError: return "VALIDATION_ERROR";
    case DataErrorKind::DanglingReference: return "DANGLING_REFERENCE";
    case DataErrorKind::NotFound: return "NOT_FOUND";
    case DataErrorKind::NoPool: return "NO_POOL";
    case DataErrorKind::Unusable: return "UNUSABLE";
  }
  return "UNKNOWN";
}

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::ProductNonmember: return "product_nonmember";
    case CheckKind::Cover: return "cover";
    case CheckKind::OddParity: return "odd_parity";
    case CheckKind::Fact: return "fact";
  }
  return "unknown";
}

const StructuralFact* MaximalSubgroupRecord::find_fact(std::string_view tag) const {
  auto it = std::find_if(facts.begin(), facts.end(), [&](const StructuralFact& f) { return f.tag == tag; });
  return it == facts.end() ? nullptr : &*it;
}

const DegreeSet& GroupProfile::available_degrees() const {
  if (degrees) return *degrees;
  return *witness_degrees;
}

const MaximalSubgroupRecord* GroupProfile::find_subgroup(std::string_view subgroup) const {
  if (!max_subgroups) return nullptr;
  auto it = std::find_if(max_subgroups->begin(), max_subgroups->end(),
                         [&](const MaximalSubgroupRecord& m) { return m.name == subgroup; });
  return it == max_subgroups->end() ? nullptr : &*it;
}

const CoverRecord* GroupProfile::find_cover(Int multiplier) const {
  auto it = std::find_if(covers.begin(), covers.end(), [&](const CoverRecord& c) { return c.multiplier == multiplier; });
  return it == covers.end() ? nullptr : &*it;
}

namespace {

// Strict reader: every accessor records the JSON path so errors name the
// offending field, and unknown keys are rejected.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& node() const { return node_; }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!node_.is_object()) fail("expected an object");
    for (const auto& [key, value] : node_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw DataError(DataErrorKind::ParseError, path_ + ": unknown key \"" + key + "\"");
      }
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  Reader child(const char* key) const {
    if (!node_.contains(key)) fail(std::string("missing required key \"") + key + "\"");
    return Reader(node_.at(key), path_ + "." + key);
  }

  std::vector<Reader> elements() const {
    if (!node_.is_array()) fail("expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < node_.size(); ++i) out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  std::string str() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  Int integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    if (node_.is_number_unsigned() && node_.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail("integer out of range");
    }
    return node_.get<Int>();
  }

  std::vector<Int> integers() const {
    std::vector<Int> out;
    for (const auto& e : elements()) out.push_back(e.integer());
    return out;
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& e : elements()) out.push_back(e.str());
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DataError(DataErrorKind::ParseError, path_ + ": " + message);
  }

 private:
  const json& node_;
  std::string path_;
};

[[noreturn]] void invalid(const std::string& message) { throw DataError(DataErrorKind::ValidationError, message); }

DegreeSet read_degree_set(const Reader& r, const std::string& group) {
  auto values = r.integers();
  for (Int v : values) {
    if (v < 1) invalid(group + ": " + r.path() + " contains non-positive degree " + std::to_string(v));
  }
  try {
    return DegreeSet(std::move(values));
  } catch (const std::invalid_argument& e) {
    invalid(group + ": " + r.path() + ": " + e.what());
  }
}

Int positive(const Reader& r, const std::string& what) {
  Int v = r.integer();
  if (v < 1) invalid(what + ": " + r.path() + " must be positive");
  return v;
}

StructuralFact read_fact(const Reader& r) {
  r.expect_object({"tag", "args", "source"});
  StructuralFact f;
  f.tag = r.child("tag").str();
  f.args = r.child("args").integers();
  f.source = r.child("source").str();
  if (f.source.empty()) invalid(r.path() + ": fact " + f.tag + " has an empty source");
  return f;
}

MaximalSubgroupRecord read_subgroup(const Reader& r, const std::string& owner) {
  r.expect_object({"name", "index", "order", "facts"});
  MaximalSubgroupRecord m;
  m.name = r.child("name").str();
  m.index = r.child("index").integer();
  if (m.index < 2) invalid(owner + ": maximal subgroup " + m.name + " has index below 2");
  if (r.has("order")) m.order = positive(r.child("order"), owner + "/" + m.name);
  for (const auto& f : r.child("facts").elements()) m.facts.push_back(read_fact(f));
  return m;
}

CoverRecord read_cover(const Reader& r) {
  r.expect_object({"multiplier", "witness_degree", "reference_set"});
  CoverRecord c;
  c.multiplier = r.child("multiplier").integer();
  c.witness_degree = r.child("witness_degree").integer();
  c.reference_set = r.child("reference_set").str();
  return c;
}

GroupProfile read_profile(const Reader& r) {
  r.expect_object({"name", "order", "degrees", "witness_degrees", "out_order", "schur_multiplier_order",
                   "max_subgroups", "covers", "socle", "overgroups", "source"});
  GroupProfile g;
  g.name = r.child("name").str();
  if (g.name.empty()) invalid(r.path() + ": empty group name");
  if (r.has("order")) g.order = positive(r.child("order"), g.name);
  if (r.has("degrees")) g.degrees = read_degree_set(r.child("degrees"), g.name);
  if (r.has("witness_degrees")) g.witness_degrees = read_degree_set(r.child("witness_degrees"), g.name);
  g.out_order = r.child("out_order").integer();
  g.schur_multiplier_order = r.child("schur_multiplier_order").integer();
  if (r.has("max_subgroups")) {
    std::vector<MaximalSubgroupRecord> subs;
    for (const auto& m : r.child("max_subgroups").elements()) subs.push_back(read_subgroup(m, g.name));
    g.max_subgroups = std::move(subs);
  }
  if (r.has("covers")) {
    for (const auto& c : r.child("covers").elements()) g.covers.push_back(read_cover(c));
  }
  g.socle = r.has("socle") ? r.child("socle").str() : g.name;
  if (r.has("overgroups")) g.overgroups = r.child("overgroups").strings();
  g.source = r.child("source").str();
  return g;
}

CandidatePool read_pool(const Reader& r) {
  r.expect_object({"prime_spectrum", "members", "source"});
  CandidatePool p;
  p.prime_spectrum = r.child("prime_spectrum").integers();
  p.members = r.child("members").strings();
  p.source = r.child("source").str();
  return p;
}

CertificateCheck read_check(const Reader& r) {
  r.expect_object({"check", "subgroup", "args", "note"});
  CertificateCheck c;
  const std::string kind = r.child("check").str();
  if (r.has("subgroup")) c.subgroup = r.child("subgroup").str();
  c.note = r.child("note").str();
  const Reader args = r.child("args");
  if (kind == "product_nonmember") {
    c.kind = CheckKind::ProductNonmember;
    args.expect_object({"factors", "reference", "tau", "tau_group"});
    c.factors = args.child("factors").integers();
    if (c.factors.empty()) invalid(args.path() + ": product_nonmember needs at least one factor");
    c.reference = args.child("reference").str();
    if (args.has("tau")) {
      c.tau = args.child("tau").integer();
      c.tau_group = args.child("tau_group").str();
    }
  } else if (kind == "cover") {
    c.kind = CheckKind::Cover;
    args.expect_object({"multiplier"});
    c.multiplier = args.child("multiplier").integer();
  } else if (kind == "odd_parity") {
    c.kind = CheckKind::OddParity;
    args.expect_object({"values"});
    c.values = args.child("values").integers();
    if (c.values.empty()) invalid(args.path() + ": odd_parity needs at least one value");
  } else if (kind == "fact") {
    c.kind = CheckKind::Fact;
    args.expect_object({"owner", "tag", "args"});
    c.owner = args.child("owner").str();
    c.tag = args.child("tag").str();
    if (args.has("args")) c.fact_args = args.child("args").integers();
  } else {
    r.child("check").fail("unknown check kind \"" + kind + "\"");
  }
  return c;
}

Certificate read_certificate(const Reader& r, const std::string& target) {
  r.expect_object({"step2", "step3", "step5"});
  Certificate cert;
  cert.target = target;
  if (r.has("step2")) {
    const Reader s2 = r.child("step2");
    if (!s2.node().is_object()) s2.fail("expected an object");
    for (const auto& [name, value] : s2.node().items()) {
      cert.step2_psi[name] = Reader(value, s2.path() + "." + name).integer();
    }
  }
  for (const auto& c : r.child("step3").elements()) cert.step3.push_back(read_check(c));
  if (r.has("step5")) {
    const Reader s5 = r.child("step5");
    if (!s5.node().is_object()) s5.fail("expected an object");
    for (const auto& [name, value] : s5.node().items()) {
      cert.step5_degree[name] = Reader(value, s5.path() + "." + name).integer();
    }
  }
  return cert;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '_') continue;
    if (c == '.') c = ':';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

const GroupProfile* Catalog::find(std::string_view name) const {
  auto it = std::find_if(groups_.begin(), groups_.end(), [&](const GroupProfile& g) { return g.name == name; });
  return it == groups_.end() ? nullptr : &*it;
}

const Certificate* Catalog::certificate(std::string_view target) const {
  auto it = certificates_.find(std::string(target));
  return it == certificates_.end() ? nullptr : &it->second;
}

const GroupProfile* Catalog::resolve(std::string_view user_name) const {
  if (const auto* exact = find(user_name)) return exact;
  const std::string key = normalize_name(user_name);
  const GroupProfile* hit = nullptr;
  for (const auto& g : groups_) {
    if (normalize_name(g.name) != key) continue;
    if (hit) return nullptr;
    hit = &g;
  }
  return hit;
}

std::vector<std::string> Catalog::near_misses(std::string_view user_name) const {
  const std::string key = normalize_name(user_name);
  std::vector<std::string> out;
  for (const auto& g : groups_) {
    const std::string other = normalize_name(g.name);
    if (edit_distance(key, other) <= 2 || (!key.empty() && other.starts_with(key))) out.push_back(g.name);
  }
  return out;
}

Catalog parse_catalog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw DataError(DataErrorKind::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }

  Catalog cat;
  const Reader root(doc, "$");
  root.expect_object({"groups", "pools", "certificates"});
  for (const auto& g : root.child("groups").elements()) cat.groups_.push_back(read_profile(g));
  for (const auto& p : root.child("pools").elements()) cat.pools_.push_back(read_pool(p));
  if (root.has("certificates")) {
    const Reader certs = root.child("certificates");
    if (!certs.node().is_object()) certs.fail("expected an object");
    for (const auto& [target, value] : certs.node().items()) {
      cat.certificates_[target] = read_certificate(Reader(value, certs.path() + "." + target), target);
    }
  }

  // Record invariants.
  std::set<std::string> names;
  for (const auto& g : cat.groups_) {
    if (!names.insert(g.name).second) invalid("duplicate group profile " + g.name);
    if (!g.degrees && !g.witness_degrees) invalid(g.name + ": needs degrees or witness_degrees");
    if (g.degrees && g.witness_degrees && !g.witness_degrees->is_subset_of(*g.degrees)) {
      invalid(g.name + ": witness_degrees is not a subset of degrees");
    }
    if (g.out_order < 1) invalid(g.name + ": out_order must be at least 1");
    if (g.schur_multiplier_order < 1) invalid(g.name + ": schur_multiplier_order must be at least 1");
    if (g.source.empty()) invalid(g.name + ": empty source");
    if (g.order) {
      for (Int d : g.available_degrees()) {
        if (*g.order % d != 0) invalid(g.name + ": degree " + std::to_string(d) + " does not divide the group order");
      }
    }
    if (g.max_subgroups) {
      for (const auto& m : *g.max_subgroups) {
        if (m.order && g.order && checked_mul(*m.order, m.index) != *g.order) {
          invalid(g.name + ": maximal subgroup " + m.name + " has index * order != group order");
        }
      }
    }
    for (const auto& c : g.covers) {
      if (c.multiplier < 2 || g.schur_multiplier_order % c.multiplier != 0) {
        invalid(g.name + ": cover multiplier " + std::to_string(c.multiplier) +
                " does not divide the Schur multiplier order");
      }
      if (c.witness_degree < 1) invalid(g.name + ": cover witness degree must be positive");
    }
  }

  auto need = [&](const std::string& name, const std::string& where) {
    const GroupProfile* g = cat.find(name);
    if (!g) throw DataError(DataErrorKind::DanglingReference, where + " refers to unknown group " + name);
    return g;
  };

  for (const auto& g : cat.groups_) {
    for (const auto& c : g.covers) {
      if (!need(c.reference_set, g.name + " cover")->degrees) {
        invalid(g.name + ": cover reference set " + c.reference_set + " has no full degree set");
      }
    }
    need(g.socle, g.name + " socle");
    for (const auto& o : g.overgroups) need(o, g.name + " overgroups");
  }

  for (const auto& p : cat.pools_) {
    if (!std::is_sorted(p.prime_spectrum.begin(), p.prime_spectrum.end()) ||
        std::adjacent_find(p.prime_spectrum.begin(), p.prime_spectrum.end()) != p.prime_spectrum.end()) {
      invalid("pool spectrum must be strictly ascending");
    }
    for (Int q : p.prime_spectrum) {
      if (!is_prime(q)) invalid("pool spectrum contains non-prime " + std::to_string(q));
    }
    for (const auto& m : p.members) {
      const GroupProfile* g = need(m, "pool member");
      for (Int q : prime_spectrum(g->available_degrees().values())) {
        if (!std::binary_search(p.prime_spectrum.begin(), p.prime_spectrum.end(), q)) {
          invalid("pool member " + m + " has degree prime " + std::to_string(q) + " outside the pool spectrum");
        }
      }
    }
  }

  for (const auto& [target, cert] : cat.certificates_) {
    need(target, "certificate");
    for (const auto& [name, psi] : cert.step2_psi) need(name, "certificate " + target + " step2");
    for (const auto& [name, d] : cert.step5_degree) need(name, "certificate " + target + " step5");
    for (const auto& c : cert.step3) {
      if (c.kind == CheckKind::ProductNonmember) {
        if (!c.reference.starts_with("quotients:")) need(c.reference, "certificate " + target);
        if (c.tau) need(c.tau_group, "certificate " + target);
      }
      if (c.kind == CheckKind::Fact) need(c.owner, "certificate " + target);
    }
  }

  cat.text_ = std::string(text);
  cat.fingerprint_ = fnv1a_hex(doc.dump());
  return cat;
}

Catalog load_dataset(const std::string& path_or_tag) {
  std::string_view tag = path_or_tag;
  if (tag.starts_with("builtin:")) tag.remove_prefix(8);
  if (auto text = builtin_dataset_text(tag); !text.empty()) return parse_catalog(text);
  std::ifstream in(path_or_tag, std::ios::binary);
  if (!in) throw DataError(DataErrorKind::ParseError, "cannot open dataset file " + path_or_tag);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

const GroupProfile& profile(const Catalog& catalog, std::string_view name) {
  if (const auto* g = catalog.resolve(name)) return *g;
  std::string message = "no group named \"" + std::string(name) + "\"";
  const auto near = catalog.near_misses(name);
  if (!near.empty()) {
    message += "; did you mean";
    for (std::size_t i = 0; i < near.size(); ++i) message += (i ? ", " : " ") + near[i];
    message += "?";
  }
  throw DataError(DataErrorKind::NotFound, message);
}

const CandidatePool& pool_for(const Catalog& catalog, std::span<const Int> spectrum) {
  for (const auto& p : catalog.pools()) {
    if (std::equal(p.prime_spectrum.begin(), p.prime_spectrum.end(), spectrum.begin(), spectrum.end())) return p;
  }
  std::string s;
  for (Int q : spectrum) s += (s.empty() ? "" : ",") + std::to_string(q);
  throw DataError(DataErrorKind::NoPool, "no candidate pool for prime spectrum {" + s + "}");
}

}  // namespace huppert
