#include "natlog/io.hpp"

#include <fstream>
#include <sstream>

namespace natlog {

namespace {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad field '") + name + "': " + e.what());
  }
}

RuleId rule_field(const Json& j, const char* name) {
  auto s = field<std::string>(j, name);
  auto r = rule_from_id(s);
  if (!r) throw FormatError("unknown rule '" + s + "'");
  return *r;
}

Sign sign_field(const Json& j) {
  auto s = field<std::string>(j, "sign");
  auto v = sign_from_string(s);
  if (!v) throw FormatError("bad sign '" + s + "'");
  return *v;
}

Json voices_json(const std::optional<VoicePair>& v) {
  if (!v) return nullptr;
  return std::string(to_string(v->lhs)) + "," + std::string(to_string(v->rhs));
}

std::optional<VoicePair> voices_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  auto s = j.get<std::string>();
  auto comma = s.find(',');
  if (comma == std::string::npos) throw FormatError("bad voices '" + s + "'");
  auto a = voice_from_string(s.substr(0, comma));
  auto b = voice_from_string(s.substr(comma + 1));
  if (!a || !b) throw FormatError("bad voices '" + s + "'");
  return VoicePair{*a, *b};
}

Json tree_json(const ProofTree& t, bool labeled, const ProblemText& text) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json n;
    if (labeled) n["id"] = e.id;
    n["text"] = e.text;
    n["machine"] = e.surface.machine();
    n["sign"] = to_string(e.sign);
    if (labeled) {
      n["rule"] = e.rule ? Json(rule_id(*e.rule)) : Json(nullptr);
      n["antecedents"] = e.antecedents;
    }
    entries.push_back(std::move(n));
  }
  j["entries"] = std::move(entries);
  if (t.closure) {
    if (labeled) {
      Json c;
      c["id"] = t.closure->id;
      c["rule"] = rule_id(t.closure->rule);
      c["antecedents"] = t.closure->antecedents;
      Json rels = Json::array();
      for (const auto& r : t.closure->relations) rels.push_back(relation_json(r, text));
      c["relations"] = std::move(rels);
      j["closure"] = std::move(c);
    } else {
      j["closed"] = true;
    }
  }
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(tree_json(c, labeled, text));
  j["children"] = std::move(children);
  return j;
}

ProofTree tree_from_json(const Json& j, bool labeled) {
  ProofTree t;
  for (const auto& n : j.at("entries")) {
    TreeEntry e;
    if (labeled) e.id = field<int>(n, "id");
    e.text = field<std::string>(n, "text");
    if (n.contains("machine")) e.surface = parse_machine(field<std::string>(n, "machine"));
    e.sign = sign_field(n);
    if (labeled) {
      if (!n.at("rule").is_null()) e.rule = rule_field(n, "rule");
      e.antecedents = field<std::vector<int>>(n, "antecedents");
    }
    t.entries.push_back(std::move(e));
  }
  if (labeled && j.contains("closure")) {
    const auto& c = j.at("closure");
    TreeClosure tc;
    tc.id = field<int>(c, "id");
    tc.rule = rule_field(c, "rule");
    tc.antecedents = field<std::vector<int>>(c, "antecedents");
    for (const auto& r : c.at("relations")) tc.relations.push_back(relation_from_json(r));
    t.closure = std::move(tc);
  } else if (!labeled && j.value("closed", false)) {
    t.closure = TreeClosure{};
  }
  for (const auto& c : j.at("children")) t.children.push_back(tree_from_json(c, labeled));
  return t;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

Json config_json(const RunConfig& c) {
  Json j;
  j["budget"] = {{"maxEntries", c.budget.max_entries},
                 {"maxFresh", c.budget.max_fresh},
                 {"maxRuleApplications", c.budget.max_rule_applications}};
  j["kb"] = c.kb;
  return j;
}

NLIProblem problem_from_json(const Json& j) {
  NLIProblem p;
  p.id = field<std::string>(j, "id");
  p.premises = field<std::vector<std::string>>(j, "premises");
  p.hypothesis = field<std::string>(j, "hypothesis");
  if (j.contains("gold") && !j.at("gold").is_null()) {
    auto g = field<std::string>(j, "gold");
    p.gold = label_from_string(g);
    if (!p.gold) throw FormatError("unknown gold label '" + g + "'");
  }
  if (p.premises.empty()) throw FormatError("problem " + p.id + " has no premises");
  return p;
}

Json problem_to_json(const NLIProblem& p) {
  Json j;
  j["id"] = p.id;
  j["premises"] = p.premises;
  j["hypothesis"] = p.hypothesis;
  if (p.gold) j["gold"] = to_string(*p.gold);
  return j;
}

std::vector<NLIProblem> read_corpus(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<NLIProblem> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(problem_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_corpus(const std::filesystem::path& path, const std::vector<NLIProblem>& problems) {
  std::string out;
  for (const auto& p : problems) out += problem_to_json(p).dump() + "\n";
  write_file(path, out);
}

Json surface_json(const SurfaceExpr& s, const ProblemText& text) {
  Json pieces = Json::array();
  for (const auto& piece : s.pieces) {
    if (const auto* a = std::get_if<SpanAnchor>(&piece)) {
      pieces.push_back({{"span", {a->sentence, a->start, a->end}}});
    } else if (const auto* e = std::get_if<EntityPiece>(&piece)) {
      pieces.push_back({{"entity", e->name}});
    } else if (std::holds_alternative<SpacePiece>(piece)) {
      pieces.push_back({{"space", true}});
    } else {
      pieces.push_back({{"lemma", std::get<LemmaPiece>(piece).text}});
    }
  }
  Json j;
  j["pieces"] = std::move(pieces);
  j["machine"] = s.machine();
  j["text"] = render_surface(s, text);
  return j;
}

SurfaceExpr surface_from_json(const Json& j) {
  SurfaceExpr s;
  for (const auto& p : j.at("pieces")) {
    if (p.contains("span")) {
      const auto& a = p.at("span");
      s.pieces.emplace_back(SpanAnchor{a.at(0).get<int>(), a.at(1).get<std::size_t>(), a.at(2).get<std::size_t>()});
    } else if (p.contains("entity")) {
      s.pieces.emplace_back(EntityPiece{p.at("entity").get<std::string>()});
    } else if (p.contains("space")) {
      s.pieces.emplace_back(SpacePiece{});
    } else if (p.contains("lemma")) {
      s.pieces.emplace_back(LemmaPiece{p.at("lemma").get<std::string>()});
    } else {
      throw FormatError("unknown surface piece " + p.dump());
    }
  }
  return s;
}

Json relation_json(const AnchoredRelation& r, const ProblemText& text) {
  Json j;
  j["rel"] = to_string(r.relation.rel);
  j["lhs"] = r.relation.lhs;
  j["rhs"] = r.relation.rhs;
  j["voices"] = voices_json(r.relation.voices);
  j["display"] = r.relation.str();
  j["lhsSurface"] = surface_json(r.lhs, text);
  j["rhsSurface"] = surface_json(r.rhs, text);
  return j;
}

AnchoredRelation relation_from_json(const Json& j) {
  AnchoredRelation r;
  auto rel = field<std::string>(j, "rel");
  auto parsed = relation_from_string(rel);
  if (!parsed) throw FormatError("unknown relation '" + rel + "'");
  r.relation.rel = *parsed;
  r.relation.lhs = field<std::string>(j, "lhs");
  r.relation.rhs = field<std::string>(j, "rhs");
  r.relation.voices = voices_from(j.contains("voices") ? j.at("voices") : Json(nullptr));
  if (j.contains("lhsSurface")) r.lhs = surface_from_json(j.at("lhsSurface"));
  if (j.contains("rhsSurface")) r.rhs = surface_from_json(j.at("rhsSurface"));
  return r;
}

Json proof_to_json(const Proof& p, const RunConfig& config) {
  ProblemText text(p.sentences);
  Json j;
  j["problemId"] = p.problem_id;
  j["searchedRelation"] = p.searched;
  j["problem"] = p.sentences;
  Json nodes = Json::array();
  for (const auto& n : p.nodes) {
    Json o;
    o["id"] = n.id;
    o["surface"] = surface_json(n.surface, text);
    o["sign"] = to_string(n.sign);
    o["segment"] = n.segment;
    o["term"] = n.term;
    o["args"] = n.args;
    Json by;
    by["rule"] = n.rule ? std::string(rule_id(*n.rule)) : std::string("root");
    by["antecedents"] = n.antecedents;
    o["producedBy"] = std::move(by);
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  Json segs = Json::array();
  for (const auto& s : p.segments) {
    Json o;
    o["id"] = s.id;
    o["parent"] = s.parent;
    o["application"] = s.application;
    o["entries"] = s.entries;
    o["children"] = s.children;
    o["closure"] = s.closure ? Json(*s.closure) : Json(nullptr);
    segs.push_back(std::move(o));
  }
  j["segments"] = std::move(segs);
  Json apps = Json::array();
  for (const auto& a : p.applications) {
    Json o;
    o["id"] = a.id;
    o["rule"] = rule_id(a.rule);
    o["antecedents"] = a.antecedents;
    o["segments"] = a.segments;
    o["witness"] = a.witness ? Json(*a.witness) : Json(nullptr);
    apps.push_back(std::move(o));
  }
  j["applications"] = std::move(apps);
  Json closures = Json::array();
  for (const auto& c : p.closures) {
    Json o;
    o["id"] = c.id;
    o["rule"] = rule_id(c.rule);
    o["antecedents"] = c.antecedents;
    o["branch"] = c.segment;
    Json rels = Json::array();
    for (const auto& r : c.relations) rels.push_back(relation_json(r, text));
    o["relations"] = std::move(rels);
    closures.push_back(std::move(o));
  }
  j["closures"] = std::move(closures);
  j["config"] = config_json(config);
  return j;
}

Proof proof_from_json(const Json& j) {
  try {
    Proof p;
    p.problem_id = field<std::string>(j, "problemId");
    p.searched = field<std::string>(j, "searchedRelation");
    p.sentences = field<std::vector<std::string>>(j, "problem");
    for (const auto& o : j.at("nodes")) {
      ProofNode n;
      n.id = field<int>(o, "id");
      n.surface = surface_from_json(o.at("surface"));
      n.text = o.at("surface").at("text").get<std::string>();
      n.sign = sign_field(o);
      n.segment = field<int>(o, "segment");
      n.term = field<std::string>(o, "term");
      n.args = field<std::vector<std::string>>(o, "args");
      const auto& by = o.at("producedBy");
      auto rule = field<std::string>(by, "rule");
      if (rule != "root") n.rule = rule_field(by, "rule");
      n.antecedents = field<std::vector<int>>(by, "antecedents");
      p.nodes.push_back(std::move(n));
    }
    for (const auto& o : j.at("segments")) {
      ProofSegment s;
      s.id = field<int>(o, "id");
      s.parent = field<int>(o, "parent");
      s.application = field<int>(o, "application");
      s.entries = field<std::vector<int>>(o, "entries");
      s.children = field<std::vector<int>>(o, "children");
      if (!o.at("closure").is_null()) s.closure = field<int>(o, "closure");
      if (s.id != static_cast<int>(p.segments.size())) throw FormatError("segments out of order");
      p.segments.push_back(std::move(s));
    }
    for (const auto& o : j.at("applications")) {
      ProofApplication a;
      a.id = field<int>(o, "id");
      a.rule = rule_field(o, "rule");
      a.antecedents = field<std::vector<int>>(o, "antecedents");
      a.segments = field<std::vector<int>>(o, "segments");
      if (!o.at("witness").is_null()) a.witness = field<std::string>(o, "witness");
      p.applications.push_back(std::move(a));
    }
    for (const auto& o : j.at("closures")) {
      ProofClosure c;
      c.id = field<int>(o, "id");
      c.rule = rule_field(o, "rule");
      c.antecedents = field<std::vector<int>>(o, "antecedents");
      c.segment = field<int>(o, "branch");
      for (const auto& r : o.at("relations")) c.relations.push_back(relation_from_json(r));
      p.closures.push_back(std::move(c));
    }
    return p;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed proof: ") + e.what());
  }
}

Proof read_proof(const std::filesystem::path& path) {
  try {
    return proof_from_json(Json::parse(read_file(path)));
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ExplanationRecord explain(const Proof& p, ExplanationFormat format) {
  ExplanationRecord r;
  r.id = p.problem_id;
  r.format = format;
  switch (format) {
    case ExplanationFormat::LexRel:
      r.lexrels = extract_lexrels(p);
      break;
    case ExplanationFormat::Rules: {
      auto x = extract_rules(p);
      r.rules = x.rules;
      r.lexrels = x.lexrels;
      break;
    }
    case ExplanationFormat::Unlabeled:
      r.tree = extract_unlabeled(p);
      break;
    case ExplanationFormat::Full:
      r.tree = extract_full(p);
      break;
  }
  return r;
}

Json explanation_to_json(const ExplanationRecord& r, const ProblemText& text) {
  Json j;
  j["id"] = r.id;
  j["format"] = to_string(r.format);
  if (r.format == ExplanationFormat::Rules) {
    Json rules = Json::object();
    for (const auto& [rule, n] : r.rules) rules[std::string(rule_id(rule))] = n;
    j["rules"] = std::move(rules);
  }
  if (r.format == ExplanationFormat::LexRel || r.format == ExplanationFormat::Rules) {
    Json rels = Json::array();
    for (const auto& a : r.lexrels.relations) rels.push_back(relation_json(a, text));
    j["lexrels"] = std::move(rels);
  }
  if (r.tree) j["tree"] = tree_json(r.tree->root, r.tree->labeled, text);
  return j;
}

ExplanationRecord explanation_from_json(const Json& j) {
  ExplanationRecord r;
  r.id = field<std::string>(j, "id");
  auto f = field<std::string>(j, "format");
  auto format = format_from_string(f);
  if (!format) throw FormatError("unknown explanation format '" + f + "'");
  r.format = *format;
  if (j.contains("lexrels")) {
    for (const auto& a : j.at("lexrels")) r.lexrels.relations.push_back(relation_from_json(a));
  }
  if (j.contains("rules")) {
    for (const auto& [k, v] : j.at("rules").items()) {
      auto rule = rule_from_id(k);
      if (!rule) throw FormatError("unknown rule '" + k + "'");
      r.rules[*rule] = v.get<int>();
    }
  }
  if (j.contains("tree")) {
    bool labeled = r.format == ExplanationFormat::Full;
    r.tree = TreeExplanation{labeled, tree_from_json(j.at("tree"), labeled)};
  }
  return r;
}

std::vector<ExplanationRecord> read_explanations(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<ExplanationRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(explanation_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Json label_to_json(const LabelRecord& r) {
  Json j;
  j["id"] = r.id;
  if (!r.error.empty()) {
    j["label"] = nullptr;
    j["error"] = r.error;
    j["message"] = r.message;
    return j;
  }
  j["label"] = r.label ? Json(to_string(*r.label)) : Json(nullptr);
  j["flags"] = {{"unsatisfiablePremise", r.unsatisfiable_premise}, {"budgetExhausted", r.budget_exhausted}};
  j["entries"] = r.entries;
  j["ruleApplications"] = r.rule_applications;
  if (r.millis) j["millis"] = *r.millis;
  return j;
}

LabelRecord label_from_json(const Json& j) {
  LabelRecord r;
  r.id = field<std::string>(j, "id");
  if (j.contains("error")) {
    r.error = field<std::string>(j, "error");
    r.message = j.value("message", "");
    return r;
  }
  auto l = field<std::string>(j, "label");
  r.label = label_from_string(l);
  if (!r.label) throw FormatError("unknown label '" + l + "'");
  if (j.contains("flags")) {
    r.unsatisfiable_premise = j.at("flags").value("unsatisfiablePremise", false);
    r.budget_exhausted = j.at("flags").value("budgetExhausted", false);
  }
  r.entries = j.value("entries", 0);
  r.rule_applications = j.value("ruleApplications", 0);
  if (j.contains("millis")) r.millis = j.at("millis").get<double>();
  return r;
}

std::vector<LabelRecord> read_labels(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<LabelRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = Json::parse(line);
      if (j.contains("config")) continue;
      out.push_back(label_from_json(j));
    } catch (const Json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace natlog
