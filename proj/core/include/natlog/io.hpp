#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "natlog/explain.hpp"
#include "natlog/proof.hpp"
#include "natlog/prover.hpp"

namespace natlog {

using Json = nlohmann::ordered_json;

struct RunConfig {
  Budget budget;
  std::string kb = "builtin";
  int jobs = 1;
  bool timing = false;
};

/// The part of the config that affects results; echoed into output files.
/// The number of jobs is left out so serial and parallel runs match.
Json config_json(const RunConfig& c);

// Corpus: one JSON object per line {"id", "premises", "hypothesis", "gold"?}.
NLIProblem problem_from_json(const Json& j);
Json problem_to_json(const NLIProblem& p);
/// Throws Error when unreadable, FormatError (with line number) when malformed.
std::vector<NLIProblem> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const std::vector<NLIProblem>& problems);

Json surface_json(const SurfaceExpr& s, const ProblemText& text);
SurfaceExpr surface_from_json(const Json& j);

Json relation_json(const AnchoredRelation& r, const ProblemText& text);
AnchoredRelation relation_from_json(const Json& j);

Json proof_to_json(const Proof& p, const RunConfig& config);
Proof proof_from_json(const Json& j);
Proof read_proof(const std::filesystem::path& path);

/// One explanation line: {"id", "format", ...format-specific fields}.
struct ExplanationRecord {
  std::string id;
  ExplanationFormat format = ExplanationFormat::LexRel;
  LexRelExplanation lexrels;
  std::map<RuleId, int> rules;
  std::optional<TreeExplanation> tree;
};

ExplanationRecord explain(const Proof& p, ExplanationFormat format);
Json explanation_to_json(const ExplanationRecord& r, const ProblemText& text);
ExplanationRecord explanation_from_json(const Json& j);
std::vector<ExplanationRecord> read_explanations(const std::filesystem::path& path);

/// labels.jsonl line for one problem.
struct LabelRecord {
  std::string id;
  std::optional<Label> label;  // absent on parse errors
  std::string error;           // "parse" on parse errors
  std::string message;
  bool unsatisfiable_premise = false;
  bool budget_exhausted = false;
  int entries = 0;
  int rule_applications = 0;
  std::optional<double> millis;
};

Json label_to_json(const LabelRecord& r);
LabelRecord label_from_json(const Json& j);
/// Skips the leading {"config": ...} header line.
std::vector<LabelRecord> read_labels(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace natlog
