#pragma once

#include <optional>
#include <string>
#include <vector>

#include "natlog/io.hpp"

namespace natlog {

struct PRF {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Matching key of a relation: type, lowercased whitespace-collapsed sides,
/// voices.
std::string lexrel_key(const LexicalRelation& r);

/// Set-based P/R/F1. Empty vs empty scores 1 everywhere. An empty side on
/// its own has precision (system empty) or recall (gold empty) 1 and F1 0.
PRF score_lexrels(const LexRelExplanation& gold, const LexRelExplanation& sys);
/// Exact multiset equality of rule names and set equality of relations.
bool score_rules(const RuleExplanation& gold, const RuleExplanation& sys);
/// Exact equality after canonical ordering. Throws FormatError when one side
/// is labeled and the other is not.
bool score_tree(const TreeExplanation& gold, const TreeExplanation& sys);

struct ProblemScore {
  std::string id;
  std::optional<PRF> prf;  // lexrel format only
  bool exact = false;
  bool missing = false;  // no system explanation for this id
};

struct ScoreReport {
  ExplanationFormat format = ExplanationFormat::LexRel;
  std::vector<ProblemScore> problems;  // ordered as in the gold file
  PRF macro;
  double exact_match = 0;
  int missing = 0;
  int extra = 0;  // system ids absent from gold
};

/// Pairs records by id. Throws FormatError when a record has another format.
ScoreReport evaluate(const std::vector<ExplanationRecord>& gold,
                     const std::vector<ExplanationRecord>& sys, ExplanationFormat format);
/// Score one pair; throws FormatError when the ids differ.
ProblemScore score_pair(const ExplanationRecord& gold, const ExplanationRecord& sys);

Json report_json(const ScoreReport& r);
std::string report_table(const ScoreReport& r);

}  // namespace natlog
