#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/lexicon.hpp"
#include "natlog/parser.hpp"
#include "natlog/tableau.hpp"

namespace natlog {

enum class Label : std::uint8_t { Entailment, Contradiction, Neutral };

std::string_view to_string(Label l);
std::optional<Label> label_from_string(std::string_view s);

struct NLIProblem {
  std::string id;
  std::vector<std::string> premises;
  std::string hypothesis;
  std::optional<Label> gold;
};

/// Premises are sentences S1..Sn, the hypothesis is S(n+1).
struct ParsedProblem {
  ProblemText text;
  std::vector<FragmentSentence> premises;
  FragmentSentence hypothesis;
};

/// Throws ParseError whose message names the sentence (S1, S2, ...).
ParsedProblem parse_problem(const NLIProblem& p);

/// Roots {premises:T, H:F} for entailment, {premises:T, H:T} for contradiction.
Tableau init_tableau(const ParsedProblem& p, Label relation);

struct ProofResult {
  Label label = Label::Neutral;
  std::optional<Tableau> proof;  // present iff label != Neutral
  bool unsatisfiable_premise = false;
  bool budget_exhausted = false;
  int entries = 0;  // entries built over both searches
  int rule_applications = 0;
  double millis = 0;
};

/// Runs the entailment search, then the contradiction search. Both always
/// run; if both close the label is Entailment with unsatisfiable_premise set.
ProofResult classify(const ParsedProblem& p, const KnowledgeBase& kb, const Budget& budget);
ProofResult classify(const NLIProblem& p, const KnowledgeBase& kb, const Budget& budget);

}  // namespace natlog
