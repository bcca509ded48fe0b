#include "natlog/prover.hpp"

#include <chrono>

namespace natlog {

std::string_view to_string(Label l) {
  switch (l) {
    case Label::Entailment: return "entailment";
    case Label::Contradiction: return "contradiction";
    case Label::Neutral: return "neutral";
  }
  return "neutral";
}

std::optional<Label> label_from_string(std::string_view s) {
  if (s == "entailment") return Label::Entailment;
  if (s == "contradiction") return Label::Contradiction;
  if (s == "neutral") return Label::Neutral;
  return std::nullopt;
}

ParsedProblem parse_problem(const NLIProblem& p) {
  if (p.premises.empty()) throw ParseError("problem " + p.id + " has no premises", "", 0);
  std::vector<std::string> sentences = p.premises;
  sentences.push_back(p.hypothesis);
  std::vector<FragmentSentence> parsed;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    parsed.push_back(parse_sentence(sentences[i], static_cast<int>(i) + 1));
  }
  FragmentSentence h = std::move(parsed.back());
  parsed.pop_back();
  return ParsedProblem{ProblemText(std::move(sentences)), std::move(parsed), std::move(h)};
}

Tableau init_tableau(const ParsedProblem& p, Label relation) {
  std::vector<RootSpec> roots;
  for (const auto& s : p.premises) roots.push_back({s.root, Sign::T, s.sentence_id});
  roots.push_back({p.hypothesis.root, relation == Label::Entailment ? Sign::F : Sign::T,
                   p.hypothesis.sentence_id});
  return Tableau(p.text, roots);
}

ProofResult classify(const ParsedProblem& p, const KnowledgeBase& kb, const Budget& budget) {
  auto start = std::chrono::steady_clock::now();
  ProofResult out;

  Tableau ent = init_tableau(p, Label::Entailment);
  auto r1 = saturate(ent, kb, budget);
  Tableau con = init_tableau(p, Label::Contradiction);
  auto r2 = saturate(con, kb, budget);

  out.entries = static_cast<int>(ent.entries().size() + con.entries().size());
  out.rule_applications = r1.rule_applications + r2.rule_applications;
  bool ent_closed = r1.status == Status::Closed;
  bool con_closed = r2.status == Status::Closed;
  if (ent_closed) {
    out.label = Label::Entailment;
    out.unsatisfiable_premise = con_closed;
    out.proof = std::move(ent);
  } else if (con_closed) {
    out.label = Label::Contradiction;
    out.proof = std::move(con);
  } else {
    out.budget_exhausted =
        r1.status == Status::BudgetExhausted || r2.status == Status::BudgetExhausted;
  }
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ProofResult classify(const NLIProblem& p, const KnowledgeBase& kb, const Budget& budget) {
  return classify(parse_problem(p), kb, budget);
}

}  // namespace natlog
