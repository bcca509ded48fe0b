#pragma once

#include <string>
#include <vector>

#include "natlog/explain.hpp"
#include "natlog/proof.hpp"
#include "natlog/prover.hpp"

namespace natlog::test {

inline NLIProblem problem(std::vector<std::string> premises, std::string hypothesis, std::string id = "t") {
  return NLIProblem{std::move(id), std::move(premises), std::move(hypothesis), std::nullopt};
}

inline ProofResult prove(std::vector<std::string> premises, std::string hypothesis) {
  return classify(problem(std::move(premises), std::move(hypothesis)), KnowledgeBase::builtin(), Budget{});
}

/// Proof record of a proved problem; the caller checks the label first.
inline Proof proof_of(const ProofResult& r, std::string id = "t") {
  return make_proof(*r.proof, std::move(id), std::string(to_string(r.label)));
}

inline std::vector<std::string> lexrel_strings(const LexRelExplanation& e) {
  std::vector<std::string> out;
  for (const auto& r : e.relations) out.push_back(r.relation.str());
  return out;
}

inline int count_leaves(const ProofTree& t) {
  if (t.children.empty()) return 1;
  int n = 0;
  for (const auto& c : t.children) n += count_leaves(c);
  return n;
}

inline void collect_texts(const ProofTree& t, std::vector<std::string>& out) {
  for (const auto& e : t.entries) out.push_back(e.text);
  for (const auto& c : t.children) collect_texts(c, out);
}

}  // namespace natlog::test
