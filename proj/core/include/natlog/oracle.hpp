#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natlog/lexicon.hpp"
#include "natlog/prover.hpp"

namespace natlog {

/// A model over the universe {1..size}. Predicates are sets of elements,
/// transitive verbs are sets of (subject, object) pairs in active voice, names
/// denote elements.
struct FiniteModel {
  int size = 0;
  std::vector<std::pair<std::string, std::vector<int>>> predicates;
  std::vector<std::pair<std::string, std::vector<std::pair<int, int>>>> relations;
  std::vector<std::pair<std::string, int>> names;

  /// e.g. "bird={1,2}, fly={1}".
  std::string str() const;
};

enum class OracleVerdict : std::uint8_t { Countermodel, None, Abstain };
std::string_view to_string(OracleVerdict v);

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::None;
  std::optional<FiniteModel> model;
  std::string reason;  // why the oracle abstained
  std::uint64_t models_checked = 0;
};

/// Semantics: some/a/the = non-empty intersection; every/all = subset;
/// no = empty intersection; many N V = N non-empty and |N∩V| > |N|/2;
/// few N V = |N∩V| < |N|/2; not = complement; and/or pointwise.
/// KB relations between the problem's symbols constrain the models
/// (⊑ as inclusion, | as disjointness, voice-annotated relations on the
/// active-voice relation); subsective modifiers give subsets of their heads.
///
/// Abstains on terms outside this fragment and when a model size would need
/// more than `max_models` candidates.
OracleResult countermodel_search(const std::vector<Term>& premises, const Term& hypothesis,
                                 Label relation, const KnowledgeBase& kb, int max_size = 3,
                                 std::uint64_t max_models = 1u << 22);
OracleResult countermodel_search(const ParsedProblem& p, Label relation, const KnowledgeBase& kb,
                                 int max_size = 3, std::uint64_t max_models = 1u << 22);

/// Truth of a sentence in a model; nullopt when the sentence is outside the
/// oracle fragment or mentions a symbol the model does not interpret.
std::optional<bool> holds(const Term& sentence, const FiniteModel& m);

}  // namespace natlog
