#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/proof.hpp"

namespace natlog {

enum class ExplanationFormat : std::uint8_t { LexRel, Rules, Unlabeled, Full };

std::string_view to_string(ExplanationFormat f);
std::optional<ExplanationFormat> format_from_string(std::string_view s);

struct LexRelExplanation {
  std::vector<AnchoredRelation> relations;  // sorted by relation, unique
};

struct RuleExplanation {
  std::map<RuleId, int> rules;
  LexRelExplanation lexrels;
};

struct TreeEntry {
  int id = 0;
  SurfaceExpr surface;
  std::string text;
  Sign sign = Sign::T;
  std::optional<RuleId> rule;
  std::vector<int> antecedents;
};

struct TreeClosure {
  int id = 0;
  RuleId rule = RuleId::XSub;
  std::vector<int> antecedents;
  std::vector<AnchoredRelation> relations;
};

/// One maximal linear run of entries; leaves carry the closure.
struct ProofTree {
  std::vector<TreeEntry> entries;
  std::vector<ProofTree> children;
  std::optional<TreeClosure> closure;
};

/// Unlabeled trees drop ids, rules, antecedents and closure details.
struct TreeExplanation {
  bool labeled = false;
  ProofTree root;
};

/// The pruned proof: a» entries folded into their sources, entries off every
/// closure-support path dropped, splits whose outputs no closure uses
/// collapsed, linear segments merged. Node ids are the original ones.
struct PrunedProof {
  ProofTree root;
  std::map<RuleId, int> rules;
  std::vector<AnchoredRelation> relations;
  std::set<int> kept;
};

/// Throws FormatError for an open proof.
PrunedProof prune(const Proof& p);

LexRelExplanation extract_lexrels(const Proof& p);
RuleExplanation extract_rules(const Proof& p);
TreeExplanation extract_unlabeled(const Proof& p);
TreeExplanation extract_full(const Proof& p);

/// Sort children by their content (ids excluded) and, for labeled trees,
/// renumber ids in preorder. Idempotent.
void canonicalize(TreeExplanation& t);

/// Content serialization used for ordering and comparison; ignores ids.
std::string tree_signature(const ProofTree& t, bool labeled);

}  // namespace natlog
