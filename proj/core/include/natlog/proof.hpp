#pragma once

#include <optional>
#include <string>
#include <vector>

#include "natlog/lexicon.hpp"
#include "natlog/surface.hpp"
#include "natlog/tableau.hpp"

namespace natlog {

/// A lexical relation with the surfaces of its two sides. Sides that do not
/// occur in the closing entries (inner links of a chain) fall back to lemmas.
struct AnchoredRelation {
  LexicalRelation relation;
  SurfaceExpr lhs;
  SurfaceExpr rhs;
};

struct ProofNode {
  int id = 0;
  SurfaceExpr surface;
  std::string text;  // rendered surface
  Sign sign = Sign::T;
  int segment = 0;
  std::string term;               // key of the entry's term
  std::vector<std::string> args;  // keys of the listed arguments
  std::optional<RuleId> rule;     // absent for roots
  std::vector<int> antecedents;
};

struct ProofClosure {
  int id = 0;
  RuleId rule = RuleId::XSub;
  std::vector<int> antecedents;
  int segment = 0;
  std::vector<AnchoredRelation> relations;
};

struct ProofSegment {
  int id = 0;
  int parent = -1;
  int application = 0;
  std::vector<int> entries;
  std::vector<int> children;
  std::optional<int> closure;  // closure node id
};

struct ProofApplication {
  int id = 0;
  RuleId rule = RuleId::Neg;
  std::vector<int> antecedents;
  std::vector<int> segments;
  std::optional<std::string> witness;
};

/// Self-contained record of a closed tableau; what proof files hold and what
/// explanations are extracted from.
struct Proof {
  std::string problem_id;
  std::string searched;  // "entailment" or "contradiction"
  std::vector<std::string> sentences;
  std::vector<ProofNode> nodes;
  std::vector<ProofSegment> segments;
  std::vector<ProofApplication> applications;
  std::vector<ProofClosure> closures;

  const ProofNode& node(int id) const;
  const ProofSegment& segment(int id) const { return segments.at(static_cast<std::size_t>(id)); }
  const ProofClosure* closure_of(int segment) const;
  bool closed() const;
};

Proof make_proof(const Tableau& t, std::string problem_id, std::string searched);

}  // namespace natlog
