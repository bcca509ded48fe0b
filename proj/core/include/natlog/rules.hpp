#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "natlog/lexicon.hpp"
#include "natlog/tableau.hpp"

namespace natlog {

/// Entries produced by one rule application: one list per child segment.
struct Expansion {
  RuleId rule = RuleId::Neg;
  std::vector<int> antecedents;
  std::vector<std::vector<std::pair<EntryForm, Sign>>> branches;
  std::optional<std::string> witness;
  bool fresh = false;  // witness is a newly introduced entity
};

/// How a determiner behaves in the rules. "no" is an existential with the
/// sign flipped; many/few only take part in monotonicity and alternation.
enum class QuantClass : std::uint8_t { None, Exists, Forall, No };
QuantClass quant_class(std::string_view lemma);

/// A quantified noun phrase found in an entry: either the entry's own head
/// determiner (position -1) or a determiner NP in an argument slot of a verb.
struct QuantSite {
  QuantClass kind = QuantClass::None;
  Sign effective = Sign::T;  // sign after treating "no" as a negated existential
  int position = -1;         // argument index of the NP, -1 for the head
  Term noun;
  std::optional<SpanAnchor> np_anchor;
};
std::optional<QuantSite> quant_site(const Entry& e);

/// True for fresh-entity sites: (∃,T) and (∀,F).
inline bool is_fresh_site(const QuantSite& q) {
  return (q.kind == QuantClass::Exists) == (q.effective == Sign::T);
}

// Rule sign tables:
//   ¬      not X : s           ->  X : flip(s)
//   ∧      and A B : [x] : T   ->  A:[x]:T, B:[x]:T          F branches
//   ∨      or  A B : [x] : F   ->  A:[x]:F, B:[x]:F          T branches
//   ∃_T    Q N V : T           ->  N:[c]:T, V:[c]:T          c fresh
//   ∀_F    Q N V : F           ->  N:[c]:T, V:[c]:F          c fresh
//   ∃_F    Q N V : F, N:[x]:T  ->  V:[x]:F     (no N:[x]:T:  N:[x]:F | V:[x]:F)
//   ∀_T    Q N V : T, N:[x]:T  ->  V:[x]:T     (no N:[x]:T:  N:[x]:F | V:[x]:T)
//   substitute   the ∃_F/∀_T instantiation of an object NP
//   upDisCov  f..x..:T, g..y..:T, f↑  ->  x:[c]:T, y:[c]:F  |  f..y..:T, g..y..:T
//   downSubst f..x..:T, g..y..:T, f↓  ->  y:[c]:T, x:[c]:F  |  f..y..:T, g..y..:T
//   adj⊂_T M H : [x] : T, M subsective -> H:[x]:T
//   a»     non-canonical entry -> its canonical form, same sign

std::optional<Expansion> rule_neg(const Entry& e);
std::optional<Expansion> rule_and_or(const Entry& e);  // ∧ and ∨, either sign
std::optional<Expansion> rule_adj(const Entry& e, const KnowledgeBase& kb);
std::optional<Expansion> rule_push(const Entry& e);
std::optional<Expansion> rule_fresh(const Entry& e, const std::string& name);
/// Linear instantiation; `noun` must be N:[x]:T for the site's noun, x is
/// taken from it.
std::optional<Expansion> rule_instantiate(const Entry& e, const Entry& noun);
/// Branching instantiation (no noun entry on the branch).
std::optional<Expansion> rule_instantiate_split(const Entry& e, const Term& x);
std::optional<Expansion> rule_monotonicity(const Entry& e1, const Entry& e2,
                                           const std::string& name, const KnowledgeBase& kb);

/// Differing argument position of a monotonicity pair, if it has exactly one.
std::optional<int> monotonicity_position(const Entry& e1, const Entry& e2);

/// Witness string of an individual: its term key ("#c" for entities).
std::string witness_key(const Term& x);
Term witness_term(const std::string& key);

/// Re-fire a logged application from its antecedents and witness.
std::optional<Expansion> refire(RuleId rule, std::span<const Entry* const> antecedents,
                                const std::optional<std::string>& witness,
                                const KnowledgeBase& kb);

}  // namespace natlog
