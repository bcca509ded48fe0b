#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "natlog/term.hpp"

namespace natlog {

struct Token {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
};

struct FragmentSentence {
  std::string text;
  int sentence_id = 1;
  std::vector<Token> tokens;
  Term root;
  Voice voice = Voice::Active;
};

/// Deterministic parser for a controlled English fragment:
///
///   S   -> [not] NP VP
///   NP  -> Det Adj* Noun [that VP] | Adj* PluralNoun [that VP] | Name
///   VP  -> Atom ((and|or) Atom)*
///   Atom-> does not Atom | [Adv] Verb [Adv]
///        | [Adv] TVerb ((and|or) TVerb)* NP [Adv]
///        | is|are Participle (using|by) NP
///
/// Bare plurals get a silent existential determiner. A trailing comparative
/// clause ("... the earlier you ...") makes the whole VP one opaque predicate.
/// Every lexical constant is anchored at its byte span in `text`.
/// Throws ParseError naming the first token that does not fit.
FragmentSentence parse_sentence(std::string_view text, int sentence_id);

/// Lemma of a known word form (e.g. "birds" -> "bird"), empty if unknown.
std::string lemma_of(std::string_view word);

}  // namespace natlog
