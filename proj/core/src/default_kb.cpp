#include "natlog/lexicon.hpp"

namespace natlog {

// Keep in sync with data/default.kb.tsv (checked by the lexicon tests).
std::string_view KnowledgeBase::builtin_tsv() {
  static constexpr std::string_view kTsv = R"KB(# Built-in knowledge base.
# lhs<TAB>rel<TAB>rhs[<TAB>lhsVoice,rhsVoice], rel in {sub, equ, alt}
# mono<TAB>lemma<TAB>position<TAB>up|down
# subsective<TAB>lemma

# Determiners
mono	some	1	up
mono	some	2	up
mono	a	1	up
mono	a	2	up
mono	the	1	up
mono	the	2	up
mono	every	1	down
mono	every	2	up
mono	all	1	down
mono	all	2	up
mono	no	1	down
mono	no	2	down
mono	many	2	up
mono	few	2	down
a	equ	some
the	equ	some
all	equ	every
no	alt	some
many	alt	few

# Modifiers
subsective	high

# Lexical relations
hover	sub	fly
fly	sub	move
run	sub	move
swim	sub	move
sleep	alt	run
bird	sub	animal
dog	sub	animal
cat	sub	animal
bird	alt	dog
bird	alt	cat
dog	alt	cat
mouse	sub	small animal
slow down	sub	treat	active,passive
halt	sub	treat	active,passive
)KB";
  return kTsv;
}

}  // namespace natlog
