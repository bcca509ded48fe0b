#include <doctest.h>

#include "natlog/parser.hpp"
#include "natlog/rules.hpp"

using namespace natlog;

namespace {

Entry root(const std::string& text, Sign s, int id = 1) {
  Entry e;
  e.id = id;
  e.form = canonical_form(parse_sentence(text, id).root);
  e.sign = s;
  return e;
}

Entry entry(int id, EntryForm f, Sign s) {
  Entry e;
  e.id = id;
  e.form = std::move(f);
  e.sign = s;
  return e;
}

std::string show(const std::pair<EntryForm, Sign>& x) {
  return x.first.canonical_key() + " " + std::string(to_string(x.second));
}

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("quantifier classes") {
    CHECK(quant_class("some") == QuantClass::Exists);
    CHECK(quant_class("a") == QuantClass::Exists);
    CHECK(quant_class("the") == QuantClass::Exists);
    CHECK(quant_class("every") == QuantClass::Forall);
    CHECK(quant_class("all") == QuantClass::Forall);
    CHECK(quant_class("no") == QuantClass::No);
    CHECK(quant_class("many") == QuantClass::None);
  }

  TEST_CASE("no is a negated existential") {
    auto q = quant_site(root("no birds fly", Sign::T));
    REQUIRE(q);
    CHECK(q->kind == QuantClass::Exists);
    CHECK(q->effective == Sign::F);
    CHECK_FALSE(is_fresh_site(*q));
    CHECK(is_fresh_site(*quant_site(root("no birds fly", Sign::F))));
  }

  TEST_CASE("negation flips the sign") {
    auto x = rule_neg(root("Not all birds fly", Sign::T));
    REQUIRE(x);
    CHECK(x->rule == RuleId::Neg);
    REQUIRE(x->branches.size() == 1);
    CHECK(show(x->branches[0][0]) == "all : [bird, fly] F");
    CHECK_FALSE(rule_neg(root("all birds fly", Sign::T)));
  }

  TEST_CASE("fresh entity rules") {
    auto ex = rule_fresh(root("some birds fly", Sign::T), "c");
    REQUIRE(ex);
    CHECK(ex->rule == RuleId::ExistsT);
    CHECK(ex->fresh);
    CHECK(ex->witness == "#c");
    REQUIRE(ex->branches.size() == 1);
    CHECK(show(ex->branches[0][0]) == "bird : [#c] T");
    CHECK(show(ex->branches[0][1]) == "fly : [#c] T");

    auto fa = rule_fresh(root("all birds fly", Sign::F), "d");
    REQUIRE(fa);
    CHECK(fa->rule == RuleId::ForallF);
    CHECK(show(fa->branches[0][1]) == "fly : [#d] F");
    CHECK_FALSE(rule_fresh(root("all birds fly", Sign::T), "c"));
  }

  TEST_CASE("instantiation with and without the noun on the branch") {
    Term c = Term::entity("c");
    auto every = root("every bird flies", Sign::T);
    auto noun = entry(5, EntryForm{Term::constant("bird", TermType::noun()), {c}}, Sign::T);
    auto lin = rule_instantiate(every, noun);
    REQUIRE(lin);
    CHECK(lin->rule == RuleId::ForallT);
    REQUIRE(lin->branches.size() == 1);
    CHECK(show(lin->branches[0][0]) == "fly : [#c] T");

    auto split = rule_instantiate_split(every, c);
    REQUIRE(split);
    REQUIRE(split->branches.size() == 2);
    CHECK(show(split->branches[0][0]) == "bird : [#c] F");
    CHECK(show(split->branches[1][0]) == "fly : [#c] T");

    auto some_f = rule_instantiate(root("some birds fly", Sign::F), noun);
    REQUIRE(some_f);
    CHECK(some_f->rule == RuleId::ExistsF);
    CHECK(show(some_f->branches[0][0]) == "fly : [#c] F");
  }

  TEST_CASE("conjunction and disjunction") {
    auto s = parse_sentence("some birds hover and fly", 1);
    Term c = Term::entity("c");
    auto vp = s.root.args()[1];
    auto t = rule_and_or(entry(3, canonical_form(vp, std::vector<Term>{c}), Sign::T));
    REQUIRE(t);
    CHECK(t->rule == RuleId::And);
    CHECK(t->branches.size() == 1);
    CHECK(t->branches[0].size() == 2);
    auto f = rule_and_or(entry(3, canonical_form(vp, std::vector<Term>{c}), Sign::F));
    REQUIRE(f);
    CHECK(f->branches.size() == 2);
  }

  TEST_CASE("upward monotonicity splits on the differing argument") {
    const auto& kb = KnowledgeBase::builtin();
    auto e1 = root("many birds hover high", Sign::T, 1);
    auto e2 = root("few birds fly", Sign::T, 2);
    CHECK(monotonicity_position(e1, e2) == 1);
    auto x = rule_monotonicity(e1, e2, "c", kb);
    REQUIRE(x);
    CHECK(x->rule == RuleId::UpDisCov);
    REQUIRE(x->branches.size() == 2);
    CHECK(show(x->branches[0][0]) == "high : [hover, #c] T");
    CHECK(show(x->branches[0][1]) == "fly : [#c] F");
    CHECK(show(x->branches[1][0]) == "many : [bird, fly] T");
    CHECK(show(x->branches[1][1]) == "few : [bird, fly] T");
  }

  TEST_CASE("downward monotonicity swaps the signs") {
    const auto& kb = KnowledgeBase::builtin();
    auto x = rule_monotonicity(root("no birds sleep", Sign::T, 1), root("no animals sleep", Sign::T, 2), "c", kb);
    REQUIRE(x);
    CHECK(x->rule == RuleId::DownSubst);
    REQUIRE(x->branches.size() == 2);
    CHECK(show(x->branches[0][0]) == "animal : [#c] T");
    CHECK(show(x->branches[0][1]) == "bird : [#c] F");
    // a false entry never takes part
    CHECK_FALSE(rule_monotonicity(root("no birds sleep", Sign::T, 1), root("no animals sleep", Sign::F, 2), "c", kb));
    // many has no mark on its noun
    CHECK_FALSE(rule_monotonicity(root("many birds sleep", Sign::T, 1), root("few animals sleep", Sign::T, 2), "c", kb));
  }

  TEST_CASE("subsective modifiers drop to the head") {
    const auto& kb = KnowledgeBase::builtin();
    auto s = parse_sentence("many birds hover high", 1);
    Term c = Term::entity("c");
    auto x = rule_adj(entry(3, canonical_form(s.root.args()[1], std::vector<Term>{c}), Sign::T), kb);
    REQUIRE(x);
    CHECK(show(x->branches[0][0]) == "hover : [#c] T");
    CHECK_FALSE(rule_adj(entry(3, canonical_form(s.root.args()[1], std::vector<Term>{c}), Sign::F), kb));
    auto small = parse_sentence("some small birds fly", 1);
    CHECK_FALSE(rule_adj(entry(3, canonical_form(small.root.args()[0], std::vector<Term>{c}), Sign::T), kb));
  }

  TEST_CASE("argument pushing normalizes") {
    auto e = entry(5, push_arg(root("many birds fly", Sign::T).form), Sign::T);
    auto x = rule_push(e);
    REQUIRE(x);
    CHECK(x->branches[0][0].first.format_key() == "many : [bird, fly]");
    CHECK_FALSE(rule_push(root("many birds fly", Sign::T)));
  }

  TEST_CASE("witness keys") {
    CHECK(witness_key(Term::entity("c")) == "#c");
    CHECK(witness_term("#c") == Term::entity("c"));
    CHECK(witness_term(witness_key(Term::constant("john", TermType::entity()))).key() == "john");
  }
}
