#include <doctest.h>

#include <set>

#include "natlog/prover.hpp"
#include "natlog/regression.hpp"
#include "support.hpp"

using namespace natlog;

namespace {

Tableau fig2(Label relation = Label::Contradiction) {
  auto p = parse_problem(test::problem({"many birds hover high"}, "few birds fly"));
  return init_tableau(p, relation);
}

Entry entry(int id, Term t, std::vector<Term> args, Sign s) {
  Entry e;
  e.id = id;
  e.form = EntryForm{std::move(t), std::move(args)};
  e.sign = s;
  return e;
}

}  // namespace

TEST_SUITE("tableau") {
  TEST_CASE("roots follow the searched relation") {
    auto c = fig2(Label::Contradiction);
    REQUIRE(c.entries().size() == 2);
    CHECK(c.entries()[0].sign == Sign::T);
    CHECK(c.entries()[1].sign == Sign::T);
    auto e = fig2(Label::Entailment);
    CHECK(e.entries()[0].sign == Sign::T);
    CHECK(e.entries()[1].sign == Sign::F);
    CHECK(e.entries()[1].id == 2);
    CHECK(e.next_fresh_name() == "c");
  }

  TEST_CASE("the many/few tableau closes with the expected numbering") {
    auto t = fig2();
    auto r = saturate(t, KnowledgeBase::builtin(), Budget{});
    CHECK(r.status == Status::Closed);
    CHECK(t.leaves().size() == 2);
    REQUIRE(t.closures().size() == 2);
    const auto& left = t.closures()[0];
    const auto& right = t.closures()[1];
    CHECK(left.id == 8);
    CHECK(left.antecedents == std::vector<int>{4, 7});
    CHECK(left.rule == RuleId::XSub);
    REQUIRE(left.relations.size() == 1);
    CHECK(left.relations[0].str() == "hover⊑fly");
    CHECK(right.id == 11);
    CHECK(right.antecedents == std::vector<int>{9, 10});
    CHECK(right.rule == RuleId::XAlt);
    CHECK(right.relations[0].str() == "many|few");
    std::vector<int> ids;
    for (const auto& e : t.entries()) ids.push_back(e.id);
    CHECK(ids == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 9, 10});
    CHECK(render_surface(t.entry(3).surface, t.text()) == "c hover high");
    CHECK(t.entry(3).surface.machine() == "c␣S1[11:21]");
    CHECK(t.entry(4).sign == Sign::F);
    CHECK(render_surface(t.entry(9).surface, t.text()) == "many birds fly");
    CHECK(t.application(t.entry(3).produced_by).rule == RuleId::UpDisCov);
    CHECK(t.application(t.entry(7).produced_by).rule == RuleId::AdjSubT);
    CHECK(t.application(t.entry(9).produced_by).rule == RuleId::APush);
    CHECK(!verify_derivation(t, KnowledgeBase::builtin()));
  }

  TEST_CASE("closure lookups") {
    const auto& kb = KnowledgeBase::builtin();
    Term c = Term::entity("c");
    Term hover = Term::constant("hover", TermType::verb_phrase());
    Term fly = Term::constant("fly", TermType::verb_phrase());
    auto found = closure_between(entry(4, fly, {c}, Sign::F), entry(7, hover, {c}, Sign::T), kb);
    REQUIRE(found);
    CHECK(found->rule == RuleId::XSub);
    CHECK_FALSE(closure_between(entry(4, fly, {c}, Sign::T), entry(7, hover, {c}, Sign::F), kb));
    // identical terms with opposite signs close without any relation
    auto same = closure_between(entry(1, fly, {c}, Sign::T), entry(2, fly, {c}, Sign::F), kb);
    REQUIRE(same);
    CHECK(same->relations.empty());
    // different arguments never close
    CHECK_FALSE(closure_between(entry(1, fly, {c}, Sign::T), entry(2, fly, {Term::entity("d")}, Sign::F), kb));

    Term bird = Term::constant("bird", TermType::noun());
    Term many = Term::constant("many", TermType::determiner());
    Term few = Term::constant("few", TermType::determiner());
    auto alt = closure_between(entry(9, many, {bird, fly}, Sign::T), entry(10, few, {bird, fly}, Sign::T), kb);
    REQUIRE(alt);
    CHECK(alt->rule == RuleId::XAlt);
    CHECK_FALSE(closure_between(entry(9, many, {bird, fly}, Sign::T), entry(10, few, {bird, fly}, Sign::F), kb));
  }

  TEST_CASE("frame alternation compares reversed arguments across voices") {
    const auto& kb = KnowledgeBase::builtin();
    Term john = Term::constant("john", TermType::entity());
    Term ad = Term::constant("alzheimer's disease", TermType::entity());
    Term halt = Term::constant("halt", TermType::transitive());
    Term treated = Term::constant("treat", TermType::transitive(), std::nullopt, Voice::Passive);
    auto found = closure_between(entry(1, halt, {ad, john}, Sign::T), entry(2, treated, {john, ad}, Sign::F), kb);
    REQUIRE(found);
    CHECK(found->rule == RuleId::XFrameAlt);
    CHECK(found->relations[0].str() == "halt⊑treat (active/passive)");
    CHECK_FALSE(closure_between(entry(1, halt, {john, ad}, Sign::T), entry(2, treated, {john, ad}, Sign::F), kb));
  }

  TEST_CASE("budget stops the search") {
    auto t = fig2();
    auto r = saturate(t, KnowledgeBase::builtin(), Budget{3, 1, 1});
    CHECK(r.status == Status::BudgetExhausted);
    CHECK(r.rule_applications <= 1);
  }

  TEST_CASE("open branch saturates") {
    auto p = parse_problem(test::problem({"some birds fly"}, "all birds fly"));
    auto t = init_tableau(p, Label::Entailment);
    auto r = saturate(t, KnowledgeBase::builtin(), Budget{});
    CHECK(r.status == Status::Open);
    CHECK_FALSE(t.closed());
  }

  TEST_CASE("property: every saturated tableau replays identically") {
    ProblemGenerator gen(19);
    for (const auto& p : gen.problems(60)) {
      CAPTURE(p.hypothesis);
      auto parsed = parse_problem(p);
      for (auto rel : {Label::Entailment, Label::Contradiction}) {
        auto t = init_tableau(parsed, rel);
        auto r = saturate(t, KnowledgeBase::builtin(), Budget{});
        REQUIRE(r.status != Status::BudgetExhausted);
        auto err = verify_derivation(t, KnowledgeBase::builtin());
        CAPTURE(err.value_or(""));
        REQUIRE_FALSE(err);
        // ids are unique across entries and closures
        std::set<int> ids;
        for (const auto& e : t.entries()) REQUIRE(ids.insert(e.id).second);
        for (const auto& c : t.closures()) REQUIRE(ids.insert(c.id).second);
        REQUIRE((r.status == Status::Closed) == t.closed());
      }
    }
  }
}
