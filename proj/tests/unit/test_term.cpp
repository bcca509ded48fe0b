#include <doctest.h>

#include <random>

#include "natlog/term.hpp"

using namespace natlog;

namespace {

Term c(const std::string& lemma, TermType t) { return Term::constant(lemma, t); }

Term bird() { return c("bird", TermType::noun()); }
Term fly() { return c("fly", TermType::verb_phrase()); }
Term many() { return c("many", TermType::determiner()); }
Term high() { return c("high", TermType::function({TermType::verb_phrase()}, TermType::verb_phrase())); }

}  // namespace

TEST_SUITE("term") {
  TEST_CASE("type strings and parsing") {
    CHECK(TermType::determiner().str() == "(n,vp,s)");
    CHECK(TermType::noun_phrase().str() == "(vp,s)");
    CHECK(TermType::transitive().str() == "(e,vp)");
    for (auto s : {"e", "s", "n", "vp", "(n,vp,s)", "((vp,s),vp)", "(e,(e,vp))"}) {
      CHECK(TermType::parse(s).str() == s);
    }
    CHECK_THROWS_AS(TermType::parse("(n,"), TypeError);
  }

  TEST_CASE("predicates take one entity") {
    CHECK(TermType::noun().is_predicate());
    CHECK(TermType::verb_phrase().is_predicate());
    CHECK_FALSE(TermType::entity().is_predicate());
    CHECK(TermType::noun().apply(TermType::entity()) == TermType::truth());
    CHECK_FALSE(TermType::noun().apply(TermType::noun()));
  }

  TEST_CASE("application is flat and typed") {
    Term np = Term::apply(many(), {bird()});
    CHECK(np.type() == TermType::noun_phrase());
    Term s = Term::apply(np, {Term::apply(high(), {fly()})});
    CHECK(s.type() == TermType::truth());
    CHECK(s.args().size() == 2);
    CHECK(s.head().lemma() == "many");
    CHECK(s.key() == "(many bird (high fly))");
    CHECK(Term::apply(high(), {fly()}).phrase() == "high fly");
  }

  TEST_CASE("ill-typed application throws") {
    CHECK_THROWS_AS(Term::apply(many(), {fly(), bird()}), TypeError);
    CHECK_THROWS_AS(Term::apply(bird(), {bird()}), TypeError);
  }

  TEST_CASE("equality ignores anchors") {
    Term a = Term::constant("bird", TermType::noun(), SpanAnchor{1, 5, 10});
    Term b = Term::constant("bird", TermType::noun(), SpanAnchor{2, 0, 4});
    CHECK(a == b);
    CHECK(Term::constant("treat", TermType::transitive(), std::nullopt, Voice::Passive).key() == "treat/p");
    CHECK(Term::entity("c").key() == "#c");
    CHECK(Term::entity("c").is_individual());
    CHECK(Term::constant("john", TermType::entity()).is_individual());
  }

  TEST_CASE("push and pop move one argument") {
    EntryForm f{many(), {bird(), fly()}};
    auto pushed = push_arg(f);
    CHECK(pushed.term.key() == "(many bird)");
    CHECK(pushed.args.size() == 1);
    auto popped = pop_arg(pushed);
    CHECK(popped.format_key() == f.format_key());
    CHECK_THROWS_AS(pop_arg(EntryForm{bird(), {Term::entity("c")}}), BoundaryError);
    CHECK_THROWS_AS(pop_arg(EntryForm{fly(), {}}), BoundaryError);
    EntryForm few_bird{Term::apply(c("few", TermType::determiner()), {bird()}), {fly()}};
    CHECK(pop_arg(push_arg(few_bird)).format_key() == few_bird.format_key());
    CHECK(push_arg(pop_arg(few_bird)).format_key() == few_bird.format_key());
    auto hover_c = canonical_form(c("hover", TermType::verb_phrase()), std::vector<Term>{Term::entity("c")});
    CHECK(hover_c.format_key() == "hover : [#c]");
    CHECK_THROWS_AS(push_arg(EntryForm{bird(), {}}), BoundaryError);
  }

  TEST_CASE("canonical form is idempotent") {
    Term s = Term::apply(many(), {bird(), fly()});
    auto once = canonical_form(s);
    CHECK(once.term.key() == "many");
    CHECK(once.args.size() == 2);
    CHECK(canonical_form(once).format_key() == once.format_key());
    CHECK(once.type() == TermType::truth());
  }

  TEST_CASE("property: reformatting never changes the canonical key") {
    std::mt19937 rng(11);
    Term d = Term::entity("d");
    std::vector<EntryForm> seeds = {
        {Term::apply(many(), {bird(), Term::apply(high(), {fly()})}), {}},
        {Term::apply(high(), {fly()}), {d}},
        {c("chase", TermType::transitive()), {Term::constant("mary", TermType::entity()), d}},
    };
    for (const auto& seed : seeds) {
      const auto key = seed.canonical_key();
      EntryForm f = seed;
      for (int step = 0; step < 200; ++step) {
        bool can_push = !f.args.empty();
        bool can_pop = f.term.is_application();
        if (can_push && (!can_pop || rng() % 2)) {
          f = push_arg(f);
        } else if (can_pop) {
          f = pop_arg(f);
        }
        REQUIRE(f.canonical_key() == key);
        REQUIRE(f.type() == seed.type());
        REQUIRE(f.whole() == seed.whole());
      }
    }
  }
}
