#include <doctest.h>

#include "natlog/eval.hpp"
#include "natlog/io.hpp"
#include "support.hpp"

using namespace natlog;

namespace {

AnchoredRelation rel(std::string lhs, Relation r, std::string rhs) {
  return AnchoredRelation{LexicalRelation{std::move(lhs), r, std::move(rhs), std::nullopt}, {}, {}};
}

LexRelExplanation lexrels(std::vector<AnchoredRelation> rs) { return LexRelExplanation{std::move(rs)}; }

ExplanationRecord lexrel_record(std::string id, std::vector<AnchoredRelation> rs) {
  ExplanationRecord r;
  r.id = std::move(id);
  r.format = ExplanationFormat::LexRel;
  r.lexrels = lexrels(std::move(rs));
  return r;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("precision, recall and F1 over relation sets") {
    auto gold = lexrels({rel("hover", Relation::Sub, "fly"), rel("many", Relation::Alt, "few")});
    auto sys = lexrels({rel("hover", Relation::Sub, "fly"), rel("bird", Relation::Sub, "animal")});
    auto s = score_lexrels(gold, sys);
    CHECK(s.precision == doctest::Approx(0.5));
    CHECK(s.recall == doctest::Approx(0.5));
    CHECK(s.f1 == doctest::Approx(0.5));

    auto one = score_lexrels(gold, lexrels({rel("hover", Relation::Sub, "fly")}));
    CHECK(one.precision == doctest::Approx(1.0));
    CHECK(one.recall == doctest::Approx(0.5));
    CHECK(one.f1 == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("matching ignores case and spacing but not the relation type") {
    auto gold = lexrels({rel("slow down", Relation::Sub, "treat")});
    CHECK(score_lexrels(gold, lexrels({rel("Slow  down", Relation::Sub, "TREAT")})).f1 == doctest::Approx(1.0));
    CHECK(score_lexrels(gold, lexrels({rel("slow down", Relation::Alt, "treat")})).f1 == doctest::Approx(0.0));
  }

  TEST_CASE("empty sets") {
    auto both = score_lexrels(lexrels({}), lexrels({}));
    CHECK(both.f1 == 1.0);
    auto no_sys = score_lexrels(lexrels({rel("a", Relation::Sub, "b")}), lexrels({}));
    CHECK(no_sys.precision == 1.0);
    CHECK(no_sys.recall == 0.0);
    CHECK(no_sys.f1 == 0.0);
    auto no_gold = score_lexrels(lexrels({}), lexrels({rel("a", Relation::Sub, "b")}));
    CHECK(no_gold.precision == 0.0);
    CHECK(no_gold.recall == 1.0);
    CHECK(no_gold.f1 == 0.0);
  }

  TEST_CASE("rule multisets must match exactly") {
    RuleExplanation a{{{RuleId::Neg, 2}, {RuleId::ForallF, 1}}, {}};
    RuleExplanation b{{{RuleId::Neg, 1}, {RuleId::ForallF, 1}}, {}};
    CHECK(score_rules(a, a));
    CHECK_FALSE(score_rules(a, b));
  }

  TEST_CASE("corpus report averages per problem") {
    std::vector<ExplanationRecord> gold = {lexrel_record("p1", {rel("a", Relation::Sub, "b")}),
                                           lexrel_record("p2", {rel("c", Relation::Alt, "d")})};
    std::vector<ExplanationRecord> sys = {lexrel_record("p1", {rel("a", Relation::Sub, "b")}),
                                          lexrel_record("p3", {})};
    auto r = evaluate(gold, sys, ExplanationFormat::LexRel);
    CHECK(r.problems.size() == 2);
    CHECK(r.missing == 1);
    CHECK(r.extra == 1);
    CHECK(r.macro.f1 == doctest::Approx(0.5));
    CHECK(r.exact_match == doctest::Approx(0.5));
    CHECK(report_table(r).find("p2") != std::string::npos);
    CHECK(report_json(r)["aggregate"]["exactMatch"].get<double>() == doctest::Approx(0.5));
    CHECK_THROWS_AS(score_pair(gold[0], gold[1]), FormatError);
    CHECK_THROWS_AS(evaluate(gold, sys, ExplanationFormat::Rules), FormatError);
  }

  TEST_CASE("tree comparison is order-insensitive") {
    auto p = test::proof_of(test::prove({"many birds hover high"}, "few birds fly"));
    for (auto f : {ExplanationFormat::Unlabeled, ExplanationFormat::Full}) {
      auto gold = explain(p, f);
      auto sys = gold;
      std::swap(sys.tree->root.children[0], sys.tree->root.children[1]);
      CHECK(score_pair(gold, sys).exact);
      sys.tree->root.children.pop_back();
      CHECK_FALSE(score_pair(gold, sys).exact);
    }
  }

  TEST_CASE("labeled trees also compare antecedents") {
    auto p = test::proof_of(test::prove({"many birds hover high"}, "few birds fly"));
    auto gold = explain(p, ExplanationFormat::Full);
    auto sys = gold;
    sys.tree->root.children[0].entries[2].antecedents = {4};
    CHECK_FALSE(score_pair(gold, sys).exact);
    auto ul = explain(p, ExplanationFormat::Unlabeled);
    CHECK_THROWS_AS(score_tree(*gold.tree, *ul.tree), FormatError);
  }
}
