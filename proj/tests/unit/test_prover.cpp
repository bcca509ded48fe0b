#include <doctest.h>

#include "natlog/regression.hpp"
#include "support.hpp"

using namespace natlog;
using test::prove;

TEST_SUITE("prover") {
  TEST_CASE("labels of small problems") {
    CHECK(prove({"many birds hover high"}, "few birds fly").label == Label::Contradiction);
    CHECK(prove({"few birds fly"}, "many birds hover high").label == Label::Contradiction);
    CHECK(prove({"Not all birds fly"}, "Some bird does not fly").label == Label::Entailment);
    CHECK(prove({"Some birds fly"}, "All birds fly").label == Label::Neutral);
    CHECK(prove({"Some birds hover"}, "Some birds fly").label == Label::Entailment);
    CHECK(prove({"Some birds fly"}, "Some birds hover").label == Label::Neutral);
    CHECK(prove({"Every animal sleeps"}, "Every bird sleeps").label == Label::Entailment);
    CHECK(prove({"Every bird sleeps"}, "Every animal sleeps").label == Label::Neutral);
    CHECK(prove({"No birds fly"}, "Some birds hover").label == Label::Contradiction);
    CHECK(prove({"Every bird flies", "Some birds sleep"}, "Some birds fly").label == Label::Entailment);
    CHECK(prove({"John halts Alzheimer's disease"}, "Alzheimer's disease is treated by John").label ==
          Label::Entailment);
  }

  TEST_CASE("drug problem: substitute, then one branch per disjunct") {
    auto r = prove({"The drugs that slow down or halt Alzheimer's disease work best the earlier you administer them"},
                   "Alzheimer's disease is treated using drugs");
    REQUIRE(r.label == Label::Entailment);
    const auto& t = *r.proof;
    CHECK(t.leaves().size() == 2);
    REQUIRE(t.closures().size() == 2);
    for (const auto& c : t.closures()) CHECK(c.rule == RuleId::XFrameAlt);
    CHECK(t.entry(5).surface.machine() == "c␣S1[4:9]");
    CHECK(render_surface(t.entry(7).surface, t.text()) == "Alzheimer's disease is treated using c");
    CHECK(t.entry(7).surface.machine() == "S2[0:36]␣c");
    CHECK(t.application(t.entry(7).produced_by).rule == RuleId::Substitute);
    CHECK(t.application(t.entry(7).produced_by).antecedents == std::vector<int>{2, 5});
  }

  TEST_CASE("inconsistent premises prove both relations") {
    auto r = prove({"Every bird flies", "No birds fly", "Some birds sleep"}, "All dogs run");
    CHECK(r.label == Label::Entailment);
    CHECK(r.unsatisfiable_premise);
    auto ok = prove({"Every bird flies"}, "Every bird flies");
    CHECK_FALSE(ok.unsatisfiable_premise);
  }

  TEST_CASE("exhausted budget gives neutral with a flag") {
    auto r = classify(test::problem({"many birds hover high"}, "few birds fly"), KnowledgeBase::builtin(),
                      Budget{3, 1, 1});
    CHECK(r.label == Label::Neutral);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.proof);
  }

  TEST_CASE("parse errors name the sentence") {
    try {
      prove({"Some birds fly"}, "Birds zorp");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).starts_with("S2"));
    }
  }

  TEST_CASE("label strings") {
    for (auto l : {Label::Entailment, Label::Contradiction, Label::Neutral}) {
      CHECK(label_from_string(to_string(l)) == l);
    }
    CHECK_FALSE(label_from_string("maybe"));
  }

  TEST_CASE("property: identity problems are entailments") {
    ProblemGenerator gen(5);
    for (int i = 0; i < 40; ++i) {
      auto s = gen.sentence();
      CAPTURE(s);
      CHECK(prove({s}, s).label == Label::Entailment);
    }
  }

  TEST_CASE("property: contradiction is symmetric on generated single-premise problems") {
    ProblemGenerator gen(23);
    int seen = 0;
    for (const auto& p : gen.problems(150)) {
      if (p.premises.size() != 1) continue;
      if (prove(p.premises, p.hypothesis).label != Label::Contradiction) continue;
      ++seen;
      CAPTURE(p.premises[0]);
      CAPTURE(p.hypothesis);
      // A self-contradictory hypothesis becomes an unsatisfiable premise once
      // swapped; both searches then close and the label is entailment.
      auto swapped = prove({p.hypothesis}, p.premises[0]);
      CHECK((swapped.label == Label::Contradiction ||
             (swapped.label == Label::Entailment && swapped.unsatisfiable_premise)));
    }
    CHECK(seen > 0);
  }
}
