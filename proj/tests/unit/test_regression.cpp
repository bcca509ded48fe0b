#include <doctest.h>

#include "natlog/parser.hpp"
#include "natlog/regression.hpp"

using namespace natlog;

TEST_SUITE("regression") {
  TEST_CASE("generator is reproducible") {
    ProblemGenerator a(99), b(99), c(100);
    auto pa = a.problems(30);
    auto pb = b.problems(30);
    auto pc = c.problems(30);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      CHECK(pa[i].premises == pb[i].premises);
      CHECK(pa[i].hypothesis == pb[i].hypothesis);
    }
    bool differs = false;
    for (std::size_t i = 0; i < pa.size(); ++i) differs = differs || pa[i].hypothesis != pc[i].hypothesis;
    CHECK(differs);
    CHECK(pa[7].id == "gen-007");
  }

  TEST_CASE("generated sentences stay inside the fragment") {
    ProblemGenerator gen(1);
    for (int i = 0; i < 300; ++i) {
      auto s = gen.sentence();
      CAPTURE(s);
      CHECK_NOTHROW(parse_sentence(s, 1));
    }
    for (const auto& p : gen.problems(100)) {
      CAPTURE(p.hypothesis);
      CHECK_NOTHROW(parse_sentence(p.hypothesis, 2));
    }
  }

  TEST_CASE("shipped corpus passes every suite") {
    RegressionOptions o;
    o.corpus_dir = std::string(NATLOG_TEST_DATA_DIR) + "/regression";
    auto r = run_regressions(o, KnowledgeBase::builtin());
    INFO(r.summary());
    CHECK(r.passed());
    CHECK(r.failed("golden").empty());
    CHECK(r.oracle_checked > 0);
  }

  TEST_CASE("errors count as failures") {
    RegressionReport r;
    check_identity({"Some birds fly"}, KnowledgeBase::builtin(), Budget{}, r);
    CHECK(r.passed());
    check_soundness({NLIProblem{"x", {"Some birds fly"}, "Birds zorp", std::nullopt}}, KnowledgeBase::builtin(),
                    Budget{}, 3, r);
    CHECK(r.failures() == 1);
    CHECK(r.failed("soundness").front().id == "x");
  }
}
