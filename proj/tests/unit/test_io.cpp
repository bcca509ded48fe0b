#include <doctest.h>

#include <filesystem>

#include "natlog/io.hpp"
#include "natlog/runner.hpp"
#include "support.hpp"

using namespace natlog;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("natlog-io-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("corpus lines") {
    auto j = Json::parse(R"({"id":"x","premises":["Some birds fly"],"hypothesis":"All birds fly","gold":"neutral"})");
    auto p = problem_from_json(j);
    CHECK(p.id == "x");
    CHECK(p.gold == Label::Neutral);
    CHECK(problem_to_json(p) == j);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"id":"x","premises":"oops","hypothesis":"h"})")), FormatError);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"id":"x","premises":[],"hypothesis":"h","gold":"yes"})")),
                    FormatError);
  }

  TEST_CASE("malformed corpus reports the line") {
    auto dir = scratch("corpus");
    write_file(dir / "c.jsonl", "{\"id\":\"a\",\"premises\":[\"x\"],\"hypothesis\":\"y\"}\n\n{not json\n");
    try {
      read_corpus(dir / "c.jsonl");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    CHECK_THROWS_AS(read_corpus(dir / "missing.jsonl"), Error);
  }

  TEST_CASE("surface pieces round-trip") {
    ProblemText t({"x", "Alzheimer's disease is treated using drugs"});
    SurfaceExpr e{{SpanAnchor{2, 0, 36}, SpacePiece{}, EntityPiece{"d"}, LemmaPiece{"treat"}}};
    auto j = surface_json(e, t);
    CHECK(j["machine"] == "S2[0:36]␣d\"treat\"");
    CHECK(surface_from_json(j) == e);
    CHECK(parse_machine(e.machine()) == e);
    CHECK(parse_machine("c␣S1[11:21]").machine() == "c␣S1[11:21]");
    CHECK(parse_machine("").pieces.empty());
    CHECK_THROWS_AS(parse_machine("S1[3:"), FormatError);
    CHECK_THROWS_AS(parse_machine("\"open"), FormatError);
  }

  TEST_CASE("proof files round-trip") {
    auto r = test::prove({"The drugs that slow down or halt Alzheimer's disease work best the earlier you administer them"},
                         "Alzheimer's disease is treated using drugs");
    auto p = test::proof_of(r, "drugs");
    RunConfig c;
    auto j = proof_to_json(p, c);
    CHECK(j["problemId"] == "drugs");
    CHECK(j["searchedRelation"] == "entailment");
    CHECK(j["config"] == config_json(c));
    CHECK(j["nodes"][1]["producedBy"]["rule"] == "root");
    auto back = proof_from_json(j);
    CHECK(proof_to_json(back, c).dump() == j.dump());
    CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"problemId":"x"})")), FormatError);
  }

  TEST_CASE("explanations round-trip in every format") {
    auto p = test::proof_of(test::prove({"many birds hover high"}, "few birds fly"));
    ProblemText text(p.sentences);
    for (auto f : {ExplanationFormat::LexRel, ExplanationFormat::Rules, ExplanationFormat::Unlabeled,
                   ExplanationFormat::Full}) {
      auto rec = explain(p, f);
      auto j = explanation_to_json(rec, text);
      CHECK(j["format"] == std::string(to_string(f)));
      auto back = explanation_from_json(j);
      CHECK(explanation_to_json(back, text).dump() == j.dump());
    }
    auto rules = explanation_to_json(explain(p, ExplanationFormat::Rules), text);
    CHECK(rules["rules"].dump() == R"({"upDisCov":1,"adj_sub_T":1})");
    CHECK(format_from_string("bogus") == std::nullopt);
  }

  TEST_CASE("label lines") {
    LabelRecord ok{"a", Label::Contradiction, "", "", false, false, 11, 4, std::nullopt};
    auto j = label_to_json(ok);
    CHECK(j.dump() ==
          R"({"id":"a","label":"contradiction","flags":{"unsatisfiablePremise":false,"budgetExhausted":false},"entries":11,"ruleApplications":4})");
    CHECK(label_to_json(label_from_json(j)) == j);
    LabelRecord bad{"b", std::nullopt, "parse", "S1: expected a verb", false, false, 0, 0, std::nullopt};
    CHECK(label_to_json(bad)["label"].is_null());
    CHECK(label_from_json(label_to_json(bad)).error == "parse");
  }

  TEST_CASE("corpus runs are ordered by id and independent of workers") {
    std::vector<NLIProblem> corpus = {test::problem({"Some birds hover"}, "Some birds fly", "z"),
                                      test::problem({"many birds hover high"}, "few birds fly", "a"),
                                      test::problem({"Some birds fly"}, "Birds zorp", "m")};
    RunConfig serial, parallel;
    parallel.jobs = 3;
    auto one = run_corpus(corpus, KnowledgeBase::builtin(), serial);
    auto many = run_corpus(corpus, KnowledgeBase::builtin(), parallel);
    CHECK(one.labels == many.labels);
    CHECK(one.proofs == many.proofs);
    CHECK(one.errors == 1);
    REQUIRE(one.records.size() == 3);
    CHECK(one.records[0].id == "a");
    CHECK(one.records[1].error == "parse");
    CHECK(one.proofs.size() == 2);

    auto dir = scratch("run");
    write_run(one, dir);
    auto labels = read_labels(dir / "labels.jsonl");
    CHECK(labels.size() == 3);
    CHECK(read_proof(dir / "proofs" / "a.json").closed());
  }
}
