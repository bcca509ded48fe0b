#include <doctest.h>

#include "natlog/parser.hpp"
#include "natlog/surface.hpp"

using namespace natlog;

namespace {

const std::string kDrugs =
    "The drugs that slow down or halt Alzheimer's disease work best the earlier you administer them";
const std::string kTreated = "Alzheimer's disease is treated using drugs";

ProblemText drugs_text() { return ProblemText({kDrugs, kTreated}); }

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("offset slices") {
    auto t = drugs_text();
    CHECK(t.slice(SpanAnchor{1, 4, 9}) == "drugs");
    CHECK(t.slice(SpanAnchor{2, 0, 36}) == "Alzheimer's disease is treated using");
    CHECK_THROWS_AS(t.slice(SpanAnchor{3, 0, 1}), AnchorError);
    CHECK_THROWS_AS(t.slice(SpanAnchor{1, 5, 4}), AnchorError);
    CHECK_THROWS_AS(t.slice(SpanAnchor{1, 0, 500}), AnchorError);
  }

  TEST_CASE("slices must fall on UTF-8 boundaries") {
    ProblemText t({"caf\xC3\xA9 birds"});
    CHECK(t.slice(SpanAnchor{1, 0, 5}) == "caf\xC3\xA9");
    CHECK_THROWS_AS(t.slice(SpanAnchor{1, 0, 4}), AnchorError);
  }

  TEST_CASE("machine and rendered forms") {
    auto t = drugs_text();
    SurfaceExpr e{{SpanAnchor{2, 0, 36}, SpacePiece{}, EntityPiece{"d"}}};
    CHECK(e.machine() == "S2[0:36]␣d");
    CHECK(render_surface(e, t) == "Alzheimer's disease is treated using d");
    CHECK(render_surface(SurfaceExpr{{SpanAnchor{1, 4, 9}}}, t) == "drugs");
    CHECK(render_surface(SurfaceExpr{{LemmaPiece{"treat"}}}, t) == "treat");
    CHECK(sentence_surface(2, t).machine() == "S2[0:42]");
    CHECK(render_surface(SurfaceExpr{}, t).empty());
  }

  TEST_CASE("surface of an entry follows source order") {
    ProblemText t({"many birds hover high"});
    auto s = parse_sentence(t.sentence(1), 1);
    // high hover : [c]
    auto vp = s.root.args()[1];
    auto surf = surface_of(EntryForm{vp, {Term::entity("c")}}, t);
    CHECK(surf.machine() == "c␣S1[11:21]");
    CHECK(render_surface(surf, t) == "c hover high");
  }

  TEST_CASE("canonical text") {
    CHECK(canonical_text("  Many   Birds\tfly ") == "many birds fly");
    CHECK(canonical_text("") == "");
  }
}
