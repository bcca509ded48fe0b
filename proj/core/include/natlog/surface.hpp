#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "natlog/term.hpp"

namespace natlog {

/// Sentence texts of one problem. S1..Sn are the premises, the last one is
/// the hypothesis.
class ProblemText {
 public:
  ProblemText() = default;
  explicit ProblemText(std::vector<std::string> sentences) : sentences_(std::move(sentences)) {}

  const std::vector<std::string>& sentences() const noexcept { return sentences_; }
  std::size_t size() const noexcept { return sentences_.size(); }
  const std::string& sentence(int id) const;

  /// Throws AnchorError when out of bounds, empty, or not on UTF-8 boundaries.
  void validate(const SpanAnchor& a) const;
  std::string_view slice(const SpanAnchor& a) const;

 private:
  std::vector<std::string> sentences_;
};

struct EntityPiece {
  std::string name;
  friend bool operator==(const EntityPiece&, const EntityPiece&) = default;
};
struct SpacePiece {
  friend bool operator==(const SpacePiece&, const SpacePiece&) = default;
};
/// Fallback for constants with no position in the text (lexicon-introduced).
struct LemmaPiece {
  std::string text;
  friend bool operator==(const LemmaPiece&, const LemmaPiece&) = default;
};

using SurfacePiece = std::variant<SpanAnchor, EntityPiece, SpacePiece, LemmaPiece>;

struct SurfaceExpr {
  std::vector<SurfacePiece> pieces;

  /// Offset notation, e.g. "S2[0:36]␣d".
  std::string machine() const;
  friend bool operator==(const SurfaceExpr&, const SurfaceExpr&) = default;
};

std::string render_surface(const SurfaceExpr& e, const ProblemText& text);

/// Inverse of SurfaceExpr::machine(). Throws FormatError on malformed input.
SurfaceExpr parse_machine(std::string_view s);

/// Whole-sentence surface "S<id>[0:len]".
SurfaceExpr sentence_surface(int sentence, const ProblemText& text);

/// Surface of "term : [args]" reconstructed from the anchors on the term's
/// constants. Pieces from one sentence are laid out in source order; entities
/// without a slot come first (they are subjects of the predicate). Slices that
/// are separated by a single space in the source are merged.
SurfaceExpr surface_of(const EntryForm& form, const ProblemText& text);

/// Lowercased, whitespace-collapsed text used for matching explanations.
std::string canonical_text(std::string_view s);

}  // namespace natlog
