#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/term.hpp"

namespace natlog {

enum class Relation : std::uint8_t { Sub, Equ, Alt };
enum class Direction : std::uint8_t { None, Up, Down };

std::string_view to_string(Relation r);  // "sub", "equ", "alt"
std::string_view symbol(Relation r);     // "⊑", "≡", "|"
std::optional<Relation> relation_from_string(std::string_view s);
std::string_view to_string(Direction d);

struct VoicePair {
  Voice lhs = Voice::Active;
  Voice rhs = Voice::Active;
  friend auto operator<=>(const VoicePair&, const VoicePair&) = default;
};

/// Phrase-level relation. Phrases are space-joined lemma sequences.
struct LexicalRelation {
  std::string lhs;
  Relation rel = Relation::Sub;
  std::string rhs;
  std::optional<VoicePair> voices;

  /// e.g. "hover⊑fly", "slow down⊑treat (active/passive)".
  std::string str() const;
  friend auto operator<=>(const LexicalRelation&, const LexicalRelation&) = default;
};

struct MonotonicityMark {
  std::string functor;
  int position = 1;  // 1-based
  Direction direction = Direction::None;
};

/// Relations, monotonicity marks and subsective modifiers. Immutable once
/// built; lookups are const and safe to share across threads.
///
/// Subsumption is reflexive and follows stored ⊑/≡ chains up to
/// kMaxChainDepth edges. Alternation is symmetric and is inherited downwards
/// through subsumption (a ⊑ a', b ⊑ b', a' | b' gives a | b).
class KnowledgeBase {
 public:
  static constexpr int kMaxChainDepth = 4;

  /// Parse the TSV format. `origin` is used in error messages.
  static KnowledgeBase parse(std::string_view tsv, std::string_view origin = "<kb>");
  static KnowledgeBase load(const std::filesystem::path& path);
  /// The built-in knowledge base.
  static const KnowledgeBase& builtin();
  static std::string_view builtin_tsv();

  void add_relation(LexicalRelation r);
  void add_mark(MonotonicityMark m);
  void add_subsective(std::string lemma);

  /// Canonical TSV: relations, then marks, then subsective lines, each sorted.
  std::string dump() const;

  bool is_subsumed(std::string_view a, std::string_view b) const {
    return subsumption_path(a, b).has_value();
  }
  bool is_alternative(std::string_view a, std::string_view b) const {
    return alternation_path(a, b).has_value();
  }
  bool frame_subsumed(std::string_view a, Voice va, std::string_view b, Voice vb) const {
    return frame_path(a, va, b, vb).has_value();
  }

  /// Stored relations witnessing the lookup (empty for reflexive a ⊑ a).
  std::optional<std::vector<LexicalRelation>> subsumption_path(std::string_view a,
                                                               std::string_view b) const;
  std::optional<std::vector<LexicalRelation>> alternation_path(std::string_view a,
                                                               std::string_view b) const;
  std::optional<std::vector<LexicalRelation>> frame_path(std::string_view a, Voice va,
                                                         std::string_view b, Voice vb) const;

  Direction monotonicity(std::string_view functor, int position) const;
  bool is_subsective(std::string_view lemma) const;
  /// True when the phrase occurs on either side of some stored relation.
  bool mentions(std::string_view phrase) const;

  const std::set<LexicalRelation>& relations() const noexcept { return relations_; }
  const std::map<std::pair<std::string, int>, Direction>& marks() const noexcept { return marks_; }
  const std::set<std::string>& subsective() const noexcept { return subsective_; }

 private:
  using Path = std::vector<LexicalRelation>;
  /// Every phrase reachable upwards from `a` with its shortest path.
  std::map<std::string, Path> up_closure(const std::string& a) const;

  std::set<LexicalRelation> relations_;
  std::map<std::pair<std::string, int>, Direction> marks_;
  std::set<std::string> subsective_;
  std::set<std::string> mentioned_;
};

}  // namespace natlog
