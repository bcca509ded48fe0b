#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/lexicon.hpp"
#include "natlog/surface.hpp"
#include "natlog/term.hpp"

namespace natlog {

enum class Sign : std::uint8_t { T, F };

inline Sign flip(Sign s) { return s == Sign::T ? Sign::F : Sign::T; }
std::string_view to_string(Sign s);
std::optional<Sign> sign_from_string(std::string_view s);

enum class RuleId : std::uint8_t {
  Neg,
  And,
  Or,
  ExistsT,
  ForallF,
  ExistsF,
  ForallT,
  Substitute,
  UpDisCov,
  DownSubst,
  AdjSubT,
  APush,
  XSub,
  XAlt,
  XFrameAlt,
};

/// Stable ASCII id used in files ("exists_F", "adj_sub_T", ...).
std::string_view rule_id(RuleId r);
/// Display name ("∃_F", "adj⊂_T", ...).
std::string_view rule_display(RuleId r);
std::optional<RuleId> rule_from_id(std::string_view id);
bool is_closure_rule(RuleId r);

struct Entry {
  int id = 0;
  EntryForm form;
  Sign sign = Sign::T;
  SurfaceExpr surface;
  int segment = 0;
  int produced_by = 0;  // application id, 0 for roots
};

struct RuleApplication {
  int id = 0;
  RuleId rule = RuleId::Neg;
  std::vector<int> antecedents;
  std::vector<int> segments;  // produced child segments, left to right
  /// Entity or individual the rule was instantiated with, if any.
  std::optional<std::string> witness;
};

struct Closure {
  int id = 0;  // closures take node ids from the same counter as entries
  RuleId rule = RuleId::XSub;
  std::vector<int> antecedents;
  int segment = 0;  // the closed leaf
  std::vector<LexicalRelation> relations;
};

struct Segment {
  int id = 0;
  int parent = -1;
  int application = 0;  // 0 for the root segment
  std::vector<int> entries;
  std::vector<int> children;
  std::optional<int> closure;  // index into closures()
};

struct Budget {
  int max_entries = 500;
  int max_fresh = 4;
  int max_rule_applications = 2000;
};

enum class Status : std::uint8_t { Closed, Open, BudgetExhausted };
std::string_view to_string(Status s);

struct RootSpec {
  Term term;
  Sign sign = Sign::T;
  int sentence = 1;
};

class Tableau {
 public:
  Tableau(ProblemText text, const std::vector<RootSpec>& roots);

  const ProblemText& text() const noexcept { return text_; }
  const std::vector<RootSpec>& roots() const noexcept { return roots_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<RuleApplication>& applications() const noexcept { return applications_; }
  const std::vector<Closure>& closures() const noexcept { return closures_; }

  /// Entry by node id; throws std::out_of_range for unknown or closure ids.
  const Entry& entry(int id) const;
  const RuleApplication& application(int id) const { return applications_.at(id - 1); }
  int fresh_count() const noexcept { return fresh_count_; }
  int root_count() const noexcept { return root_count_; }

  /// Leaf segment ids, left to right.
  std::vector<int> leaves() const;
  /// Segment ids from the root down to `segment`.
  std::vector<int> path(int segment) const;
  /// Entry ids on the branch ending at leaf `segment`, in creation order.
  std::vector<int> branch(int segment) const;
  bool is_closed(int leaf) const { return segments_.at(leaf).closure.has_value(); }
  bool closed() const;

  // Growth. Used by the saturation loop and by replay.
  std::string next_fresh_name() const;
  /// Adds one application producing one child segment per entry list.
  int extend(int leaf, RuleId rule, std::vector<int> antecedents,
             std::optional<std::string> witness,
             const std::vector<std::vector<std::pair<EntryForm, Sign>>>& branches,
             bool fresh);
  void close(int leaf, RuleId rule, std::vector<int> antecedents,
             std::vector<LexicalRelation> relations);

 private:
  int new_id() { return next_id_++; }

  ProblemText text_;
  std::vector<RootSpec> roots_;
  std::vector<Entry> entries_;
  std::vector<int> index_;  // node id -> index into entries_, -1 for closures
  std::vector<Segment> segments_;
  std::vector<RuleApplication> applications_;
  std::vector<Closure> closures_;
  int next_id_ = 1;
  int fresh_count_ = 0;
  int root_count_ = 0;
};

struct ClosureFound {
  RuleId rule = RuleId::XSub;
  std::vector<int> antecedents;
  std::vector<LexicalRelation> relations;
};

/// Closure test on one pair of canonical entries (either order).
std::optional<ClosureFound> closure_between(const Entry& a, const Entry& b,
                                            const KnowledgeBase& kb);

/// First closure on the branch ending at `leaf`, newest pair first. Only
/// canonical entries take part.
std::optional<ClosureFound> check_closure(const Tableau& t, int leaf, const KnowledgeBase& kb);

struct SaturationResult {
  Status status = Status::Open;
  int rule_applications = 0;
};

/// Grow the tableau until every branch is closed, an open branch saturates,
/// or the budget runs out. Deterministic.
SaturationResult saturate(Tableau& t, const KnowledgeBase& kb, const Budget& budget);

/// Re-derive every application and closure from its antecedents and check
/// the result is the identical tableau. Returns a description of the first
/// mismatch, or nullopt.
std::optional<std::string> verify_derivation(const Tableau& t, const KnowledgeBase& kb);

}  // namespace natlog
