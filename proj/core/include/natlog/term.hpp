#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natlog/error.hpp"

namespace natlog {

enum class BaseType : std::uint8_t { Entity, Truth, Noun, VerbPhrase };

/// Simple types over {e, s, n, vp}. n and vp are one-place predicates: they
/// take an entity and yield a truth value.
class TermType {
 public:
  TermType() = default;

  static TermType entity() { return TermType(BaseType::Entity); }
  static TermType truth() { return TermType(BaseType::Truth); }
  static TermType noun() { return TermType(BaseType::Noun); }
  static TermType verb_phrase() { return TermType(BaseType::VerbPhrase); }
  static TermType function(std::vector<TermType> params, TermType result);

  // Shorthands for the fragment's recurring categories.
  static TermType determiner();   // (n,vp,s)
  static TermType noun_phrase();  // (vp,s), a type-raised NP
  static TermType transitive();   // (e,vp)

  bool is_function() const noexcept { return !params_.empty(); }
  BaseType base() const noexcept { return base_; }
  const std::vector<TermType>& params() const noexcept { return params_; }
  const TermType& result() const;

  /// n or vp: consumes one entity and yields s.
  bool is_predicate() const noexcept {
    return !is_function() && (base_ == BaseType::Noun || base_ == BaseType::VerbPhrase);
  }

  /// Type after consuming one argument, or nullopt if the argument does not fit.
  std::optional<TermType> apply(const TermType& arg) const;

  std::string str() const;
  static TermType parse(std::string_view text);

  friend bool operator==(const TermType& a, const TermType& b);

 private:
  explicit TermType(BaseType b) : base_(b) {}

  BaseType base_ = BaseType::Entity;
  std::vector<TermType> params_;
  std::shared_ptr<const TermType> result_;
};

/// An entity slot also accepts a type-raised noun phrase (object quantifiers).
bool accepts(const TermType& param, const TermType& arg);

/// Byte range [start, end) into sentence `sentence` (1-based: S1, S2, ...).
struct SpanAnchor {
  int sentence = 1;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SpanAnchor&, const SpanAnchor&) = default;
};

enum class Voice : std::uint8_t { Active, Passive };

std::string_view to_string(Voice v);
std::optional<Voice> voice_from_string(std::string_view s);

/// Immutable typed term: a constant, a fresh entity, or an application with an
/// explicit argument list. Applications are kept flat: applying an application
/// extends its argument list rather than nesting.
///
/// Equality is structural over lemmas, voices, entity names and shape. Anchors
/// and the silent flag are annotations and do not take part in it.
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Entity, Application };

  /// Placeholder: an unnamed constant of type e.
  Term();

  static Term constant(std::string lemma, TermType type,
                       std::optional<SpanAnchor> anchor = std::nullopt,
                       Voice voice = Voice::Active, bool silent = false);
  static Term entity(std::string name, std::optional<SpanAnchor> slot = std::nullopt);
  /// Throws TypeError when an argument does not fit.
  static Term apply(const Term& head, std::span<const Term> args,
                    std::optional<SpanAnchor> anchor = std::nullopt);
  static Term apply(const Term& head, std::initializer_list<Term> args,
                    std::optional<SpanAnchor> anchor = std::nullopt) {
    return apply(head, std::span<const Term>(args.begin(), args.size()), anchor);
  }

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool is_entity() const noexcept { return kind() == Kind::Entity; }
  bool is_application() const noexcept { return kind() == Kind::Application; }

  /// Lemma of a constant, name of an entity; empty for applications.
  const std::string& lemma() const noexcept;
  const TermType& type() const noexcept;
  const std::optional<SpanAnchor>& anchor() const noexcept;
  Voice voice() const noexcept;
  bool silent() const noexcept;

  /// Application parts. For non-applications head() is the term itself and
  /// args() is empty.
  const Term& head() const noexcept;
  std::span<const Term> args() const noexcept;

  /// Structural identity string, e.g. "(many bird (high hover))".
  const std::string& key() const noexcept;
  /// Space-joined lemmas in head-first order, used for lexicon lookups.
  std::string phrase() const;

  /// Individual (type e): an entity or a name constant.
  bool is_individual() const noexcept;

  Term with_anchor(std::optional<SpanAnchor> anchor) const;

  friend bool operator==(const Term& a, const Term& b) noexcept { return a.key() == b.key(); }
  friend bool operator<(const Term& a, const Term& b) noexcept { return a.key() < b.key(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A term paired with its explicit argument list: "term : [args]".
/// "A B C : []", "A B : [C]" and "A : [B, C]" denote the same thing.
struct EntryForm {
  Term term;
  std::vector<Term> args;

  /// Type after applying args to term; throws TypeError when ill-typed.
  TermType type() const;
  /// Key of the canonical form; equal for differently formatted same terms.
  std::string canonical_key() const;
  /// Key of this exact formatting.
  std::string format_key() const;
  bool is_canonical() const noexcept { return !term.is_application(); }
  /// The whole thing as one term (term applied to args).
  Term whole() const;
};

/// Move the first listed argument into the term: A : [B, C] -> A B : [C].
EntryForm push_arg(const EntryForm& f);
/// Move the term's last argument to the front of the list: A B : [C] -> A : [B, C].
EntryForm pop_arg(const EntryForm& f);
/// Fully popped form: bare head and complete argument list. Idempotent.
EntryForm canonical_form(const Term& t, std::span<const Term> args = {});
inline EntryForm canonical_form(const EntryForm& f) { return canonical_form(f.term, f.args); }

}  // namespace natlog
