#include "natlog/term.hpp"

#include <cctype>

namespace natlog {

// ---------------------------------------------------------------- TermType

TermType TermType::function(std::vector<TermType> params, TermType result) {
  if (params.empty()) {
    throw TypeError("function type needs at least one parameter");
  }
  TermType t;
  t.params_ = std::move(params);
  t.result_ = std::make_shared<const TermType>(std::move(result));
  return t;
}

TermType TermType::determiner() {
  return function({noun(), verb_phrase()}, truth());
}

TermType TermType::noun_phrase() { return function({verb_phrase()}, truth()); }

TermType TermType::transitive() { return function({entity()}, verb_phrase()); }

const TermType& TermType::result() const {
  if (!result_) throw TypeError("result() of a base type");
  return *result_;
}

bool operator==(const TermType& a, const TermType& b) {
  if (a.is_function() != b.is_function()) return false;
  if (!a.is_function()) return a.base_ == b.base_;
  return a.params_ == b.params_ && *a.result_ == *b.result_;
}

bool accepts(const TermType& param, const TermType& arg) {
  if (param == arg) return true;
  return param == TermType::entity() && arg == TermType::noun_phrase();
}

std::optional<TermType> TermType::apply(const TermType& arg) const {
  if (is_function()) {
    if (!accepts(params_.front(), arg)) return std::nullopt;
    if (params_.size() == 1) return *result_;
    return function(std::vector<TermType>(params_.begin() + 1, params_.end()), *result_);
  }
  if (is_predicate() && arg == entity()) return truth();
  return std::nullopt;
}

std::string TermType::str() const {
  if (!is_function()) {
    switch (base_) {
      case BaseType::Entity: return "e";
      case BaseType::Truth: return "s";
      case BaseType::Noun: return "n";
      case BaseType::VerbPhrase: return "vp";
    }
  }
  std::string out = "(";
  for (const auto& p : params_) {
    out += p.str();
    out += ',';
  }
  out += result_->str();
  out += ')';
  return out;
}

namespace {

struct TypeReader {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail() const {
    throw TypeError("malformed type '" + std::string(text) + "' at " + std::to_string(pos));
  }

  TermType read() {
    if (pos >= text.size()) fail();
    if (text[pos] == '(') {
      ++pos;
      std::vector<TermType> parts;
      parts.push_back(read());
      while (pos < text.size() && text[pos] == ',') {
        ++pos;
        parts.push_back(read());
      }
      if (pos >= text.size() || text[pos] != ')' || parts.size() < 2) fail();
      ++pos;
      TermType result = parts.back();
      parts.pop_back();
      return TermType::function(std::move(parts), std::move(result));
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    auto word = text.substr(start, pos - start);
    if (word == "e") return TermType::entity();
    if (word == "s") return TermType::truth();
    if (word == "n") return TermType::noun();
    if (word == "vp") return TermType::verb_phrase();
    fail();
  }
};

}  // namespace

TermType TermType::parse(std::string_view text) {
  TypeReader r{text};
  TermType t = r.read();
  if (r.pos != text.size()) r.fail();
  return t;
}

std::string_view to_string(Voice v) { return v == Voice::Active ? "active" : "passive"; }

std::optional<Voice> voice_from_string(std::string_view s) {
  if (s == "active") return Voice::Active;
  if (s == "passive") return Voice::Passive;
  return std::nullopt;
}

// ---------------------------------------------------------------- Term

struct Term::Node {
  Kind kind = Kind::Constant;
  std::string lemma;
  TermType type;
  std::optional<SpanAnchor> anchor;
  Voice voice = Voice::Active;
  bool silent = false;
  std::vector<Term> parts;  // applications: head followed by args
  std::string key;
};

Term::Term() {
  static const std::shared_ptr<const Node> empty = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->type = TermType::entity();
    return std::shared_ptr<const Node>(std::move(n));
  }();
  node_ = empty;
}

Term Term::constant(std::string lemma, TermType type, std::optional<SpanAnchor> anchor, Voice voice,
                    bool silent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->key = voice == Voice::Passive ? lemma + "/p" : lemma;
  n->lemma = std::move(lemma);
  n->type = std::move(type);
  n->anchor = anchor;
  n->voice = voice;
  n->silent = silent;
  return Term(std::move(n));
}

Term Term::entity(std::string name, std::optional<SpanAnchor> slot) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Entity;
  n->key = "#" + name;
  n->lemma = std::move(name);
  n->type = TermType::entity();
  n->anchor = slot;
  return Term(std::move(n));
}

Term Term::apply(const Term& head, std::span<const Term> args, std::optional<SpanAnchor> anchor) {
  if (args.empty()) return anchor ? head.with_anchor(anchor) : head;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Application;
  n->anchor = anchor;
  if (head.is_application()) {
    n->parts.assign(head.node_->parts.begin(), head.node_->parts.end());
    if (!anchor) n->anchor = head.anchor();
  } else {
    n->parts.push_back(head);
  }
  TermType t = head.type();
  for (const auto& a : args) {
    auto next = t.apply(a.type());
    if (!next) {
      throw TypeError("cannot apply " + head.key() + " : " + t.str() + " to " + a.key() + " : " +
                      a.type().str());
    }
    t = std::move(*next);
    n->parts.push_back(a);
  }
  n->type = std::move(t);
  n->key = "(";
  for (std::size_t i = 0; i < n->parts.size(); ++i) {
    if (i) n->key += ' ';
    n->key += n->parts[i].key();
  }
  n->key += ')';
  return Term(std::move(n));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::lemma() const noexcept { return node_->lemma; }
const TermType& Term::type() const noexcept { return node_->type; }
const std::optional<SpanAnchor>& Term::anchor() const noexcept { return node_->anchor; }
Voice Term::voice() const noexcept { return node_->voice; }
bool Term::silent() const noexcept { return node_->silent; }
const std::string& Term::key() const noexcept { return node_->key; }

const Term& Term::head() const noexcept {
  return is_application() ? node_->parts.front() : *this;
}

std::span<const Term> Term::args() const noexcept {
  if (!is_application()) return {};
  return std::span<const Term>(node_->parts).subspan(1);
}

bool Term::is_individual() const noexcept {
  return is_entity() || (is_constant() && type() == TermType::entity());
}

std::string Term::phrase() const {
  switch (kind()) {
    case Kind::Constant: return lemma();
    case Kind::Entity: return "#" + lemma();
    case Kind::Application: break;
  }
  std::string out;
  for (const auto& p : node_->parts) {
    if (!out.empty()) out += ' ';
    out += p.phrase();
  }
  return out;
}

Term Term::with_anchor(std::optional<SpanAnchor> anchor) const {
  auto n = std::make_shared<Node>(*node_);
  n->anchor = anchor;
  return Term(std::move(n));
}

// ---------------------------------------------------------------- EntryForm

TermType EntryForm::type() const {
  TermType t = term.type();
  for (const auto& a : args) {
    auto next = t.apply(a.type());
    if (!next) throw TypeError("ill-typed entry: " + format_key());
    t = std::move(*next);
  }
  return t;
}

Term EntryForm::whole() const { return Term::apply(term, args); }

std::string EntryForm::canonical_key() const { return canonical_form(*this).format_key(); }

std::string EntryForm::format_key() const {
  std::string out = term.key() + " : [";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].key();
  }
  out += ']';
  return out;
}

EntryForm push_arg(const EntryForm& f) {
  if (f.args.empty()) throw BoundaryError("push_arg: argument list is empty");
  f.type();
  Term merged = Term::apply(f.term, std::span<const Term>(f.args).first(1));
  return EntryForm{merged, std::vector<Term>(f.args.begin() + 1, f.args.end())};
}

EntryForm pop_arg(const EntryForm& f) {
  if (!f.term.is_application()) {
    throw BoundaryError("pop_arg: " + f.term.key() + " has no argument to pop");
  }
  f.type();
  auto inner = f.term.args();
  Term rest = Term::apply(f.term.head(), inner.first(inner.size() - 1));
  std::vector<Term> args;
  args.reserve(f.args.size() + 1);
  args.push_back(inner.back());
  args.insert(args.end(), f.args.begin(), f.args.end());
  return EntryForm{rest, std::move(args)};
}

EntryForm canonical_form(const Term& t, std::span<const Term> args) {
  EntryForm f{t, std::vector<Term>(args.begin(), args.end())};
  f.type();
  if (!t.is_application()) return f;
  std::vector<Term> all(t.args().begin(), t.args().end());
  all.insert(all.end(), args.begin(), args.end());
  return EntryForm{t.head(), std::move(all)};
}

}  // namespace natlog
