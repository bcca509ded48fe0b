#include "natlog/rules.hpp"

namespace natlog {

namespace {

using Branch = std::vector<std::pair<EntryForm, Sign>>;

std::vector<Term> tail(std::span<const Term> args, std::size_t from) {
  return {args.begin() + static_cast<std::ptrdiff_t>(std::min(from, args.size())), args.end()};
}

Term prefix(const Term& head, std::span<const Term> args, std::size_t n) {
  if (n == 0) return head;
  return Term::apply(head, args.first(n));
}

bool is_determiner_np(const Term& t) {
  return t.is_application() && t.head().is_constant() && t.head().type() == TermType::determiner() &&
         t.args().size() == 1;
}

Expansion make(RuleId rule, std::vector<int> antecedents, std::vector<Branch> branches) {
  Expansion x;
  x.rule = rule;
  x.antecedents = std::move(antecedents);
  x.branches = std::move(branches);
  return x;
}

/// Fill `x` into the site: V:[x] for a head determiner, the verb with the NP
/// replaced for an object site.
EntryForm instantiate_body(const Entry& e, const QuantSite& q, const Term& x) {
  const auto& args = e.form.args;
  if (q.position < 0) return canonical_form(args[1], std::vector<Term>{x});
  std::vector<Term> replaced = args;
  replaced[static_cast<std::size_t>(q.position)] = x;
  return canonical_form(e.form.term, replaced);
}

Term place(const Term& x, const QuantSite& q) {
  if (!x.is_entity()) return x;
  return Term::entity(x.lemma(), q.position < 0 ? std::nullopt : q.np_anchor);
}

}  // namespace

QuantClass quant_class(std::string_view lemma) {
  if (lemma == "some" || lemma == "a" || lemma == "the") return QuantClass::Exists;
  if (lemma == "every" || lemma == "all") return QuantClass::Forall;
  if (lemma == "no") return QuantClass::No;
  return QuantClass::None;
}

std::optional<QuantSite> quant_site(const Entry& e) {
  if (!e.form.is_canonical()) return std::nullopt;
  const Term& head = e.form.term;
  const auto& args = e.form.args;
  if (!head.is_constant()) return std::nullopt;

  QuantSite q;
  std::string_view det;
  if (head.type() == TermType::determiner() && args.size() == 2) {
    det = head.lemma();
    q.noun = args[0];
    q.np_anchor = head.anchor();
  } else if (head.type() == TermType::transitive() && args.size() == 2) {
    int found = -1;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (is_determiner_np(args[i])) {
        if (found >= 0) return std::nullopt;
        found = static_cast<int>(i);
      } else if (!args[i].is_individual()) {
        return std::nullopt;
      }
    }
    if (found < 0) return std::nullopt;
    const Term& np = args[static_cast<std::size_t>(found)];
    det = np.head().lemma();
    q.position = found;
    q.noun = np.args()[0];
    q.np_anchor = np.anchor();
  } else {
    return std::nullopt;
  }

  q.kind = quant_class(det);
  q.effective = e.sign;
  if (q.kind == QuantClass::None) return std::nullopt;
  if (q.kind == QuantClass::No) {
    q.kind = QuantClass::Exists;
    q.effective = flip(e.sign);
  }
  return q;
}

std::optional<Expansion> rule_neg(const Entry& e) {
  const Term& head = e.form.term;
  if (!e.form.is_canonical() || !head.is_constant() || head.lemma() != "not" || e.form.args.empty()) {
    return std::nullopt;
  }
  auto body = canonical_form(e.form.args[0], tail(e.form.args, 1));
  return make(RuleId::Neg, {e.id}, {{{body, flip(e.sign)}}});
}

std::optional<Expansion> rule_and_or(const Entry& e) {
  const Term& head = e.form.term;
  if (!e.form.is_canonical() || !head.is_constant() || e.form.args.size() < 2) return std::nullopt;
  bool is_and = head.lemma() == "and";
  if (!is_and && head.lemma() != "or") return std::nullopt;
  if (!head.type().is_function() || head.type().params().size() != 2) return std::nullopt;

  auto rest = tail(e.form.args, 2);
  auto a = canonical_form(e.form.args[0], rest);
  auto b = canonical_form(e.form.args[1], rest);
  RuleId rule = is_and ? RuleId::And : RuleId::Or;
  bool linear = is_and == (e.sign == Sign::T);
  if (linear) return make(rule, {e.id}, {{{a, e.sign}, {b, e.sign}}});
  return make(rule, {e.id}, {Branch{{a, e.sign}}, Branch{{b, e.sign}}});
}

std::optional<Expansion> rule_adj(const Entry& e, const KnowledgeBase& kb) {
  const Term& head = e.form.term;
  if (e.sign != Sign::T || !e.form.is_canonical() || !head.is_constant() || e.form.args.size() < 2) {
    return std::nullopt;
  }
  const auto& type = head.type();
  if (!type.is_function() || type.params().size() != 1 || type.params()[0].is_function() ||
      !(type.params()[0] == type.result())) {
    return std::nullopt;
  }
  if (!kb.is_subsective(head.lemma())) return std::nullopt;
  auto body = canonical_form(e.form.args[0], tail(e.form.args, 1));
  return make(RuleId::AdjSubT, {e.id}, {{{body, Sign::T}}});
}

std::optional<Expansion> rule_push(const Entry& e) {
  if (e.form.is_canonical()) return std::nullopt;
  return make(RuleId::APush, {e.id}, {{{canonical_form(e.form), e.sign}}});
}

std::optional<Expansion> rule_fresh(const Entry& e, const std::string& name) {
  auto q = quant_site(e);
  if (!q || !is_fresh_site(*q)) return std::nullopt;
  Term x = place(Term::entity(name), *q);
  auto noun = canonical_form(q->noun, std::vector<Term>{Term::entity(name)});
  auto body = instantiate_body(e, *q, x);
  auto out = make(q->kind == QuantClass::Exists ? RuleId::ExistsT : RuleId::ForallF, {e.id},
                  {{{noun, Sign::T}, {body, q->effective}}});
  out.witness = witness_key(x);
  out.fresh = true;
  return out;
}

std::optional<Expansion> rule_instantiate(const Entry& e, const Entry& noun) {
  auto q = quant_site(e);
  if (!q || is_fresh_site(*q) || noun.sign != Sign::T || noun.form.args.empty()) return std::nullopt;
  const Term& x = noun.form.args.back();
  if (!x.is_individual()) return std::nullopt;
  auto expected = canonical_form(q->noun, std::vector<Term>{x});
  if (expected.format_key() != noun.form.format_key()) return std::nullopt;
  RuleId rule = q->position >= 0                  ? RuleId::Substitute
                : q->kind == QuantClass::Exists ? RuleId::ExistsF
                                                  : RuleId::ForallT;
  auto body = instantiate_body(e, *q, place(x, *q));
  return make(rule, {e.id, noun.id}, {{{body, q->effective}}});
}

std::optional<Expansion> rule_instantiate_split(const Entry& e, const Term& x) {
  auto q = quant_site(e);
  if (!q || is_fresh_site(*q) || !x.is_individual()) return std::nullopt;
  RuleId rule = q->position >= 0                  ? RuleId::Substitute
                : q->kind == QuantClass::Exists ? RuleId::ExistsF
                                                  : RuleId::ForallT;
  auto noun = canonical_form(q->noun, std::vector<Term>{place(x, QuantSite{})});
  auto body = instantiate_body(e, *q, place(x, *q));
  auto out = make(rule, {e.id}, {Branch{{noun, Sign::F}}, Branch{{body, q->effective}}});
  out.witness = witness_key(x);
  return out;
}

std::optional<int> monotonicity_position(const Entry& e1, const Entry& e2) {
  const auto& a = e1.form.args;
  const auto& b = e2.form.args;
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  std::optional<int> pos;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (pos) return std::nullopt;
    pos = static_cast<int>(i);
  }
  return pos;
}

std::optional<Expansion> rule_monotonicity(const Entry& e1, const Entry& e2, const std::string& name,
                                           const KnowledgeBase& kb) {
  if (e1.sign != Sign::T || e2.sign != Sign::T) return std::nullopt;
  if (!e1.form.is_canonical() || !e2.form.is_canonical()) return std::nullopt;
  const Term& f = e1.form.term;
  const Term& g = e2.form.term;
  if (!f.is_constant() || !g.is_constant()) return std::nullopt;
  auto pos = monotonicity_position(e1, e2);
  if (!pos) return std::nullopt;
  auto p = static_cast<std::size_t>(*pos);
  const Term& x = e1.form.args[p];
  const Term& y = e2.form.args[p];
  if (!x.type().is_predicate() || !y.type().is_predicate()) return std::nullopt;
  if (f.type() != g.type()) return std::nullopt;

  Direction dir = kb.monotonicity(f.lemma(), *pos + 1);
  if (dir == Direction::None) return std::nullopt;

  Term c = Term::entity(name);
  std::vector<Term> cs{c};
  Branch left = dir == Direction::Up
                    ? Branch{{canonical_form(x, cs), Sign::T}, {canonical_form(y, cs), Sign::F}}
                    : Branch{{canonical_form(y, cs), Sign::T}, {canonical_form(x, cs), Sign::F}};

  std::vector<Term> moved{y};
  auto rest1 = tail(e1.form.args, p + 1);
  auto rest2 = tail(e2.form.args, p + 1);
  std::vector<Term> args1 = moved, args2 = moved;
  args1.insert(args1.end(), rest1.begin(), rest1.end());
  args2.insert(args2.end(), rest2.begin(), rest2.end());
  Branch right{{EntryForm{prefix(f, e1.form.args, p), args1}, Sign::T},
               {EntryForm{prefix(g, e2.form.args, p), args2}, Sign::T}};

  auto out = make(dir == Direction::Up ? RuleId::UpDisCov : RuleId::DownSubst, {e1.id, e2.id},
                  {left, right});
  out.witness = witness_key(c);
  out.fresh = true;
  return out;
}

std::string witness_key(const Term& x) { return x.key(); }

Term witness_term(const std::string& key) {
  if (!key.empty() && key[0] == '#') return Term::entity(key.substr(1));
  return Term::constant(key, TermType::entity());
}

std::optional<Expansion> refire(RuleId rule, std::span<const Entry* const> a,
                                const std::optional<std::string>& witness,
                                const KnowledgeBase& kb) {
  std::optional<Expansion> out;
  auto fresh_name = [&]() -> std::string {
    return witness && !witness->empty() && (*witness)[0] == '#' ? witness->substr(1) : std::string();
  };
  switch (rule) {
    case RuleId::Neg:
      if (a.size() == 1) out = rule_neg(*a[0]);
      break;
    case RuleId::And:
    case RuleId::Or:
      if (a.size() == 1) out = rule_and_or(*a[0]);
      break;
    case RuleId::AdjSubT:
      if (a.size() == 1) out = rule_adj(*a[0], kb);
      break;
    case RuleId::APush:
      if (a.size() == 1) out = rule_push(*a[0]);
      break;
    case RuleId::ExistsT:
    case RuleId::ForallF:
      if (a.size() == 1 && witness) out = rule_fresh(*a[0], fresh_name());
      break;
    case RuleId::ExistsF:
    case RuleId::ForallT:
    case RuleId::Substitute:
      if (a.size() == 2) out = rule_instantiate(*a[0], *a[1]);
      else if (a.size() == 1 && witness) out = rule_instantiate_split(*a[0], witness_term(*witness));
      break;
    case RuleId::UpDisCov:
    case RuleId::DownSubst:
      if (a.size() == 2 && witness) out = rule_monotonicity(*a[0], *a[1], fresh_name(), kb);
      break;
    default:
      break;
  }
  if (out && out->rule != rule) return std::nullopt;
  return out;
}

}  // namespace natlog
