#include "natlog/oracle.hpp"

#include <bit>
#include <functional>
#include <map>
#include <stdexcept>

namespace natlog {

std::string_view to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Countermodel: return "countermodel";
    case OracleVerdict::None: return "none";
    case OracleVerdict::Abstain: return "abstain";
  }
  return "none";
}

std::string FiniteModel::str() const {
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += ", ";
  };
  for (const auto& [name, elems] : predicates) {
    sep();
    out += name + "={";
    for (std::size_t i = 0; i < elems.size(); ++i) out += (i ? "," : "") + std::to_string(elems[i]);
    out += "}";
  }
  for (const auto& [name, pairs] : relations) {
    sep();
    out += name + "={";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out += (i ? "," : "") + std::string("(") + std::to_string(pairs[i].first) + "," +
             std::to_string(pairs[i].second) + ")";
    }
    out += "}";
  }
  for (const auto& [name, e] : names) {
    sep();
    out += name + "=" + std::to_string(e);
  }
  return out;
}

namespace {

constexpr int kMaxUniverse = 8;  // relations are k*k bits in a 64-bit word

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Env {
  int k = 0;
  std::uint32_t full = 0;
  const std::vector<std::uint32_t>* unary = nullptr;
  const std::vector<std::uint64_t>* binary = nullptr;
  const std::vector<int>* names = nullptr;
};

using MaskFn = std::function<std::uint32_t(const Env&)>;
using BoolFn = std::function<bool(const Env&)>;
using ElemFn = std::function<int(const Env&)>;

bool quantify(std::string_view det, std::uint32_t n, std::uint32_t v) {
  int both = std::popcount(n & v);
  int size = std::popcount(n);
  if (det == "some" || det == "a" || det == "the") return both > 0;
  if (det == "every" || det == "all") return (n & ~v) == 0;
  if (det == "no") return both == 0;
  if (det == "many") return size > 0 && 2 * both > size;
  if (det == "few") return 2 * both < size;
  throw Unsupported("determiner " + std::string(det));
}

struct Modifier {
  int symbol;
  std::string lemma;
  MaskFn head;
};

struct Symbols {
  std::vector<std::string> unary, binary, names;
  std::map<std::string, int> unary_ix, binary_ix, name_ix;
  std::vector<Modifier> modifiers;

  static int intern(std::vector<std::string>& v, std::map<std::string, int>& ix, const std::string& s) {
    auto [it, fresh] = ix.emplace(s, static_cast<int>(v.size()));
    if (fresh) v.push_back(s);
    return it->second;
  }
  int unary_symbol(const std::string& s) { return intern(unary, unary_ix, s); }
  int binary_symbol(const std::string& s) { return intern(binary, binary_ix, s); }
  int name_symbol(const std::string& s) { return intern(names, name_ix, s); }
};

std::vector<Term> with(std::span<const Term> a, std::span<const Term> b) {
  std::vector<Term> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_modifier_type(const TermType& t) {
  return t.is_function() && t.params().size() == 1 && t.params()[0].is_predicate() &&
         t.params()[0] == t.result();
}

class Compiler {
 public:
  explicit Compiler(Symbols& s) : s_(s) {}

  BoolFn truth(const Term& t) { return truth_app(t.head(), t.args()); }

 private:
  BoolFn truth_app(const Term& head, std::span<const Term> args) {
    if (head.is_constant() && head.type() == TermType::determiner() && args.size() == 2) {
      std::string det = head.lemma();
      quantify(det, 0, 0);  // reject unknown determiners now
      auto n = mask_of(args[0], {});
      auto v = mask_of(args[1], {});
      return [det, n, v](const Env& e) { return quantify(det, n(e), v(e)); };
    }
    if (head.is_constant() && head.lemma() == "not" && args.size() == 1 &&
        head.type() == TermType::function({TermType::truth()}, TermType::truth())) {
      auto body = truth(args[0]);
      return [body](const Env& e) { return !body(e); };
    }
    if (!args.empty() && args.back().is_individual()) {
      auto pred = mask_app(head, args.first(args.size() - 1));
      auto x = elem(args.back());
      return [pred, x](const Env& e) { return ((pred(e) >> x(e)) & 1u) != 0; };
    }
    throw Unsupported("sentence " + Term::apply(head, args).key());
  }

  ElemFn elem(const Term& t) {
    if (t.is_constant() && t.type() == TermType::entity()) {
      int ix = s_.name_symbol(t.lemma());
      return [ix](const Env& e) { return (*e.names)[static_cast<std::size_t>(ix)]; };
    }
    throw Unsupported("individual " + t.key());
  }

  MaskFn mask_of(const Term& t, std::span<const Term> extra) {
    auto args = with(t.args(), extra);
    return mask_app(t.head(), args);
  }

  MaskFn mask_app(const Term& head, std::span<const Term> args) {
    if (!head.is_constant()) throw Unsupported("head " + head.key());
    const auto& type = head.type();
    if (args.empty() && type.is_predicate()) {
      int ix = s_.unary_symbol(head.lemma());
      return [ix](const Env& e) { return (*e.unary)[static_cast<std::size_t>(ix)]; };
    }
    const auto& lemma = head.lemma();
    if (lemma == "not" && args.size() >= 1 && type.is_function() && type.params().size() == 1) {
      auto body = mask_of(args[0], args.subspan(1));
      return [body](const Env& e) { return ~body(e) & e.full; };
    }
    if ((lemma == "and" || lemma == "or") && args.size() >= 2 && type.is_function() &&
        type.params().size() == 2) {
      auto a = mask_of(args[0], args.subspan(2));
      auto b = mask_of(args[1], args.subspan(2));
      if (lemma == "and") return [a, b](const Env& e) { return a(e) & b(e); };
      return [a, b](const Env& e) { return a(e) | b(e); };
    }
    if (is_modifier_type(type) && args.size() == 1) {
      int ix = s_.unary_symbol(Term::apply(head, args).phrase());
      s_.modifiers.push_back({ix, lemma, mask_of(args[0], {})});
      return [ix](const Env& e) { return (*e.unary)[static_cast<std::size_t>(ix)]; };
    }
    if (type == TermType::transitive() && args.size() == 1) {
      int rel = s_.binary_symbol(lemma);
      bool passive = head.voice() == Voice::Passive;
      const Term& obj = args[0];
      // holds(x, y): y (the clause subject) stands in the verb's relation to x.
      auto related = [rel, passive](const Env& e, int x, int y) {
        std::uint64_t r = (*e.binary)[static_cast<std::size_t>(rel)];
        int bit = passive ? x * e.k + y : y * e.k + x;
        return ((r >> bit) & 1u) != 0;
      };
      if (obj.is_individual()) {
        auto x = elem(obj);
        return [x, related](const Env& e) {
          std::uint32_t m = 0;
          int xv = x(e);
          for (int y = 0; y < e.k; ++y) {
            if (related(e, xv, y)) m |= 1u << y;
          }
          return m;
        };
      }
      if (obj.is_application() && obj.head().is_constant() &&
          obj.head().type() == TermType::determiner() && obj.args().size() == 1) {
        std::string det = obj.head().lemma();
        quantify(det, 0, 0);
        auto noun = mask_of(obj.args()[0], {});
        return [det, noun, related](const Env& e) {
          std::uint32_t n = noun(e);
          std::uint32_t m = 0;
          for (int y = 0; y < e.k; ++y) {
            std::uint32_t xs = 0;
            for (int x = 0; x < e.k; ++x) {
              if (related(e, x, y)) xs |= 1u << x;
            }
            if (quantify(det, n, xs)) m |= 1u << y;
          }
          return m;
        };
      }
    }
    throw Unsupported("predicate " + Term::apply(head, args).key());
  }

  Symbols& s_;
};

struct Constraint {
  enum Kind { Sub, Alt } kind;
  int a, b;
};

std::vector<Constraint> pairwise(const std::vector<std::string>& symbols, const KnowledgeBase& kb,
                                 bool binary) {
  std::vector<Constraint> out;
  for (int i = 0; i < static_cast<int>(symbols.size()); ++i) {
    for (int j = 0; j < static_cast<int>(symbols.size()); ++j) {
      if (i == j) continue;
      const auto& a = symbols[static_cast<std::size_t>(i)];
      const auto& b = symbols[static_cast<std::size_t>(j)];
      bool sub = kb.is_subsumed(a, b);
      if (binary) {
        for (Voice va : {Voice::Active, Voice::Passive}) {
          for (Voice vb : {Voice::Active, Voice::Passive}) sub = sub || kb.frame_subsumed(a, va, b, vb);
        }
      }
      if (sub) out.push_back({Constraint::Sub, i, j});
      if (i < j && kb.is_alternative(a, b)) out.push_back({Constraint::Alt, i, j});
    }
  }
  return out;
}

template <typename Word>
bool satisfied(const std::vector<Constraint>& cs, const std::vector<Word>& v) {
  for (const auto& c : cs) {
    Word a = v[static_cast<std::size_t>(c.a)];
    Word b = v[static_cast<std::size_t>(c.b)];
    if (c.kind == Constraint::Sub ? (a & ~b) != 0 : (a & b) != 0) return false;
  }
  return true;
}

FiniteModel to_model(const Symbols& s, const Env& e) {
  FiniteModel m;
  m.size = e.k;
  for (std::size_t i = 0; i < s.unary.size(); ++i) {
    std::vector<int> elems;
    for (int x = 0; x < e.k; ++x) {
      if (((*e.unary)[i] >> x) & 1u) elems.push_back(x + 1);
    }
    m.predicates.emplace_back(s.unary[i], std::move(elems));
  }
  for (std::size_t i = 0; i < s.binary.size(); ++i) {
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < e.k; ++x) {
      for (int y = 0; y < e.k; ++y) {
        if (((*e.binary)[i] >> (x * e.k + y)) & 1u) pairs.emplace_back(x + 1, y + 1);
      }
    }
    m.relations.emplace_back(s.binary[i], std::move(pairs));
  }
  for (std::size_t i = 0; i < s.names.size(); ++i) m.names.emplace_back(s.names[i], (*e.names)[i] + 1);
  return m;
}

}  // namespace

OracleResult countermodel_search(const std::vector<Term>& premises, const Term& hypothesis, Label relation,
                                 const KnowledgeBase& kb, int max_size, std::uint64_t max_models) {
  OracleResult out;
  if (relation == Label::Neutral) {
    out.verdict = OracleVerdict::Abstain;
    out.reason = "neutral is not a searchable relation";
    return out;
  }
  Symbols s;
  std::vector<BoolFn> prem;
  BoolFn hyp;
  try {
    Compiler c(s);
    for (const auto& p : premises) prem.push_back(c.truth(p));
    hyp = c.truth(hypothesis);
  } catch (const Unsupported& e) {
    out.verdict = OracleVerdict::Abstain;
    out.reason = std::string("outside the oracle fragment: ") + e.what();
    return out;
  } catch (const TypeError& e) {
    out.verdict = OracleVerdict::Abstain;
    out.reason = std::string("ill-typed: ") + e.what();
    return out;
  }
  auto unary_cs = pairwise(s.unary, kb, false);
  auto binary_cs = pairwise(s.binary, kb, true);
  bool want_h = relation == Label::Contradiction;

  for (int k = 1; k <= std::min(max_size, kMaxUniverse); ++k) {
    // Digits: unary masks, then relations, then names; the first is most significant.
    std::vector<std::uint64_t> radix;
    for (std::size_t i = 0; i < s.unary.size(); ++i) radix.push_back(1ull << k);
    for (std::size_t i = 0; i < s.binary.size(); ++i) {
      radix.push_back(k * k >= 64 ? 0 : 1ull << (k * k));
    }
    for (std::size_t i = 0; i < s.names.size(); ++i) radix.push_back(static_cast<std::uint64_t>(k));
    double total = 1;
    for (auto r : radix) total *= r == 0 ? 18446744073709551616.0 : static_cast<double>(r);
    if (total > static_cast<double>(max_models)) {
      out.verdict = OracleVerdict::Abstain;
      out.reason = "model space at size " + std::to_string(k) + " exceeds " + std::to_string(max_models);
      return out;
    }

    std::vector<std::uint64_t> digits(radix.size(), 0);
    std::vector<std::uint32_t> unary(s.unary.size());
    std::vector<std::uint64_t> binary(s.binary.size());
    std::vector<int> names(s.names.size());
    Env env{k, (1u << k) - 1, &unary, &binary, &names};
    for (;;) {
      std::size_t d = 0;
      for (auto& u : unary) u = static_cast<std::uint32_t>(digits[d++]);
      for (auto& b : binary) b = digits[d++];
      for (auto& n : names) n = static_cast<int>(digits[d++]);
      ++out.models_checked;

      bool ok = satisfied(unary_cs, unary) && satisfied(binary_cs, binary);
      for (std::size_t m = 0; ok && m < s.modifiers.size(); ++m) {
        const auto& mod = s.modifiers[m];
        if (kb.is_subsective(mod.lemma) && (unary[static_cast<std::size_t>(mod.symbol)] & ~mod.head(env)) != 0) {
          ok = false;
        }
      }
      for (std::size_t p = 0; ok && p < prem.size(); ++p) ok = prem[p](env);
      if (ok && hyp(env) == want_h) {
        out.verdict = OracleVerdict::Countermodel;
        out.model = to_model(s, env);
        return out;
      }

      std::size_t i = digits.size();
      while (i > 0) {
        --i;
        if (++digits[i] < radix[i]) break;
        digits[i] = 0;
        if (i == 0) i = std::string::npos;
        if (i == std::string::npos) break;
      }
      if (i == std::string::npos || digits.empty()) break;
    }
  }
  out.verdict = OracleVerdict::None;
  return out;
}

OracleResult countermodel_search(const ParsedProblem& p, Label relation, const KnowledgeBase& kb,
                                 int max_size, std::uint64_t max_models) {
  std::vector<Term> premises;
  for (const auto& s : p.premises) premises.push_back(s.root);
  return countermodel_search(premises, p.hypothesis.root, relation, kb, max_size, max_models);
}

std::optional<bool> holds(const Term& sentence, const FiniteModel& m) {
  Symbols s;
  BoolFn f;
  try {
    f = Compiler(s).truth(sentence);
  } catch (const Unsupported&) {
    return std::nullopt;
  }
  if (m.size < 1 || m.size > kMaxUniverse) return std::nullopt;
  std::vector<std::uint32_t> unary;
  std::vector<std::uint64_t> binary;
  std::vector<int> names;
  for (const auto& name : s.unary) {
    auto it = std::find_if(m.predicates.begin(), m.predicates.end(), [&](const auto& p) { return p.first == name; });
    if (it == m.predicates.end()) return std::nullopt;
    std::uint32_t mask = 0;
    for (int x : it->second) mask |= 1u << (x - 1);
    unary.push_back(mask);
  }
  for (const auto& name : s.binary) {
    auto it = std::find_if(m.relations.begin(), m.relations.end(), [&](const auto& p) { return p.first == name; });
    if (it == m.relations.end()) return std::nullopt;
    std::uint64_t mask = 0;
    for (auto [x, y] : it->second) mask |= 1ull << ((x - 1) * m.size + (y - 1));
    binary.push_back(mask);
  }
  for (const auto& name : s.names) {
    auto it = std::find_if(m.names.begin(), m.names.end(), [&](const auto& p) { return p.first == name; });
    if (it == m.names.end()) return std::nullopt;
    names.push_back(it->second - 1);
  }
  Env env{m.size, (1u << m.size) - 1, &unary, &binary, &names};
  return f(env);
}

}  // namespace natlog
