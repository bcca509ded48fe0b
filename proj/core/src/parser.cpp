#include "natlog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace natlog {

namespace {

enum class Cat { Det, Noun, Adj, IVerb, TVerb, Participle, Adv };

struct WordInfo {
  Cat cat;
  std::string lemma;
  bool plural = false;
};

using Table = std::multimap<std::string, WordInfo, std::less<>>;

const Table& vocabulary() {
  static const Table table = [] {
    Table t;
    auto add = [&t](std::string form, Cat cat, std::string lemma, bool plural = false) {
      t.emplace(std::move(form), WordInfo{cat, std::move(lemma), plural});
    };
    for (auto d : {"some", "every", "all", "no", "few", "many", "the"}) add(d, Cat::Det, d);
    add("a", Cat::Det, "a");
    add("an", Cat::Det, "a");

    const std::pair<const char*, const char*> nouns[] = {
        {"bird", "birds"},   {"animal", "animals"}, {"dog", "dogs"},     {"cat", "cats"},
        {"drug", "drugs"},   {"disease", "diseases"}, {"mouse", "mice"}, {"idea", "ideas"},
        {"person", "people"}, {"child", "children"}, {"insect", "insects"}, {"fish", "fish"}};
    for (auto [sg, pl] : nouns) {
      add(sg, Cat::Noun, sg, std::string_view(sg) == pl);
      if (std::string_view(sg) != pl) add(pl, Cat::Noun, sg, true);
    }
    for (auto a : {"small", "big", "red", "colorless", "young", "old", "green"}) add(a, Cat::Adj, a);

    const std::pair<const char*, const char*> iverbs[] = {
        {"fly", "flies"},   {"hover", "hovers"}, {"move", "moves"}, {"sleep", "sleeps"},
        {"run", "runs"},    {"swim", "swims"},   {"bark", "barks"}, {"work", "works"},
        {"sing", "sings"},  {"walk", "walks"}};
    for (auto [base, sg] : iverbs) {
      add(base, Cat::IVerb, base);
      add(sg, Cat::IVerb, base);
    }
    struct TV {
      const char* base;
      const char* sg;
      const char* participle;
    };
    const TV tverbs[] = {{"slow down", "slows down", "slowed down"},
                         {"halt", "halts", "halted"},
                         {"treat", "treats", "treated"},
                         {"chase", "chases", "chased"},
                         {"like", "likes", "liked"},
                         {"eat", "eats", "eaten"},
                         {"see", "sees", "seen"},
                         {"cure", "cures", "cured"},
                         {"administer", "administers", "administered"}};
    for (const auto& v : tverbs) {
      add(v.base, Cat::TVerb, v.base);
      add(v.sg, Cat::TVerb, v.base);
      add(v.participle, Cat::Participle, v.base);
    }
    for (auto a : {"high", "fast", "quickly", "slowly", "best", "furiously", "badly", "well", "loudly"}) {
      add(a, Cat::Adv, a);
    }
    return t;
  }();
  return table;
}

const std::vector<std::string>& reserved() {
  static const std::vector<std::string> r{"that", "and", "or",  "not",   "does",
                                          "do",   "is",  "are", "using", "by"};
  return r;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<WordInfo> find(std::string_view form, Cat cat) {
  auto [lo, hi] = vocabulary().equal_range(form);
  for (auto it = lo; it != hi; ++it) {
    if (it->second.cat == cat) return it->second;
  }
  return std::nullopt;
}

bool known(std::string_view form) {
  return vocabulary().contains(form) ||
         std::find(reserved().begin(), reserved().end(), form) != reserved().end();
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    out.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  if (!out.empty()) {
    auto& last = out.back();
    while (!last.text.empty() && (last.text.back() == '.' || last.text.back() == '!' ||
                                  last.text.back() == '?')) {
      last.text.pop_back();
      --last.end;
    }
    if (last.text.empty()) out.pop_back();
  }
  return out;
}

struct NounPhrase {
  std::optional<Term> det;  // absent for names
  Term body;                // nominal, or the name constant
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive token index
};

class Parser {
 public:
  Parser(std::string_view text, int sid) : text_(text), sid_(sid), toks_(tokenize(text)) {}

  FragmentSentence run() {
    if (toks_.empty()) fail("empty sentence");
    Term root = sentence();
    if (!at_end()) fail("unexpected token");
    return FragmentSentence{std::string(text_), sid_, toks_, root,
                            passive_ ? Voice::Passive : Voice::Active};
  }

 private:
  bool at_end(std::size_t k = 0) const { return i_ + k >= toks_.size(); }
  std::string low(std::size_t k = 0) const { return at_end(k) ? "" : lower(toks_[i_ + k].text); }

  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) {
      throw ParseError("S" + std::to_string(sid_) + ": " + what + " at end of sentence", "",
                       text_.size());
    }
    const auto& t = toks_[i_];
    throw ParseError("S" + std::to_string(sid_) + ": " + what + " '" + t.text + "' at offset " +
                         std::to_string(t.start),
                     t.text, t.start);
  }

  SpanAnchor span(std::size_t first, std::size_t last) const {
    return SpanAnchor{sid_, toks_[first].start, toks_[last - 1].end};
  }

  /// Longest match of a (possibly two-token) word form in the given category.
  std::optional<std::pair<WordInfo, std::size_t>> match(Cat cat, std::size_t k = 0) const {
    if (at_end(k)) return std::nullopt;
    if (!at_end(k + 1)) {
      if (auto w = find(low(k) + " " + low(k + 1), cat)) return std::pair{*w, std::size_t{2}};
    }
    if (auto w = find(low(k), cat)) return std::pair{*w, std::size_t{1}};
    return std::nullopt;
  }

  bool at_name() const {
    if (at_end()) return false;
    const auto& t = toks_[i_].text;
    return std::isupper(static_cast<unsigned char>(t[0])) && !known(lower(t));
  }

  Term sentence() {
    if (low() == "not" && match(Cat::Det, 1)) {
      Term neg = Term::constant("not", TermType::function({TermType::truth()}, TermType::truth()),
                                span(i_, i_ + 1));
      ++i_;
      std::size_t first = i_;
      Term body = clause();
      return Term::apply(neg, {body.with_anchor(span(first, i_))}, span(0, i_));
    }
    return clause();
  }

  Term clause() {
    std::size_t first = i_;
    NounPhrase np = subject();
    Term vp = verb_phrase(true);
    if (np.det) return Term::apply(*np.det, {np.body, vp}, span(first, i_));
    return Term::apply(vp, {np.body}, span(first, i_));
  }

  Term silent_some() const {
    return Term::constant("some", TermType::determiner(), std::nullopt, Voice::Active, true);
  }

  NounPhrase subject() {
    std::size_t first = i_;
    if (auto det = match(Cat::Det)) {
      Term d = Term::constant(det->first.lemma, TermType::determiner(), span(i_, i_ + det->second));
      i_ += det->second;
      auto [nom, plural] = nominal();
      (void)plural;
      return {d, nom, first, i_};
    }
    if (at_name()) return name();
    auto [nom, plural] = nominal();
    if (!plural) {
      i_ = first;
      fail("singular noun phrase without determiner");
    }
    return {silent_some(), nom, first, i_};
  }

  NounPhrase name() {
    std::size_t first = i_;
    ++i_;
    while (!at_end() && (at_name() || (match(Cat::Noun) && std::islower(static_cast<unsigned char>(
                                                                toks_[i_].text[0]))))) {
      ++i_;
    }
    auto a = span(first, i_);
    Term n = Term::constant(std::string(text_.substr(a.start, a.end - a.start)), TermType::entity(), a);
    return {std::nullopt, n, first, i_};
  }

  Term object() {
    std::size_t first = i_;
    if (auto det = match(Cat::Det)) {
      Term d = Term::constant(det->first.lemma, TermType::determiner(), span(i_, i_ + det->second));
      i_ += det->second;
      Term nom = nominal().first;
      return Term::apply(d, {nom}, span(first, i_));
    }
    if (at_name()) return name().body;
    if (!match(Cat::Adj) && !match(Cat::Noun)) fail("expected a noun phrase");
    auto [nom, plural] = nominal();
    if (!plural) {
      i_ = first;
      fail("singular noun phrase without determiner");
    }
    return Term::apply(silent_some(), {nom}, span(first, i_));
  }

  std::pair<Term, bool> nominal() {
    std::vector<Term> adjectives;
    while (auto adj = match(Cat::Adj)) {
      adjectives.push_back(Term::constant(adj->first.lemma,
                                          TermType::function({TermType::noun()}, TermType::noun()),
                                          span(i_, i_ + adj->second)));
      i_ += adj->second;
    }
    auto noun = match(Cat::Noun);
    if (!noun) fail("expected a noun");
    Term nom = Term::constant(noun->first.lemma, TermType::noun(), span(i_, i_ + noun->second));
    bool plural = noun->first.plural;
    i_ += noun->second;
    for (auto it = adjectives.rbegin(); it != adjectives.rend(); ++it) nom = Term::apply(*it, {nom});
    if (low() == "that") {
      Term that = Term::constant(
          "and", TermType::function({TermType::noun(), TermType::verb_phrase()}, TermType::noun()),
          span(i_, i_ + 1));
      ++i_;
      Term vp = verb_phrase(false);
      nom = Term::apply(that, {nom, vp});
    }
    return {nom, plural};
  }

  Term verb_phrase(bool main) {
    Term left = atom(main);
    auto c = low();
    if (c == "and" || c == "or") {
      Term coord = Term::constant(
          c, TermType::function({TermType::verb_phrase(), TermType::verb_phrase()}, TermType::verb_phrase()),
          span(i_, i_ + 1));
      ++i_;
      Term right = verb_phrase(main);
      return Term::apply(coord, {left, right});
    }
    return left;
  }

  Term atom(bool main) {
    std::size_t first = i_;
    if ((low() == "does" || low() == "do") && low(1) == "not") {
      Term neg = Term::constant(
          "not", TermType::function({TermType::verb_phrase()}, TermType::verb_phrase()),
          span(i_, i_ + 2));
      i_ += 2;
      return Term::apply(neg, {atom(main)});
    }
    if ((low() == "is" || low() == "are") && match(Cat::Participle, 1)) {
      auto part = match(Cat::Participle, 1);
      i_ += 1 + part->second;
      if (low() != "using" && low() != "by") fail("expected 'using' or 'by'");
      ++i_;
      Term verb = Term::constant(part->first.lemma, TermType::transitive(), span(first, i_),
                                 Voice::Passive);
      if (main) passive_ = true;
      return Term::apply(verb, {object()});
    }

    std::optional<Term> pre;
    if (auto adv = match(Cat::Adv)) {
      pre = adverb(*adv);
    }
    Term body = verb_group();
    if (auto adv = match(Cat::Adv)) body = Term::apply(adverb(*adv), {body});
    if (pre) body = Term::apply(*pre, {body});

    if (low() == "the" && low(1).size() > 2 && low(1).ends_with("er")) {
      // Comparative correlative tail: keep the whole VP as one opaque predicate.
      std::size_t last = toks_.size();
      auto a = span(first, last);
      i_ = last;
      return Term::constant(lower(text_.substr(a.start, a.end - a.start)), TermType::verb_phrase(), a);
    }
    return body;
  }

  Term adverb(const std::pair<WordInfo, std::size_t>& adv) {
    Term t = Term::constant(adv.first.lemma,
                            TermType::function({TermType::verb_phrase()}, TermType::verb_phrase()),
                            span(i_, i_ + adv.second));
    i_ += adv.second;
    return t;
  }

  Term verb_group() {
    if (auto iv = match(Cat::IVerb)) {
      Term v = Term::constant(iv->first.lemma, TermType::verb_phrase(), span(i_, i_ + iv->second));
      i_ += iv->second;
      return v;
    }
    auto tv = match(Cat::TVerb);
    if (!tv) fail("expected a verb");
    Term verb = Term::constant(tv->first.lemma, TermType::transitive(), span(i_, i_ + tv->second));
    i_ += tv->second;
    auto c = low();
    if ((c == "and" || c == "or") && match(Cat::TVerb, 1)) {
      Term coord = Term::constant(
          c, TermType::function({TermType::transitive(), TermType::transitive()}, TermType::transitive()),
          span(i_, i_ + 1));
      ++i_;
      Term rest = verb_group_verbs();
      verb = Term::apply(coord, {verb, rest});
    }
    return Term::apply(verb, {object()});
  }

  // Remaining verbs of a coordinated transitive verb list (object not consumed).
  Term verb_group_verbs() {
    auto tv = match(Cat::TVerb);
    if (!tv) fail("expected a transitive verb");
    Term verb = Term::constant(tv->first.lemma, TermType::transitive(), span(i_, i_ + tv->second));
    i_ += tv->second;
    auto c = low();
    if ((c == "and" || c == "or") && match(Cat::TVerb, 1)) {
      Term coord = Term::constant(
          c, TermType::function({TermType::transitive(), TermType::transitive()}, TermType::transitive()),
          span(i_, i_ + 1));
      ++i_;
      return Term::apply(coord, {verb, verb_group_verbs()});
    }
    return verb;
  }

  std::string_view text_;
  int sid_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  bool passive_ = false;
};

}  // namespace

FragmentSentence parse_sentence(std::string_view text, int sentence_id) {
  return Parser(text, sentence_id).run();
}

std::string lemma_of(std::string_view word) {
  auto [lo, hi] = vocabulary().equal_range(lower(word));
  return lo == hi ? std::string() : lo->second.lemma;
}

}  // namespace natlog
