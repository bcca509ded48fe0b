#include "natlog/eval.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace natlog {

std::string lexrel_key(const LexicalRelation& r) {
  std::string k(to_string(r.rel));
  k += '\t' + canonical_text(r.lhs) + '\t' + canonical_text(r.rhs) + '\t';
  if (r.voices) {
    k += std::string(to_string(r.voices->lhs)) + "," + std::string(to_string(r.voices->rhs));
  }
  return k;
}

namespace {

std::set<std::string> keys(const LexRelExplanation& e) {
  std::set<std::string> out;
  for (const auto& r : e.relations) out.insert(lexrel_key(r.relation));
  return out;
}

}  // namespace

PRF score_lexrels(const LexRelExplanation& gold, const LexRelExplanation& sys) {
  auto g = keys(gold);
  auto s = keys(sys);
  if (g.empty() && s.empty()) return {1, 1, 1};
  std::size_t hit = 0;
  for (const auto& k : s) hit += g.contains(k);
  PRF out;
  out.precision = s.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(s.size());
  out.recall = g.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(g.size());
  out.f1 = hit == 0 ? 0.0 : 2 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

bool score_rules(const RuleExplanation& gold, const RuleExplanation& sys) {
  return gold.rules == sys.rules && keys(gold.lexrels) == keys(sys.lexrels);
}

bool score_tree(const TreeExplanation& gold, const TreeExplanation& sys) {
  if (gold.labeled != sys.labeled) throw FormatError("cannot compare a labeled with an unlabeled tree");
  TreeExplanation a = gold, b = sys;
  canonicalize(a);
  canonicalize(b);
  if (tree_signature(a.root, a.labeled) != tree_signature(b.root, b.labeled)) return false;
  if (!a.labeled) return true;
  // Labeled trees must also agree on ids and antecedent references.
  std::function<bool(const ProofTree&, const ProofTree&)> same = [&](const ProofTree& x, const ProofTree& y) {
    if (x.entries.size() != y.entries.size() || x.children.size() != y.children.size()) return false;
    for (std::size_t i = 0; i < x.entries.size(); ++i) {
      if (x.entries[i].id != y.entries[i].id || x.entries[i].antecedents != y.entries[i].antecedents) {
        return false;
      }
    }
    if (x.closure.has_value() != y.closure.has_value()) return false;
    if (x.closure && (x.closure->id != y.closure->id || x.closure->antecedents != y.closure->antecedents)) {
      return false;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
      if (!same(x.children[i], y.children[i])) return false;
    }
    return true;
  };
  return same(a.root, b.root);
}

ProblemScore score_pair(const ExplanationRecord& gold, const ExplanationRecord& sys) {
  if (gold.id != sys.id) throw FormatError("problem ids differ: " + gold.id + " vs " + sys.id);
  if (gold.format != sys.format) throw FormatError("formats differ for " + gold.id);
  ProblemScore s;
  s.id = gold.id;
  switch (gold.format) {
    case ExplanationFormat::LexRel:
      s.prf = score_lexrels(gold.lexrels, sys.lexrels);
      s.exact = keys(gold.lexrels) == keys(sys.lexrels);
      break;
    case ExplanationFormat::Rules:
      s.exact = score_rules({gold.rules, gold.lexrels}, {sys.rules, sys.lexrels});
      break;
    case ExplanationFormat::Unlabeled:
    case ExplanationFormat::Full:
      if (!gold.tree || !sys.tree) throw FormatError("missing tree for " + gold.id);
      s.exact = score_tree(*gold.tree, *sys.tree);
      break;
  }
  return s;
}

ScoreReport evaluate(const std::vector<ExplanationRecord>& gold, const std::vector<ExplanationRecord>& sys,
                     ExplanationFormat format) {
  ScoreReport r;
  r.format = format;
  std::map<std::string, const ExplanationRecord*> by_id;
  for (const auto& s : sys) {
    if (s.format != format) throw FormatError("system record " + s.id + " is not " + std::string(to_string(format)));
    by_id[s.id] = &s;
  }
  std::set<std::string> gold_ids;
  double p = 0, rec = 0, f = 0, exact = 0;
  for (const auto& g : gold) {
    if (g.format != format) throw FormatError("gold record " + g.id + " is not " + std::string(to_string(format)));
    gold_ids.insert(g.id);
    auto it = by_id.find(g.id);
    ProblemScore s;
    if (it == by_id.end()) {
      s.id = g.id;
      s.missing = true;
      if (format == ExplanationFormat::LexRel) s.prf = PRF{};
      ++r.missing;
    } else {
      s = score_pair(g, *it->second);
    }
    if (s.prf) {
      p += s.prf->precision;
      rec += s.prf->recall;
      f += s.prf->f1;
    }
    exact += s.exact ? 1 : 0;
    r.problems.push_back(std::move(s));
  }
  for (const auto& s : sys) r.extra += !gold_ids.contains(s.id);
  if (!gold.empty()) {
    auto n = static_cast<double>(gold.size());
    if (format == ExplanationFormat::LexRel) r.macro = {p / n, rec / n, f / n};
    r.exact_match = exact / n;
  } else {
    if (format == ExplanationFormat::LexRel) r.macro = {1, 1, 1};
    r.exact_match = 1;
  }
  return r;
}

Json report_json(const ScoreReport& r) {
  Json j;
  j["format"] = to_string(r.format);
  j["problems"] = Json::array();
  for (const auto& s : r.problems) {
    Json o;
    o["id"] = s.id;
    if (s.prf) {
      o["precision"] = s.prf->precision;
      o["recall"] = s.prf->recall;
      o["f1"] = s.prf->f1;
    }
    o["exact"] = s.exact;
    if (s.missing) o["missing"] = true;
    j["problems"].push_back(std::move(o));
  }
  Json agg;
  if (r.format == ExplanationFormat::LexRel) {
    agg["macroPrecision"] = r.macro.precision;
    agg["macroRecall"] = r.macro.recall;
    agg["macroF1"] = r.macro.f1;
  }
  agg["exactMatch"] = r.exact_match;
  agg["missing"] = r.missing;
  agg["extra"] = r.extra;
  j["aggregate"] = std::move(agg);
  return j;
}

std::string report_table(const ScoreReport& r) {
  std::string out;
  char buf[256];
  bool lex = r.format == ExplanationFormat::LexRel;
  std::snprintf(buf, sizeof buf, "format: %s\n", std::string(to_string(r.format)).c_str());
  out += buf;
  if (lex) {
    std::snprintf(buf, sizeof buf, "%-24s %9s %9s %9s %6s\n", "id", "precision", "recall", "f1", "exact");
  } else {
    std::snprintf(buf, sizeof buf, "%-24s %6s\n", "id", "exact");
  }
  out += buf;
  for (const auto& s : r.problems) {
    if (lex) {
      std::snprintf(buf, sizeof buf, "%-24s %9.4f %9.4f %9.4f %6s%s\n", s.id.c_str(), s.prf->precision,
                    s.prf->recall, s.prf->f1, s.exact ? "yes" : "no", s.missing ? "  (missing)" : "");
    } else {
      std::snprintf(buf, sizeof buf, "%-24s %6s%s\n", s.id.c_str(), s.exact ? "yes" : "no",
                    s.missing ? "  (missing)" : "");
    }
    out += buf;
  }
  if (lex) {
    std::snprintf(buf, sizeof buf, "%-24s %9.4f %9.4f %9.4f %6.4f\n", "macro", r.macro.precision,
                  r.macro.recall, r.macro.f1, r.exact_match);
  } else {
    std::snprintf(buf, sizeof buf, "%-24s %6.4f\n", "exact-match", r.exact_match);
  }
  out += buf;
  if (r.missing || r.extra) {
    std::snprintf(buf, sizeof buf, "missing: %d  extra: %d\n", r.missing, r.extra);
    out += buf;
  }
  return out;
}

}  // namespace natlog
