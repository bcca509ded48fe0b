#include "natlog/regression.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "natlog/error.hpp"
#include "natlog/eval.hpp"
#include "natlog/io.hpp"
#include "natlog/oracle.hpp"
#include "natlog/proof.hpp"

namespace natlog {

namespace {

struct Noun {
  const char* sg;
  const char* pl;
};
struct Verb {
  const char* base;
  const char* third;
  bool takes_high;
};

constexpr std::array kNouns{Noun{"bird", "birds"}, Noun{"animal", "animals"}, Noun{"dog", "dogs"}};
constexpr std::array kVerbs{Verb{"fly", "flies", true}, Verb{"hover", "hovers", true},
                            Verb{"move", "moves", false}, Verb{"sleep", "sleeps", false},
                            Verb{"run", "runs", false}};
constexpr std::array kDets{"some", "every", "all", "no", "many", "few", "a"};
constexpr std::array kNames{"John", "Mary"};

bool singular(std::string_view det) { return det == "every" || det == "a"; }

std::string lowered(std::string w) {
  if (std::find(kNames.begin(), kNames.end(), w) != kNames.end()) return w;
  w[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
  return w;
}

// Joins words into a sentence: "a" becomes "an" before a vowel, first letter capitalized.
std::string join(std::vector<std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto w = lowered(words[i]);
    if ((w == "a" || w == "an") && i + 1 < words.size()) {
      w = std::string_view("aeiou").find(words[i + 1][0]) == std::string_view::npos ? "a" : "an";
    }
    out += (out.empty() ? "" : " ") + w;
  }
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(lowered(w == "an" || w == "An" ? "a" : w));
  return words;
}

std::string proof_text(const ProofResult& r, const std::string& id, const Budget& b) {
  std::string out = std::string(to_string(r.label));
  if (r.proof) {
    RunConfig c;
    c.budget = b;
    out += proof_to_json(make_proof(*r.proof, id, std::string(to_string(r.label))), c).dump();
  }
  return out;
}

}  // namespace

std::string ProblemGenerator::sentence() {
  std::string subject;
  bool sg = true;
  bool negated = false;
  if (coin(15)) {
    subject = kNames[pick(kNames.size())];
  } else {
    std::string det = kDets[pick(kDets.size())];
    sg = singular(det);
    if ((det == "every" || det == "all" || det == "some") && coin(15)) negated = true;
    const auto& n = kNouns[pick(kNouns.size())];
    subject = det + " ";
    if (coin(15)) subject += "small ";
    subject += sg ? n.sg : n.pl;
    if (coin(10)) {
      const auto& v = kVerbs[pick(kVerbs.size())];
      subject += std::string(" that ") + (sg ? v.third : v.base);
    }
  }
  auto atom = [&] {
    const auto& v = kVerbs[pick(kVerbs.size())];
    std::string out;
    if (coin(15)) out = sg ? "does not " : "do not ", out += v.base;
    else out = sg ? v.third : v.base;
    if (v.takes_high && coin(25)) out += " high";
    return out;
  };
  std::string vp = atom();
  if (coin(15)) vp += (coin(50) ? " and " : " or ") + atom();
  return join(split((negated ? "not " : "") + subject + " " + vp));
}

std::string ProblemGenerator::mutate(const std::string& s) {
  auto words = split(s);
  std::vector<std::size_t> dets, nouns, verbs;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& lower = words[i];
    for (auto d : kDets) {
      if (lower == d) dets.push_back(i);
    }
    for (const auto& n : kNouns) {
      if (lower == n.sg || lower == n.pl) nouns.push_back(i);
    }
    for (const auto& v : kVerbs) {
      if (lower == v.base || lower == v.third) verbs.push_back(i);
    }
  }
  switch (pick(4)) {
    case 0:
      if (!dets.empty()) {
        // Keep the number agreement of the original determiner.
        auto i = dets[pick(dets.size())];
        const auto lower = words[i];
        std::vector<std::string> same;
        for (auto d : kDets) {
          if (singular(d) == singular(lower) && d != lower) same.emplace_back(d);
        }
        if (!same.empty()) words[i] = same[pick(same.size())];
      }
      break;
    case 1:
      if (!nouns.empty()) {
        auto i = nouns[pick(nouns.size())];
        bool pl = false;
        for (const auto& n : kNouns) pl = pl || words[i] == n.pl;
        const auto& n = kNouns[pick(kNouns.size())];
        words[i] = pl ? n.pl : n.sg;
      }
      break;
    case 2:
      if (!verbs.empty()) {
        auto i = verbs[pick(verbs.size())];
        bool third = false;
        for (const auto& v : kVerbs) third = third || words[i] == v.third;
        const auto& v = kVerbs[pick(kVerbs.size())];
        words[i] = third ? v.third : v.base;
        if (!v.takes_high && i + 1 < words.size() && words[i + 1] == "high") words.erase(words.begin() + static_cast<long>(i) + 1);
      }
      break;
    default: {
      const auto lower = words[0];
      if (lower == "not") {
        words.erase(words.begin());
      } else if (lower == "every" || lower == "all" || lower == "some") {
        words.insert(words.begin(), "not");
      }
      break;
    }
  }
  return join(std::move(words));
}

NLIProblem ProblemGenerator::problem(std::string id) {
  NLIProblem p;
  p.id = std::move(id);
  p.premises.push_back(sentence());
  if (coin(25)) p.premises.push_back(sentence());
  p.hypothesis = coin(50) ? mutate(p.premises[pick(p.premises.size())]) : sentence();
  return p;
}

std::vector<NLIProblem> ProblemGenerator::problems(int count, const std::string& prefix) {
  std::vector<NLIProblem> out;
  for (int i = 0; i < count; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", i);
    out.push_back(problem(prefix + "-" + buf));
  }
  return out;
}

int RegressionReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

std::vector<CheckOutcome> RegressionReport::failed(const std::string& suite) const {
  std::vector<CheckOutcome> out;
  for (const auto& c : checks) {
    if (!c.passed && (suite.empty() || c.suite == suite)) out.push_back(c);
  }
  return out;
}

std::string RegressionReport::summary() const {
  std::vector<std::string> order;
  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& c : checks) {
    if (!counts.contains(c.suite)) order.push_back(c.suite);
    auto& [pass, total] = counts[c.suite];
    pass += c.passed ? 1 : 0;
    ++total;
  }
  std::string out;
  for (const auto& s : order) {
    out += s + ": " + std::to_string(counts[s].first) + "/" + std::to_string(counts[s].second) + " passed\n";
  }
  for (const auto& c : checks) {
    if (!c.passed) out += "FAIL " + c.suite + " " + c.id + ": " + c.detail + "\n";
  }
  out += "oracle: " + std::to_string(oracle_checked) + " checked, " + std::to_string(oracle_abstained) +
         " abstained\n";
  return out;
}

void check_golden(const RegressionOptions& o, const KnowledgeBase& kb, RegressionReport& r) {
  auto corpus = read_corpus(o.corpus_dir / "corpus.jsonl");
  for (const auto& p : corpus) {
    CheckOutcome c{"golden", p.id, true, ""};
    auto fail = [&c](std::string why) {
      if (c.passed) c.detail = std::move(why);
      c.passed = false;
    };
    try {
      auto res = classify(p, kb, o.budget);
      if (p.gold && res.label != *p.gold) {
        fail("label " + std::string(to_string(res.label)) + ", expected " + std::string(to_string(*p.gold)));
      }
      if (res.proof) {
        if (auto err = verify_derivation(*res.proof, kb)) fail("replay: " + *err);
        auto proof = make_proof(*res.proof, p.id, std::string(to_string(res.label)));
        for (auto f : {ExplanationFormat::LexRel, ExplanationFormat::Rules, ExplanationFormat::Unlabeled,
                       ExplanationFormat::Full}) {
          auto path = o.corpus_dir / "golden" / (p.id + "." + std::string(to_string(f)) + ".json");
          if (!std::filesystem::exists(path)) {
            fail("missing " + path.filename().string());
            continue;
          }
          auto gold = explanation_from_json(Json::parse(read_file(path)));
          auto sys = explain(proof, f);
          auto self = score_pair(gold, gold);
          auto got = score_pair(gold, sys);
          if (!self.exact || (self.prf && self.prf->f1 != 1.0)) fail(std::string(to_string(f)) + " self-score");
          if (!got.exact) fail(std::string(to_string(f)) + " differs from golden file");
        }
      }
    } catch (const std::exception& e) {
      fail(e.what());
    }
    r.checks.push_back(std::move(c));
  }
}

void check_symmetry(const std::vector<NLIProblem>& corpus, const KnowledgeBase& kb, const Budget& b,
                    RegressionReport& r) {
  for (const auto& p : corpus) {
    if (p.premises.size() != 1) continue;
    try {
      if (classify(p, kb, b).label != Label::Contradiction) continue;
      NLIProblem swapped{p.id + "-swapped", {p.hypothesis}, p.premises[0], Label::Contradiction};
      auto label = classify(swapped, kb, b).label;
      r.checks.push_back({"symmetry", p.id, label == Label::Contradiction,
                          "swapped problem is " + std::string(to_string(label))});
    } catch (const std::exception& e) {
      r.checks.push_back({"symmetry", p.id, false, e.what()});
    }
  }
}

void check_soundness(const std::vector<NLIProblem>& problems, const KnowledgeBase& kb, const Budget& b,
                     int max_size, RegressionReport& r) {
  for (const auto& p : problems) {
    CheckOutcome c{"soundness", p.id, true, ""};
    try {
      auto parsed = parse_problem(p);
      auto res = classify(parsed, kb, b);
      if (res.label != Label::Neutral) {
        // An unsatisfiable premise set proves both relations; check the one reported.
        auto o = countermodel_search(parsed, res.label, kb, max_size);
        if (o.verdict == OracleVerdict::Abstain) {
          ++r.oracle_abstained;
        } else {
          ++r.oracle_checked;
        }
        if (o.verdict == OracleVerdict::Countermodel) {
          c.passed = false;
          c.detail = std::string(to_string(res.label)) + " refuted by " + o.model->str();
        }
      }
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
    }
    r.checks.push_back(std::move(c));
  }
}

void check_identity(const std::vector<std::string>& sentences, const KnowledgeBase& kb, const Budget& b,
                    RegressionReport& r) {
  int i = 0;
  for (const auto& s : sentences) {
    std::string id = "identity-" + std::to_string(i++);
    try {
      auto label = classify(NLIProblem{id, {s}, s, Label::Entailment}, kb, b).label;
      r.checks.push_back({"identity", id, label == Label::Entailment, s + " => " + std::string(to_string(label))});
    } catch (const std::exception& e) {
      r.checks.push_back({"identity", id, false, e.what()});
    }
  }
}

void check_determinism(const std::vector<NLIProblem>& problems, const KnowledgeBase& kb, const Budget& b,
                       RegressionReport& r) {
  for (const auto& p : problems) {
    try {
      auto first = proof_text(classify(p, kb, b), p.id, b);
      auto second = proof_text(classify(p, kb, b), p.id, b);
      r.checks.push_back({"determinism", p.id, first == second, "two runs differ"});
    } catch (const std::exception& e) {
      r.checks.push_back({"determinism", p.id, false, e.what()});
    }
  }
}

void check_budget_monotonicity(const std::vector<NLIProblem>& problems, const KnowledgeBase& kb,
                               const Budget& small, const Budget& large, RegressionReport& r) {
  for (const auto& p : problems) {
    try {
      auto a = classify(p, kb, small).label;
      if (a == Label::Neutral) continue;
      auto b = classify(p, kb, large).label;
      r.checks.push_back({"budget", p.id, a == b,
                          std::string(to_string(a)) + " with the small budget, " + std::string(to_string(b)) +
                              " with the large one"});
    } catch (const std::exception& e) {
      r.checks.push_back({"budget", p.id, false, e.what()});
    }
  }
}

RegressionReport run_regressions(const RegressionOptions& o, const KnowledgeBase& kb) {
  RegressionReport r;
  check_golden(o, kb, r);
  auto corpus = read_corpus(o.corpus_dir / "corpus.jsonl");
  check_symmetry(corpus, kb, o.budget, r);

  ProblemGenerator gen(o.seed);
  auto generated = gen.problems(o.generated);
  check_soundness(generated, kb, o.budget, o.max_model_size, r);

  std::vector<std::string> sentences;
  for (int i = 0; i < o.identity; ++i) sentences.push_back(gen.sentence());
  check_identity(sentences, kb, o.budget, r);

  auto sample = corpus;
  sample.insert(sample.end(), generated.begin(), generated.begin() + std::min<long>(50, std::ssize(generated)));
  check_determinism(sample, kb, o.budget, r);

  Budget small{50, 2, 200};
  check_budget_monotonicity(sample, kb, small, o.budget, r);
  return r;
}

}  // namespace natlog
