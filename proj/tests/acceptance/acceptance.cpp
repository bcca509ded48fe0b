// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <string>

#include "natlog/eval.hpp"
#include "natlog/io.hpp"
#include "natlog/oracle.hpp"
#include "natlog/regression.hpp"
#include "natlog/runner.hpp"
#include "support.hpp"

using namespace natlog;
using namespace natlog::test;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

const fs::path kCorpusDir = fs::path(NATLOG_TEST_DATA_DIR) / "regression";

std::vector<std::string> texts_of(const ProofTree& t) {
  std::vector<std::string> out;
  for (const auto& e : t.entries) out.push_back(e.text + ":" + std::string(to_string(e.sign)));
  return out;
}

Verdict fig2() {
  Verdict v;
  auto t0 = Clock::now();
  auto r = prove({"many birds hover high"}, "few birds fly");
  v.require(r.label == Label::Contradiction, "label is " + std::string(to_string(r.label)));
  if (!v.ok) return v;
  auto p = proof_of(r);
  auto tree = extract_full(p).root;
  v.require(count_leaves(tree) == 2, "pruned proof does not have 2 branches");
  v.require(texts_of(tree) == std::vector<std::string>{"many birds hover high:T", "few birds fly:T"}, "root nodes");
  if (tree.children.size() == 2) {
    v.require(texts_of(tree.children[0]) ==
                  std::vector<std::string>{"c hover high:T", "c fly:F", "c hover:T"},
              "left branch nodes");
    v.require(texts_of(tree.children[1]) == std::vector<std::string>{"many birds fly:T", "few birds fly:T"},
              "right branch nodes");
    v.require(tree.children[0].closure && tree.children[1].closure, "both branches closed");
  }
  v.require(lexrel_strings(extract_lexrels(p)) == std::vector<std::string>{"hover⊑fly", "many|few"}, "lexrels");
  v.require(extract_rules(p).rules == std::map<RuleId, int>{{RuleId::UpDisCov, 1}, {RuleId::AdjSubT, 1}},
            "rule multiset");
  auto s = seconds_since(t0);
  v.require(s < 1.0, "took " + std::to_string(s) + " s");
  if (v.ok) v.detail = "contradiction, 2 branches, {hover⊑fly, many|few}, {upDisCov:1, adj⊂_T:1}";
  return v;
}

Verdict fig1() {
  Verdict v;
  auto t0 = Clock::now();
  auto r = prove({"The drugs that slow down or halt Alzheimer's disease work best the earlier you administer them"},
                 "Alzheimer's disease is treated using drugs");
  v.require(r.label == Label::Entailment, "label is " + std::string(to_string(r.label)));
  if (!v.ok) return v;
  auto p = proof_of(r);
  auto tree = extract_full(p).root;
  v.require(count_leaves(tree) == 2, "pruned proof does not have 2 branches");
  std::function<void(const ProofTree&)> leaves = [&](const ProofTree& t) {
    if (t.children.empty()) {
      v.require(t.closure && t.closure->rule == RuleId::XFrameAlt, "a branch is not closed by frame_alt");
    }
    for (const auto& c : t.children) leaves(c);
  };
  leaves(tree);
  v.require(lexrel_strings(extract_lexrels(p)) ==
                std::vector<std::string>{"halt⊑treat (active/passive)", "slow down⊑treat (active/passive)"},
            "lexrels");
  std::vector<std::string> all;
  collect_texts(tree, all);
  bool body = !all.empty() && std::any_of(all.begin() + 1, all.end(), [](const std::string& s) {
    return s.find("work best") != std::string::npos;
  });
  v.require(!body, "unused premise body kept in the pruned proof");
  auto s = seconds_since(t0);
  v.require(s < 1.0, "took " + std::to_string(s) + " s");
  if (v.ok) v.detail = "entailment, 2 frame_alt branches, unused body pruned";
  return v;
}

Verdict quantifiers() {
  Verdict v;
  auto r = prove({"Not all birds fly"}, "Some bird does not fly");
  v.require(r.label == Label::Entailment, "label is " + std::string(to_string(r.label)));
  if (!v.ok) return v;
  auto p = proof_of(r);
  v.require(extract_lexrels(p).relations.empty(), "lexrels not empty");
  v.require(extract_rules(p).rules ==
                std::map<RuleId, int>{{RuleId::Neg, 2}, {RuleId::ForallF, 1}, {RuleId::ExistsF, 1}},
            "rule multiset");
  if (v.ok) v.detail = "entailment, no lexrels, {¬:2, ∀_F:1, ∃_F:1}";
  return v;
}

Verdict soundness() {
  Verdict v;
  auto t0 = Clock::now();
  RegressionReport r;
  ProblemGenerator gen(RegressionOptions{}.seed);
  auto problems = gen.problems(200);
  check_soundness(problems, KnowledgeBase::builtin(), Budget{}, 3, r);
  auto s = seconds_since(t0);
  v.require(r.checks.size() >= 200, "fewer than 200 problems");
  auto bad = r.failed();
  v.require(bad.empty(), bad.empty() ? "" : bad.front().id + ": " + bad.front().detail);
  v.require(r.oracle_checked > 0, "no prover output was checked");
  v.require(s < 60, "took " + std::to_string(s) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu problems, %d proved and checked, %d abstained, %zu disagreements, %.2f s",
                r.checks.size(), r.oracle_checked, r.oracle_abstained, bad.size(), s);
  if (v.ok) v.detail = buf;
  return v;
}

Verdict symmetry() {
  Verdict v;
  RegressionReport r;
  auto corpus = read_corpus(kCorpusDir / "corpus.jsonl");
  check_symmetry(corpus, KnowledgeBase::builtin(), Budget{}, r);
  v.require(!r.checks.empty(), "no contradictions in the corpus");
  auto bad = r.failed();
  v.require(bad.empty(), bad.empty() ? "" : bad.front().id + ": " + bad.front().detail);
  if (v.ok) v.detail = std::to_string(r.checks.size()) + "/" + std::to_string(r.checks.size()) + " swapped";
  return v;
}

Verdict determinism() {
  Verdict v;
  auto corpus = read_corpus(kCorpusDir / "corpus.jsonl");
  std::set<std::string> shipped;
  for (const auto& p : corpus) shipped.insert(p.id);
  ProblemGenerator gen(RegressionOptions{}.seed);
  for (auto& p : gen.problems(200)) corpus.push_back(std::move(p));
  RunConfig serial, parallel;
  parallel.jobs = 4;
  const auto& kb = KnowledgeBase::builtin();
  auto a = run_corpus(corpus, kb, serial);
  auto b = run_corpus(corpus, kb, serial);
  auto c = run_corpus(corpus, kb, parallel);
  v.require(a.errors == 0, "parse errors in the corpus");
  int exhausted = 0;
  for (const auto& rec : a.records) {
    // Generated problems may stop on the budget; the shipped corpus never does.
    exhausted += rec.budget_exhausted ? 1 : 0;
    v.require(!rec.budget_exhausted || !shipped.contains(rec.id), rec.id + " ran out of budget");
    v.require(rec.entries <= 2 * serial.budget.max_entries, rec.id + " exceeded the entry budget");
    v.require(rec.rule_applications <= 2 * serial.budget.max_rule_applications, rec.id + " exceeded the rule budget");
  }
  v.require(a.labels == b.labels && a.proofs == b.proofs, "two serial runs differ");
  v.require(a.labels == c.labels && a.proofs == c.proofs, "serial and parallel runs differ");

  // also through the file system
  auto root = fs::temp_directory_path() / "natlog-acceptance";
  fs::remove_all(root);
  write_run(a, root / "serial");
  write_run(c, root / "parallel");
  for (const auto& [id, json] : a.proofs) {
    v.require(read_file(root / "serial" / "proofs" / (id + ".json")) ==
                  read_file(root / "parallel" / "proofs" / (id + ".json")),
              "proof file " + id + " differs");
  }
  v.require(read_file(root / "serial" / "labels.jsonl") == read_file(root / "parallel" / "labels.jsonl"),
            "labels.jsonl differs");
  fs::remove_all(root);
  if (v.ok) {
    v.detail = std::to_string(corpus.size()) + " problems, " + std::to_string(a.proofs.size()) +
               " proofs, " + std::to_string(exhausted) + " stopped by budget, byte-identical across runs and 4 workers";
  }
  return v;
}

void permute(ProofTree& t) {
  std::reverse(t.children.begin(), t.children.end());
  for (auto& c : t.children) permute(c);
}

Verdict metrics() {
  Verdict v;
  auto corpus = read_corpus(kCorpusDir / "corpus.jsonl");
  int files = 0, permuted = 0;
  for (auto f : {ExplanationFormat::LexRel, ExplanationFormat::Rules, ExplanationFormat::Unlabeled,
                 ExplanationFormat::Full}) {
    std::vector<ExplanationRecord> gold;
    for (const auto& p : corpus) {
      auto path = kCorpusDir / "golden" / (p.id + "." + std::string(to_string(f)) + ".json");
      if (!fs::exists(path)) continue;
      gold.push_back(explanation_from_json(Json::parse(read_file(path))));
      ++files;
    }
    auto report = evaluate(gold, gold, f);
    v.require(report.exact_match == 1.0, std::string(to_string(f)) + " exact match below 1");
    if (f == ExplanationFormat::LexRel) v.require(report.macro.f1 == 1.0, "lexrel F1 below 1");
    for (const auto& s : report.problems) {
      v.require(s.exact, s.id + " " + std::string(to_string(f)) + " not exact against itself");
      if (s.prf) v.require(s.prf->f1 == 1.0, s.id + " F1 below 1");
    }
    if (f == ExplanationFormat::Unlabeled || f == ExplanationFormat::Full) {
      for (const auto& g : gold) {
        if (!g.tree || g.tree->root.children.size() < 2) continue;
        auto sys = g;
        permute(sys.tree->root);
        v.require(score_pair(g, sys).exact, g.id + " permuted tree does not match");
        ++permuted;
      }
    }
  }
  v.require(files > 0, "no golden files");
  v.require(permuted > 0, "no branching golden trees");
  if (v.ok) {
    v.detail = std::to_string(files) + " golden files at F1 = exact = 1.0, " + std::to_string(permuted) +
               " permuted trees matched";
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {"1 many/few contradiction proof", fig2},
      {"2 drug/treat entailment proof", fig1},
      {"3 quantifier example", quantifiers},
      {"4 soundness against the oracle", soundness},
      {"5 contradiction symmetry", symmetry},
      {"6 termination and determinism", determinism},
      {"7 metric sanity", metrics},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-34s %s\n", v.ok ? "PASS" : "FAIL", c.name, v.detail.c_str());
    failures += v.ok ? 0 : 1;
  }
  return failures;
}
