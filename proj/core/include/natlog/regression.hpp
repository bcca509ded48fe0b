#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "natlog/lexicon.hpp"
#include "natlog/prover.hpp"

namespace natlog {

/// Random sentences of the quantified fragment. Same seed, same output.
class ProblemGenerator {
 public:
  explicit ProblemGenerator(std::uint32_t seed) : rng_(seed) {}

  std::string sentence();
  /// One or two premises; half of the hypotheses are edits of a premise
  /// (determiner, noun, verb or polarity swapped) so that proofs occur.
  NLIProblem problem(std::string id);
  std::vector<NLIProblem> problems(int count, const std::string& prefix = "gen");

 private:
  std::size_t pick(std::size_t n) { return rng_() % n; }
  bool coin(int percent) { return static_cast<int>(rng_() % 100) < percent; }
  std::string mutate(const std::string& sentence);

  std::mt19937 rng_;
};

struct CheckOutcome {
  std::string suite;
  std::string id;
  bool passed = true;
  std::string detail;
};

struct RegressionOptions {
  std::filesystem::path corpus_dir;  // holds corpus.jsonl and golden/
  std::uint32_t seed = 7;
  int generated = 200;
  int identity = 20;
  int max_model_size = 3;
  Budget budget;
};

struct RegressionReport {
  std::vector<CheckOutcome> checks;
  int oracle_abstained = 0;
  int oracle_checked = 0;

  int failures() const;
  bool passed() const { return failures() == 0; }
  /// Failures of one suite, or of all suites when empty.
  std::vector<CheckOutcome> failed(const std::string& suite = "") const;
  std::string summary() const;
};

// Individual suites; run_regressions runs all of them.
void check_golden(const RegressionOptions& o, const KnowledgeBase& kb, RegressionReport& r);
void check_symmetry(const std::vector<NLIProblem>& corpus, const KnowledgeBase& kb, const Budget& b,
                    RegressionReport& r);
void check_soundness(const std::vector<NLIProblem>& problems, const KnowledgeBase& kb, const Budget& b,
                     int max_size, RegressionReport& r);
void check_identity(const std::vector<std::string>& sentences, const KnowledgeBase& kb, const Budget& b,
                    RegressionReport& r);
void check_determinism(const std::vector<NLIProblem>& problems, const KnowledgeBase& kb, const Budget& b,
                       RegressionReport& r);
void check_budget_monotonicity(const std::vector<NLIProblem>& problems, const KnowledgeBase& kb,
                               const Budget& small, const Budget& large, RegressionReport& r);

RegressionReport run_regressions(const RegressionOptions& o, const KnowledgeBase& kb);

}  // namespace natlog
