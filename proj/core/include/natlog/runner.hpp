#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "natlog/io.hpp"

namespace natlog {

/// Everything `prove` writes for one corpus, already serialized.
struct CorpusRun {
  std::string labels;                                       // labels.jsonl
  std::vector<std::pair<std::string, std::string>> proofs;  // (problem id, proof JSON)
  std::vector<LabelRecord> records;                         // sorted by id
  int errors = 0;
};

/// Classifies every problem with `config.jobs` workers. Output is ordered by
/// problem id, so it does not depend on the number of workers.
CorpusRun run_corpus(const std::vector<NLIProblem>& corpus, const KnowledgeBase& kb, const RunConfig& config);

/// Writes labels.jsonl and proofs/<id>.json under `dir`.
void write_run(const CorpusRun& run, const std::filesystem::path& dir);

}  // namespace natlog
