#include "natlog/runner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "natlog/error.hpp"

namespace natlog {

namespace {

struct Outcome {
  LabelRecord label;
  std::optional<std::string> proof;
};

Outcome prove_one(const NLIProblem& p, const KnowledgeBase& kb, const RunConfig& config) {
  Outcome o;
  o.label.id = p.id;
  try {
    auto r = classify(p, kb, config.budget);
    o.label.label = r.label;
    o.label.unsatisfiable_premise = r.unsatisfiable_premise;
    o.label.budget_exhausted = r.budget_exhausted;
    o.label.entries = r.entries;
    o.label.rule_applications = r.rule_applications;
    if (config.timing) o.label.millis = r.millis;
    if (r.proof) {
      auto proof = make_proof(*r.proof, p.id, std::string(to_string(r.label)));
      o.proof = proof_to_json(proof, config).dump(2) + "\n";
    }
  } catch (const ParseError& e) {
    o.label.error = "parse";
    o.label.message = e.what();
  } catch (const Error& e) {
    o.label.error = "internal";
    o.label.message = e.what();
  }
  return o;
}

}  // namespace

CorpusRun run_corpus(const std::vector<NLIProblem>& corpus, const KnowledgeBase& kb, const RunConfig& config) {
  std::vector<Outcome> results(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < corpus.size();) results[i] = prove_one(corpus[i], kb, config);
  };
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < config.jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return corpus[a].id < corpus[b].id; });

  CorpusRun run;
  run.labels = Json{{"config", config_json(config)}}.dump() + "\n";
  for (auto i : order) {
    auto& r = results[i];
    run.labels += label_to_json(r.label).dump() + "\n";
    if (!r.label.error.empty()) ++run.errors;
    if (r.proof) run.proofs.emplace_back(corpus[i].id, std::move(*r.proof));
    run.records.push_back(std::move(r.label));
  }
  return run;
}

void write_run(const CorpusRun& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "proofs");
  for (const auto& [id, json] : run.proofs) write_file(dir / "proofs" / (id + ".json"), json);
  write_file(dir / "labels.jsonl", run.labels);
}

}  // namespace natlog
