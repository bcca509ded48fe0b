#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "natlog/error.hpp"
#include "natlog/eval.hpp"
#include "natlog/io.hpp"
#include "natlog/oracle.hpp"
#include "natlog/proof.hpp"
#include "natlog/regression.hpp"
#include "natlog/runner.hpp"

namespace fs = std::filesystem;
using namespace natlog;

namespace {

constexpr int kUsage = 64;

struct ProveOptions {
  std::string corpus;
  std::string kb;
  std::string out;
  int entries = Budget{}.max_entries;
  int fresh = Budget{}.max_fresh;
  int rules = Budget{}.max_rule_applications;
  int jobs = 1;
  bool timing = false;
};

KnowledgeBase load_kb(const std::string& path) {
  return path.empty() || path == "builtin" ? KnowledgeBase::builtin() : KnowledgeBase::load(path);
}

std::string default_kb() {
  const char* env = std::getenv("NATLOG_KB");
  return env ? env : "";
}

int cmd_prove(const ProveOptions& opt) {
  RunConfig config;
  config.budget = {opt.entries, opt.fresh, opt.rules};
  config.kb = opt.kb.empty() ? "builtin" : opt.kb;
  config.jobs = std::max(1, opt.jobs);
  config.timing = opt.timing;
  if (config.budget.max_entries < 1 || config.budget.max_fresh < 1 || config.budget.max_rule_applications < 1) {
    std::cerr << "natlog: budgets must be at least 1\n";
    return kUsage;
  }

  std::vector<NLIProblem> corpus;
  KnowledgeBase kb;
  try {
    corpus = read_corpus(opt.corpus);
    kb = load_kb(opt.kb);
  } catch (const Error& e) {
    std::cerr << "natlog: " << e.what() << "\n";
    return 1;
  }

  auto run = run_corpus(corpus, kb, config);
  for (const auto& r : run.records) {
    if (!r.error.empty()) std::cerr << r.id << ": " << r.message << "\n";
  }
  write_run(run, opt.out);
  return run.errors ? 2 : 0;
}

int cmd_explain(const std::string& proof_path, const std::string& format_name, const std::string& out) {
  auto format = format_from_string(format_name);
  if (!format) {
    std::cerr << "natlog: unknown format '" << format_name << "' (lexrel, rules, unlabeled, full)\n";
    return kUsage;
  }
  std::vector<fs::path> files;
  if (fs::is_directory(proof_path)) {
    for (const auto& e : fs::directory_iterator(proof_path)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(proof_path);
  }
  std::string lines;
  try {
    for (const auto& f : files) {
      auto proof = read_proof(f);
      lines += explanation_to_json(explain(proof, *format), ProblemText(proof.sentences)).dump() + "\n";
    }
  } catch (const Error& e) {
    std::cerr << "natlog: " << e.what() << "\n";
    return 1;
  }
  if (out.empty()) {
    std::cout << lines;
  } else {
    write_file(out, lines);
  }
  return 0;
}

int cmd_evaluate(const std::string& gold, const std::string& sys, const std::string& format_name, bool json) {
  auto format = format_from_string(format_name);
  if (!format) {
    std::cerr << "natlog: unknown format '" << format_name << "'\n";
    return kUsage;
  }
  try {
    auto report = evaluate(read_explanations(gold), read_explanations(sys), *format);
    std::cout << (json ? report_json(report).dump(2) + "\n" : report_table(report));
  } catch (const Error& e) {
    std::cerr << "natlog: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_oracle_check(const std::string& corpus_path, const std::string& labels_path, int max_size,
                     const std::string& kb_path) {
  try {
    auto kb = load_kb(kb_path);
    auto corpus = read_corpus(corpus_path);
    std::map<std::string, const NLIProblem*> by_id;
    for (const auto& p : corpus) by_id[p.id] = &p;
    int checked = 0, abstained = 0, disagreements = 0;
    for (const auto& l : read_labels(labels_path)) {
      if (!l.label || *l.label == Label::Neutral) continue;
      auto it = by_id.find(l.id);
      if (it == by_id.end()) throw FormatError("label for unknown problem " + l.id);
      auto res = countermodel_search(parse_problem(*it->second), *l.label, kb, max_size);
      switch (res.verdict) {
        case OracleVerdict::Abstain:
          ++abstained;
          std::cout << "abstain " << l.id << ": " << res.reason << "\n";
          break;
        case OracleVerdict::None:
          ++checked;
          break;
        case OracleVerdict::Countermodel:
          ++checked;
          ++disagreements;
          std::cout << "DISAGREE " << l.id << " (" << to_string(*l.label) << "): " << res.model->str() << "\n";
          break;
      }
    }
    std::cout << "checked " << checked << ", abstained " << abstained << ", disagreements " << disagreements
              << "\n";
    return disagreements ? 3 : 0;
  } catch (const Error& e) {
    std::cerr << "natlog: " << e.what() << "\n";
    return 1;
  }
}

int cmd_regress(const std::string& dir, unsigned seed, int count, const std::string& kb_path) {
  try {
    RegressionOptions o;
    o.corpus_dir = dir;
    o.seed = seed;
    o.generated = count;
    auto report = run_regressions(o, load_kb(kb_path));
    std::cout << report.summary();
    if (!report.passed()) {
      std::cerr << "natlog: first failing case: " << report.failed().front().id << "\n";
      return 1;
    }
  } catch (const Error& e) {
    std::cerr << "natlog: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural-logic tableau prover for inference problems"};
  app.require_subcommand(1);

  ProveOptions prove;
  prove.kb = default_kb();
  auto* p = app.add_subcommand("prove", "Label a JSONL corpus and write proofs");
  p->add_option("--corpus", prove.corpus, "Corpus JSONL")->required();
  p->add_option("--kb", prove.kb, "Knowledge base TSV (default: $NATLOG_KB, else built-in)");
  p->add_option("--budget-entries", prove.entries, "Max entries per tableau");
  p->add_option("--budget-fresh", prove.fresh, "Max fresh entities per tableau");
  p->add_option("--budget-rules", prove.rules, "Max rule applications per tableau");
  p->add_option("--jobs", prove.jobs, "Worker threads");
  p->add_flag("--timing", prove.timing, "Record wall-clock millis per problem");
  p->add_option("--out", prove.out, "Output directory")->required();

  std::string proof_path, format = "lexrel", out;
  auto* e = app.add_subcommand("explain", "Extract explanations from proof files");
  e->add_option("--proof", proof_path, "Proof JSON file or directory")->required();
  e->add_option("--format", format, "lexrel | rules | unlabeled | full");
  e->add_option("--out", out, "Output JSONL (default: stdout)");

  std::string gold, sys;
  bool json = false;
  auto* v = app.add_subcommand("evaluate", "Score system explanations against gold ones");
  v->add_option("--gold", gold, "Gold explanations JSONL")->required();
  v->add_option("--sys", sys, "System explanations JSONL")->required();
  v->add_option("--format", format, "lexrel | rules | unlabeled | full");
  v->add_flag("--json", json, "Print the report as JSON");

  std::string corpus, labels, kb = default_kb();
  int max_size = 3;
  auto* o = app.add_subcommand("oracle-check", "Search finite countermodels for proved labels");
  o->add_option("--corpus", corpus, "Corpus JSONL")->required();
  o->add_option("--labels", labels, "labels.jsonl from prove")->required();
  o->add_option("--max-size", max_size, "Largest universe size")->check(CLI::Range(1, 8));
  o->add_option("--kb", kb, "Knowledge base TSV");

  std::string dir = NATLOG_DEFAULT_CORPUS_DIR;
  unsigned seed = RegressionOptions{}.seed;
  int count = RegressionOptions{}.generated;
  auto* r = app.add_subcommand("regress", "Run golden cases and property suites");
  r->add_option("--dir", dir, "Directory with corpus.jsonl and golden/");
  r->add_option("--seed", seed, "Generator seed");
  r->add_option("--count", count, "Generated problems");
  r->add_option("--kb", kb, "Knowledge base TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }

  if (p->parsed()) return cmd_prove(prove);
  if (e->parsed()) return cmd_explain(proof_path, format, out);
  if (v->parsed()) return cmd_evaluate(gold, sys, format, json);
  if (o->parsed()) return cmd_oracle_check(corpus, labels, max_size, kb);
  return cmd_regress(dir, seed, count, kb);
}
