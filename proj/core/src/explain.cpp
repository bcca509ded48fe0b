#include "natlog/explain.hpp"

#include <algorithm>
#include <functional>

namespace natlog {

std::string_view to_string(ExplanationFormat f) {
  switch (f) {
    case ExplanationFormat::LexRel: return "lexrel";
    case ExplanationFormat::Rules: return "rules";
    case ExplanationFormat::Unlabeled: return "unlabeled";
    case ExplanationFormat::Full: return "full";
  }
  return "lexrel";
}

std::optional<ExplanationFormat> format_from_string(std::string_view s) {
  if (s == "lexrel") return ExplanationFormat::LexRel;
  if (s == "rules") return ExplanationFormat::Rules;
  if (s == "unlabeled") return ExplanationFormat::Unlabeled;
  if (s == "full") return ExplanationFormat::Full;
  return std::nullopt;
}

namespace {

class Pruner {
 public:
  explicit Pruner(const Proof& p) : p_(p) {
    for (const auto& s : p.segments) children_[s.id] = s.children;
  }

  PrunedProof run() {
    for (;;) {
      support_ = support();
      if (!collapse_one()) break;
    }
    PrunedProof out;
    for (int id : support_) {
      if (!structural(id)) out.kept.insert(id);
    }
    out.root = build(0, out);
    std::set<int> apps;
    for (int id : out.kept) {
      int seg = p_.node(id).segment;
      if (seg != 0) apps.insert(p_.segment(seg).application);
    }
    for (int a : apps) {
      const auto& app = p_.applications.at(static_cast<std::size_t>(a - 1));
      if (app.rule != RuleId::APush) ++out.rules[app.rule];
    }
    std::map<LexicalRelation, AnchoredRelation> rels;
    for_each_leaf(0, [&](int leaf) {
      if (const auto* c = p_.closure_of(leaf)) {
        for (const auto& r : c->relations) rels.emplace(r.relation, r);
      }
    });
    for (auto& [k, v] : rels) out.relations.push_back(v);
    return out;
  }

 private:
  bool structural(int id) const {
    const auto& n = p_.node(id);
    return n.rule && *n.rule == RuleId::APush;
  }

  int redirect(int id) const {
    while (structural(id)) id = p_.node(id).antecedents.front();
    return id;
  }

  std::vector<int> redirected(const std::vector<int>& ids) const {
    std::vector<int> out;
    for (int id : ids) out.push_back(redirect(id));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void for_each_leaf(int seg, const std::function<void(int)>& f) const {
    const auto& ch = children_.at(seg);
    if (ch.empty()) f(seg);
    for (int c : ch) for_each_leaf(c, f);
  }

  void for_each_split(int seg, const std::function<void(int)>& f) const {
    const auto& ch = children_.at(seg);
    if (ch.size() > 1) f(seg);
    for (int c : ch) for_each_split(c, f);
  }

  std::set<int> support() const {
    std::vector<int> stack;
    for_each_leaf(0, [&](int leaf) {
      if (const auto* c = p_.closure_of(leaf)) {
        for (int a : redirected(c->antecedents)) stack.push_back(a);
      }
    });
    for_each_split(0, [&](int seg) {
      int app = p_.segment(children_.at(seg).front()).application;
      for (int a : redirected(p_.applications.at(static_cast<std::size_t>(app - 1)).antecedents)) {
        stack.push_back(a);
      }
    });
    std::set<int> seen;
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      for (int a : redirected(p_.node(id).antecedents)) stack.push_back(a);
    }
    return seen;
  }

  /// A split none of whose outputs is used keeps only its left subtree.
  bool collapse_one() {
    bool done = false;
    for_each_split(0, [&](int seg) {
      if (done) return;
      const auto& ch = children_.at(seg);
      bool used = std::any_of(ch.begin(), ch.end(), [&](int c) {
        const auto& es = p_.segment(c).entries;
        return std::any_of(es.begin(), es.end(), [&](int id) { return support_.contains(id); });
      });
      if (!used) {
        children_[seg] = {ch.front()};
        done = true;
      }
    });
    return done;
  }

  ProofTree build(int seg, const PrunedProof& out) const {
    ProofTree t;
    for (;;) {
      for (int id : p_.segment(seg).entries) {
        if (!out.kept.contains(id)) continue;
        const auto& n = p_.node(id);
        TreeEntry e{n.id, n.surface, n.text, n.sign, n.rule, redirected(n.antecedents)};
        t.entries.push_back(std::move(e));
      }
      const auto& ch = children_.at(seg);
      if (ch.size() == 1) {
        seg = ch.front();
        continue;
      }
      for (int c : ch) t.children.push_back(build(c, out));
      if (ch.empty()) {
        if (const auto* c = p_.closure_of(seg)) {
          std::vector<AnchoredRelation> rels = c->relations;
          t.closure = TreeClosure{c->id, c->rule, redirected(c->antecedents), std::move(rels)};
        }
      }
      return t;
    }
  }

  const Proof& p_;
  std::map<int, std::vector<int>> children_;
  std::set<int> support_;
};

void strip_labels(ProofTree& t) {
  for (auto& e : t.entries) {
    e.id = 0;
    e.rule.reset();
    e.antecedents.clear();
  }
  if (t.closure) *t.closure = TreeClosure{};
  for (auto& c : t.children) strip_labels(c);
}

void sort_tree(ProofTree& t, bool labeled) {
  for (auto& c : t.children) sort_tree(c, labeled);
  std::stable_sort(t.children.begin(), t.children.end(), [labeled](const ProofTree& a, const ProofTree& b) {
    return tree_signature(a, labeled) < tree_signature(b, labeled);
  });
}

void collect_ids(const ProofTree& t, std::map<int, int>& renumber, int& next) {
  for (const auto& e : t.entries) renumber.emplace(e.id, next++);
  if (t.closure) renumber.emplace(t.closure->id, next++);
  for (const auto& c : t.children) collect_ids(c, renumber, next);
}

void apply_ids(ProofTree& t, const std::map<int, int>& renumber) {
  auto map = [&renumber](int id) {
    auto it = renumber.find(id);
    return it == renumber.end() ? id : it->second;
  };
  for (auto& e : t.entries) {
    e.id = map(e.id);
    for (auto& a : e.antecedents) a = map(a);
  }
  if (t.closure) {
    t.closure->id = map(t.closure->id);
    for (auto& a : t.closure->antecedents) a = map(a);
  }
  for (auto& c : t.children) apply_ids(c, renumber);
}

}  // namespace

std::string tree_signature(const ProofTree& t, bool labeled) {
  std::string s = "(";
  for (const auto& e : t.entries) {
    s += canonical_text(e.text);
    s += ':';
    s += to_string(e.sign);
    if (labeled && e.rule) {
      s += ':';
      s += rule_id(*e.rule);
    }
    s += ';';
  }
  if (t.closure) {
    s += "x";
    if (labeled) {
      s += rule_id(t.closure->rule);
      for (const auto& r : t.closure->relations) s += "," + r.relation.str();
    }
  }
  for (const auto& c : t.children) s += tree_signature(c, labeled);
  s += ")";
  return s;
}

void canonicalize(TreeExplanation& t) {
  if (!t.labeled) strip_labels(t.root);
  sort_tree(t.root, t.labeled);
  if (t.labeled) {
    std::map<int, int> renumber;
    int next = 1;
    collect_ids(t.root, renumber, next);
    apply_ids(t.root, renumber);
  }
}

PrunedProof prune(const Proof& p) {
  if (!p.closed()) throw FormatError("proof " + p.problem_id + " is not closed");
  return Pruner(p).run();
}

LexRelExplanation extract_lexrels(const Proof& p) { return {prune(p).relations}; }

RuleExplanation extract_rules(const Proof& p) {
  auto pr = prune(p);
  return {pr.rules, {pr.relations}};
}

TreeExplanation extract_unlabeled(const Proof& p) {
  TreeExplanation t{false, prune(p).root};
  canonicalize(t);
  return t;
}

TreeExplanation extract_full(const Proof& p) {
  TreeExplanation t{true, prune(p).root};
  canonicalize(t);
  return t;
}

}  // namespace natlog
