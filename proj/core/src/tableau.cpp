#include "natlog/tableau.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "natlog/rules.hpp"

namespace natlog {

namespace {

struct RuleNames {
  RuleId rule;
  std::string_view id;
  std::string_view display;
};

constexpr std::array<RuleNames, 15> kRules{{
    {RuleId::Neg, "neg", "¬"},
    {RuleId::And, "and", "∧"},
    {RuleId::Or, "or", "∨"},
    {RuleId::ExistsT, "exists_T", "∃_T"},
    {RuleId::ForallF, "forall_F", "∀_F"},
    {RuleId::ExistsF, "exists_F", "∃_F"},
    {RuleId::ForallT, "forall_T", "∀_T"},
    {RuleId::Substitute, "substitute", "substitute"},
    {RuleId::UpDisCov, "upDisCov", "upDisCov"},
    {RuleId::DownSubst, "downSubst", "downSubst"},
    {RuleId::AdjSubT, "adj_sub_T", "adj⊂_T"},
    {RuleId::APush, "a_push", "a»"},
    {RuleId::XSub, "x_sub", "×⊑"},
    {RuleId::XAlt, "x_alt", "×|"},
    {RuleId::XFrameAlt, "x_frame_alt", "×frame_alt"},
}};

}  // namespace

std::string_view to_string(Sign s) { return s == Sign::T ? "T" : "F"; }

std::optional<Sign> sign_from_string(std::string_view s) {
  if (s == "T") return Sign::T;
  if (s == "F") return Sign::F;
  return std::nullopt;
}

std::string_view rule_id(RuleId r) { return kRules[static_cast<std::size_t>(r)].id; }
std::string_view rule_display(RuleId r) { return kRules[static_cast<std::size_t>(r)].display; }

std::optional<RuleId> rule_from_id(std::string_view id) {
  for (const auto& r : kRules) {
    if (r.id == id) return r.rule;
  }
  return std::nullopt;
}

bool is_closure_rule(RuleId r) {
  return r == RuleId::XSub || r == RuleId::XAlt || r == RuleId::XFrameAlt;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Closed: return "closed";
    case Status::Open: return "open";
    case Status::BudgetExhausted: return "budget_exhausted";
  }
  return "open";
}

// ---------------------------------------------------------------------------

Tableau::Tableau(ProblemText text, const std::vector<RootSpec>& roots)
    : text_(std::move(text)), roots_(roots) {
  segments_.push_back(Segment{});
  index_.push_back(-1);  // ids start at 1
  for (const auto& r : roots) {
    Entry e;
    e.id = new_id();
    e.form = canonical_form(r.term);
    e.sign = r.sign;
    e.surface = sentence_surface(r.sentence, text_);
    e.segment = 0;
    index_.push_back(static_cast<int>(entries_.size()));
    segments_[0].entries.push_back(e.id);
    entries_.push_back(std::move(e));
  }
  root_count_ = static_cast<int>(roots.size());
}

const Entry& Tableau::entry(int id) const {
  if (id <= 0 || id >= static_cast<int>(index_.size()) || index_[id] < 0) {
    throw std::out_of_range("no entry with id " + std::to_string(id));
  }
  return entries_[static_cast<std::size_t>(index_[id])];
}

std::vector<int> Tableau::leaves() const {
  std::vector<int> out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    const auto& seg = segments_[static_cast<std::size_t>(s)];
    if (seg.children.empty()) out.push_back(s);
    for (auto it = seg.children.rbegin(); it != seg.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<int> Tableau::path(int segment) const {
  std::vector<int> out;
  for (int s = segment; s >= 0; s = segments_.at(static_cast<std::size_t>(s)).parent) out.push_back(s);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> Tableau::branch(int segment) const {
  std::vector<int> out;
  for (int s : path(segment)) {
    const auto& e = segments_[static_cast<std::size_t>(s)].entries;
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

bool Tableau::closed() const {
  auto ls = leaves();
  return std::all_of(ls.begin(), ls.end(), [this](int l) { return is_closed(l); });
}

std::string Tableau::next_fresh_name() const {
  int n = fresh_count_;
  std::string name(1, static_cast<char>('c' + n % 24));
  if (n >= 24) name += std::to_string(n / 24 + 1);
  return name;
}

int Tableau::extend(int leaf, RuleId rule, std::vector<int> antecedents,
                    std::optional<std::string> witness,
                    const std::vector<std::vector<std::pair<EntryForm, Sign>>>& branches,
                    bool fresh) {
  RuleApplication app;
  app.id = static_cast<int>(applications_.size()) + 1;
  app.rule = rule;
  app.antecedents = std::move(antecedents);
  app.witness = std::move(witness);
  for (const auto& b : branches) {
    Segment seg;
    seg.id = static_cast<int>(segments_.size());
    seg.parent = leaf;
    seg.application = app.id;
    for (const auto& [form, sign] : b) {
      Entry e;
      e.id = new_id();
      e.form = form;
      e.sign = sign;
      e.surface = surface_of(form, text_);
      e.segment = seg.id;
      e.produced_by = app.id;
      index_.push_back(static_cast<int>(entries_.size()));
      seg.entries.push_back(e.id);
      entries_.push_back(std::move(e));
    }
    segments_[static_cast<std::size_t>(leaf)].children.push_back(seg.id);
    app.segments.push_back(seg.id);
    segments_.push_back(std::move(seg));
  }
  if (fresh) ++fresh_count_;
  applications_.push_back(std::move(app));
  return applications_.back().id;
}

void Tableau::close(int leaf, RuleId rule, std::vector<int> antecedents,
                    std::vector<LexicalRelation> relations) {
  Closure c;
  c.id = new_id();
  index_.push_back(-1);
  c.rule = rule;
  c.antecedents = std::move(antecedents);
  c.segment = leaf;
  c.relations = std::move(relations);
  segments_.at(static_cast<std::size_t>(leaf)).closure = static_cast<int>(closures_.size());
  closures_.push_back(std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t common_suffix(std::span<const Term> a, std::span<const Term> b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
  return n;
}

Term prefix_of(const EntryForm& f, std::size_t keep) {
  if (keep == 0) return f.term;
  return Term::apply(f.term, std::span<const Term>(f.args).first(keep));
}

std::optional<std::vector<LexicalRelation>> sub_closure(const Entry& x, const Entry& y,
                                                        const KnowledgeBase& kb) {
  if (x.form.term.voice() != y.form.term.voice()) return std::nullopt;
  std::size_t nx = x.form.args.size(), ny = y.form.args.size();
  std::size_t l = common_suffix(x.form.args, y.form.args);
  std::size_t lowest = (nx == 0 && ny == 0) ? 0 : 1;
  for (std::size_t k = l + 1; k-- > lowest;) {
    Term px = prefix_of(x.form, nx - k);
    Term py = prefix_of(y.form, ny - k);
    if (!(px.type() == py.type())) continue;
    if (px == py) return std::vector<LexicalRelation>{};
    if (auto path = kb.subsumption_path(px.phrase(), py.phrase())) return path;
  }
  return std::nullopt;
}

std::optional<std::vector<LexicalRelation>> alt_closure(const Entry& x, const Entry& y,
                                                        const KnowledgeBase& kb) {
  if (x.form.term.voice() != y.form.term.voice()) return std::nullopt;
  std::size_t nx = x.form.args.size(), ny = y.form.args.size();
  std::size_t l = common_suffix(x.form.args, y.form.args);
  for (std::size_t k = l; k >= 1; --k) {
    Term px = prefix_of(x.form, nx - k);
    Term py = prefix_of(y.form, ny - k);
    if (!(px.type() == py.type()) || px == py) continue;
    if (auto path = kb.alternation_path(px.phrase(), py.phrase())) return path;
  }
  return std::nullopt;
}

std::optional<std::vector<LexicalRelation>> frame_closure(const Entry& x, const Entry& y,
                                                          const KnowledgeBase& kb) {
  const Term& hx = x.form.term;
  const Term& hy = y.form.term;
  if (hx.voice() == hy.voice() || !hx.is_constant() || !hy.is_constant()) return std::nullopt;
  if (!(hx.type() == TermType::transitive()) || !(hy.type() == TermType::transitive())) {
    return std::nullopt;
  }
  const auto& ax = x.form.args;
  const auto& ay = y.form.args;
  if (ax.size() != 2 || ay.size() != 2 || !(ax[0] == ay[1]) || !(ax[1] == ay[0])) return std::nullopt;
  if (hx.lemma() == hy.lemma()) return std::vector<LexicalRelation>{};
  return kb.frame_path(hx.lemma(), hx.voice(), hy.lemma(), hy.voice());
}

}  // namespace

std::optional<ClosureFound> closure_between(const Entry& a, const Entry& b, const KnowledgeBase& kb) {
  if (!a.form.is_canonical() || !b.form.is_canonical()) return std::nullopt;
  std::vector<int> ants{std::min(a.id, b.id), std::max(a.id, b.id)};
  if (a.sign != b.sign) {
    const Entry& x = a.sign == Sign::T ? a : b;
    const Entry& y = a.sign == Sign::T ? b : a;
    if (auto r = sub_closure(x, y, kb)) return ClosureFound{RuleId::XSub, ants, std::move(*r)};
    if (auto r = frame_closure(x, y, kb)) return ClosureFound{RuleId::XFrameAlt, ants, std::move(*r)};
    return std::nullopt;
  }
  if (a.sign == Sign::T) {
    if (auto r = alt_closure(a, b, kb)) return ClosureFound{RuleId::XAlt, ants, std::move(*r)};
  }
  return std::nullopt;
}

namespace {

class ClosureCache {
 public:
  explicit ClosureCache(const KnowledgeBase& kb) : kb_(kb) {}

  std::optional<ClosureFound> between(const Entry& a, const Entry& b) {
    std::string key = a.form.format_key() + (a.sign == Sign::T ? "\x01T\x01" : "\x01F\x01") +
                      b.form.format_key() + (b.sign == Sign::T ? "\x01T" : "\x01F");
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      auto r = closure_between(a, b, kb_);
      if (r) r->antecedents.clear();
      it = memo_.emplace(std::move(key), std::move(r)).first;
    }
    if (!it->second) return std::nullopt;
    ClosureFound out = *it->second;
    out.antecedents = {std::min(a.id, b.id), std::max(a.id, b.id)};
    return out;
  }

 private:
  const KnowledgeBase& kb_;
  std::unordered_map<std::string, std::optional<ClosureFound>> memo_;
};

std::optional<ClosureFound> first_closure(const Tableau& t, const std::vector<int>& ids,
                                          ClosureCache& cache) {
  for (std::size_t j = ids.size(); j-- > 1;) {
    const Entry& b = t.entry(ids[j]);
    if (!b.form.is_canonical()) continue;
    for (std::size_t i = j; i-- > 0;) {
      const Entry& a = t.entry(ids[i]);
      if (auto r = cache.between(a, b)) return r;
    }
  }
  return std::nullopt;
}

std::string signed_key(const EntryForm& f, Sign s) {
  return f.format_key() + (s == Sign::T ? "\x01T" : "\x01F");
}

std::string fired_key(RuleId rule, const std::vector<int>& antecedents,
                      const std::optional<std::string>& witness) {
  std::string k(rule_id(rule));
  for (int a : antecedents) k += "," + std::to_string(a);
  if (witness) k += "@" + *witness;
  return k;
}

/// The state of one open branch as seen by the scheduler.
struct BranchView {
  std::vector<int> ids;
  std::set<std::string> present;
  std::set<std::string> fired;
  std::vector<Term> individuals;

  BranchView(const Tableau& t, int leaf) : ids(t.branch(leaf)) {
    std::set<std::string> seen;
    for (int id : ids) {
      const Entry& e = t.entry(id);
      present.insert(signed_key(e.form, e.sign));
      for (const auto& a : e.form.args) {
        if (a.is_individual() && seen.insert(a.key()).second) individuals.push_back(a);
      }
    }
    for (int s : t.path(leaf)) {
      int app = t.segments()[static_cast<std::size_t>(s)].application;
      if (app == 0) continue;
      const auto& ra = t.application(app);
      fired.insert(fired_key(ra.rule, ra.antecedents, ra.witness));
      // Fresh-entity rules fire once per antecedent set, whatever the entity.
      fired.insert(fired_key(ra.rule, ra.antecedents, std::nullopt));
    }
  }

  bool has(const EntryForm& f, Sign s) const { return present.contains(signed_key(f, s)); }

  /// A branch of the expansion adds nothing: the application is redundant.
  bool redundant(const Expansion& x) const {
    return std::any_of(x.branches.begin(), x.branches.end(), [this](const auto& b) {
      return std::all_of(b.begin(), b.end(), [this](const auto& p) { return has(p.first, p.second); });
    });
  }
};

struct Scheduler {
  const Tableau& t;
  const KnowledgeBase& kb;
  const Budget& budget;
  const BranchView& v;
  bool fresh_blocked = false;

  bool fresh_available() {
    if (t.fresh_count() < budget.max_fresh) return true;
    fresh_blocked = true;
    return false;
  }

  bool usable(const std::optional<Expansion>& x, const std::optional<std::string>& witness_for_key) const {
    if (!x) return false;
    if (v.fired.contains(fired_key(x->rule, x->antecedents, witness_for_key))) return false;
    return !v.redundant(*x);
  }

  std::optional<Expansion> push_step() const {
    for (int id : v.ids) {
      const Entry& e = t.entry(id);
      if (e.form.is_canonical()) continue;
      auto x = rule_push(e);
      if (x && !v.fired.contains(fired_key(x->rule, x->antecedents, std::nullopt))) return x;
    }
    return std::nullopt;
  }

  std::optional<Expansion> linear_step() const {
    for (int id : v.ids) {
      const Entry& e = t.entry(id);
      if (!e.form.is_canonical()) continue;
      if (auto x = rule_neg(e); usable(x, std::nullopt)) return x;
      if (auto x = rule_and_or(e); x && x->branches.size() == 1 && usable(x, std::nullopt)) return x;
      if (auto x = rule_adj(e, kb); usable(x, std::nullopt)) return x;
      auto q = quant_site(e);
      if (!q || is_fresh_site(*q)) continue;
      for (int nid : v.ids) {
        const Entry& n = t.entry(nid);
        if (n.sign != Sign::T || !n.form.is_canonical()) continue;
        if (auto x = rule_instantiate(e, n); usable(x, std::nullopt)) return x;
      }
    }
    return std::nullopt;
  }

  std::optional<Expansion> fresh_step() {
    for (int id : v.ids) {
      const Entry& e = t.entry(id);
      auto q = quant_site(e);
      if (!q || !is_fresh_site(*q)) continue;
      auto x = rule_fresh(e, t.next_fresh_name());
      if (!x || v.fired.contains(fired_key(x->rule, x->antecedents, std::nullopt))) continue;
      if (!fresh_available()) return std::nullopt;
      return x;
    }
    return std::nullopt;
  }

  std::optional<Expansion> branching_step() {
    for (int id : v.ids) {
      const Entry& e = t.entry(id);
      if (!e.form.is_canonical()) continue;
      if (auto x = rule_and_or(e); x && x->branches.size() == 2 && usable(x, std::nullopt)) return x;
    }
    for (int i : v.ids) {
      const Entry& e1 = t.entry(i);
      if (e1.sign != Sign::T || !e1.form.is_canonical()) continue;
      for (int j : v.ids) {
        if (i == j) continue;
        const Entry& e2 = t.entry(j);
        auto x = rule_monotonicity(e1, e2, t.next_fresh_name(), kb);
        if (!x || v.fired.contains(fired_key(x->rule, x->antecedents, std::nullopt))) continue;
        // Nothing to gain when f..y.. already holds on the branch.
        if (v.has(canonical_form(x->branches[1][0].first), Sign::T)) continue;
        if (!fresh_available()) continue;
        return x;
      }
    }
    return std::nullopt;
  }

  std::optional<Expansion> split_instantiation_step() const {
    for (int id : v.ids) {
      const Entry& e = t.entry(id);
      auto q = quant_site(e);
      if (!q || is_fresh_site(*q)) continue;
      for (const auto& ind : v.individuals) {
        auto x = rule_instantiate_split(e, ind);
        if (x && usable(x, x->witness)) return x;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<ClosureFound> check_closure(const Tableau& t, int leaf, const KnowledgeBase& kb) {
  ClosureCache cache(kb);
  return first_closure(t, t.branch(leaf), cache);
}

SaturationResult saturate(Tableau& t, const KnowledgeBase& kb, const Budget& budget) {
  ClosureCache cache(kb);
  SaturationResult result;
  for (;;) {
    auto leaves = t.leaves();
    auto open = std::find_if(leaves.begin(), leaves.end(), [&t](int l) { return !t.is_closed(l); });
    if (open == leaves.end()) {
      result.status = Status::Closed;
      break;
    }
    int leaf = *open;
    BranchView view(t, leaf);
    Scheduler sched{t, kb, budget, view};

    auto step = sched.push_step();
    if (!step) {
      if (auto c = first_closure(t, view.ids, cache)) {
        t.close(leaf, c->rule, std::move(c->antecedents), std::move(c->relations));
        continue;
      }
      step = sched.linear_step();
      if (!step) step = sched.fresh_step();
      if (!step) step = sched.branching_step();
      if (!step) step = sched.split_instantiation_step();
    }
    if (!step) {
      result.status = sched.fresh_blocked ? Status::BudgetExhausted : Status::Open;
      break;
    }
    std::size_t adding = 0;
    for (const auto& b : step->branches) adding += b.size();
    if (result.rule_applications >= budget.max_rule_applications ||
        t.entries().size() + adding > static_cast<std::size_t>(budget.max_entries)) {
      result.status = Status::BudgetExhausted;
      break;
    }
    t.extend(leaf, step->rule, step->antecedents, step->witness, step->branches, step->fresh);
    ++result.rule_applications;
  }
  return result;
}

std::optional<std::string> verify_derivation(const Tableau& t, const KnowledgeBase& kb) {
  Tableau replay(t.text(), t.roots());
  std::size_t next_app = 0;
  std::size_t next_closure = 0;
  const auto& apps = t.applications();
  const auto& closures = t.closures();

  auto first_id = [&t](const RuleApplication& a) {
    return t.segments()[static_cast<std::size_t>(a.segments.front())].entries.front();
  };

  while (next_app < apps.size() || next_closure < closures.size()) {
    bool take_app = next_app < apps.size() &&
                    (next_closure >= closures.size() || first_id(apps[next_app]) < closures[next_closure].id);
    if (take_app) {
      const auto& a = apps[next_app++];
      int leaf = t.segments()[static_cast<std::size_t>(a.segments.front())].parent;
      auto on_branch = replay.branch(leaf);
      std::vector<const Entry*> ants;
      for (int id : a.antecedents) {
        if (std::find(on_branch.begin(), on_branch.end(), id) == on_branch.end()) {
          return "application " + std::to_string(a.id) + ": antecedent " + std::to_string(id) +
                 " is not on the branch";
        }
        ants.push_back(&replay.entry(id));
      }
      auto x = refire(a.rule, ants, a.witness, kb);
      if (!x || x->branches.size() != a.segments.size()) {
        return "application " + std::to_string(a.id) + " (" + std::string(rule_id(a.rule)) +
               ") does not re-fire";
      }
      for (std::size_t b = 0; b < a.segments.size(); ++b) {
        const auto& seg = t.segments()[static_cast<std::size_t>(a.segments[b])];
        if (seg.entries.size() != x->branches[b].size()) {
          return "application " + std::to_string(a.id) + ": segment size differs";
        }
        for (std::size_t k = 0; k < seg.entries.size(); ++k) {
          const Entry& orig = t.entry(seg.entries[k]);
          const auto& [form, sign] = x->branches[b][k];
          if (orig.form.format_key() != form.format_key() || orig.sign != sign) {
            return "application " + std::to_string(a.id) + ": entry " + std::to_string(orig.id) +
                   " differs on replay";
          }
        }
      }
      replay.extend(leaf, a.rule, a.antecedents, a.witness, x->branches, x->fresh);
    } else {
      const auto& c = closures[next_closure++];
      auto on_branch = replay.branch(c.segment);
      for (int id : c.antecedents) {
        if (std::find(on_branch.begin(), on_branch.end(), id) == on_branch.end()) {
          return "closure " + std::to_string(c.id) + ": antecedent not on the branch";
        }
      }
      if (c.antecedents.size() != 2) return "closure " + std::to_string(c.id) + ": needs two antecedents";
      auto found = closure_between(replay.entry(c.antecedents[0]), replay.entry(c.antecedents[1]), kb);
      if (!found || found->rule != c.rule || found->relations != c.relations) {
        return "closure " + std::to_string(c.id) + " does not hold";
      }
      replay.close(c.segment, c.rule, c.antecedents, c.relations);
    }
  }
  if (replay.entries().size() != t.entries().size()) return std::string("entry count differs");
  return std::nullopt;
}

}  // namespace natlog
