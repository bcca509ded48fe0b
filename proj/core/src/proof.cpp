#include "natlog/proof.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace natlog {

const ProofNode& Proof::node(int id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const ProofNode& n, int v) { return n.id < v; });
  if (it == nodes.end() || it->id != id) throw FormatError("no node with id " + std::to_string(id));
  return *it;
}

const ProofClosure* Proof::closure_of(int seg) const {
  const auto& s = segment(seg);
  if (!s.closure) return nullptr;
  for (const auto& c : closures) {
    if (c.id == *s.closure) return &c;
  }
  return nullptr;
}

bool Proof::closed() const {
  return std::all_of(segments.begin(), segments.end(), [](const ProofSegment& s) {
    return !s.children.empty() || s.closure.has_value();
  });
}

namespace {

/// Surfaces of every head-prefix of the closing entries, keyed by phrase.
std::map<std::string, SurfaceExpr> prefix_surfaces(const Tableau& t, const Closure& c) {
  std::map<std::string, SurfaceExpr> out;
  for (int id : c.antecedents) {
    const auto& f = t.entry(id).form;
    for (std::size_t keep = 0; keep <= f.args.size(); ++keep) {
      Term p = keep == 0 ? f.term : Term::apply(f.term, std::span<const Term>(f.args).first(keep));
      out.emplace(p.phrase(), surface_of(EntryForm{p, {}}, t.text()));
    }
  }
  return out;
}

SurfaceExpr side(const std::map<std::string, SurfaceExpr>& known, const std::string& phrase) {
  auto it = known.find(phrase);
  if (it != known.end()) return it->second;
  return SurfaceExpr{{LemmaPiece{phrase}}};
}

}  // namespace

Proof make_proof(const Tableau& t, std::string problem_id, std::string searched) {
  Proof p;
  p.problem_id = std::move(problem_id);
  p.searched = std::move(searched);
  p.sentences = t.text().sentences();
  for (const auto& e : t.entries()) {
    ProofNode n;
    n.id = e.id;
    n.surface = e.surface;
    n.text = render_surface(e.surface, t.text());
    n.sign = e.sign;
    n.segment = e.segment;
    n.term = e.form.term.key();
    for (const auto& a : e.form.args) n.args.push_back(a.key());
    if (e.produced_by) {
      const auto& app = t.application(e.produced_by);
      n.rule = app.rule;
      n.antecedents = app.antecedents;
    }
    p.nodes.push_back(std::move(n));
  }
  std::sort(p.nodes.begin(), p.nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& s : t.segments()) {
    ProofSegment ps{s.id, s.parent, s.application, s.entries, s.children, std::nullopt};
    if (s.closure) ps.closure = t.closures()[static_cast<std::size_t>(*s.closure)].id;
    p.segments.push_back(std::move(ps));
  }
  for (const auto& a : t.applications()) {
    p.applications.push_back({a.id, a.rule, a.antecedents, a.segments, a.witness});
  }
  for (const auto& c : t.closures()) {
    ProofClosure pc{c.id, c.rule, c.antecedents, c.segment, {}};
    auto known = prefix_surfaces(t, c);
    for (const auto& r : c.relations) pc.relations.push_back({r, side(known, r.lhs), side(known, r.rhs)});
    p.closures.push_back(std::move(pc));
  }
  return p;
}

}  // namespace natlog
