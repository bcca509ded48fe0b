#include "natlog/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

namespace natlog {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Sub: return "sub";
    case Relation::Equ: return "equ";
    case Relation::Alt: return "alt";
  }
  return "?";
}

std::string_view symbol(Relation r) {
  switch (r) {
    case Relation::Sub: return "⊑";
    case Relation::Equ: return "≡";
    case Relation::Alt: return "|";
  }
  return "?";
}

std::optional<Relation> relation_from_string(std::string_view s) {
  if (s == "sub") return Relation::Sub;
  if (s == "equ") return Relation::Equ;
  if (s == "alt") return Relation::Alt;
  return std::nullopt;
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::None: return "none";
  }
  return "?";
}

std::string LexicalRelation::str() const {
  std::string out = lhs;
  out += symbol(rel);
  out += rhs;
  if (voices) {
    out += " (";
    out += to_string(voices->lhs);
    out += '/';
    out += to_string(voices->rhs);
    out += ')';
  }
  return out;
}

namespace {

std::string normalize_phrase(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool same_pair(const LexicalRelation& a, const LexicalRelation& b) {
  return a.voices == b.voices &&
         ((a.lhs == b.lhs && a.rhs == b.rhs) || (a.lhs == b.rhs && a.rhs == b.lhs));
}

}  // namespace

void KnowledgeBase::add_relation(LexicalRelation r) {
  r.lhs = normalize_phrase(r.lhs);
  r.rhs = normalize_phrase(r.rhs);
  if (r.lhs.empty() || r.rhs.empty()) throw KbError("relation with an empty side");
  if (relations_.contains(r)) return;
  for (const auto& other : relations_) {
    if (!same_pair(r, other)) continue;
    bool r_alt = r.rel == Relation::Alt;
    bool o_alt = other.rel == Relation::Alt;
    if (r_alt != o_alt) {
      throw KbError("contradictory entries: " + other.str() + " and " + r.str());
    }
  }
  mentioned_.insert(r.lhs);
  mentioned_.insert(r.rhs);
  relations_.insert(std::move(r));
}

void KnowledgeBase::add_mark(MonotonicityMark m) {
  if (m.position < 1) throw KbError("monotonicity position must be >= 1");
  auto key = std::pair{normalize_phrase(m.functor), m.position};
  auto [it, inserted] = marks_.emplace(key, m.direction);
  if (!inserted && it->second != m.direction) {
    throw KbError("conflicting monotonicity marks for " + key.first + " position " +
                  std::to_string(key.second));
  }
}

void KnowledgeBase::add_subsective(std::string lemma) {
  subsective_.insert(normalize_phrase(lemma));
}

KnowledgeBase KnowledgeBase::parse(std::string_view tsv, std::string_view origin) {
  KnowledgeBase kb;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    auto nl = tsv.find('\n', pos);
    auto line = tsv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? tsv.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    auto fields = split_tabs(line);
    try {
      if (fields[0] == "mono") {
        if (fields.size() != 4) throw KbError(where + "mono needs lemma, position and direction", line_no);
        int position = 0;
        auto [p, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), position);
        if (ec != std::errc{} || p != fields[2].data() + fields[2].size() || position < 1) {
          throw KbError(where + "bad position '" + std::string(fields[2]) + "'", line_no);
        }
        Direction d;
        if (fields[3] == "up") {
          d = Direction::Up;
        } else if (fields[3] == "down") {
          d = Direction::Down;
        } else {
          throw KbError(where + "direction must be up or down", line_no);
        }
        kb.add_mark({std::string(fields[1]), position, d});
      } else if (fields[0] == "subsective") {
        if (fields.size() != 2 || fields[1].empty()) {
          throw KbError(where + "subsective needs exactly one lemma", line_no);
        }
        kb.add_subsective(std::string(fields[1]));
      } else {
        if (fields.size() != 3 && fields.size() != 4) {
          throw KbError(where + "expected lhs<TAB>rel<TAB>rhs[<TAB>voices]", line_no);
        }
        auto rel = relation_from_string(fields[1]);
        if (!rel) throw KbError(where + "unknown relation '" + std::string(fields[1]) + "'", line_no);
        LexicalRelation r{std::string(fields[0]), *rel, std::string(fields[2]), std::nullopt};
        if (fields.size() == 4) {
          auto comma = fields[3].find(',');
          if (comma == std::string_view::npos) throw KbError(where + "voices must be lhs,rhs", line_no);
          auto lv = voice_from_string(fields[3].substr(0, comma));
          auto rv = voice_from_string(fields[3].substr(comma + 1));
          if (!lv || !rv) throw KbError(where + "voice must be active or passive", line_no);
          r.voices = VoicePair{*lv, *rv};
        }
        kb.add_relation(std::move(r));
      }
    } catch (const KbError& e) {
      if (e.line() != 0) throw;
      throw KbError(where + e.what(), line_no);
    }
  }
  return kb;
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KbError("cannot read knowledge base " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const KnowledgeBase& KnowledgeBase::builtin() {
  static const KnowledgeBase kb = parse(builtin_tsv(), "<builtin>");
  return kb;
}

std::string KnowledgeBase::dump() const {
  std::string out;
  for (const auto& r : relations_) {
    out += r.lhs;
    out += '\t';
    out += to_string(r.rel);
    out += '\t';
    out += r.rhs;
    if (r.voices) {
      out += '\t';
      out += to_string(r.voices->lhs);
      out += ',';
      out += to_string(r.voices->rhs);
    }
    out += '\n';
  }
  for (const auto& [key, dir] : marks_) {
    if (dir == Direction::None) continue;
    out += "mono\t" + key.first + "\t" + std::to_string(key.second) + "\t";
    out += to_string(dir);
    out += '\n';
  }
  for (const auto& s : subsective_) out += "subsective\t" + s + "\n";
  return out;
}

std::map<std::string, KnowledgeBase::Path> KnowledgeBase::up_closure(const std::string& a) const {
  std::map<std::string, Path> seen{{a, {}}};
  std::deque<std::string> frontier{a};
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop_front();
    Path here = seen[cur];
    if (static_cast<int>(here.size()) >= kMaxChainDepth) continue;
    for (const auto& r : relations_) {
      if (r.voices || r.rel == Relation::Alt) continue;
      std::string next;
      if (r.lhs == cur) {
        next = r.rhs;
      } else if (r.rel == Relation::Equ && r.rhs == cur) {
        next = r.lhs;
      } else {
        continue;
      }
      if (seen.contains(next)) continue;
      Path p = here;
      p.push_back(r);
      seen.emplace(next, std::move(p));
      frontier.push_back(next);
    }
  }
  return seen;
}

std::optional<std::vector<LexicalRelation>> KnowledgeBase::subsumption_path(std::string_view a,
                                                                            std::string_view b) const {
  auto from = normalize_phrase(a);
  auto to = normalize_phrase(b);
  if (from == to) return Path{};
  auto up = up_closure(from);
  if (auto it = up.find(to); it != up.end()) return it->second;
  return std::nullopt;
}

std::optional<std::vector<LexicalRelation>> KnowledgeBase::alternation_path(std::string_view a,
                                                                            std::string_view b) const {
  auto up_a = up_closure(normalize_phrase(a));
  auto up_b = up_closure(normalize_phrase(b));
  std::optional<Path> best;
  for (const auto& r : relations_) {
    if (r.rel != Relation::Alt || r.voices) continue;
    for (int flip = 0; flip < 2; ++flip) {
      const auto& left = flip ? r.rhs : r.lhs;
      const auto& right = flip ? r.lhs : r.rhs;
      auto ia = up_a.find(left);
      auto ib = up_b.find(right);
      if (ia == up_a.end() || ib == up_b.end()) continue;
      Path p = ia->second;
      p.push_back(r);
      p.insert(p.end(), ib->second.begin(), ib->second.end());
      if (!best || p.size() < best->size()) best = std::move(p);
    }
  }
  return best;
}

std::optional<std::vector<LexicalRelation>> KnowledgeBase::frame_path(std::string_view a, Voice va,
                                                                      std::string_view b,
                                                                      Voice vb) const {
  if (va == vb) return subsumption_path(a, b);
  auto up_a = up_closure(normalize_phrase(a));
  auto target = normalize_phrase(b);
  std::optional<Path> best;
  for (const auto& r : relations_) {
    if (!r.voices || r.rel == Relation::Alt) continue;
    for (int flip = 0; flip < (r.rel == Relation::Equ ? 2 : 1); ++flip) {
      const auto& left = flip ? r.rhs : r.lhs;
      const auto& right = flip ? r.lhs : r.rhs;
      Voice lv = flip ? r.voices->rhs : r.voices->lhs;
      Voice rv = flip ? r.voices->lhs : r.voices->rhs;
      if (lv != va || rv != vb) continue;
      auto ia = up_a.find(left);
      if (ia == up_a.end()) continue;
      auto tail = subsumption_path(right, target);
      if (!tail) continue;
      Path p = ia->second;
      p.push_back(r);
      p.insert(p.end(), tail->begin(), tail->end());
      if (!best || p.size() < best->size()) best = std::move(p);
    }
  }
  return best;
}

Direction KnowledgeBase::monotonicity(std::string_view functor, int position) const {
  auto it = marks_.find(std::pair{std::string(functor), position});
  return it == marks_.end() ? Direction::None : it->second;
}

bool KnowledgeBase::is_subsective(std::string_view lemma) const {
  return subsective_.contains(std::string(lemma));
}

bool KnowledgeBase::mentions(std::string_view phrase) const {
  return mentioned_.contains(normalize_phrase(phrase));
}

}  // namespace natlog
