#include "natlog/surface.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace natlog {

const std::string& ProblemText::sentence(int id) const {
  if (id < 1 || static_cast<std::size_t>(id) > sentences_.size()) {
    throw AnchorError("no sentence S" + std::to_string(id));
  }
  return sentences_[static_cast<std::size_t>(id - 1)];
}

namespace {

bool is_continuation_byte(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

std::string anchor_str(const SpanAnchor& a) {
  return "S" + std::to_string(a.sentence) + "[" + std::to_string(a.start) + ":" +
         std::to_string(a.end) + "]";
}

}  // namespace

void ProblemText::validate(const SpanAnchor& a) const {
  const auto& s = sentence(a.sentence);
  if (!(a.start < a.end && a.end <= s.size())) {
    throw AnchorError("anchor " + anchor_str(a) + " out of bounds (length " +
                      std::to_string(s.size()) + ")");
  }
  if (is_continuation_byte(s[a.start]) || (a.end < s.size() && is_continuation_byte(s[a.end]))) {
    throw AnchorError("anchor " + anchor_str(a) + " splits a UTF-8 character");
  }
}

std::string_view ProblemText::slice(const SpanAnchor& a) const {
  validate(a);
  return std::string_view(sentence(a.sentence)).substr(a.start, a.end - a.start);
}

std::string SurfaceExpr::machine() const {
  std::string out;
  for (const auto& p : pieces) {
    if (const auto* a = std::get_if<SpanAnchor>(&p)) {
      out += anchor_str(*a);
    } else if (const auto* e = std::get_if<EntityPiece>(&p)) {
      out += e->name;
    } else if (std::holds_alternative<SpacePiece>(p)) {
      out += "␣";
    } else {
      out += '"' + std::get<LemmaPiece>(p).text + '"';
    }
  }
  return out;
}

SurfaceExpr parse_machine(std::string_view s) {
  static constexpr std::string_view kSpace = "␣";
  SurfaceExpr out;
  std::size_t i = 0;
  auto fail = [&s](const char* why) { throw FormatError("bad surface '" + std::string(s) + "': " + why); };
  auto number = [&](char stop) {
    std::size_t end = s.find(stop, i);
    if (end == std::string_view::npos || end == i) fail("truncated anchor");
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + end, v);
    if (ec != std::errc() || ptr != s.data() + end) fail("bad number");
    i = end + 1;
    return v;
  };
  while (i < s.size()) {
    if (s.substr(i).starts_with(kSpace)) {
      out.pieces.emplace_back(SpacePiece{});
      i += kSpace.size();
    } else if (s[i] == '"') {
      std::size_t end = s.find('"', i + 1);
      if (end == std::string_view::npos) fail("unterminated lemma");
      out.pieces.emplace_back(LemmaPiece{std::string(s.substr(i + 1, end - i - 1))});
      i = end + 1;
    } else if (s[i] == 'S' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      ++i;
      SpanAnchor a;
      a.sentence = static_cast<int>(number('['));
      a.start = number(':');
      a.end = number(']');
      out.pieces.emplace_back(a);
    } else {
      std::size_t end = i;
      while (end < s.size() && s[end] != '"' && !s.substr(end).starts_with(kSpace)) ++end;
      out.pieces.emplace_back(EntityPiece{std::string(s.substr(i, end - i))});
      i = end;
    }
  }
  return out;
}

std::string render_surface(const SurfaceExpr& e, const ProblemText& text) {
  std::string out;
  for (const auto& p : e.pieces) {
    if (const auto* a = std::get_if<SpanAnchor>(&p)) {
      out += text.slice(*a);
    } else if (const auto* ent = std::get_if<EntityPiece>(&p)) {
      out += ent->name;
    } else if (std::holds_alternative<SpacePiece>(p)) {
      out += ' ';
    } else {
      out += std::get<LemmaPiece>(p).text;
    }
  }
  return out;
}

SurfaceExpr sentence_surface(int sentence, const ProblemText& text) {
  const auto& s = text.sentence(sentence);
  std::size_t end = s.size();
  while (end > 0 && (s[end - 1] == '.' || std::isspace(static_cast<unsigned char>(s[end - 1])))) {
    --end;
  }
  if (end == 0) return {};
  return SurfaceExpr{{SpanAnchor{sentence, 0, end}}};
}

namespace {

struct Chunk {
  SurfacePiece piece;
  // Source position; unset for lemma pieces and slot-less entities.
  std::optional<std::pair<int, std::size_t>> pos;
  bool front = false;  // slot-less entity: rendered before the predicate
};

void collect(const Term& t, std::vector<Chunk>& out);

void order(std::vector<Chunk>& chunks) {
  bool has_lemma = false;
  std::optional<int> sentence;
  bool mixed = false;
  for (const auto& c : chunks) {
    if (std::holds_alternative<LemmaPiece>(c.piece)) has_lemma = true;
    if (c.pos) {
      if (sentence && *sentence != c.pos->first) mixed = true;
      sentence = c.pos->first;
    }
  }
  if (!has_lemma && !mixed) {
    std::stable_sort(chunks.begin(), chunks.end(), [](const Chunk& a, const Chunk& b) {
      if (a.front != b.front) return a.front;
      if (a.pos && b.pos) return a.pos->second < b.pos->second;
      return false;
    });
  } else {
    std::stable_partition(chunks.begin(), chunks.end(), [](const Chunk& c) { return c.front; });
  }
}

void collect(const Term& t, std::vector<Chunk>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      if (t.silent()) return;
      if (t.anchor()) {
        const auto& a = *t.anchor();
        out.push_back({a, std::pair{a.sentence, a.start}, false});
      } else {
        out.push_back({LemmaPiece{t.lemma()}, std::nullopt, false});
      }
      return;
    case Term::Kind::Entity:
      if (t.anchor()) {
        out.push_back({EntityPiece{t.lemma()}, std::pair{t.anchor()->sentence, t.anchor()->start},
                       false});
      } else {
        out.push_back({EntityPiece{t.lemma()}, std::nullopt, true});
      }
      return;
    case Term::Kind::Application: {
      std::vector<Chunk> local;
      collect(t.head(), local);
      for (const auto& a : t.args()) collect(a, local);
      order(local);
      out.insert(out.end(), local.begin(), local.end());
      return;
    }
  }
}

}  // namespace

SurfaceExpr surface_of(const EntryForm& form, const ProblemText& text) {
  std::vector<Chunk> chunks;
  collect(form.term, chunks);
  for (const auto& a : form.args) collect(a, chunks);
  order(chunks);

  SurfaceExpr out;
  for (const auto& c : chunks) {
    if (!out.pieces.empty()) {
      auto* prev = std::get_if<SpanAnchor>(&out.pieces.back());
      const auto* cur = std::get_if<SpanAnchor>(&c.piece);
      if (prev && cur && prev->sentence == cur->sentence && cur->start >= prev->end) {
        const auto& s = text.sentence(cur->sentence);
        bool adjacent = cur->start == prev->end ||
                        (cur->start == prev->end + 1 && s[prev->end] == ' ');
        if (adjacent) {
          prev->end = cur->end;
          continue;
        }
      }
      out.pieces.emplace_back(SpacePiece{});
    }
    out.pieces.push_back(c.piece);
  }
  return out;
}

std::string canonical_text(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

}  // namespace natlog
