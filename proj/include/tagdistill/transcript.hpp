#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tagdistill/errors.hpp"

namespace tagdistill {

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class PunctMark { Comma, Period, Semicolon, Exclamation, Question };

inline constexpr std::array<PunctMark, 5> kAllMarks = {
    PunctMark::Comma, PunctMark::Period, PunctMark::Semicolon,
    PunctMark::Exclamation, PunctMark::Question};

inline char mark_char(PunctMark m) {
  switch (m) {
    case PunctMark::Comma: return ',';
    case PunctMark::Period: return '.';
    case PunctMark::Semicolon: return ';';
    case PunctMark::Exclamation: return '!';
    case PunctMark::Question: return '?';
  }
  return '?';
}

inline const char* mark_name(PunctMark m) {
  switch (m) {
    case PunctMark::Comma: return "comma";
    case PunctMark::Period: return "period";
    case PunctMark::Semicolon: return "semicolon";
    case PunctMark::Exclamation: return "exclamation";
    case PunctMark::Question: return "question";
  }
  return "?";
}

inline std::optional<PunctMark> mark_from_char(char c) {
  switch (c) {
    case ',': return PunctMark::Comma;
    case '.': return PunctMark::Period;
    case ';': return PunctMark::Semicolon;
    case '!': return PunctMark::Exclamation;
    case '?': return PunctMark::Question;
    default: return std::nullopt;
  }
}

inline std::optional<PunctMark> mark_from_name(std::string_view s) {
  for (PunctMark m : kAllMarks) {
    if (s == mark_name(m)) return m;
  }
  return std::nullopt;
}

/// A spoken word with its (optional) audio-aligned time range, in seconds.
struct Word {
  std::string text;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const Word&) const = default;
};

/// A punctuation mark carried as its own token.
struct Punct {
  PunctMark mark;

  bool operator==(const Punct&) const = default;
};

using Token = std::variant<Word, Punct>;

inline bool is_word(const Token& t) { return std::holds_alternative<Word>(t); }
inline const Word& as_word(const Token& t) { return std::get<Word>(t); }
inline const Punct& as_punct(const Token& t) { return std::get<Punct>(t); }

// ---------------------------------------------------------------------------
// Entity labels
// ---------------------------------------------------------------------------

/// The 22 entity labels: 18 OntoNotes-style base labels plus the four
/// pattern-extracted ones (URL, EMAIL, PHONE, NUMERIC).
enum class EntityLabel {
  PERSON, NORP, FAC, ORG, GPE, LOC, PRODUCT, EVENT, WORK_OF_ART, LAW,
  LANGUAGE, DATE, TIME, PERCENT, MONEY, QUANTITY, ORDINAL, CARDINAL,
  URL, EMAIL, PHONE, NUMERIC,
};

inline constexpr int kNumLabels = 22;

inline constexpr std::array<EntityLabel, kNumLabels> kAllLabels = {
    EntityLabel::PERSON,  EntityLabel::NORP,     EntityLabel::FAC,
    EntityLabel::ORG,     EntityLabel::GPE,      EntityLabel::LOC,
    EntityLabel::PRODUCT, EntityLabel::EVENT,    EntityLabel::WORK_OF_ART,
    EntityLabel::LAW,     EntityLabel::LANGUAGE, EntityLabel::DATE,
    EntityLabel::TIME,    EntityLabel::PERCENT,  EntityLabel::MONEY,
    EntityLabel::QUANTITY, EntityLabel::ORDINAL, EntityLabel::CARDINAL,
    EntityLabel::URL,     EntityLabel::EMAIL,    EntityLabel::PHONE,
    EntityLabel::NUMERIC,
};

inline const char* label_name(EntityLabel l) {
  switch (l) {
    case EntityLabel::PERSON: return "PERSON";
    case EntityLabel::NORP: return "NORP";
    case EntityLabel::FAC: return "FAC";
    case EntityLabel::ORG: return "ORG";
    case EntityLabel::GPE: return "GPE";
    case EntityLabel::LOC: return "LOC";
    case EntityLabel::PRODUCT: return "PRODUCT";
    case EntityLabel::EVENT: return "EVENT";
    case EntityLabel::WORK_OF_ART: return "WORK_OF_ART";
    case EntityLabel::LAW: return "LAW";
    case EntityLabel::LANGUAGE: return "LANGUAGE";
    case EntityLabel::DATE: return "DATE";
    case EntityLabel::TIME: return "TIME";
    case EntityLabel::PERCENT: return "PERCENT";
    case EntityLabel::MONEY: return "MONEY";
    case EntityLabel::QUANTITY: return "QUANTITY";
    case EntityLabel::ORDINAL: return "ORDINAL";
    case EntityLabel::CARDINAL: return "CARDINAL";
    case EntityLabel::URL: return "URL";
    case EntityLabel::EMAIL: return "EMAIL";
    case EntityLabel::PHONE: return "PHONE";
    case EntityLabel::NUMERIC: return "NUMERIC";
  }
  return "?";
}

inline std::optional<EntityLabel> label_from_name(std::string_view s) {
  for (EntityLabel l : kAllLabels) {
    if (s == label_name(l)) return l;
  }
  return std::nullopt;
}

/// Numerical labels are scored with CER, textual ones with Jaro-Winkler.
inline bool is_numerical(EntityLabel l) {
  switch (l) {
    case EntityLabel::CARDINAL:
    case EntityLabel::NUMERIC:
    case EntityLabel::TIME:
    case EntityLabel::QUANTITY:
    case EntityLabel::MONEY:
    case EntityLabel::PERCENT:
    case EntityLabel::URL:
    case EntityLabel::PHONE:
    case EntityLabel::ORDINAL:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------

/// Half-open token-index range tagged with an entity label. Both endpoints
/// must land on Word tokens.
struct EntitySpan {
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  EntityLabel label = EntityLabel::PERSON;

  bool operator==(const EntitySpan&) const = default;
};

/// A formatted transcript: word/punctuation token stream plus non-overlapping
/// entity spans sorted by start. Timestamps may be absent (all zero), which
/// `has_timestamps` records.
struct AnnotatedTranscript {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<EntitySpan> entities;
  bool has_timestamps = false;

  bool operator==(const AnnotatedTranscript&) const = default;

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const Token& t : tokens) n += is_word(t) ? 1 : 0;
    return n;
  }
};

/// Checks every invariant; throws InvariantViolation naming the failure.
/// Word start times must be non-decreasing across the token stream (word
/// end only has to be >= its own start).
inline void validate(const AnnotatedTranscript& t) {
  auto fail = [&](const std::string& msg) {
    throw InvariantViolation("doc '" + t.doc_id + "': " + msg);
  };
  double prev_start = 0.0;
  bool seen_word = false;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (!is_word(t.tokens[i])) continue;
    const Word& w = as_word(t.tokens[i]);
    if (w.text.empty()) fail("token " + std::to_string(i) + ": empty word");
    for (char c : w.text) {
      if (c == '<' || c == '>' || std::isspace(static_cast<unsigned char>(c)))
        fail("token " + std::to_string(i) + ": word contains '" +
             std::string(1, c) + "'");
    }
    if (w.start < 0.0 || w.end < w.start)
      fail("token " + std::to_string(i) + ": bad time range");
    if (seen_word && w.start < prev_start)
      fail("token " + std::to_string(i) + ": word start times decrease");
    prev_start = w.start;
    seen_word = true;
  }
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < t.entities.size(); ++k) {
    const EntitySpan& s = t.entities[k];
    auto at = [&](const std::string& msg) {
      fail("entity " + std::to_string(k) + ": " + msg);
    };
    if (s.start >= s.end) at("empty span");
    if (s.end > t.tokens.size()) at("span end beyond token count");
    if (!is_word(t.tokens[s.start])) at("span does not start on a word");
    if (!is_word(t.tokens[s.end - 1])) at("span does not end on a word");
    if (k > 0 && s.start < prev_end) at("span overlaps previous span");
    if (k > 0 && s.start < t.entities[k - 1].start) at("spans out of order");
    prev_end = s.end;
  }
}

// ---------------------------------------------------------------------------
// Inline-tag text format
// ---------------------------------------------------------------------------

// Grammar of the tagged-text form: words separated by single spaces, no space
// before punctuation, entity spans wrapped as <LABEL>word ... word</LABEL>.
// Trailing sentence punctuation (, . ; ! ?) is detached from words into
// separate Punct tokens; characters inside a word (the period in "5.2", a
// comma in "5,000") are word content.

namespace detail {

inline bool is_detachable(char c) { return mark_from_char(c).has_value(); }

}  // namespace detail

/// Parses inline-tagged text. The result has no timestamps. Throws
/// TagParseError (UnknownLabel / UnbalancedTag / NestedTag) with the byte
/// offset of the offending input.
inline AnnotatedTranscript parse_tagged_text(const std::string& text,
                                             const std::string& doc_id = "") {
  AnnotatedTranscript out;
  out.doc_id = doc_id;
  out.has_timestamps = false;

  std::optional<EntityLabel> open;
  std::size_t open_offset = 0;
  std::size_t open_start_token = 0;

  // Spans are trimmed to their enclosing word range; a tag pair with no word
  // inside produces no span.
  auto close_span = [&] {
    std::size_t s = open_start_token;
    std::size_t e = out.tokens.size();
    while (s < e && !is_word(out.tokens[s])) ++s;
    while (e > s && !is_word(out.tokens[e - 1])) --e;
    if (s < e) out.entities.push_back({s, e, *open});
    open.reset();
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '>') {
      throw TagParseError(TagParseError::Kind::UnbalancedTag, i,
                          "stray '>' outside a tag");
    }
    if (c == '<') {
      const std::size_t gt = text.find('>', i);
      if (gt == std::string::npos)
        throw TagParseError(TagParseError::Kind::UnbalancedTag, i,
                            "tag opened but never closed with '>'");
      std::string inner = text.substr(i + 1, gt - i - 1);
      const bool closing = !inner.empty() && inner.front() == '/';
      const std::string name = closing ? inner.substr(1) : inner;
      const auto label = label_from_name(name);
      if (!label)
        throw TagParseError(TagParseError::Kind::UnknownLabel, i,
                            "unknown entity label '" + name + "'");
      if (closing) {
        if (!open || *open != *label)
          throw TagParseError(TagParseError::Kind::UnbalancedTag, i,
                              "closing </" + name + "> without matching open");
        close_span();
      } else {
        if (open)
          throw TagParseError(TagParseError::Kind::NestedTag, i,
                              "<" + name + "> opened inside <" +
                                  std::string(label_name(*open)) + ">");
        open = *label;
        open_offset = i;
        open_start_token = out.tokens.size();
      }
      i = gt + 1;
      continue;
    }
    // Word run, ends at whitespace or a tag delimiter.
    const std::size_t begin = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '<') {
      if (text[i] == '>')
        throw TagParseError(TagParseError::Kind::UnbalancedTag, i,
                            "stray '>' inside a word");
      ++i;
    }
    std::string chunk = text.substr(begin, i - begin);
    std::size_t keep = chunk.size();
    while (keep > 0 && detail::is_detachable(chunk[keep - 1])) --keep;
    if (keep > 0) out.tokens.push_back(Word{chunk.substr(0, keep), 0.0, 0.0});
    for (std::size_t k = keep; k < chunk.size(); ++k)
      out.tokens.push_back(Punct{*mark_from_char(chunk[k])});
  }
  if (open)
    throw TagParseError(TagParseError::Kind::UnbalancedTag, open_offset,
                        "<" + std::string(label_name(*open)) + "> never closed");
  return out;
}

/// Inverse of parse_tagged_text on tokens and spans (timestamps are dropped
/// by the text form).
inline std::string serialize_tagged_text(const AnnotatedTranscript& t) {
  std::string out;
  std::size_t span_idx = 0;
  // Spans whose end sits at each token index, for closing tags.
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    const bool punct = !is_word(t.tokens[i]);
    if (!out.empty() && !punct) out += ' ';
    if (span_idx < t.entities.size() && t.entities[span_idx].start == i) {
      out += '<';
      out += label_name(t.entities[span_idx].label);
      out += '>';
    }
    if (punct) {
      out += mark_char(as_punct(t.tokens[i]).mark);
    } else {
      out += as_word(t.tokens[i]).text;
    }
    if (span_idx < t.entities.size() && t.entities[span_idx].end == i + 1) {
      out += "</";
      out += label_name(t.entities[span_idx].label);
      out += '>';
      ++span_idx;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON corpus format
// ---------------------------------------------------------------------------
// {"docs":[{"doc_id":str,
//           "tokens":[{"kind":"word","text":str,"start":num,"end":num}
//                     |{"kind":"punct","mark":str}],
//           "entities":[{"start":int,"end":int,"label":str}]}]}

inline nlohmann::json to_json(const AnnotatedTranscript& t) {
  nlohmann::json doc;
  doc["doc_id"] = t.doc_id;
  doc["tokens"] = nlohmann::json::array();
  for (const Token& tok : t.tokens) {
    if (is_word(tok)) {
      const Word& w = as_word(tok);
      doc["tokens"].push_back({{"kind", "word"},
                               {"text", w.text},
                               {"start", w.start},
                               {"end", w.end}});
    } else {
      doc["tokens"].push_back(
          {{"kind", "punct"}, {"mark", mark_name(as_punct(tok).mark)}});
    }
  }
  doc["entities"] = nlohmann::json::array();
  for (const EntitySpan& s : t.entities) {
    doc["entities"].push_back({{"start", s.start},
                               {"end", s.end},
                               {"label", label_name(s.label)}});
  }
  return doc;
}

inline AnnotatedTranscript transcript_from_json(const nlohmann::json& doc,
                                                std::size_t doc_index) {
  auto where = [&](const std::string& field) {
    return "docs[" + std::to_string(doc_index) + "]." + field;
  };
  auto need = [&](const nlohmann::json& j, const char* key,
                  const std::string& ctx) -> const nlohmann::json& {
    if (!j.contains(key)) throw SchemaError("missing field " + ctx + "." + key);
    return j.at(key);
  };

  AnnotatedTranscript t;
  if (!doc.is_object()) throw SchemaError(where("") + " is not an object");
  t.doc_id = need(doc, "doc_id", where("doc_id")).get<std::string>();
  const auto& toks = need(doc, "tokens", where("tokens"));
  if (!toks.is_array()) throw SchemaError(where("tokens") + " is not an array");
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& jt = toks[i];
    const std::string ctx = where("tokens[" + std::to_string(i) + "]");
    const std::string kind = need(jt, "kind", ctx).get<std::string>();
    if (kind == "word") {
      Word w;
      w.text = need(jt, "text", ctx).get<std::string>();
      w.start = need(jt, "start", ctx).get<double>();
      w.end = need(jt, "end", ctx).get<double>();
      t.tokens.push_back(w);
    } else if (kind == "punct") {
      const std::string m = need(jt, "mark", ctx).get<std::string>();
      const auto mark = mark_from_name(m);
      if (!mark) throw SchemaError(ctx + ": unknown mark '" + m + "'");
      t.tokens.push_back(Punct{*mark});
    } else {
      throw SchemaError(ctx + ": unknown token kind '" + kind + "'");
    }
  }
  const auto& ents = need(doc, "entities", where("entities"));
  if (!ents.is_array())
    throw SchemaError(where("entities") + " is not an array");
  for (std::size_t i = 0; i < ents.size(); ++i) {
    const auto& je = ents[i];
    const std::string ctx = where("entities[" + std::to_string(i) + "]");
    EntitySpan s;
    const auto js = need(je, "start", ctx);
    const auto jeend = need(je, "end", ctx);
    if (!js.is_number_integer() || !jeend.is_number_integer())
      throw SchemaError(ctx + ": span bounds must be integers");
    const long long start = js.get<long long>();
    const long long end = jeend.get<long long>();
    if (start < 0 || end < 0) throw SchemaError(ctx + ": negative span bound");
    s.start = static_cast<std::size_t>(start);
    s.end = static_cast<std::size_t>(end);
    const std::string lname = need(je, "label", ctx).get<std::string>();
    const auto label = label_from_name(lname);
    if (!label) throw SchemaError(ctx + ": unknown label '" + lname + "'");
    s.label = *label;
    t.entities.push_back(s);
  }
  // Timestamps are considered present when any word carries a nonzero time.
  for (const Token& tok : t.tokens) {
    if (is_word(tok) && (as_word(tok).start > 0.0 || as_word(tok).end > 0.0)) {
      t.has_timestamps = true;
      break;
    }
  }
  validate(t);
  return t;
}

inline std::vector<AnnotatedTranscript> corpus_from_json(
    const nlohmann::json& root) {
  if (!root.is_object() || !root.contains("docs") || !root["docs"].is_array())
    throw SchemaError("corpus root must be an object with a \"docs\" array");
  std::vector<AnnotatedTranscript> out;
  out.reserve(root["docs"].size());
  for (std::size_t i = 0; i < root["docs"].size(); ++i)
    out.push_back(transcript_from_json(root["docs"][i], i));
  return out;
}

inline nlohmann::json corpus_to_json(
    const std::vector<AnnotatedTranscript>& docs) {
  nlohmann::json root;
  root["docs"] = nlohmann::json::array();
  for (const auto& d : docs) root["docs"].push_back(to_json(d));
  return root;
}

inline std::vector<AnnotatedTranscript> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open corpus file: " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return corpus_from_json(root);
}

inline void save_corpus(const std::vector<AnnotatedTranscript>& docs,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open file for writing: " + path);
  out << corpus_to_json(docs).dump(2) << '\n';
}

}  // namespace tagdistill
