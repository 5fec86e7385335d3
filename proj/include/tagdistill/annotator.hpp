#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "tagdistill/errors.hpp"
#include "tagdistill/rng.hpp"
#include "tagdistill/transcript.hpp"

namespace tagdistill {

// ---------------------------------------------------------------------------
// Pattern-based extraction of the four custom entity types
// ---------------------------------------------------------------------------

namespace patterns {

inline const std::regex& url() {
  static const std::regex re(R"(^(https?://\S+|www\.\S+)$)");
  return re;
}

inline const std::regex& email() {
  static const std::regex re(
      R"(^[A-Za-z0-9._%+\-]+@[A-Za-z0-9\-]+(\.[A-Za-z0-9\-]+)+$)");
  return re;
}

// Digit groups joined by '-', 7 to 15 digits total.
inline bool is_phone(const std::string& s) {
  static const std::regex re(R"(^[0-9]+(-[0-9]+)+$)");
  if (!std::regex_match(s, re)) return false;
  const auto digits = std::count_if(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  return digits >= 7 && digits <= 15;
}

// Plain number: digits with optional ',' thousands separators and at most
// one decimal point ("3,000", "15,981.21", "42").
inline const std::regex& numeric() {
  static const std::regex re(R"(^([0-9]+|[0-9]{1,3}(,[0-9]{3})+)(\.[0-9]+)?$)");
  return re;
}

inline std::optional<EntityLabel> classify(const std::string& word) {
  if (std::regex_match(word, url())) return EntityLabel::URL;
  if (std::regex_match(word, email())) return EntityLabel::EMAIL;
  if (is_phone(word)) return EntityLabel::PHONE;
  if (std::regex_match(word, numeric())) return EntityLabel::NUMERIC;
  return std::nullopt;
}

}  // namespace patterns

/// Adds single-word URL / EMAIL / PHONE / NUMERIC spans over word tokens not
/// already covered by an existing span (existing spans win). Idempotent.
inline AnnotatedTranscript extract_custom_entities(
    const AnnotatedTranscript& t) {
  AnnotatedTranscript out = t;
  std::vector<bool> covered(t.tokens.size(), false);
  for (const EntitySpan& s : t.entities) {
    for (std::size_t i = s.start; i < s.end; ++i) covered[i] = true;
  }
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (covered[i] || !is_word(t.tokens[i])) continue;
    const auto label = patterns::classify(as_word(t.tokens[i]).text);
    if (label) out.entities.push_back({i, i + 1, *label});
  }
  std::sort(out.entities.begin(), out.entities.end(),
            [](const EntitySpan& a, const EntitySpan& b) {
              return a.start < b.start;
            });
  return out;
}

// ---------------------------------------------------------------------------
// Tag vocabulary
// ---------------------------------------------------------------------------

/// Open/close tag strings for the given labels, two per label, in input
/// order. The full 22-label set yields 44 tags.
inline std::vector<std::string> tag_vocabulary(
    const std::vector<EntityLabel>& labels) {
  if (labels.empty())
    throw InvariantViolation("tag_vocabulary: empty label list");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j])
        throw InvariantViolation("tag_vocabulary: duplicate label " +
                                 std::string(label_name(labels[i])));
    }
  }
  std::vector<std::string> tags;
  tags.reserve(labels.size() * 2);
  for (EntityLabel l : labels) {
    tags.push_back(std::string("<") + label_name(l) + ">");
    tags.push_back(std::string("</") + label_name(l) + ">");
  }
  return tags;
}

// ---------------------------------------------------------------------------
// Annotation corruption
// ---------------------------------------------------------------------------

enum class CorruptionMode { DropTags, ShiftBoundaries, Mixed };

inline const char* corruption_mode_name(CorruptionMode m) {
  switch (m) {
    case CorruptionMode::DropTags: return "drop_tags";
    case CorruptionMode::ShiftBoundaries: return "shift_boundaries";
    case CorruptionMode::Mixed: return "mixed";
  }
  return "?";
}

inline std::optional<CorruptionMode> corruption_mode_from_name(
    const std::string& s) {
  if (s == "drop_tags") return CorruptionMode::DropTags;
  if (s == "shift_boundaries") return CorruptionMode::ShiftBoundaries;
  if (s == "mixed") return CorruptionMode::Mixed;
  return std::nullopt;
}

struct CorruptionSpec {
  double rate = 0.0;  // per-span probability of corruption, in [0,1]
  CorruptionMode mode = CorruptionMode::DropTags;
  std::uint64_t seed = 0;
};

namespace detail {

// The four candidate one-word boundary shifts of a span, clamped against
// its neighbours. Boundaries move to the adjacent word token, skipping over
// punctuation.
inline std::vector<EntitySpan> legal_shifts(
    const std::vector<Token>& tokens, const EntitySpan& span,
    std::size_t prev_end, std::size_t next_start) {
  std::vector<EntitySpan> shifts;
  auto word_before = [&](std::size_t idx) -> std::optional<std::size_t> {
    for (std::size_t i = idx; i-- > 0;) {
      if (is_word(tokens[i])) return i;
    }
    return std::nullopt;
  };
  auto word_after = [&](std::size_t idx) -> std::optional<std::size_t> {
    for (std::size_t i = idx + 1; i < tokens.size(); ++i) {
      if (is_word(tokens[i])) return i;
    }
    return std::nullopt;
  };

  // start one word left
  if (auto p = word_before(span.start); p && *p >= prev_end)
    shifts.push_back({*p, span.end, span.label});
  // start one word right (span must keep at least one word)
  if (auto q = word_after(span.start); q && *q < span.end)
    shifts.push_back({*q, span.end, span.label});
  // end one word left
  if (auto r = word_before(span.end - 1); r && *r >= span.start)
    shifts.push_back({span.start, *r + 1, span.label});
  // end one word right
  if (auto s = word_after(span.end - 1); s && *s + 1 <= next_start)
    shifts.push_back({span.start, *s + 1, span.label});
  return shifts;
}

}  // namespace detail

/// Corrupts annotations: drops spans, shifts their boundaries by one word,
/// or both (mixed), each span selected independently with probability
/// spec.rate. Deterministic given spec.seed; the per-span random draws do
/// not depend on the rate, so the selected sets are nested across rates.
/// A shift that has no legal landing position leaves the span intact.
inline AnnotatedTranscript corrupt(const AnnotatedTranscript& t,
                                   const CorruptionSpec& spec) {
  if (spec.rate < 0.0 || spec.rate > 1.0)
    throw InvariantViolation("corrupt: rate outside [0,1]");
  Rng rng(spec.seed);
  AnnotatedTranscript out = t;
  std::vector<EntitySpan> kept;
  kept.reserve(t.entities.size());

  for (std::size_t k = 0; k < t.entities.size(); ++k) {
    // Fixed number of draws per span regardless of outcome.
    const double u_select = rng.uniform();
    const double u_mode = rng.uniform();
    const double u_shift = rng.uniform();

    EntitySpan span = t.entities[k];
    if (u_select < spec.rate) {
      bool drop = spec.mode == CorruptionMode::DropTags;
      if (spec.mode == CorruptionMode::Mixed) drop = u_mode < 0.5;
      if (drop) continue;

      const std::size_t prev_end = kept.empty() ? 0 : kept.back().end;
      const std::size_t next_start = (k + 1 < t.entities.size())
                                         ? t.entities[k + 1].start
                                         : t.tokens.size();
      const auto shifts =
          detail::legal_shifts(t.tokens, span, prev_end, next_start);
      if (!shifts.empty()) {
        const int pick = static_cast<int>(
            u_shift * static_cast<double>(shifts.size()));
        span = shifts[static_cast<std::size_t>(
            std::min<int>(pick, static_cast<int>(shifts.size()) - 1))];
      }
    }
    kept.push_back(span);
  }
  out.entities = std::move(kept);
  validate(out);
  return out;
}

}  // namespace tagdistill
