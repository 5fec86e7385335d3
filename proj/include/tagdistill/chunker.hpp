#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tagdistill/errors.hpp"
#include "tagdistill/transcript.hpp"

namespace tagdistill {

/// A contiguous token range of one document whose words fall inside a time
/// window [window_start, window_start + window_len).
struct Chunk {
  std::string doc_id;
  std::size_t start = 0;  // token index, inclusive
  std::size_t end = 0;    // token index, exclusive
  double window_start = 0.0;
  double window_len = 30.0;

  bool operator==(const Chunk&) const = default;
};

/// Greedy left-to-right time chunking. A word starts a new chunk when its
/// start time reaches window_start + window_len; the new window starts at
/// that word's start time. Punctuation travels with the preceding word.
/// With keep_entities, a span that would straddle the boundary is moved
/// wholly into the next chunk; a span that fills a whole window and still
/// straddles raises EntityLongerThanWindow.
inline std::vector<Chunk> chunk_by_time(const AnnotatedTranscript& t,
                                        double window_len = 30.0,
                                        bool keep_entities = false) {
  if (!t.has_timestamps)
    throw MissingTimestamps("chunk_by_time: doc '" + t.doc_id +
                            "' has no timestamps");
  if (window_len <= 0.0)
    throw InvariantViolation("chunk_by_time: window_len must be positive");

  // Span covering a token index, if any. Entities are sorted and disjoint.
  auto span_over = [&](std::size_t idx) -> std::optional<EntitySpan> {
    for (const EntitySpan& s : t.entities) {
      if (s.start <= idx && idx < s.end) return s;
      if (s.start > idx) break;
    }
    return std::nullopt;
  };

  std::vector<Chunk> chunks;
  std::size_t chunk_begin = 0;
  std::optional<double> window_start;

  std::size_t i = 0;
  while (i < t.tokens.size()) {
    if (!is_word(t.tokens[i])) {
      ++i;
      continue;
    }
    const double ts = as_word(t.tokens[i]).start;
    if (!window_start) window_start = ts;
    if (ts < *window_start + window_len) {
      ++i;
      continue;
    }
    // Word i opens a new chunk.
    std::size_t boundary = i;
    if (keep_entities) {
      if (auto s = span_over(boundary); s && s->start < boundary) {
        if (s->start <= chunk_begin)
          throw EntityLongerThanWindow(
              "chunk_by_time: entity [" + std::to_string(s->start) + "," +
              std::to_string(s->end) + ") in doc '" + t.doc_id +
              "' exceeds the window length");
        boundary = s->start;
      }
    }
    chunks.push_back(
        {t.doc_id, chunk_begin, boundary, *window_start, window_len});
    chunk_begin = boundary;
    window_start = as_word(t.tokens[boundary]).start;
    i = boundary + 1;
  }
  if (!t.tokens.empty()) {
    chunks.push_back({t.doc_id, chunk_begin, t.tokens.size(),
                      window_start.value_or(0.0), window_len});
  }
  return chunks;
}

/// Overlapping index windows [k*stride, k*stride+width) clipped to the
/// sequence, emitted while the window start is inside the sequence.
inline std::vector<std::pair<std::size_t, std::size_t>> stride_windows(
    std::size_t length, std::size_t width, std::size_t stride) {
  if (width < 1) throw InvariantViolation("stride_windows: width must be >= 1");
  if (stride < 1 || stride > width)
    throw InvariantViolation("stride_windows: need 1 <= stride <= width");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t start = 0; start < length; start += stride)
    out.emplace_back(start, std::min(start + width, length));
  return out;
}

enum class Placement { Center, LeftOnly, RightOnly };

inline const char* placement_name(Placement p) {
  switch (p) {
    case Placement::Center: return "center";
    case Placement::LeftOnly: return "left_only";
    case Placement::RightOnly: return "right_only";
  }
  return "?";
}

inline std::optional<Placement> placement_from_name(const std::string& s) {
  if (s == "center") return Placement::Center;
  if (s == "left_only") return Placement::LeftOnly;
  if (s == "right_only") return Placement::RightOnly;
  return std::nullopt;
}

/// Context tokens around a chunk. Center placement splits the budget as
/// floor(C/2) before and C - floor(C/2) after; budgets are clamped at the
/// document edges, never compensated on the other side.
struct ContextWindow {
  Chunk chunk;
  std::size_t size = 0;
  Placement placement = Placement::Center;
  std::size_t before_start = 0;  // [before_start, chunk.start)
  std::size_t after_end = 0;     // [chunk.end, after_end)

  std::size_t before_count() const { return chunk.start - before_start; }
  std::size_t after_count() const { return after_end - chunk.end; }
  std::size_t total_tokens() const {
    return before_count() + (chunk.end - chunk.start) + after_count();
  }
};

inline ContextWindow context_window(const AnnotatedTranscript& doc,
                                    const Chunk& chunk, std::size_t size,
                                    Placement placement) {
  if (chunk.end > doc.tokens.size() || chunk.start > chunk.end)
    throw InvariantViolation("context_window: chunk outside document");
  std::size_t want_before = 0;
  std::size_t want_after = 0;
  switch (placement) {
    case Placement::Center:
      want_before = size / 2;
      want_after = size - size / 2;
      break;
    case Placement::LeftOnly:
      want_before = size;
      break;
    case Placement::RightOnly:
      want_after = size;
      break;
  }
  ContextWindow w;
  w.chunk = chunk;
  w.size = size;
  w.placement = placement;
  w.before_start = chunk.start - std::min(want_before, chunk.start);
  w.after_end =
      chunk.end + std::min(want_after, doc.tokens.size() - chunk.end);
  return w;
}

}  // namespace tagdistill
