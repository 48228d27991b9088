#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lobound {

// One copy of a bipartite measurement event: outcomes (a,b) under settings
// (x,y), all bits.
struct EventCopy {
  uint8_t a = 0;
  uint8_t b = 0;
  uint8_t x = 0;
  uint8_t y = 0;

  friend bool operator==(const EventCopy&, const EventCopy&) = default;
};

// A measurement event over one or more copies of the correlation.
// Label format: outcomes then settings, "ab|xy" for one copy,
// "a1b1a2b2|x1y1x2y2" for two.
struct Event {
  std::vector<EventCopy> copies;

  Event() = default;
  explicit Event(std::vector<EventCopy> c);

  std::size_t copy_count() const { return copies.size(); }
  std::string outcomes() const;  // "a1b1a2b2..."
  std::string settings() const;  // "x1y1x2y2..."
  std::string label() const;     // outcomes|settings

  friend bool operator==(const Event&, const Event&) = default;
};

// Parses "ab|xy", "a1b1a2b2|x1y1x2y2", ... back into an Event.
Event parse_event(const std::string& label);

// Concatenation of the copy lists (used by the co-normal product).
Event concat(const Event& e1, const Event& e2);

// Canonical comparison: lexicographic on (settings string, outcomes string).
bool canonical_less(const Event& lhs, const Event& rhs);

// True iff some party position has equal setting but different outcome.
// Positions align copy by copy: (a1,x1), (b1,y1), (a2,x2), ...
// Throws std::invalid_argument on copy-count mismatch.
bool orthogonal(const Event& e1, const Event& e2);

// All 16 single-copy events in canonical order.
std::vector<Event> all_single_copy_events();

// Events forced to probability zero by each argument:
// Hardy demands P(01|01) = P(00|11) = P(10|00) = 0,
// Cabello relaxes the first and keeps P(00|11) = P(10|00) = 0.
std::vector<Event> hardy_zero_events();
std::vector<Event> cabello_zero_events();

}  // namespace lobound
