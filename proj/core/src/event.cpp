#include "lobound/event.hpp"

#include <stdexcept>

namespace lobound {
namespace {

uint8_t parse_bit(char c, const std::string& label) {
  if (c == '0') return 0;
  if (c == '1') return 1;
  throw std::invalid_argument("bad event label: " + label);
}

}  // namespace

Event::Event(std::vector<EventCopy> c) : copies(std::move(c)) {
  if (copies.empty()) throw std::invalid_argument("event needs at least one copy");
  for (const auto& cp : copies) {
    if (cp.a > 1 || cp.b > 1 || cp.x > 1 || cp.y > 1) {
      throw std::invalid_argument("event entries must be bits");
    }
  }
}

std::string Event::outcomes() const {
  std::string s;
  s.reserve(2 * copies.size());
  for (const auto& c : copies) {
    s.push_back(static_cast<char>('0' + c.a));
    s.push_back(static_cast<char>('0' + c.b));
  }
  return s;
}

std::string Event::settings() const {
  std::string s;
  s.reserve(2 * copies.size());
  for (const auto& c : copies) {
    s.push_back(static_cast<char>('0' + c.x));
    s.push_back(static_cast<char>('0' + c.y));
  }
  return s;
}

std::string Event::label() const { return outcomes() + "|" + settings(); }

Event parse_event(const std::string& label) {
  const auto bar = label.find('|');
  if (bar == std::string::npos || bar == 0 || bar % 2 != 0 ||
      label.size() != 2 * bar + 1) {
    throw std::invalid_argument("bad event label: " + label);
  }
  std::vector<EventCopy> copies(bar / 2);
  for (std::size_t i = 0; i < copies.size(); ++i) {
    copies[i].a = parse_bit(label[2 * i], label);
    copies[i].b = parse_bit(label[2 * i + 1], label);
    copies[i].x = parse_bit(label[bar + 1 + 2 * i], label);
    copies[i].y = parse_bit(label[bar + 2 + 2 * i], label);
  }
  return Event(std::move(copies));
}

Event concat(const Event& e1, const Event& e2) {
  std::vector<EventCopy> copies = e1.copies;
  copies.insert(copies.end(), e2.copies.begin(), e2.copies.end());
  return Event(std::move(copies));
}

bool canonical_less(const Event& lhs, const Event& rhs) {
  const auto ls = lhs.settings(), rs = rhs.settings();
  if (ls != rs) return ls < rs;
  return lhs.outcomes() < rhs.outcomes();
}

bool orthogonal(const Event& e1, const Event& e2) {
  if (e1.copy_count() != e2.copy_count()) {
    throw std::invalid_argument("orthogonal: copy-count mismatch");
  }
  for (std::size_t i = 0; i < e1.copies.size(); ++i) {
    const auto& u = e1.copies[i];
    const auto& v = e2.copies[i];
    if (u.x == v.x && u.a != v.a) return true;
    if (u.y == v.y && u.b != v.b) return true;
  }
  return false;
}

std::vector<Event> all_single_copy_events() {
  std::vector<Event> events;
  events.reserve(16);
  for (uint8_t x = 0; x < 2; ++x) {
    for (uint8_t y = 0; y < 2; ++y) {
      for (uint8_t a = 0; a < 2; ++a) {
        for (uint8_t b = 0; b < 2; ++b) {
          events.push_back(Event({EventCopy{a, b, x, y}}));
        }
      }
    }
  }
  return events;
}

std::vector<Event> hardy_zero_events() {
  return {parse_event("01|01"), parse_event("00|11"), parse_event("10|00")};
}

std::vector<Event> cabello_zero_events() {
  return {parse_event("00|11"), parse_event("10|00")};
}

}  // namespace lobound
