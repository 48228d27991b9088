#include "lobound/appendix.hpp"

#include <algorithm>
#include <sstream>

namespace lobound {
namespace {

Polynomial sq(const Polynomial& p) { return p * p; }

std::vector<AppendixEntry> build_hardy_entries() {
  const Polynomial m1 = poly(Var::m1), n1 = poly(Var::n1);
  const Polynomial c1 = poly(Var::c1), c2 = poly(Var::c2), c3 = poly(Var::c3);

  std::vector<AppendixEntry> v;
  v.push_back({"A1",
               "A11",
               {"0000|1010", "0101|1010", "0001|1010", "0100|1010",
                "0010|0011", "1100|1000", "1011|1101", "1111|0110",
                "1101|1110", "0110|1010"},
               sq(c3) + 2 * c1 * n1,
               sq(c1) + sq(n1)});
  v.push_back({"A2",
               "A12",
               {"1010|0101", "1111|0001", "1100|1001", "0110|1111",
                "0011|0100", "1001|1000", "0000|0010"},
               2 * c1 * c3,
               sq(c1) + (c2 - n1) * (-1 + m1 + n1)});
  v.push_back({"A3",
               "A13",
               {"0101|1111", "0111|1111", "1110|0011", "0011|0100",
                "1011|0111", "1111|1111", "0000|1001", "1101|1110",
                "1100|1110", "1000|1110"},
               c2 * (c3 + m1) + (c3 - m1) * n1,
               sq(c2)});
  v.push_back({"A4",
               "A14",
               {"0000|0101", "0010|0101", "1010|0101", "1000|0101",
                "1011|0111", "0011|0001", "1101|1011", "0100|1100",
                "1111|0110"},
               c3 * (1 + m1) + c2 * (m1 + n1),
               c2 + sq(m1) + c3 * n1});
  v.push_back({"A5",
               "A15",
               {"0001|0111", "1100|0010", "0000|1001", "1101|1110",
                "0111|1100", "0110|1010", "1111|1011", "1110|1011",
                "1010|1011", "1011|1011"},
               c1 * (-c3 + m1) + c3 * (c3 + n1),
               m1 * n1});
  v.push_back({"A6",
               "A16",
               {"0001|0011", "0111|0001", "1011|1011", "0011|1011",
                "1111|0000", "0110|0001", "0101|1000", "1100|0110",
                "1000|1101", "0010|1011"},
               c3 + c1 * c3 + c2 * (-1 + c1 - c3 + m1 + n1),
               c1 * (m1 + n1)});
  v.push_back({"A7",
               "A17",
               {"0011|0001", "1010|1111", "1111|0110", "1011|0111",
                "0100|1100", "1100|1010", "1101|1010", "0101|1010"},
               c3 + sq(c3) + c2 * (m1 + n1),
               c2 + c3 * (m1 + n1)});
  v.push_back({"A8",
               "A18",
               {"0000|1010", "0111|1100", "1100|0001", "0011|0111",
                "1011|0111", "1111|1111", "0010|0111", "1110|1101",
                "1001|1111", "1101|1111"},
               sq(c3) + 2 * c2 * n1,
               sq(c2) + sq(n1)});
  v.push_back({"A9",
               "A19",
               {"0011|0001", "0010|1011", "1100|0110", "1001|1000",
                "1000|1100", "0110|1010", "1111|1010", "0111|1010",
                "0101|1010", "1101|1010"},
               c3 * (1 + c3) + c1 * (c2 + m1),
               c1 + c3 * (c2 + m1)});
  v.push_back({"A10",
               "A20",
               {"0000|0001", "0011|0100", "0101|1111", "1100|1000",
                "1111|0010", "1001|0110", "0110|1010"},
               sq(c3) + m1 * (-1 + m1 + n1),
               sq(c1 - c2) + c3 * (-1 + m1 + n1)});
  return v;
}

std::vector<AppendixEntry> build_cabello_entries() {
  const Polynomial m0 = poly(Var::m0), m1 = poly(Var::m1), n1 = poly(Var::n1);
  const Polynomial c1 = poly(Var::c1), c2 = poly(Var::c2), c3 = poly(Var::c3);

  std::vector<AppendixEntry> v;
  v.push_back({"B1",
               "B9",
               {"1010|0101", "0010|0101", "0110|0101", "1111|0110",
                "1101|0011", "0000|1000", "0011|0001", "0111|0001",
                "1000|1101", "0101|0001"},
               (1 + c1) * c3 + c2 * (1 + c2 + c3) + n1 * (c1 + m1 + n1),
               c1 + n1 + c3 * (m0 + n1) + c2 * (m0 + m1 + n1)});
  v.push_back({"B2",
               "B10",
               {"1010|0101", "0010|0101", "0110|0101", "1111|0110",
                "0101|1111", "1100|1000", "1001|0100", "1011|0101",
                "0011|0101", "0000|0001"},
               sq(c2) + c3 + c2 * (1 + c1 + c3) + c1 * (c3 + m0) +
                   (m0 + m1) * (m1 + n1),
               sq(c1) + m0 + 2 * c2 * m0 + c3 * m0 + m1 + c1 * m1 + c2 * m1 +
                   (c2 + c3) * n1});
  v.push_back({"B3",
               "B11",
               {"0000|1010", "0111|1110", "0110|1110", "0101|0110",
                "1101|0011", "1000|1101", "1111|1110", "1110|1110",
                "1011|0111", "0011|0100"},
               (c2 + c3) * (c3 - m0) + 2 * c2 * n1,
               sq(n1)});
  v.push_back({"B4",
               "B12",
               {"1010|0101", "0010|0101", "0111|1110", "1100|0000",
                "1110|1101", "0001|1011", "0000|0101", "1111|1001",
                "1011|1011", "1001|1011"},
               c2 * (c2 + c3) + (2 * c3 + m0) * m1,
               m0 + c3 * m0 + sq(m1) + c1 * (-1 + c2 + m1)});
  v.push_back({"B5",
               "B13",
               {"1010|0101", "0010|0101", "0110|0101", "1111|0110",
                "0001|1011", "1100|0000", "0000|0001", "0100|0001",
                "1011|1101", "0101|0001"},
               sq(c2) + c3 + c2 * (1 + c3) + sq(m0) + c1 * n1 +
                   m1 * (c3 + m0 + n1),
               (1 + c1 + c2 + c3) * m0 + m1 + c3 * n1 + c2 * (m1 + n1)});
  v.push_back({"B6",
               "B14",
               {"0000|1010", "0011|0010", "0010|0010", "1001|1111",
                "1100|1001", "0110|0001", "0101|1000", "0100|1000",
                "1111|0100"},
               sq(c3) + c2 * (2 + c3 - 2 * m0 - m1) + m0 * (m0 + m1) +
                   (2 * m0 + m1) * n1,
               (2 + c3) * m0 + n1 + c1 * (-1 + m1 + n1)});
  v.push_back({"B7",
               "B15",
               {"0000|1010", "0011|0100", "0110|1111", "1111|0001",
                "0101|1001", "1110|1101", "1101|1001", "1100|1001",
                "1001|1001", "1000|1001"},
               sq(c3) + c2 * (1 + c3 - 2 * m0 + n1) + m0 * (m0 + n1),
               m0 + c3 * m0 + sq(n1)});
  v.push_back({"B8",
               "B16",
               {"1010|0101", "0011|0110", "0001|0011", "1100|1000",
                "1111|0001", "1001|0100", "0100|1101", "0110|1101",
                "1110|1101"},
               c1 + c2 + sq(c2) + (c1 + c2) * c3 + m0 * (m0 + 2 * n1),
               sq(c1) + 2 * (1 + c2) * m0 + (c1 + c2) * n1});
  return v;
}

}  // namespace

const std::vector<AppendixEntry>& appendix_entries(Scenario s) {
  static const std::vector<AppendixEntry> hardy = build_hardy_entries();
  static const std::vector<AppendixEntry> cabello = build_cabello_entries();
  return s == Scenario::Hardy ? hardy : cabello;
}

bool matches_up_to_positive_integer(const Polynomial& a, const Polynomial& b) {
  if (a == b) return true;
  if (a.is_zero() || b.is_zero()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  // Try a = k*b and b = k*a for integer k >= 2.
  const auto scaled_match = [](const Polynomial& big, const Polynomial& small) {
    const auto& bt = big.terms();
    const auto& st = small.terms();
    auto ib = bt.begin();
    auto is = st.begin();
    std::int64_t k = 0;
    for (; ib != bt.end(); ++ib, ++is) {
      if (ib->first != is->first) return false;
      if (ib->second % is->second != 0) return false;
      const std::int64_t ratio = ib->second / is->second;
      if (ratio <= 0) return false;
      if (k == 0) {
        k = ratio;
      } else if (ratio != k) {
        return false;
      }
    }
    return true;
  };
  return scaled_match(a, b) || scaled_match(b, a);
}

bool AppendixReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AppendixCheck& c) { return c.pass(); });
}

std::string AppendixReport::to_text() const {
  std::ostringstream os;
  os << "two-copy inequality check: " << scenario_name(scenario) << "\n";
  os << "substitution: " << substitution_note << "\n";
  for (const auto& c : checks) {
    os << "  (" << c.clique_id << ") ";
    switch (c.clique_status) {
      case CliqueStatus::MaximalClique:
        os << "maximal clique";
        break;
      case CliqueStatus::Clique:
        os << "clique, NOT maximal";
        break;
      case CliqueStatus::Absent:
        os << "NOT a clique";
        break;
    }
    os << "; (" << c.inequality_id << ") "
       << (c.polynomial_match ? "matches" : "MISMATCH");
    if (!c.polynomial_match) {
      os << " [residual: " << c.residual.to_string() << "]";
    }
    os << "\n";
  }
  os << (all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return os.str();
}

AppendixReport verify_appendix(Scenario s) {
  const OrthoGraph single = build_single_copy_graph(zero_events(s));
  const OrthoGraph product = conormal_product(single, single);
  const Substitution subs = scenario_substitution(s);

  AppendixReport report;
  report.scenario = s;
  {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, p] : subs) {
      if (!first) os << ", ";
      first = false;
      os << var_name(v) << " -> " << p.to_string();
    }
    report.substitution_note = os.str();
  }

  for (const auto& entry : appendix_entries(s)) {
    AppendixCheck check;
    check.clique_id = entry.clique_id;
    check.inequality_id = entry.inequality_id;

    std::vector<Event> events;
    std::vector<uint32_t> members;
    for (const auto& label : entry.event_labels) {
      events.push_back(parse_event(label));
      const auto idx = product.find_vertex(events.back());
      if (idx) members.push_back(static_cast<uint32_t>(*idx));
    }
    if (members.size() == events.size()) {
      check.clique_status = contains_clique(product, events);
      check.generated = clique_to_inequality(product, members, subs).reduced;
      const Polynomial transcribed = entry.lhs - entry.rhs;
      check.polynomial_match =
          matches_up_to_positive_integer(check.generated, transcribed);
      if (!check.polynomial_match) {
        check.residual = check.generated - transcribed;
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace lobound
