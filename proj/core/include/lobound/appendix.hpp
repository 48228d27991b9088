#pragma once

#include <string>
#include <vector>

#include "lobound/lo.hpp"

namespace lobound {

// One transcribed reference item: a listed maximal clique of the two-copy
// graph together with the printed inequality (lhs <= rhs) it reduces to
// after the scenario substitution.
struct AppendixEntry {
  std::string clique_id;      // "A1".."A10" / "B1".."B8"
  std::string inequality_id;  // "A11".."A20" / "B9".."B16"
  std::vector<std::string> event_labels;
  Polynomial lhs;
  Polynomial rhs;
};

const std::vector<AppendixEntry>& appendix_entries(Scenario s);

// Exact equality allowing one side to be a positive integer multiple of the
// other (rearranged prints could in principle be scaled; none are).
bool matches_up_to_positive_integer(const Polynomial& a, const Polynomial& b);

struct AppendixCheck {
  std::string clique_id;
  std::string inequality_id;
  CliqueStatus clique_status = CliqueStatus::Absent;
  bool polynomial_match = false;
  Polynomial generated;  // reduced sum-minus-one from the clique
  Polynomial residual;   // generated - (lhs - rhs); zero on match

  bool pass() const {
    return clique_status == CliqueStatus::MaximalClique && polynomial_match;
  }
};

struct AppendixReport {
  Scenario scenario = Scenario::Hardy;
  // Which equality elimination produced the reduced polynomials.
  std::string substitution_note;
  std::vector<AppendixCheck> checks;

  bool all_pass() const;
  std::string to_text() const;
};

// Checks every listed clique for maximality in the two-copy graph and every
// listed inequality against the generated polynomial, exactly.
AppendixReport verify_appendix(Scenario s);

}  // namespace lobound
