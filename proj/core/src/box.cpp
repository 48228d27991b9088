#include "lobound/box.hpp"

#include <cmath>
#include <sstream>

namespace lobound {

TableEntryError::TableEntryError(int x_, int y_, int a_, int b_, double value_)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "table entry P(" << a_ << b_ << "|" << x_ << y_ << ") = "
           << value_ << " lies outside [0,1]";
        return os.str();
      }()),
      x(x_), y(y_), a(a_), b(b_), value(value_) {}

Polynomial entry_polynomial(int a, int b, int x, int y) {
  const Var cj = static_cast<Var>(static_cast<int>(Var::c1) + 2 * x + y);
  const Var mx = x == 0 ? Var::m0 : Var::m1;
  const Var ny = y == 0 ? Var::n0 : Var::n1;
  if (a == 0 && b == 0) return poly(cj);
  if (a == 0 && b == 1) return poly(mx) - poly(cj);
  if (a == 1 && b == 0) return poly(ny) - poly(cj);
  return 1 + poly(cj) - poly(mx) - poly(ny);
}

double table_entry(const NSBox& box, int x, int y, int a, int b) {
  const double cj = box.joint(x, y);
  const double mx = box.marginal_a(x);
  const double ny = box.marginal_b(y);
  if (a == 0 && b == 0) return cj;
  if (a == 0 && b == 1) return mx - cj;
  if (a == 1 && b == 0) return ny - cj;
  return 1 + cj - mx - ny;
}

ProbabilityTable to_table_unchecked(const NSBox& box) {
  ProbabilityTable t;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          t.entries[2 * x + y][2 * a + b] = table_entry(box, x, y, a, b);
        }
      }
    }
  }
  return t;
}

ProbabilityTable to_table(const NSBox& box, double tol) {
  ProbabilityTable t = to_table_unchecked(box);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double p = t.entries[2 * x + y][2 * a + b];
          if (p < -tol || p > 1 + tol) throw TableEntryError(x, y, a, b, p);
        }
      }
    }
  }
  return t;
}

double validity_violation(const NSBox& box) {
  double worst = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double p = table_entry(box, x, y, a, b);
          worst = std::max(worst, std::max(-p, p - 1.0));
        }
      }
    }
  }
  return worst;
}

bool is_valid(const NSBox& box, double tol) {
  return validity_violation(box) <= tol;
}

double correlator(const NSBox& box, int x, int y) {
  return 1 + 4 * box.joint(x, y) - 2 * (box.marginal_a(x) + box.marginal_b(y));
}

double mean_a(const NSBox& box, int x) { return 2 * box.marginal_a(x) - 1; }
double mean_b(const NSBox& box, int y) { return 2 * box.marginal_b(y) - 1; }

double chsh(const NSBox& box, int minus_x, int minus_y) {
  double sum = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double sign = (x == minus_x && y == minus_y) ? -1.0 : 1.0;
      sum += sign * correlator(box, x, y);
    }
  }
  return sum;
}

Polynomial chsh_polynomial(int minus_x, int minus_y) {
  Polynomial sum;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      // <a_x b_y> = 1 + 4 c_j - 2 m_x - 2 n_y
      Polynomial corr = 1 + 4 * poly(static_cast<Var>(4 + 2 * x + y)) -
                        2 * poly(static_cast<Var>(x)) -
                        2 * poly(static_cast<Var>(2 + y));
      if (x == minus_x && y == minus_y) {
        sum -= corr;
      } else {
        sum += corr;
      }
    }
  }
  return sum;
}

HardyParameters hardy_parameters(const NSBox& box) {
  HardyParameters h;
  h.q1 = box.m0 - box.c2;           // P(01|01)
  h.q4 = box.c3;                    // P(00|10)
  h.zeros = {box.c4, box.n0 - box.c1};  // P(00|11), P(10|00)
  return h;
}

NSBox deterministic_box(DeterministicStrategy alice, DeterministicStrategy bob) {
  NSBox b;
  b.m0 = alice(0) == 0 ? 1 : 0;
  b.m1 = alice(1) == 0 ? 1 : 0;
  b.n0 = bob(0) == 0 ? 1 : 0;
  b.n1 = bob(1) == 0 ? 1 : 0;
  auto c = [&](int x, int y) {
    return (alice(x) == 0 && bob(y) == 0) ? 1.0 : 0.0;
  };
  b.c1 = c(0, 0);
  b.c2 = c(0, 1);
  b.c3 = c(1, 0);
  b.c4 = c(1, 1);
  return b;
}

NSBox pr_box() {
  NSBox b;
  b.m0 = b.m1 = b.n0 = b.n1 = 0.5;
  b.c1 = b.c2 = b.c3 = 0.5;
  b.c4 = 0.0;
  return b;
}

NSBox uniform_box() {
  NSBox b;
  b.m0 = b.m1 = b.n0 = b.n1 = 0.5;
  b.c1 = b.c2 = b.c3 = b.c4 = 0.25;
  return b;
}

const std::array<NSBox, 16>& deterministic_boxes() {
  static const std::array<NSBox, 16> boxes = [] {
    std::array<NSBox, 16> out;
    for (int ai = 0; ai < 4; ++ai) {
      for (int bi = 0; bi < 4; ++bi) {
        DeterministicStrategy a{ai / 2, ai % 2};
        DeterministicStrategy b{bi / 2, bi % 2};
        out[4 * ai + bi] = deterministic_box(a, b);
      }
    }
    return out;
  }();
  return boxes;
}

}  // namespace lobound
