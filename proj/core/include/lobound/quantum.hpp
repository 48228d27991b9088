#pragma once

#include <array>
#include <complex>
#include <span>

#include "lobound/box.hpp"
#include "lobound/optimizer.hpp"

namespace lobound {

// Pure two-qubit state, amplitudes ordered |00>, |01>, |10>, |11>
// (first qubit Alice).
struct TwoQubitState {
  std::array<std::complex<double>, 4> amplitudes{};

  double norm() const;
  bool normalized(double tol = 1e-12) const;
};

// Projective qubit measurement; (theta, phi) is the Bloch direction of the
// outcome-0 projector |v><v|, v = (cos(theta/2), e^{i phi} sin(theta/2)).
struct QubitMeasurement {
  double theta = 0;
  double phi = 0;

  std::array<std::complex<double>, 2> outcome0_ket() const;
};

// Born-rule box from a state and per-party measurement pairs; valid and
// no-signaling by construction.
NSBox born_box(const TwoQubitState& state, const QubitMeasurement& a0,
               const QubitMeasurement& a1, const QubitMeasurement& b0,
               const QubitMeasurement& b1);

// Smooth 14-parameter chart for the search: 3 hypersphere angles + 3
// relative phases fix the state (global phase pinned), then (theta, phi)
// for each of a0, a1, b0, b1.
inline constexpr std::size_t kQuantumChartDim = 14;

TwoQubitState state_from_chart(std::span<const double> chart);
std::array<QubitMeasurement, 4> measurements_from_chart(
    std::span<const double> chart);
NSBox box_from_chart(std::span<const double> chart);

struct QuantumOptResult {
  OptResult result;
  TwoQubitState state;
  std::array<QubitMeasurement, 4> measurements;  // a0, a1, b0, b1
  std::array<double, kQuantumChartDim> chart{};
};

// Largest quantum q4 = P(00|10) with the three Hardy zero probabilities
// driven below 1e-8 by escalating exact penalties.
QuantumOptResult max_quantum_hardy(const OptConfig& config = {});

// Largest quantum q4 - q1 with the two Cabello zeros.
QuantumOptResult max_quantum_cabello(const OptConfig& config = {});

}  // namespace lobound
