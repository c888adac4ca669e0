#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace su3ym {

struct QuditRegister {
  std::vector<int> dims;
  Eigen::VectorXcd amps;

  static QuditRegister basis_state(std::vector<int> dims, const std::vector<int>& levels);
  long long index_of(const std::vector<int>& levels) const;
  int total_dim() const { return static_cast<int>(amps.size()); }
  double norm_error() const { return std::abs(amps.norm() - 1.0); }
};

struct GateControl {
  int site = 0;
  int mode = 0;
};

/// One gate on a d-level register: a two-mode Pauli flip or Givens rotation,
/// optionally conditioned on modes of other sites.  `controls` must all match;
/// `or_controls` fire when any one matches.
struct QuditGate {
  enum class Kind { X, Y, Givens };
  Kind kind = Kind::Givens;
  int site = 0;
  int j = 0, k = 0;
  double angle = 0.0;  // Givens only
  double phi = 0.0;    // Givens phase; 0 is an X-type, pi/2 a Y-type rotation
  std::vector<GateControl> controls;
  std::vector<GateControl> or_controls;
};

struct QuditCircuit {
  std::vector<int> dims;
  std::vector<QuditGate> gates;
};

void apply_gate(QuditRegister& reg, const QuditGate& gate);
void apply_circuit(QuditRegister& reg, const QuditCircuit& circuit);

/// Full unitary of the circuit (small registers only).
Eigen::MatrixXcd circuit_unitary(const QuditCircuit& circuit);

struct GateCounts {
  int rotations = 0;
  int controlled_paulis = 0;
  int paulis = 0;
};
GateCounts count_gates(const QuditCircuit& circuit);

void dump_circuit_json(const QuditCircuit& circuit, const std::string& path);

}  // namespace su3ym
