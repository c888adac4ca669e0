#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace su3ym {

/// Real-coefficient Pauli string over {I,X,Y,Z}, first character = qubit 0.
struct PauliTerm {
  double coeff = 0.0;
  std::string ops;
};

/// Projection of a Hermitian matrix (dimension 2^n) onto Pauli strings;
/// terms below 1e-12 are dropped.
std::vector<PauliTerm> pauli_decompose(const Eigen::MatrixXcd& h, int n_qubits);
Eigen::MatrixXcd pauli_reconstruct(const std::vector<PauliTerm>& terms);
void write_pauli_csv(const std::vector<PauliTerm>& terms, const std::string& path);

/// Binary-register lowering operator B_n (|p> -> |p-1>, annihilates |0>),
/// expanded as strings over {I, b, b+} (characters 'I', 'b', 'd').
std::vector<std::string> lowering_operator_terms(int n);
Eigen::MatrixXcd lowering_operator_matrix(int n);
/// Unique Pauli strings in the expansion of B_n.
long long lowering_pauli_term_count(int n);

/// Plaquette operator box = B+ (x) I + B (x) B+ + I (x) B on p and q registers
/// of n qubits each.
Eigen::MatrixXcd plaquette_pq_matrix(int n);
/// Unique Pauli strings of the Hermitian combination box + box+.
long long plaquette_pq_hermitian_term_count(int n);

// --- small qubit circuit layer ---------------------------------------------

/// Single-qubit operation with optional positive/negative controls;
/// multi-controlled gates stay abstract (control mask + 2x2 target block).
struct QubitGate {
  Eigen::Matrix2cd u;
  int target = 0;
  std::vector<int> controls;      // must be |1>
  std::vector<int> neg_controls;  // must be |0>
};

struct QubitCircuit {
  int n_qubits = 0;
  std::vector<QubitGate> gates;
};

void apply_qubit_gate(Eigen::VectorXcd& psi, const QubitGate& g, int n_qubits);
Eigen::MatrixXcd qubit_circuit_unitary(const QubitCircuit& c);
void dump_qubit_circuit_json(const QubitCircuit& c, const std::string& path);

// common 2x2 blocks
Eigen::Matrix2cd gate_x();
Eigen::Matrix2cd gate_h();
Eigen::Matrix2cd gate_s();
Eigen::Matrix2cd gate_exp_x(double a);  // exp(i a X)
Eigen::Matrix2cd gate_exp_z(double a);  // exp(i a Z)

/// Gray-code synthesis of exp(-i alpha (|s><t| + |t><s|)) between two basis
/// strings; at most 2*Hamming(s,t) - 1 controlled stages.
QubitCircuit gray_rotation_circuit(unsigned long long s, unsigned long long t,
                                   double alpha, int n_qubits);

/// Gray synthesis for a ladder string over {I,b,d} on `n_qubits`, i.e. the
/// Hermitian two-level operator O + O^dagger with O = |s><t| fixed by the
/// b/d pattern; identity slots act on every configuration of the idle qubits.
QubitCircuit ladder_string_rotation(const std::string& ops, double alpha);

/// exp(i (a XX + b YY + c ZZ)) through the two-qubit Cartan decomposition.
QubitCircuit xx_yy_zz_circuit(double a, double b, double c);
/// exp(i (alpha ZX + beta XZ)).
QubitCircuit zx_xz_circuit(double alpha, double beta);

struct CircuitIdentityReport {
  std::string name;
  int draws = 0;
  double max_deviation = 0.0;
};

/// Runs every named circuit identity over random parameter draws and reports
/// the largest deviation from the target exponential (up to global phase).
std::vector<CircuitIdentityReport> verify_circuit_identities(int draws = 100,
                                                             unsigned seed = 7);

}  // namespace su3ym
