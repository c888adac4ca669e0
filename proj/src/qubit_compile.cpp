#include "su3ym/qubit_compile.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace su3ym {

namespace {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
const std::complex<double> kI(0.0, 1.0);

Matrix2cd pauli_matrix(char c) {
  Matrix2cd m;
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'b': m << 0, 1, 0, 0; break;  // |0><1|
    case 'd': m << 0, 0, 1, 0; break;  // |1><0|
    default: throw std::invalid_argument("pauli_matrix: bad label");
  }
  return m;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd string_matrix(const std::string& ops) {
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (char c : ops) m = kron(m, pauli_matrix(c));
  return m;
}

// Pauli expansion of a {I,b,d} string: b = (X + iY)/2, d = (X - iY)/2.
std::map<std::string, std::complex<double>> ladder_to_pauli(const std::string& ops) {
  std::map<std::string, std::complex<double>> acc;
  acc[""] = 1.0;
  for (char c : ops) {
    std::map<std::string, std::complex<double>> next;
    for (const auto& [s, v] : acc) {
      if (c == 'I') {
        next[s + "I"] += v;
      } else if (c == 'b') {
        next[s + "X"] += 0.5 * v;
        next[s + "Y"] += 0.5 * kI * v;
      } else {
        next[s + "X"] += 0.5 * v;
        next[s + "Y"] += -0.5 * kI * v;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

std::vector<PauliTerm> pauli_decompose(const MatrixXcd& h, int n_qubits) {
  const long long d = 1LL << n_qubits;
  if (h.rows() != d || h.cols() != d)
    throw std::invalid_argument("pauli_decompose: dimension is not 2^n");
  std::vector<PauliTerm> terms;
  const char labels[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<int> digits(n_qubits, 0);
  for (long long code = 0; code < (1LL << (2 * n_qubits)); ++code) {
    long long rem = code;
    std::string ops(n_qubits, 'I');
    for (int q = 0; q < n_qubits; ++q) {
      ops[q] = labels[rem & 3];
      rem >>= 2;
    }
    MatrixXcd sigma = string_matrix(ops);
    std::complex<double> c = (h * sigma).trace() / static_cast<double>(d);
    if (std::abs(c.imag()) > 1e-10)
      throw std::invalid_argument("pauli_decompose: input not Hermitian");
    if (std::abs(c.real()) >= 1e-12) terms.push_back({c.real(), ops});
  }
  (void)digits;
  return terms;
}

Eigen::MatrixXcd pauli_reconstruct(const std::vector<PauliTerm>& terms) {
  if (terms.empty()) return MatrixXcd::Zero(1, 1);
  const int n = static_cast<int>(terms.front().ops.size());
  MatrixXcd h = MatrixXcd::Zero(1LL << n, 1LL << n);
  for (const auto& t : terms) h += t.coeff * string_matrix(t.ops);
  return h;
}

void write_pauli_csv(const std::vector<PauliTerm>& terms, const std::string& path) {
  std::ofstream out(path);
  out << "# schema=1\n";
  out << "coefficient,string\n";
  char buf[96];
  for (const auto& t : terms) {
    std::snprintf(buf, sizeof buf, "%.15g,%s\n", t.coeff, t.ops.c_str());
    out << buf;
  }
}

std::vector<std::string> lowering_operator_terms(int n) {
  // B_n = I (x) B_{n-1} + b (x) d^{(n-1)}
  if (n <= 0) return {};
  if (n == 1) return {"b"};
  std::vector<std::string> out;
  for (const auto& t : lowering_operator_terms(n - 1)) out.push_back("I" + t);
  out.push_back("b" + std::string(n - 1, 'd'));
  return out;
}

Eigen::MatrixXcd lowering_operator_matrix(int n) {
  MatrixXcd b = MatrixXcd::Zero(1LL << n, 1LL << n);
  for (const auto& t : lowering_operator_terms(n)) b += string_matrix(t);
  return b;
}

long long lowering_pauli_term_count(int n) {
  std::map<std::string, std::complex<double>> acc;
  for (const auto& t : lowering_operator_terms(n))
    for (const auto& [s, v] : ladder_to_pauli(t)) acc[s] += v;
  long long count = 0;
  for (const auto& [s, v] : acc)
    if (std::abs(v) > 1e-12) ++count;
  return count;
}

Eigen::MatrixXcd plaquette_pq_matrix(int n) {
  MatrixXcd b = lowering_operator_matrix(n);
  MatrixXcd bd = b.adjoint();
  MatrixXcd id = MatrixXcd::Identity(b.rows(), b.cols());
  return kron(bd, id) + kron(b, bd) + kron(id, b);
}

long long plaquette_pq_hermitian_term_count(int n) {
  std::map<std::string, std::complex<double>> acc;
  auto add_string = [&](const std::string& s) {
    for (const auto& [p, v] : ladder_to_pauli(s)) acc[p] += v;
  };
  auto conj_str = [](std::string s) {
    for (char& c : s) c = c == 'b' ? 'd' : (c == 'd' ? 'b' : c);
    return s;
  };
  const std::string idn(n, 'I');
  for (const auto& t : lowering_operator_terms(n)) {
    // box = B+ (x) I + B (x) B+ + I (x) B, plus the Hermitian conjugate
    add_string(conj_str(t) + idn);
    add_string(t + idn);
    add_string(idn + t);
    add_string(idn + conj_str(t));
    for (const auto& t2 : lowering_operator_terms(n)) {
      add_string(t + conj_str(t2));
      add_string(conj_str(t) + t2);
    }
  }
  long long count = 0;
  for (const auto& [s, v] : acc)
    if (std::abs(v) > 1e-12) ++count;
  return count;
}

void apply_qubit_gate(VectorXcd& psi, const QubitGate& g, int n_qubits) {
  const long long total = psi.size();
  const long long tbit = 1LL << (n_qubits - 1 - g.target);
  for (long long idx = 0; idx < total; ++idx) {
    if (idx & tbit) continue;  // handle each pair from its |0> member
    bool on = true;
    for (int c : g.controls)
      if (!(idx & (1LL << (n_qubits - 1 - c)))) {
        on = false;
        break;
      }
    if (on)
      for (int c : g.neg_controls)
        if (idx & (1LL << (n_qubits - 1 - c))) {
          on = false;
          break;
        }
    if (!on) continue;
    auto a0 = psi(idx), a1 = psi(idx | tbit);
    psi(idx) = g.u(0, 0) * a0 + g.u(0, 1) * a1;
    psi(idx | tbit) = g.u(1, 0) * a0 + g.u(1, 1) * a1;
  }
}

Eigen::MatrixXcd qubit_circuit_unitary(const QubitCircuit& c) {
  const long long d = 1LL << c.n_qubits;
  MatrixXcd u(d, d);
  for (long long col = 0; col < d; ++col) {
    VectorXcd psi = VectorXcd::Zero(d);
    psi(col) = 1.0;
    for (const auto& g : c.gates) apply_qubit_gate(psi, g, c.n_qubits);
    u.col(col) = psi;
  }
  return u;
}

void dump_qubit_circuit_json(const QubitCircuit& c, const std::string& path) {
  nlohmann::json j;
  j["n_qubits"] = c.n_qubits;
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json e;
    e["kind"] = "u2";
    e["sites"] = {g.target};
    nlohmann::json mat = nlohmann::json::array();
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) mat.push_back({g.u(i, k).real(), g.u(i, k).imag()});
    e["matrix"] = mat;
    nlohmann::json ctrl = nlohmann::json::array();
    for (int q : g.controls) ctrl.push_back({{"site", q}, {"mode", 1}});
    for (int q : g.neg_controls) ctrl.push_back({{"site", q}, {"mode", 0}});
    e["controls"] = ctrl;
    gates.push_back(e);
  }
  j["gates"] = gates;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

Matrix2cd gate_x() { return pauli_matrix('X'); }
Matrix2cd gate_h() {
  Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
Matrix2cd gate_s() {
  Matrix2cd m;
  m << 1, 0, 0, kI;
  return m;
}
Matrix2cd gate_exp_x(double a) {
  Matrix2cd m;
  m << std::cos(a), kI * std::sin(a), kI * std::sin(a), std::cos(a);
  return m;
}
Matrix2cd gate_exp_z(double a) {
  Matrix2cd m;
  m << std::exp(kI * a), 0, 0, std::exp(-kI * a);
  return m;
}

QubitCircuit gray_rotation_circuit(unsigned long long s, unsigned long long t,
                                   double alpha, int n_qubits) {
  if (s == t) throw std::invalid_argument("gray_rotation_circuit: strings coincide");
  QubitCircuit circ;
  circ.n_qubits = n_qubits;

  std::vector<int> diffs;
  for (int q = 0; q < n_qubits; ++q)
    if ((s ^ t) & (1ULL << (n_qubits - 1 - q))) diffs.push_back(q);

  // Walk t onto the string differing from s only at diffs.back().
  auto add_step = [&](unsigned long long cur, int flip_q, bool rotation) {
    QubitGate g;
    g.target = flip_q;
    g.u = rotation ? gate_exp_x(-alpha) : gate_x();
    for (int q = 0; q < n_qubits; ++q) {
      if (q == flip_q) continue;
      if (cur & (1ULL << (n_qubits - 1 - q)))
        g.controls.push_back(q);
      else
        g.neg_controls.push_back(q);
    }
    circ.gates.push_back(g);
  };

  unsigned long long cur = t;
  std::vector<std::pair<unsigned long long, int>> walk;
  for (size_t i = 0; i + 1 < diffs.size(); ++i) {
    walk.push_back({cur, diffs[i]});
    cur ^= 1ULL << (n_qubits - 1 - diffs[i]);
  }
  for (auto& [state, q] : walk) add_step(state, q, false);
  add_step(cur, diffs.back(), true);
  for (auto it = walk.rbegin(); it != walk.rend(); ++it) add_step(it->first, it->second, false);
  return circ;
}

QubitCircuit ladder_string_rotation(const std::string& ops, double alpha) {
  const int n = static_cast<int>(ops.size());
  unsigned long long s = 0, t = 0;
  std::vector<int> idle;
  for (int q = 0; q < n; ++q) {
    if (ops[q] == 'b') t |= 1ULL << (n - 1 - q);   // O maps |1> -> |0| on b slots
    if (ops[q] == 'd') s |= 1ULL << (n - 1 - q);
    if (ops[q] == 'I') idle.push_back(q);
  }
  QubitCircuit circ = gray_rotation_circuit(s, t, alpha, n);
  // identity slots act on every configuration: strip their controls
  for (auto& g : circ.gates) {
    auto drop = [&](std::vector<int>& v) {
      v.erase(std::remove_if(v.begin(), v.end(),
                             [&](int q) {
                               return std::find(idle.begin(), idle.end(), q) !=
                                      idle.end();
                             }),
              v.end());
    };
    drop(g.controls);
    drop(g.neg_controls);
  }
  return circ;
}

QubitCircuit xx_yy_zz_circuit(double a, double b, double c) {
  QubitCircuit circ;
  circ.n_qubits = 2;
  auto cnot = [&]() {
    QubitGate g;
    g.target = 1;
    g.u = gate_x();
    g.controls = {0};
    circ.gates.push_back(g);
  };
  auto single = [&](int q, const Matrix2cd& u) {
    QubitGate g;
    g.target = q;
    g.u = u;
    circ.gates.push_back(g);
  };
  cnot();
  single(0, gate_exp_x(a));
  single(1, gate_exp_z(c));
  single(0, gate_h());
  cnot();
  single(0, gate_s());
  single(1, gate_exp_z(-b));
  single(0, gate_h());
  cnot();
  single(0, gate_exp_x(M_PI / 4));
  single(1, gate_exp_x(-M_PI / 4));
  return circ;
}

QubitCircuit zx_xz_circuit(double alpha, double beta) {
  QubitCircuit circ;
  circ.n_qubits = 2;
  auto cnot = [&]() {
    QubitGate g;
    g.target = 1;
    g.u = gate_x();
    g.controls = {0};
    circ.gates.push_back(g);
  };
  auto single = [&](int q, const Matrix2cd& u) {
    QubitGate g;
    g.target = q;
    g.u = u;
    circ.gates.push_back(g);
  };
  single(0, gate_h());
  cnot();
  single(0, gate_h());
  single(0, gate_exp_z(alpha));
  single(1, gate_exp_z(beta));
  single(0, gate_h());
  cnot();
  single(0, gate_h());
  return circ;
}

namespace {

double deviation_up_to_phase(const MatrixXcd& a, const MatrixXcd& b) {
  int imax = 0, jmax = 0;
  double best = 0;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (std::abs(b(i, j)) > best) {
        best = std::abs(b(i, j));
        imax = i;
        jmax = j;
      }
  std::complex<double> phase = b(imax, jmax) / a(imax, jmax);
  phase /= std::abs(phase);
  return (a * phase - b).cwiseAbs().maxCoeff();
}

MatrixXcd herm_exp(const MatrixXcd& h, double scale) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  VectorXcd ph(h.rows());
  for (int i = 0; i < h.rows(); ++i)
    ph(i) = std::exp(kI * scale * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::vector<CircuitIdentityReport> verify_circuit_identities(int draws, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<CircuitIdentityReport> reports;

  {
    CircuitIdentityReport rep{"xx_yy_zz", draws, 0.0};
    MatrixXcd xx = string_matrix("XX"), yy = string_matrix("YY"), zz = string_matrix("ZZ");
    for (int k = 0; k < draws; ++k) {
      double a = dist(rng), b = dist(rng), c = dist(rng);
      MatrixXcd target = herm_exp(a * xx + b * yy + c * zz, 1.0);
      MatrixXcd u = qubit_circuit_unitary(xx_yy_zz_circuit(a, b, c));
      rep.max_deviation = std::max(rep.max_deviation, deviation_up_to_phase(u, target));
    }
    reports.push_back(rep);
  }
  {
    CircuitIdentityReport rep{"zx_xz", draws, 0.0};
    MatrixXcd zx = string_matrix("ZX"), xz = string_matrix("XZ");
    for (int k = 0; k < draws; ++k) {
      double a = dist(rng), b = dist(rng);
      MatrixXcd target = herm_exp(a * zx + b * xz, 1.0);
      MatrixXcd u = qubit_circuit_unitary(zx_xz_circuit(a, b));
      rep.max_deviation = std::max(rep.max_deviation, deviation_up_to_phase(u, target));
    }
    reports.push_back(rep);
  }
  {
    CircuitIdentityReport rep{"gray_two_level", draws, 0.0};
    std::uniform_int_distribution<int> bits(0, 63);
    for (int k = 0; k < draws; ++k) {
      int s = bits(rng), t = bits(rng);
      if (s == t) t = (t + 1) % 64;
      double alpha = dist(rng);
      MatrixXcd herm = MatrixXcd::Zero(64, 64);
      herm(s, t) = herm(t, s) = 1.0;
      MatrixXcd target = herm_exp(herm, -alpha);
      MatrixXcd u = qubit_circuit_unitary(gray_rotation_circuit(s, t, alpha, 6));
      rep.max_deviation = std::max(rep.max_deviation, deviation_up_to_phase(u, target));
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace su3ym
