#include "su3ym/qudit_circuit.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace su3ym {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

QuditRegister QuditRegister::basis_state(std::vector<int> dims,
                                         const std::vector<int>& levels) {
  QuditRegister reg;
  reg.dims = std::move(dims);
  long long total = 1;
  for (int d : reg.dims) total *= d;
  reg.amps = Eigen::VectorXcd::Zero(total);
  reg.amps(reg.index_of(levels)) = 1.0;
  return reg;
}

long long QuditRegister::index_of(const std::vector<int>& levels) const {
  long long idx = 0;
  for (size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + levels[s];
  return idx;
}

void apply_gate(QuditRegister& reg, const QuditGate& gate) {
  const int n = static_cast<int>(reg.dims.size());
  std::vector<long long> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * reg.dims[s + 1];

  const long long total = reg.total_dim();
  const long long sj = gate.j * stride[gate.site];
  const long long sk = gate.k * stride[gate.site];
  const int d = reg.dims[gate.site];

  std::complex<double> ujj, ujk, ukj, ukk;
  switch (gate.kind) {
    case QuditGate::Kind::X:
      ujj = ukk = 0.0;
      ujk = ukj = 1.0;
      break;
    case QuditGate::Kind::Y:
      ujj = ukk = 0.0;
      ujk = -kI;
      ukj = kI;
      break;
    case QuditGate::Kind::Givens: {
      double c = std::cos(gate.angle), s = std::sin(gate.angle);
      ujj = ukk = c;
      ujk = -kI * std::exp(kI * gate.phi) * s;
      ukj = -kI * std::exp(-kI * gate.phi) * s;
      break;
    }
  }

  std::vector<int> levels(n);
  for (long long base = 0; base < total; ++base) {
    // visit each (j,k) pair once, from its j member
    long long rem = base;
    for (int s = 0; s < n; ++s) {
      levels[s] = static_cast<int>(rem / stride[s]);
      rem %= stride[s];
    }
    if (levels[gate.site] != gate.j) continue;

    bool on = true;
    for (const auto& c : gate.controls)
      if (levels[c.site] != c.mode) {
        on = false;
        break;
      }
    if (on && !gate.or_controls.empty()) {
      on = false;
      for (const auto& c : gate.or_controls)
        if (levels[c.site] == c.mode) {
          on = true;
          break;
        }
    }
    if (!on) continue;

    long long ij = base;
    long long ik = base - sj + sk;
    auto aj = reg.amps(ij), ak = reg.amps(ik);
    reg.amps(ij) = ujj * aj + ujk * ak;
    reg.amps(ik) = ukj * aj + ukk * ak;
  }
  (void)d;
}

void apply_circuit(QuditRegister& reg, const QuditCircuit& circuit) {
  for (const auto& g : circuit.gates) apply_gate(reg, g);
}

Eigen::MatrixXcd circuit_unitary(const QuditCircuit& circuit) {
  long long total = 1;
  for (int d : circuit.dims) total *= d;
  if (total > 20000) throw std::invalid_argument("circuit_unitary: register too large");
  Eigen::MatrixXcd u(total, total);
  for (long long col = 0; col < total; ++col) {
    QuditRegister reg;
    reg.dims = circuit.dims;
    reg.amps = Eigen::VectorXcd::Zero(total);
    reg.amps(col) = 1.0;
    apply_circuit(reg, circuit);
    u.col(col) = reg.amps;
  }
  return u;
}

GateCounts count_gates(const QuditCircuit& circuit) {
  GateCounts counts;
  for (const auto& g : circuit.gates) {
    if (g.kind == QuditGate::Kind::Givens)
      ++counts.rotations;
    else if (!g.controls.empty() || !g.or_controls.empty())
      ++counts.controlled_paulis;
    else
      ++counts.paulis;
  }
  return counts;
}

void dump_circuit_json(const QuditCircuit& circuit, const std::string& path) {
  nlohmann::json j;
  j["dims"] = circuit.dims;
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates) {
    nlohmann::json e;
    e["kind"] = g.kind == QuditGate::Kind::X   ? "x"
                : g.kind == QuditGate::Kind::Y ? "y"
                                               : "givens";
    e["sites"] = {g.site};
    e["modes"] = {g.j, g.k};
    if (g.kind == QuditGate::Kind::Givens) {
      e["angle"] = g.angle;
      e["phase"] = g.phi;
    }
    nlohmann::json ctrls = nlohmann::json::array();
    for (const auto& c : g.controls) ctrls.push_back({{"site", c.site}, {"mode", c.mode}});
    e["controls"] = ctrls;
    if (!g.or_controls.empty()) {
      nlohmann::json orc = nlohmann::json::array();
      for (const auto& c : g.or_controls)
        orc.push_back({{"site", c.site}, {"mode", c.mode}});
      e["or_controls"] = orc;
    }
    gates.push_back(e);
  }
  j["gates"] = gates;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

}  // namespace su3ym
