#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "su3ym/hamiltonian.hpp"

using namespace su3ym;
using Eigen::MatrixXd;

namespace {

const Irrep k1{0, 0}, k3{1, 0}, k3b{0, 1}, k8{1, 1};
const double rt2 = std::sqrt(2.0);

Truncation trunc133() { return Truncation::allow_list({k1, k3, k3b}); }
Truncation trunc1338() { return Truncation::allow_list({k1, k3, k3b, k8}); }

// ---------------------------------------------------------------------------
// Brute-force oracle: gauge-invariant two-plaquette wavefunctions built from
// explicit CG tensors, with the plaquette operator applied link by link.
// State indices: per link L the pair (a_L, b_L); configurations share the
// lattice of the geometry returned by two_plaquette_pbc().
// ---------------------------------------------------------------------------

using Amplitudes = std::map<std::vector<int>, double>;

double cg_entry(Irrep a, Irrep b, Irrep out, int gamma, int i, int j, int s) {
  const CGTensor* t = cg_find(a, b, out, gamma);
  return t ? t->at(i, j, s) : 0.0;
}

// chi(R1,Q1,R2,R3,Q2,R4) with coherent multiplicity sums, not normalized.
Amplitudes chi_state(const LinkConfig& c) {
  const Irrep r1 = c[0], q1 = c[1], r2 = c[2], r3 = c[3], q2 = c[4], r4 = c[5];
  const int d[6] = {int(dimension(r1)), int(dimension(q1)), int(dimension(r2)),
                    int(dimension(r3)), int(dimension(q2)), int(dimension(r4))};
  auto blocks = [&](Irrep a, Irrep b, Irrep out) {
    std::vector<const CGTensor*> v;
    for (const auto& t : cg_decompose(a, b))
      if (t.out == out) v.push_back(&t);
    return v;
  };
  auto v312 = blocks(r3, conjugate(r1), conjugate(q2));
  auto v131 = blocks(r1, conjugate(r3), conjugate(q1));
  auto v422 = blocks(r4, conjugate(r2), q2);
  auto v241 = blocks(r2, conjugate(r4), q1);
  Amplitudes psi;
  const double norm = 1.0 / (dimension(q1) * dimension(q2));
  // indices: (a,b) on R1, (cc,dd) on Q1, (e,f) on R2, (g,h) on R3, (i,j) on Q2,
  // (k,l) on R4
  for (const auto* t312 : v312)
    for (const auto* t131 : v131)
      for (const auto* t422 : v422)
        for (const auto* t241 : v241)
          for (int h = 0; h < d[3]; ++h)
            for (int a = 0; a < d[0]; ++a)
              for (int j = 0; j < d[4]; ++j) {
                double f1 = t312->at(h, a, j);
                if (f1 == 0.0) continue;
                for (int b = 0; b < d[0]; ++b)
                  for (int g = 0; g < d[3]; ++g)
                    for (int dd = 0; dd < d[1]; ++dd) {
                      double f2 = t131->at(b, g, dd);
                      if (f2 == 0.0) continue;
                      for (int l = 0; l < d[5]; ++l)
                        for (int e = 0; e < d[2]; ++e)
                          for (int i = 0; i < d[4]; ++i) {
                            double f3 = t422->at(l, e, i);
                            if (f3 == 0.0) continue;
                            for (int f = 0; f < d[2]; ++f)
                              for (int k = 0; k < d[5]; ++k)
                                for (int cc = 0; cc < d[1]; ++cc) {
                                  double f4 = t241->at(f, k, cc);
                                  if (f4 == 0.0) continue;
                                  psi[{a, b, cc, dd, e, f, g, h, i, j, k, l}] +=
                                      norm * f1 * f2 * f3 * f4;
                                }
                          }
                    }
              }
  return psi;
}

double dot(const Amplitudes& x, const Amplitudes& y) {
  double s = 0;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it != y.end()) s += v * it->second;
  }
  return s;
}

// Applies box of plaquette A = (R_t,R_b,Q_l,Q_r) = (R1,R2,Q2,Q1) to a chi state
// of configuration `in`, producing amplitudes on the link irreps of `out`.
// Index slots in the amplitude key: R1:(0,1) Q1:(2,3) R2:(4,5) R3:(6,7)
// Q2:(8,9) R4:(10,11).
Amplitudes apply_box_A(const Amplitudes& psi, const LinkConfig& in,
                       const LinkConfig& out) {
  struct LinkOp {
    int slot_a, slot_b;
    Irrep from, to, r;
    int idx_left, idx_right;  // vector components of the link operator
  };
  // box_A = sum_{alpha beta gamma delta} U(3bar)_{alpha delta}[Q2]
  //         U(3bar)_{delta gamma}[R1] U(3)_{beta gamma}[Q1] U(3)_{alpha beta}[R2]
  Amplitudes result;
  const Irrep f3{1, 0}, f3b{0, 1};
  for (int al = 0; al < 3; ++al)
    for (int be = 0; be < 3; ++be)
      for (int ga = 0; ga < 3; ++ga)
        for (int de = 0; de < 3; ++de) {
          std::vector<LinkOp> ops = {
              {8, 9, in[4], out[4], f3b, al, de},   // Q2
              {0, 1, in[0], out[0], f3b, de, ga},   // R1
              {2, 3, in[1], out[1], f3, be, ga},    // Q1
              {4, 5, in[2], out[2], f3, al, be},    // R2
          };
          for (const auto& [key, amp] : psi) {
            // apply the four link operators sequentially on this basis state
            std::vector<std::pair<std::vector<int>, double>> wave{{key, amp}};
            for (const auto& op : ops) {
              std::vector<std::pair<std::vector<int>, double>> next;
              double pref = std::sqrt(double(dimension(op.from)) / dimension(op.to));
              int dto = int(dimension(op.to));
              for (auto& [k2, a2] : wave) {
                int ia = k2[op.slot_a], ib = k2[op.slot_b];
                for (int ja = 0; ja < dto; ++ja) {
                  double c1 = cg_entry(op.from, op.r, op.to, 0, ia, op.idx_left, ja);
                  if (c1 == 0.0) continue;
                  for (int jb = 0; jb < dto; ++jb) {
                    double c2 = cg_entry(op.from, op.r, op.to, 0, ib, op.idx_right, jb);
                    if (c2 == 0.0) continue;
                    auto k3v = k2;
                    k3v[op.slot_a] = ja;
                    k3v[op.slot_b] = jb;
                    next.emplace_back(std::move(k3v), a2 * pref * c1 * c2);
                  }
                }
              }
              wave = std::move(next);
            }
            for (auto& [k2, a2] : wave) result[k2] += a2;
          }
        }
  return result;
}

double oracle_box_me(const LinkConfig& out, const LinkConfig& in) {
  Amplitudes pin = chi_state(in);
  Amplitudes pout = chi_state(out);
  double nin = std::sqrt(dot(pin, pin));
  double nout = std::sqrt(dot(pout, pout));
  Amplitudes moved = apply_box_A(pin, in, out);
  return dot(pout, moved) / (nin * nout);
}

MatrixXd paper_hpp_magnetic() {
  MatrixXd m(4, 4);
  m << 6, -2, 0, 0,
      -2, 5, -rt2 / 9, -rt2 / 3,
      0, -rt2 / 9, 6, -2.0 / 3,
      0, -rt2 / 3, -2.0 / 3, 6;
  return m;
}

}  // namespace

TEST_CASE("one-plaquette octet truncation reproduces the 4x4 reference") {
  auto op = one_plaquette_hamiltonian(Truncation::lambda(1));
  REQUIRE(op.dim() == 4);
  // electric: (g^2/2) diag(0, 16/3, 16/3, 12)
  CHECK(op.electric_diag[0] == Rational(0));
  CHECK(op.electric_diag[1] == Rational(16, 3));
  CHECK(op.electric_diag[2] == Rational(16, 3));
  CHECK(op.electric_diag[3] == Rational(12));
  MatrixXd expect(4, 4);
  expect << 0, 1, 1, 0,
      1, 0, 1, 1,
      1, 1, 0, 1,
      0, 1, 1, 0;
  CHECK((op.magnetic_dense() - expect).norm() < 1e-12);
  CHECK(op.constant == 6.0);

  // <2,0|box|1,0> = 1 within the larger truncation
  auto op2 = one_plaquette_hamiltonian(Truncation::lambda(2));
  int i10 = -1, i20 = -1;
  auto irreps = Truncation::lambda(2).admitted();
  for (int i = 0; i < int(irreps.size()); ++i) {
    if (irreps[i] == Irrep{1, 0}) i10 = i;
    if (irreps[i] == Irrep{2, 0}) i20 = i;
  }
  CHECK(op2.magnetic_dense()(i20, i10) == 1.0);
}

TEST_CASE("two-plaquette qutrit sector matrices match the reference") {
  auto g = LatticeGeometry::two_plaquette_pbc();
  auto singlets = global_singlet_filter(enumerate_physical(g, trunc133()), g);

  SUBCASE("++ sector") {
    auto h = build_global_hamiltonian(g, trunc133(), +1, +1);
    REQUIRE(h.dim() == 4);
    CHECK(h.electric_diag[0] == Rational(0));
    CHECK(h.electric_diag[1] == Rational(16, 3));
    CHECK(h.electric_diag[2] == Rational(16, 3));
    CHECK(h.electric_diag[3] == Rational(8));
    MatrixXd disp = h.constant * MatrixXd::Identity(4, 4) - h.magnetic_dense();
    CHECK((disp - paper_hpp_magnetic()).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("-+ sector") {
    auto h = build_global_hamiltonian(g, trunc133(), -1, +1);
    REQUIRE(h.dim() == 2);
    CHECK(h.electric_diag[0] == Rational(16, 3));
    CHECK(h.electric_diag[1] == Rational(16, 3));
    MatrixXd expect(2, 2);
    expect << 7, -rt2 / 9, -rt2 / 9, 6;
    MatrixXd disp = h.constant * MatrixXd::Identity(2, 2) - h.magnetic_dense();
    CHECK((disp - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("+- sector") {
    auto h = build_global_hamiltonian(g, trunc133(), +1, -1);
    REQUIRE(h.dim() == 1);
    CHECK(h.electric_diag[0] == Rational(16, 3));
    MatrixXd disp = h.constant * MatrixXd::Identity(1, 1) - h.magnetic_dense();
    CHECK(std::abs(disp(0, 0) - 5.0) < 1e-10);
  }
  SUBCASE("-- sector") {
    auto h = build_global_hamiltonian(g, trunc133(), -1, -1);
    REQUIRE(h.dim() == 2);
    CHECK(h.electric_diag[0] == Rational(16, 3));
    CHECK(h.electric_diag[1] == Rational(8));
    MatrixXd expect(2, 2);
    expect << 7, -rt2 / 3, -rt2 / 3, 6;
    MatrixXd disp = h.constant * MatrixXd::Identity(2, 2) - h.magnetic_dense();
    CHECK((disp - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("projection of the full configuration operator agrees") {
    auto config_op = build_hamiltonian(singlets, g);
    for (int cp : {+1, -1})
      for (int tr : {+1, -1}) {
        auto states = project_symmetry(singlets, g, cp, tr);
        auto proj = project_operator(config_op, singlets, states);
        auto direct = build_global_hamiltonian(g, trunc133(), cp, tr);
        CHECK((proj.magnetic_dense() - direct.magnetic_dense()).norm() < 1e-10);
      }
  }
}

TEST_CASE("formula matrix elements agree with the CG-network oracle") {
  auto g = LatticeGeometry::two_plaquette_pbc();
  auto configs = global_singlet_filter(enumerate_physical(g, trunc133()), g);
  REQUIRE(configs.size() == 9);
  int checked = 0;
  for (const auto& in : configs)
    for (const auto& out : configs) {
      auto me = plaquette_matrix_element(g, 0, out, in);
      double oracle = oracle_box_me(out, in);
      CHECK(std::abs(me.box - oracle) < 1e-10);
      if (me.box != 0.0) ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("hamiltonian commutes with the color-parity permutation") {
  auto g = LatticeGeometry::two_plaquette_pbc();
  for (auto trunc : {trunc133(), trunc1338()}) {
    auto configs = global_singlet_filter(enumerate_physical(g, trunc), g);
    auto op = build_hamiltonian(configs, g);
    const int d = op.dim();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    std::map<LinkConfig, int, bool (*)(const LinkConfig&, const LinkConfig&)> index(
        config_less);
    for (int i = 0; i < d; ++i) index[configs[i]] = i;
    for (int i = 0; i < d; ++i) p(index[map_color_parity(g, configs[i])], i) = 1.0;
    Eigen::MatrixXd h = op.dense(1.0);
    CHECK((p * h - h * p).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("octet-truncation +++ matrices match the 15x15 reference") {
  auto g = LatticeGeometry::two_plaquette_pbc();
  auto h = build_global_hamiltonian(g, trunc1338(), +1, +1, +1);
  REQUIRE(h.dim() == 15);

  // Expected electric diagonal, paper state order.
  std::vector<Rational> e_paper = {Rational(0),      Rational(16, 3), Rational(16, 3),
                                   Rational(6),      Rational(8),     Rational(25, 3),
                                   Rational(25, 3),  Rational(34, 3), Rational(34, 3),
                                   Rational(12),     Rational(12),    Rational(12),
                                   Rational(15),     Rational(15),    Rational(18)};

  // Match our states to the paper order through the component configurations
  // seen in the basis test; here the electric diagonal plus a unique signature
  // entry per degenerate pair is enough to pin the permutation.
  // Use the explicit component orbits:
  const Irrep a = k1, b = k3, c = k3b, d = k8;
  auto cfg = [](std::initializer_list<Irrep> l) { return LinkConfig(l); };
  std::vector<LinkConfig> first_component = {
      cfg({a, a, a, a, a, a}),  // 1
      cfg({b, c, c, a, b, a}),  // 2a
      cfg({b, a, c, b, a, c}),  // 2b
      cfg({d, a, a, d, a, a}),  // 3
      cfg({b, b, c, c, c, b}),  // 4
      cfg({b, a, c, b, d, c}),  // 5a
      cfg({b, c, c, a, b, d}),  // 5b
      cfg({b, d, c, b, d, c}),  // 6a
      cfg({b, c, c, d, b, d}),  // 6b
      cfg({d, a, d, d, a, d}),  // 7a
      cfg({d, d, d, a, d, a}),  // 7b
      cfg({a, d, d, d, d, a}),  // 7c
      cfg({d, a, d, d, d, d}),  // 8a
      cfg({a, d, d, d, d, d}),  // 8b
      cfg({d, d, d, d, d, d}),  // 9
  };
  auto singlets = global_singlet_filter(enumerate_physical(g, trunc1338()), g);
  auto states = project_symmetry(singlets, g, +1, +1, +1);
  std::vector<int> perm(15, -1);
  for (int want = 0; want < 15; ++want) {
    for (int s = 0; s < 15; ++s) {
      for (const auto& [comp, amp] : states[s].components)
        if (comp == first_component[want]) {
          perm[want] = s;
          break;
        }
      if (perm[want] >= 0) break;
    }
    REQUIRE(perm[want] >= 0);
  }
  auto hp = reorder_operator(h, perm);
  for (int i = 0; i < 15; ++i) CHECK(hp.electric_diag[i] == e_paper[i]);

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(15, 15);
  auto set = [&](int i, int j, double v) {
    m(i - 1, j - 1) = v;
    m(j - 1, i - 1) = v;
  };
  const double rt3 = std::sqrt(2.0);
  (void)rt3;
  set(1, 2, 2);
  set(2, 2, 1);
  set(2, 3, rt2 / 9);
  set(2, 5, rt2 / 3);
  set(2, 6, 4 * rt2 / 9);
  set(2, 8, 8 * rt2 / 9);
  set(2, 11, rt2);
  set(3, 5, 2.0 / 3);
  set(3, 7, 4 * rt2 / 9);
  set(3, 9, 8 * rt2 / 9);
  set(4, 7, 1 / rt2);
  set(5, 6, 2.0 / 3);
  set(5, 7, rt2 / 3);
  set(5, 8, 1.0 / 3);
  set(5, 9, 1 / (3 * rt2));
  set(6, 7, -2 * rt2 / 9);
  set(6, 9, 1 / (9 * rt2));
  set(7, 7, 0.25);
  set(7, 8, 1 / (9 * rt2));
  set(7, 12, 1 / rt2);
  set(7, 14, -1 / (2 * rt2));
  set(8, 9, 1 / (288 * rt2));
  set(9, 9, 1.0 / 16);
  set(9, 10, 0.25);
  set(9, 11, 1 / (4 * rt2));
  set(9, 13, -0.25);
  set(9, 14, -1 / (4 * rt2));
  set(9, 15, 1.0 / 8);

  // paper magnetic part: H_B = 3/g^2 I - 1/(2g^2) m  ->  our magnetic == m
  CHECK((hp.magnetic_dense() - m).cwiseAbs().maxCoeff() < 1e-10);
}
