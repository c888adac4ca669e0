#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "su3ym/clebsch.hpp"

using namespace su3ym;
using Eigen::MatrixXcd;

namespace {

// Gell-Mann structure constants, antisymmetric in all indices (1-based).
double structure_constant(int a, int b, int c) {
  struct F {
    int a, b, c;
    double v;
  };
  static const F table[] = {{1, 2, 3, 1.0},       {1, 4, 7, 0.5},  {1, 5, 6, -0.5},
                            {2, 4, 6, 0.5},       {2, 5, 7, 0.5},  {3, 4, 5, 0.5},
                            {3, 6, 7, -0.5},      {4, 5, 8, std::sqrt(3.0) / 2},
                            {6, 7, 8, std::sqrt(3.0) / 2}};
  int idx[3] = {a, b, c};
  int perm[3] = {0, 1, 2};
  // brute-force sign of the permutation sorting (a,b,c)
  for (const auto& f : table) {
    int want[3] = {f.a, f.b, f.c};
    int sorted[3] = {a, b, c};
    std::sort(sorted, sorted + 3);
    int wsorted[3] = {f.a, f.b, f.c};
    std::sort(wsorted, wsorted + 3);
    if (!std::equal(sorted, sorted + 3, wsorted)) continue;
    // parity of mapping (a,b,c) -> (f.a,f.b,f.c)
    int sign = 1;
    int cur[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
      if (cur[i] == want[i]) continue;
      for (int j = i + 1; j < 3; ++j)
        if (cur[j] == want[i]) {
          std::swap(cur[i], cur[j]);
          sign = -sign;
        }
    }
    if (a == b || b == c || a == c) return 0.0;
    return sign * f.v;
  }
  (void)idx;
  (void)perm;
  return 0.0;
}

}  // namespace

TEST_CASE("state enumeration") {
  CHECK(enumerate_states({0, 0}).size() == 1);
  CHECK(enumerate_states({1, 0}).size() == 3);
  auto octet = enumerate_states({1, 1});
  REQUIRE(octet.size() == 8);
  int zero_weight = 0, triplet_center = 0;
  for (const auto& s : octet) {
    if (s.t2 == 0 && s.tz2 == 0 && s.y3 == 0) ++zero_weight;
    if (s.t2 == 2 && s.tz2 == 0 && s.y3 == 0) ++triplet_center;
  }
  CHECK(zero_weight == 1);
  CHECK(triplet_center == 1);
  // descending (Y, T, Tz) and highest weight first
  CHECK(octet[0].y3 == 3);
  CHECK(octet[0].t2 == 1);
  CHECK(octet[0].tz2 == 1);
  for (size_t i = 1; i < octet.size(); ++i) {
    auto &a = octet[i - 1], &b = octet[i];
    bool ordered = a.y3 > b.y3 || (a.y3 == b.y3 && a.t2 > b.t2) ||
                   (a.y3 == b.y3 && a.t2 == b.t2 && a.tz2 > b.tz2);
    CHECK(ordered);
  }
}

TEST_CASE("generators satisfy the casimir identity") {
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      Irrep r{p, q};
      const auto& g = generators(r);
      const int d = static_cast<int>(dimension(r));
      MatrixXcd sum = MatrixXcd::Zero(d, d);
      for (const auto& e : g.e) {
        CHECK((e - e.adjoint()).norm() < 1e-12);
        sum += e * e;
      }
      MatrixXcd expect = casimir(r).value() * MatrixXcd::Identity(d, d);
      CHECK((sum - expect).norm() < 1e-11 * std::max(1, d));
    }
}

TEST_CASE("generator commutators close on the structure constants") {
  const std::complex<double> im(0, 1);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      Irrep r{p, q};
      const auto& g = generators(r);
      const int d = static_cast<int>(dimension(r));
      for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) {
          MatrixXcd comm = g.e[a] * g.e[b] - g.e[b] * g.e[a];
          MatrixXcd expect = MatrixXcd::Zero(d, d);
          for (int c = 0; c < 8; ++c) {
            double f = structure_constant(a + 1, b + 1, c + 1);
            if (f != 0.0) expect += im * f * g.e[c];
          }
          REQUIRE((comm - expect).norm() < 1e-12 * d);
        }
    }
}

TEST_CASE("cg orthonormality and sum rule") {
  std::vector<std::pair<Irrep, Irrep>> pairs;
  for (int p1 = 0; p1 <= 2; ++p1)
    for (int q1 = 0; q1 <= 2; ++q1)
      for (int p2 = 0; p2 <= 2; ++p2)
        for (int q2 = 0; q2 <= 2; ++q2) pairs.push_back({{p1, q1}, {p2, q2}});

  for (auto [r1, r2] : pairs) {
    const auto& blocks = cg_decompose(r1, r2);
    const int d1 = static_cast<int>(dimension(r1));
    const int d2 = static_cast<int>(dimension(r2));

    // completeness: stacking all blocks gives a square orthogonal matrix
    int cols = 0;
    for (const auto& t : blocks) cols += t.dout;
    REQUIRE(cols == d1 * d2);
    Eigen::MatrixXd u(d1 * d2, cols);
    int col = 0;
    for (const auto& t : blocks)
      for (int s = 0; s < t.dout; ++s, ++col)
        for (int i = 0; i < d1; ++i)
          for (int j = 0; j < d2; ++j) u(i * d2 + j, col) = t.at(i, j, s);
    CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(cols, cols)).norm() <
          1e-10 * cols);

    // sum rule: total squared weight of each block equals dim(out)
    for (const auto& t : blocks) {
      double total = 0;
      for (double c : t.coeff) total += c * c;
      CHECK(std::abs(total - static_cast<double>(dimension(t.out))) < 1e-9);
    }
  }
}

TEST_CASE("cg block-diagonalizes the coupled generators") {
  std::vector<std::pair<Irrep, Irrep>> pairs = {
      {{1, 0}, {0, 1}}, {{1, 0}, {1, 0}}, {{1, 1}, {1, 1}}, {{2, 0}, {1, 0}},
      {{1, 1}, {1, 0}}, {{2, 1}, {0, 1}}, {{2, 2}, {1, 0}}};
  for (auto [r1, r2] : pairs) {
    const auto& blocks = cg_decompose(r1, r2);
    const auto& g1 = generators(r1);
    const auto& g2 = generators(r2);
    const int d1 = static_cast<int>(dimension(r1));
    const int d2 = static_cast<int>(dimension(r2));
    for (int b = 0; b < 8; ++b) {
      MatrixXcd tot = MatrixXcd::Zero(d1 * d2, d1 * d2);
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
          for (int k = 0; k < d2; ++k) tot(i * d2 + k, j * d2 + k) += g1.e[b](i, j);
      for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
          for (int k = 0; k < d1; ++k) tot(k * d2 + i, k * d2 + j) += g2.e[b](i, j);

      for (const auto& t : blocks) {
        Eigen::MatrixXd block(d1 * d2, t.dout);
        for (int s = 0; s < t.dout; ++s)
          for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d2; ++j) block(i * d2 + j, s) = t.at(i, j, s);
        MatrixXcd reduced = block.transpose() * tot * block;
        CHECK((reduced - generators(t.out).e[b]).norm() < 1e-10 * t.dout);
      }
    }
  }
}

TEST_CASE("octet square has symmetric and antisymmetric octet copies") {
  const auto& blocks = cg_decompose({1, 1}, {1, 1});
  std::vector<const CGTensor*> octets;
  for (const auto& t : blocks)
    if (t.out == Irrep{1, 1}) octets.push_back(&t);
  REQUIRE(octets.size() == 2);
  // gamma 0 symmetric, gamma 1 antisymmetric under factor exchange
  for (const CGTensor* t : octets) {
    double sym_dev = 0, asym_dev = 0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int s = 0; s < 8; ++s) {
          sym_dev = std::max(sym_dev, std::abs(t->at(i, j, s) - t->at(j, i, s)));
          asym_dev = std::max(asym_dev, std::abs(t->at(i, j, s) + t->at(j, i, s)));
        }
    if (t->gamma == 0)
      CHECK(sym_dev < 1e-10);
    else
      CHECK(asym_dev < 1e-10);
  }
}

TEST_CASE("cg determinism") {
  auto first = cg_decompose({1, 1}, {1, 1});
  // recomputing from scratch gives bit-identical coefficients
  auto again = cg_decompose({1, 1}, {1, 1});
  REQUIRE(first.size() == again.size());
  for (size_t i = 0; i < first.size(); ++i) {
    REQUIRE(first[i].coeff.size() == again[i].coeff.size());
    for (size_t k = 0; k < first[i].coeff.size(); ++k)
      CHECK(first[i].coeff[k] == again[i].coeff[k]);
  }
}

TEST_CASE("singlet coupling of 3 and 3bar") {
  const CGTensor* t = cg_find({1, 0}, {0, 1}, {0, 0}, 0);
  REQUIRE(t != nullptr);
  int nonzero = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (t->at(i, j, 0) != 0.0) {
        ++nonzero;
        CHECK(std::abs(t->at(i, j, 0) * t->at(i, j, 0) - 1.0 / 3.0) < 1e-12);
      }
  CHECK(nonzero == 3);
}

TEST_CASE("composite vertex factor reference values") {
  Irrep s{0, 0}, f{1, 0}, fb{0, 1}, o{1, 1};
  // forbidden chain vanishes
  CHECK(nine_r(f, f, Irrep{2, 1}, fb, s, f) == 0.0);

  CHECK(std::abs(std::abs(nine_r(s, f, f, fb, s, fb)) - 1.0) < 1e-10);
  CHECK(std::abs(std::abs(nine_r(s, f, f, fb, o, fb)) - 8.0) < 1e-10);
  CHECK(std::abs(std::abs(nine_r(f, fb, s, o, fb, fb)) - 2.0 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(std::abs(nine_r(f, fb, s, fb, f, f)) - std::sqrt(3.0)) < 1e-10);
  CHECK(std::abs(std::abs(nine_r(f, f, fb, fb, s, f)) - 1.0) < 1e-10);
  CHECK(std::abs(std::abs(nine_r(f, f, fb, fb, o, f)) - 4.0) < 1e-10);
  CHECK(std::abs(std::abs(nine_r(f, f, fb, o, f, fb)) - std::sqrt(6.0)) < 1e-10);
  double plus = nine_r(o, o, o, f, f, f);
  double minus = nine_r(o, o, o, fb, fb, fb);
  CHECK(std::abs(std::abs(plus) - 0.75 * (std::sqrt(5.0) + 3.0)) < 1e-10);
  CHECK(std::abs(std::abs(minus) - 0.75 * (3.0 - std::sqrt(5.0))) < 1e-10);
}
