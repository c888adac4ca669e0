#include <doctest.h>

#include <cmath>

#include "su3ym/counting.hpp"
#include "su3ym/su2_plaquette.hpp"

using namespace su3ym;

TEST_CASE("three-point singlet table") {
  const long long expect[] = {1, 19, 165, 838, 3049, 8865, 22003, 48514, 97653};
  for (int lambda = 0; lambda <= 8; ++lambda)
    CHECK(count_3pt_singlets(lambda) == expect[lambda]);
}

TEST_CASE("four-point singlet table") {
  const long long expect[] = {1, 82, 1967, 19550, 116929, 504932};
  for (int lambda = 0; lambda <= 5; ++lambda)
    CHECK(count_4pt_singlets(lambda) == expect[lambda]);
}

TEST_CASE("closed-form completions equal brute-force multiplicity counting") {
  for (int p2 = 0; p2 <= 3; ++p2)
    for (int q2 = 0; q2 <= 3; ++q2)
      for (int p3 = 0; p3 <= 3; ++p3)
        for (int q3 = 0; q3 <= 3; ++q3) {
          Irrep a{p2, q2}, b{p3, q3};
          long long brute = 0;
          for (const auto& [r, m] : tensor_decompose(a, b)) brute += m;
          CHECK(coleman_completions(a, b) == brute);
        }
  // and summed over a cutoff
  for (int lambda : {0, 1, 2, 3}) {
    long long brute = 0;
    for (int p2 = 0; p2 <= lambda; ++p2)
      for (int q2 = 0; q2 <= lambda; ++q2)
        for (int p3 = 0; p3 <= lambda; ++p3)
          for (int q3 = 0; q3 <= lambda; ++q3)
            for (const auto& [r, m] : tensor_decompose({p2, q2}, {p3, q3})) brute += m;
    CHECK(count_3pt_completions(lambda) == brute);
  }
}

TEST_CASE("plaquette state and matrix-element counts") {
  auto c13 = count_plaquette_physical(
      Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(c13.states == 81);
  CHECK(c13.nonzero_mes == 81);

  auto c138 = count_plaquette_physical(
      Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(c138.states == 529);
  CHECK(c138.nonzero_mes == 1018);
  CHECK(static_cast<double>(c138.nonzero_mes) / c138.states ==
        doctest::Approx(1.92).epsilon(0.005));

  auto c1386 = count_plaquette_physical(
      Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}));
  CHECK(c1386.states == 5937);
  CHECK(c1386.nonzero_mes == 19594);
}

TEST_CASE("counts are invariant under conjugating the allow list") {
  auto a = count_plaquette_physical(Truncation::allow_list({{0, 0}, {1, 0}}));
  auto b = count_plaquette_physical(Truncation::allow_list({{0, 0}, {0, 1}}));
  CHECK(a.states == b.states);
  CHECK(a.nonzero_mes == b.nonzero_mes);
}

TEST_CASE("polynomial scaling fits") {
  // the published singlet tables
  ScalingTable three;
  three.rows = {{0, 1},       {1, 19},      {2, 165},      {3, 838},
                {4, 3049},    {5, 8865},    {6, 22003},    {7, 48514},
                {8, 97653},   {9, 182803},  {10, 322621},  {11, 542196},
                {12, 874483}, {13, 1361683}, {14, 2056971}, {15, 3026098},
                {16, 4349413}};
  auto rep3 = fit_scaling(three, 10);
  CHECK(rep3.plateau_degree == 6);
  CHECK(rep3.residual_l2[5] < 1e-5 * rep3.residual_l2[0]);

  ScalingTable four;
  four.rows = {{0, 1},        {1, 82},       {2, 1967},      {3, 19550},
               {4, 116929},   {5, 504932},   {6, 1739833},   {7, 5080226},
               {8, 13071135}, {9, 30436170}, {10, 65372321}, {11, 131352884}};
  auto rep4 = fit_scaling(four, 10);
  CHECK(rep4.plateau_degree == 8);

  // constant data fails the strict-increase invariant
  ScalingTable flat;
  flat.rows = {{0, 5}, {1, 5}, {2, 5}};
  CHECK_THROWS(fit_scaling(flat, 3));

  // exact polynomial data plateaus at its own degree
  ScalingTable cubic;
  for (int x = 0; x <= 8; ++x) cubic.rows.push_back({x, 2 + x + 3LL * x * x * x});
  auto repc = fit_scaling(cubic, 6);
  CHECK(repc.plateau_degree == 3);
}

TEST_CASE("qubit estimate") {
  CHECK(qubit_estimate(10, 3, 1) == 2000);
  CHECK(qubit_estimate(10, 3, 0) == 0);
  CHECK(qubit_estimate(1, 1, 3) == 4);
}

TEST_CASE("su2 plaquette hamiltonian entries") {
  SU2PlaquetteModel m{10, 0.8};
  auto h = su2_hamiltonian(m);
  const double g2 = 0.64;
  CHECK(h(0, 0) == doctest::Approx(2.0 / g2));
  CHECK(h(1, 1) == doctest::Approx(g2 + 2.0 / g2));
  for (int j = 0; j < 10; ++j) CHECK(h(j, j + 1) == doctest::Approx(-1.0 / g2));
}

TEST_CASE("su2 ground state is positive and stable in the cutoff") {
  for (double g : {0.5, 1.0}) {
    SU2PlaquetteModel small{40, g}, big{80, g};
    auto psi = su2_ground_wavefunction(small);
    for (int j = 0; j <= small.j_max; ++j) CHECK(psi(j) > 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(su2_hamiltonian(small));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(su2_hamiltonian(big));
    CHECK(std::abs(e1.eigenvalues()(0) - e2.eigenvalues()(0)) < 1e-10);
  }
}

TEST_CASE("su2 tail slope approaches the asymptotic gaussian") {
  struct Row {
    double g;
    int j_max;
  };
  for (auto [g, j_max] : {Row{1.0, 40}, Row{0.5, 80}}) {
    double slope = su2_tail_slope({j_max, g});
    double predict = -g * g / (2 * std::sqrt(2.0));
    CHECK(slope < 0.0);
    CHECK(std::abs(slope - predict) / std::abs(predict) < 0.15);
  }
  CHECK_THROWS(su2_tail_slope({10, 0.5}));
}
