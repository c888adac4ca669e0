#pragma once

#include <Eigen/Dense>
#include <string>

namespace su3ym {

/// Single SU(2) plaquette in the integer-j electric basis, truncated at j_max.
struct SU2PlaquetteModel {
  int j_max = 40;
  double g = 1.0;
};

/// Tridiagonal Hamiltonian: (g^2/2) j(j+1) on the diagonal plus
/// (1/g^2)(2 delta - nearest neighbors).
Eigen::MatrixXd su2_hamiltonian(const SU2PlaquetteModel& model);

/// Ground-state wavefunction with all-positive components.
Eigen::VectorXd su2_ground_wavefunction(const SU2PlaquetteModel& model);

/// Least-squares slope of log psi0(j) against (j + 1/2)^2 over the asymptotic
/// window j in [ceil(4/g), j_max - 4]; throws when the window is too small.
double su2_tail_slope(const SU2PlaquetteModel& model);

void write_su2_wavefunction_csv(const SU2PlaquetteModel& model, const std::string& path);

}  // namespace su3ym
