#include "su3ym/su2_plaquette.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace su3ym {

Eigen::MatrixXd su2_hamiltonian(const SU2PlaquetteModel& model) {
  const int d = model.j_max + 1;
  const double g2 = model.g * model.g;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    h(j, j) = 0.5 * g2 * j * (j + 1) + 2.0 / g2;
    if (j + 1 < d) h(j, j + 1) = h(j + 1, j) = -1.0 / g2;
  }
  return h;
}

Eigen::VectorXd su2_ground_wavefunction(const SU2PlaquetteModel& model) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(su2_hamiltonian(model));
  Eigen::VectorXd psi = es.eigenvectors().col(0);
  // Perron-Frobenius sign convention: all components positive
  if (psi(0) < 0) psi = -psi;
  return psi;
}

double su2_tail_slope(const SU2PlaquetteModel& model) {
  // The gaussian window sits between the core (where the energy term still
  // matters) and the large-j region, where the discrete recursion decays
  // factorially and log psi vs (j+1/2)^2 bends away from linear.  That window
  // shows up as a plateau of the local slope; fit around its extremum.
  int hi = model.j_max - 4;
  Eigen::VectorXd psi = su2_ground_wavefunction(model);
  const double floor = 1e-13 * psi.cwiseAbs().maxCoeff();
  while (hi > 1 && std::abs(psi(hi)) < floor) --hi;

  auto xval = [](int j) { return (j + 0.5) * (j + 0.5); };
  std::vector<double> local(hi + 1, 0.0);
  for (int j = 1; j <= hi; ++j)
    local[j] = (std::log(std::abs(psi(j))) - std::log(std::abs(psi(j - 1)))) /
               (xval(j) - xval(j - 1));
  if (hi < 6)
    throw std::invalid_argument("su2_tail_slope: fit window too small, raise j_max");
  int jstar = 2;
  for (int j = 2; j <= hi; ++j)
    if (local[j] < local[jstar]) jstar = j;
  if (jstar + 2 > hi)
    throw std::invalid_argument("su2_tail_slope: truncation cuts the gaussian window");

  const int lo = std::max(1, jstar - 1);
  const int up = std::min(hi, jstar + 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int j = lo; j <= up; ++j) {
    double x = xval(j), y = std::log(std::abs(psi(j)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_su2_wavefunction_csv(const SU2PlaquetteModel& model, const std::string& path) {
  Eigen::VectorXd psi = su2_ground_wavefunction(model);
  std::ofstream out(path);
  out << "# schema=1\n";
  out << "j,psi0\n";
  char buf[64];
  for (int j = 0; j <= model.j_max; ++j) {
    std::snprintf(buf, sizeof buf, "%d,%.15g\n", j, psi(j));
    out << buf;
  }
}

}  // namespace su3ym
