#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "su3ym/hamiltonian.hpp"

namespace su3ym {

struct Trajectory {
  std::vector<double> times;
  std::vector<double> persistence;
  std::vector<double> electric;
  std::vector<double> leakage;  // empty unless a physical subspace is tracked
};

void write_trajectory_csv(const Trajectory& t, const std::string& path);

/// exp(-i H t) |psi0> across `times` by spectral decomposition (dense up to
/// dim 5000, Lanczos beyond); `electric` is the diagonal electric observable.
Trajectory exact_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXd& electric,
                        const Eigen::VectorXcd& psi0, const std::vector<double>& times);
Trajectory exact_evolve(const OperatorMatrix& op, double g, const Eigen::VectorXcd& psi0,
                        const std::vector<double>& times);

/// Ordered term split H = sum_k terms[k]; first order applies
/// exp(-i dt H_N)...exp(-i dt H_1), second order the symmetrized product.
struct TrotterScheme {
  std::vector<Eigen::MatrixXcd> terms;
  int order = 2;
  Eigen::VectorXd electric;  // diagonal observable in this basis

  Eigen::MatrixXcd total() const;
  Eigen::MatrixXcd step(double dt) const;
};

/// Named splittings: "global8" (two terms, octet-truncated single plaquette),
/// "colorparity6" (three terms, basis order 1, 3+, 6+, 8), "twoplaq133pp"
/// (three terms, ++ sector of the qutrit-truncated two-plaquette system).
TrotterScheme named_scheme(const std::string& name, double g, int order);
/// Generic diagonal/off-diagonal split of an operator.
TrotterScheme even_odd_scheme(const OperatorMatrix& op, double g, int order);

Trajectory trotter_evolve(const TrotterScheme& s, const Eigen::VectorXcd& psi0,
                          double dt, int n_steps);

/// Observable trace where each time t is reached with `n_steps` fixed-count
/// steps of size t/n_steps (constant circuit depth, growing angle).
Trajectory trotter_fixed_steps_trace(const TrotterScheme& s, const Eigen::VectorXcd& psi0,
                                     const std::vector<double>& times, int n_steps);

struct Extremum {
  double t = 0;
  double value = 0;
};

struct ExtremaResult {
  std::optional<Extremum> first_max;
  std::optional<Extremum> first_min;  // searched after the first maximum
};

/// First interior maximum and the following minimum, refined by a three-point
/// parabola; absent optionals flag monotone traces.  `refine = false` reports
/// the raw grid extremum (the sampling used for the published untruncated
/// benchmark row).
ExtremaResult find_first_extrema(const std::vector<double>& times,
                                 const std::vector<double>& values, bool refine = true);

/// Scan grid for extremum searches: dt = 0.005/g^2 out to t_max.
std::vector<double> extrema_scan_times(double g, double t_max = 40.0);

// --- single-plaquette statics and convergence ------------------------------

double one_plaquette_mass_gap(int lambda, double g, bool parity_even = false);
double one_plaquette_plaquette_vev(int lambda, double g);
double one_plaquette_electric_at(int lambda, double g, double t);

/// Ground-state amplitudes over the (p,q) grid, dominant component positive.
std::map<Irrep, double, IrrepOrder> ground_state_amplitudes(int lambda, double g);

enum class StaticObservable { MassGap, MassGapParityEven, PlaquetteVEV, ElectricEnergyAt };

struct SweepRow {
  double g = 0;
  int lambda = 0;
  double value = 0;
  double deviation_percent = 0;
};

std::vector<SweepRow> convergence_sweep(StaticObservable obs,
                                        const std::vector<double>& gs,
                                        const std::vector<int>& lambdas, int lambda_ref,
                                        double t = 0.0, int threads = 0);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace su3ym
