#include "su3ym/evolution.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>
#include <atomic>
#include <thread>

namespace su3ym {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
const std::complex<double> kI(0.0, 1.0);

MatrixXcd kron2(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd pauli(char c) {
  MatrixXcd m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: bad label");
  }
  return m;
}

MatrixXcd pp(const char* s) { return kron2(pauli(s[0]), pauli(s[1])); }

// Lanczos propagation for large sparse-ish problems; dense path covers
// everything exercised here.
VectorXcd lanczos_expv(const MatrixXd& h, const VectorXcd& v, double t,
                       int m = 60) {
  const int n = static_cast<int>(v.size());
  m = std::min(m, n);
  Eigen::MatrixXcd basis(n, m);
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
  basis.col(0) = v.normalized();
  VectorXcd w;
  int used = m;
  for (int j = 0; j < m; ++j) {
    w = h * basis.col(j);
    double alpha = std::real(basis.col(j).dot(w));
    tri(j, j) = alpha;
    w -= alpha * basis.col(j);
    if (j > 0) w -= tri(j, j - 1) * basis.col(j - 1);
    if (j + 1 < m) {
      double beta = w.norm();
      if (beta < 1e-14) {
        used = j + 1;
        break;
      }
      tri(j, j + 1) = tri(j + 1, j) = beta;
      basis.col(j + 1) = w / beta;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri.topLeftCorner(used, used));
  Eigen::VectorXcd phases(used);
  for (int k = 0; k < used; ++k) phases(k) = std::exp(-kI * es.eigenvalues()(k) * t);
  Eigen::VectorXcd small = es.eigenvectors() *
                           (phases.array() *
                            (es.eigenvectors().transpose().row(0).transpose().array()))
                               .matrix();
  return v.norm() * (basis.leftCols(used) * small);
}

}  // namespace

void write_trajectory_csv(const Trajectory& t, const std::string& path) {
  std::ofstream out(path);
  out << "# schema=1\n";
  out << "t,persistence,electric_energy";
  if (!t.leakage.empty()) out << ",leakage";
  out << "\n";
  char buf[160];
  for (size_t i = 0; i < t.times.size(); ++i) {
    if (t.leakage.empty())
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", t.times[i], t.persistence[i],
                    t.electric[i]);
    else
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", t.times[i],
                    t.persistence[i], t.electric[i], t.leakage[i]);
    out << buf;
  }
}

Trajectory exact_evolve(const MatrixXd& h, const VectorXd& electric,
                        const VectorXcd& psi0, const std::vector<double>& times) {
  Trajectory traj;
  traj.times = times;
  const int d = static_cast<int>(h.rows());
  if (d <= 5000) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
    VectorXcd c0 = es.eigenvectors().transpose() * psi0;
    for (double t : times) {
      VectorXcd c = c0;
      for (int k = 0; k < d; ++k) c(k) *= std::exp(-kI * es.eigenvalues()(k) * t);
      VectorXcd psi = es.eigenvectors() * c;
      traj.persistence.push_back(std::norm(psi0.dot(psi)));
      traj.electric.push_back(std::real(psi.dot(electric.asDiagonal() * psi)));
    }
  } else {
    for (double t : times) {
      VectorXcd psi = lanczos_expv(h, psi0, t);
      traj.persistence.push_back(std::norm(psi0.dot(psi)));
      traj.electric.push_back(std::real(psi.dot(electric.asDiagonal() * psi)));
    }
  }
  return traj;
}

Trajectory exact_evolve(const OperatorMatrix& op, double g, const VectorXcd& psi0,
                        const std::vector<double>& times) {
  return exact_evolve(op.dense(g), 0.5 * g * g * op.electric_values(), psi0, times);
}

MatrixXcd TrotterScheme::total() const {
  MatrixXcd h = terms.front();
  for (size_t k = 1; k < terms.size(); ++k) h += terms[k];
  return h;
}

MatrixXcd TrotterScheme::step(double dt) const {
  const int d = static_cast<int>(terms.front().rows());
  auto expterm = [&](const MatrixXcd& h, double s) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    VectorXcd phases(d);
    for (int k = 0; k < d; ++k) phases(k) = std::exp(-kI * es.eigenvalues()(k) * s);
    return MatrixXcd(es.eigenvectors() * phases.asDiagonal() *
                     es.eigenvectors().adjoint());
  };
  MatrixXcd u = MatrixXcd::Identity(d, d);
  if (order == 1) {
    // exp(-i dt H_N) ... exp(-i dt H_1)
    for (const auto& h : terms) u = expterm(h, dt) * u;
  } else {
    for (size_t k = 0; k + 1 < terms.size(); ++k) u = expterm(terms[k], dt / 2) * u;
    u = expterm(terms.back(), dt) * u;
    for (size_t k = terms.size() - 1; k-- > 0;) u = expterm(terms[k], dt / 2) * u;
  }
  return u;
}

TrotterScheme named_scheme(const std::string& name, double g, int order) {
  TrotterScheme s;
  s.order = order;
  const double g2 = g * g;
  if (name == "global8") {
    auto op = one_plaquette_hamiltonian(Truncation::lambda(1));
    MatrixXcd h = op.dense(g);
    MatrixXcd h2 = (g2 / 6.0) * pp("ZZ") - 1.0 / (4 * g2) * (pp("XX") + pp("YY"));
    s.terms = {h - h2, h2};
    s.electric = 0.5 * g2 * op.electric_values();
  } else if (name == "colorparity6") {
    auto full = one_plaquette_hamiltonian(Truncation::allow_list(
        {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}));
    auto reduced = color_parity_reduce(
        full, Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}})
                  .admitted());
    // canonical reduced order (1, 3+, 8, 6+) -> reference order (1, 3+, 6+, 8)
    auto op = reorder_operator(reduced, {0, 1, 3, 2});
    MatrixXcd h = op.dense(g);
    MatrixXcd h2 = 1.0 / (2 * std::sqrt(2.0) * g2) * pp("XZ");
    MatrixXcd h3 = -1.0 / (4 * g2) * (pp("XX") + pp("YY")) -
                   (5 * g2 / 6.0 - 1.0 / (8 * g2)) * pp("ZZ");
    s.terms = {h - h2 - h3, h2, h3};
    s.electric = 0.5 * g2 * op.electric_values();
  } else if (name == "twoplaq133pp") {
    auto g2p = LatticeGeometry::two_plaquette_pbc();
    auto op = build_global_hamiltonian(
        g2p, Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}}), +1, +1);
    MatrixXcd h = op.dense(g);
    MatrixXcd h2 = (1.0 / (8 * g2) - g2 / 3.0) * pp("ZZ") -
                   1.0 / (18 * std::sqrt(2.0) * g2) * (pp("XX") + pp("YY"));
    MatrixXcd h3 = 1.0 / (6 * std::sqrt(2.0) * g2) * pp("XZ") - 1.0 / (3 * g2) * pp("ZX");
    s.terms = {h - h2 - h3, h2, h3};
    s.electric = 0.5 * g2 * op.electric_values();
  } else {
    throw std::invalid_argument("named_scheme: unknown scheme " + name);
  }
  return s;
}

TrotterScheme even_odd_scheme(const OperatorMatrix& op, double g, int order) {
  TrotterScheme s;
  s.order = order;
  const int d = op.dim();
  MatrixXcd h = op.dense(g);
  MatrixXcd diag = MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = h(i, i);
  s.terms = {diag, h - diag};
  s.electric = 0.5 * g * g * op.electric_values();
  return s;
}

Trajectory trotter_evolve(const TrotterScheme& s, const VectorXcd& psi0, double dt,
                          int n_steps) {
  Trajectory traj;
  MatrixXcd u = s.step(dt);
  VectorXcd psi = psi0;
  for (int k = 0; k <= n_steps; ++k) {
    traj.times.push_back(k * dt);
    traj.persistence.push_back(std::norm(psi0.dot(psi)));
    traj.electric.push_back(std::real(psi.dot(s.electric.asDiagonal() * psi)));
    if (k < n_steps) psi = u * psi;
  }
  return traj;
}

Trajectory trotter_fixed_steps_trace(const TrotterScheme& s, const VectorXcd& psi0,
                                     const std::vector<double>& times, int n_steps) {
  Trajectory traj;
  traj.times = times;
  for (double t : times) {
    VectorXcd psi = psi0;
    if (t != 0.0) {
      MatrixXcd u = s.step(t / n_steps);
      for (int k = 0; k < n_steps; ++k) psi = u * psi;
    }
    traj.persistence.push_back(std::norm(psi0.dot(psi)));
    traj.electric.push_back(std::real(psi.dot(s.electric.asDiagonal() * psi)));
  }
  return traj;
}

namespace {

Extremum refine(const std::vector<double>& t, const std::vector<double>& v, size_t i) {
  // vertex of the parabola through (t[i-1],v[i-1]), (t[i],v[i]), (t[i+1],v[i+1])
  double a = t[i - 1], b = t[i], c = t[i + 1];
  double fa = v[i - 1], fb = v[i], fc = v[i + 1];
  double denom = (b - a) * (fb - fc) - (b - c) * (fb - fa);
  if (std::abs(denom) < 1e-300) return {b, fb};
  double tstar = b - 0.5 * ((b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa)) /
                         denom;
  // quadratic interpolation of the value at tstar
  double l0 = (tstar - b) * (tstar - c) / ((a - b) * (a - c));
  double l1 = (tstar - a) * (tstar - c) / ((b - a) * (b - c));
  double l2 = (tstar - a) * (tstar - b) / ((c - a) * (c - b));
  return {tstar, fa * l0 + fb * l1 + fc * l2};
}

}  // namespace

ExtremaResult find_first_extrema(const std::vector<double>& times,
                                 const std::vector<double>& values, bool do_refine) {
  ExtremaResult res;
  const size_t n = values.size();
  size_t i = 1;
  for (; i + 1 < n; ++i)
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) {
      res.first_max = do_refine ? refine(times, values, i) : Extremum{times[i], values[i]};
      break;
    }
  if (!res.first_max) return res;
  for (++i; i + 1 < n; ++i)
    if (values[i] < values[i - 1] && values[i] <= values[i + 1]) {
      res.first_min = do_refine ? refine(times, values, i) : Extremum{times[i], values[i]};
      break;
    }
  return res;
}

std::vector<double> extrema_scan_times(double g, double t_max) {
  const double dt = 0.005 / (g * g);
  std::vector<double> t;
  for (double x = 0; x <= t_max; x += dt) t.push_back(x);
  return t;
}

double one_plaquette_mass_gap(int lambda, double g, bool parity_even) {
  auto op = one_plaquette_hamiltonian(Truncation::lambda(lambda));
  if (parity_even) op = color_parity_reduce(op, Truncation::lambda(lambda).admitted());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(op.dense(g));
  return es.eigenvalues()(1) - es.eigenvalues()(0);
}

double one_plaquette_plaquette_vev(int lambda, double g) {
  auto op = one_plaquette_hamiltonian(Truncation::lambda(lambda));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(op.dense(g));
  VectorXd gs = es.eigenvectors().col(0);
  return gs.dot(op.magnetic_dense() * gs);
}

double one_plaquette_electric_at(int lambda, double g, double t) {
  auto op = one_plaquette_hamiltonian(Truncation::lambda(lambda));
  VectorXcd psi0 = VectorXcd::Zero(op.dim());
  psi0(0) = 1.0;
  auto traj = exact_evolve(op, g, psi0, {t});
  return traj.electric[0];
}

std::map<Irrep, double, IrrepOrder> ground_state_amplitudes(int lambda, double g) {
  auto trunc = Truncation::lambda(lambda);
  auto op = one_plaquette_hamiltonian(trunc);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(op.dense(g));
  VectorXd gs = es.eigenvectors().col(0);
  int dominant = 0;
  for (int i = 1; i < gs.size(); ++i)
    if (std::abs(gs(i)) > std::abs(gs(dominant))) dominant = i;
  if (gs(dominant) < 0) gs = -gs;
  std::map<Irrep, double, IrrepOrder> out;
  auto irreps = trunc.admitted();
  for (int i = 0; i < static_cast<int>(irreps.size()); ++i) out[irreps[i]] = gs(i);
  return out;
}

std::vector<SweepRow> convergence_sweep(StaticObservable obs,
                                        const std::vector<double>& gs,
                                        const std::vector<int>& lambdas, int lambda_ref,
                                        double t, int threads) {
  auto eval = [&](int lambda, double g) {
    switch (obs) {
      case StaticObservable::MassGap: return one_plaquette_mass_gap(lambda, g, false);
      case StaticObservable::MassGapParityEven:
        return one_plaquette_mass_gap(lambda, g, true);
      case StaticObservable::PlaquetteVEV: return one_plaquette_plaquette_vev(lambda, g);
      case StaticObservable::ElectricEnergyAt:
        return one_plaquette_electric_at(lambda, g, t);
    }
    return 0.0;
  };

  std::vector<SweepRow> rows(gs.size() * lambdas.size());
  unsigned n_threads = threads > 0 ? threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, rows.size()));
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < rows.size(); k = next++) {
      size_t gi = k / lambdas.size(), li = k % lambdas.size();
      double ref = eval(lambda_ref, gs[gi]);
      double val = eval(lambdas[li], gs[gi]);
      rows[k] = {gs[gi], lambdas[li], val,
                 ref == 0.0 ? 0.0 : 100.0 * std::abs(val - ref) / std::abs(ref)};
    }
  };
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  out << "# schema=1\n";
  out << "g,lambda,observable,deviation_percent\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%d,%.15g,%.12g\n", r.g, r.lambda, r.value,
                  r.deviation_percent);
    out << buf;
  }
}

}  // namespace su3ym
