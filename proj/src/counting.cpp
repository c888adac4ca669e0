#include "su3ym/counting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "su3ym/hamiltonian.hpp"
#include "su3ym/lattice.hpp"

namespace su3ym {

namespace {

std::vector<Irrep> cutoff_irreps(int lambda) {
  std::vector<Irrep> out;
  for (int p = 0; p <= lambda; ++p)
    for (int q = 0; q <= lambda; ++q) out.push_back({p, q});
  return out;
}

// support bitmaps over the (p,q) grid up to bound
struct SupportMap {
  int bound = 0;
  std::vector<std::vector<uint64_t>> bits;  // per pair index
  int words = 0;

  int id(Irrep r) const { return r.p * (bound + 1) + r.q; }
};

}  // namespace

long long count_3pt_singlets(int lambda) {
  auto irreps = cutoff_irreps(lambda);
  long long count = 0;
  for (const auto& a : irreps)
    for (const auto& b : irreps) {
      // triple (a, b, r3) holds a singlet iff conj(r3) shows up in a (x) b
      for (const auto& [r, m] : tensor_decompose(a, b))
        if (r.p <= lambda && r.q <= lambda) ++count;
    }
  return count;
}

long long count_4pt_singlets(int lambda) {
  auto irreps = cutoff_irreps(lambda);
  const int n = static_cast<int>(irreps.size());
  SupportMap sup;
  sup.bound = 4 * lambda;
  sup.words = (sup.id({4 * lambda, 4 * lambda}) + 64) / 64;

  // support of r1 (x) r2 and the conjugated support, per ordered pair
  std::vector<std::vector<uint64_t>> direct(n * n), conjd(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<uint64_t> d(sup.words, 0), c(sup.words, 0);
      for (const auto& [r, m] : tensor_decompose(irreps[i], irreps[j])) {
        int idd = sup.id(r), idc = sup.id(conjugate(r));
        d[idd / 64] |= 1ULL << (idd % 64);
        c[idc / 64] |= 1ULL << (idc % 64);
      }
      direct[i * n + j] = std::move(d);
      conjd[i * n + j] = std::move(c);
    }

  long long count = 0;
  for (int ab = 0; ab < n * n; ++ab)
    for (int cd = 0; cd < n * n; ++cd) {
      const auto& x = direct[ab];
      const auto& y = conjd[cd];
      for (int w = 0; w < sup.words; ++w)
        if (x[w] & y[w]) {
          ++count;
          break;
        }
    }
  return count;
}

long long coleman_completions(Irrep r2, Irrep r3) {
  long long total = 0;
  for (int i = 0; i <= std::min(r2.p, r3.q); ++i)
    for (int j = 0; j <= std::min(r3.p, r2.q); ++j)
      total += 1 + std::min(r2.p - i, r3.p - j) + std::min(r2.q - j, r3.q - i);
  return total;
}

long long count_3pt_completions(int lambda) {
  long long total = 0;
  for (const auto& a : cutoff_irreps(lambda))
    for (const auto& b : cutoff_irreps(lambda)) total += coleman_completions(a, b);
  return total;
}

PlaquetteCount count_plaquette_physical(const Truncation& trunc) {
  auto g = LatticeGeometry::plaquette_operator();
  auto configs = enumerate_physical(g, trunc);

  PlaquetteCount out;
  out.states = static_cast<long long>(configs.size());

  std::set<LinkConfig, bool (*)(const LinkConfig&, const LinkConfig&)> pool(config_less);
  for (const auto& c : configs) pool.insert(c);

  const auto& p = g.plaquettes[0];
  for (const auto& c : configs) {
    for (Irrep rt : tensor_fundamental(c[p.r_t], FundDirection::AntiFund))
      for (Irrep rb : tensor_fundamental(c[p.r_b], FundDirection::Fund))
        for (Irrep ql : tensor_fundamental(c[p.q_l], FundDirection::AntiFund))
          for (Irrep qr : tensor_fundamental(c[p.q_r], FundDirection::Fund)) {
            LinkConfig next = c;
            next[p.r_t] = rt;
            next[p.r_b] = rb;
            next[p.q_l] = ql;
            next[p.q_r] = qr;
            if (!trunc.admits(rt) || !trunc.admits(rb) || !trunc.admits(ql) ||
                !trunc.admits(qr))
              continue;
            if (!pool.count(next)) continue;
            auto me = plaquette_matrix_element(g, 0, next, c);
            if (me.box != 0.0) ++out.nonzero_mes;
          }
  }
  return out;
}

FitReport fit_scaling(const ScalingTable& table, int max_degree) {
  const int n = static_cast<int>(table.rows.size());
  if (n < 2) throw std::invalid_argument("fit_scaling: need at least two rows");
  for (int i = 1; i < n; ++i)
    if (table.rows[i].second <= table.rows[i - 1].second)
      throw std::invalid_argument("fit_scaling: counts must increase strictly");

  FitReport rep;
  rep.max_degree = max_degree;
  double xscale = static_cast<double>(table.rows.back().first);
  if (xscale == 0) xscale = 1;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = static_cast<double>(table.rows[i].second);

  for (int deg = 1; deg <= max_degree; ++deg) {
    const int cols = std::min(deg, n - 1) + 1;
    Eigen::MatrixXd a(n, cols);
    for (int i = 0; i < n; ++i) {
      double x = table.rows[i].first / xscale;
      double acc = 1.0;
      for (int c = 0; c < cols; ++c) {
        a(i, c) = acc;
        acc *= x;
      }
    }
    Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
    double resid = (a * coef - y).norm();
    rep.residual_l2.push_back(resid);
    std::vector<double> unscaled(cols);
    for (int c = 0; c < cols; ++c) unscaled[c] = coef(c) / std::pow(xscale, c);
    rep.coefficients.push_back(unscaled);
  }

  // plateau: the first degree whose residual never improves by more than 2x
  // afterwards; residuals at the double-precision floor count as equal
  const double floor = 1e-12 * y.norm();
  rep.plateau_degree = max_degree;
  for (int d = 1; d <= max_degree; ++d) {
    bool flat = true;
    for (int d2 = d + 1; d2 <= max_degree; ++d2)
      if (std::max(rep.residual_l2[d2 - 1], floor) <
          0.5 * std::max(rep.residual_l2[d - 1], floor)) {
        flat = false;
        break;
      }
    if (flat) {
      rep.plateau_degree = d;
      break;
    }
  }
  return rep;
}

void write_fit_json(const FitReport& report, const std::string& path) {
  nlohmann::json j;
  j["max_degree"] = report.max_degree;
  j["residual_l2"] = report.residual_l2;
  j["coefficients"] = report.coefficients;
  j["plateau_degree"] = report.plateau_degree;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

void write_table_csv(const ScalingTable& table, const std::string& path) {
  std::ofstream out(path);
  out << "# schema=1\n";
  out << "lambda,count\n";
  for (const auto& [l, c] : table.rows) out << l << "," << c << "\n";
}

long long qubit_estimate(int sites_per_dim, int dims, int lambda) {
  if (lambda <= 0) return 0;
  double sites = std::pow(static_cast<double>(sites_per_dim), dims);
  return static_cast<long long>(std::ceil(2.0 * sites * std::log2(lambda + 1.0)));
}

}  // namespace su3ym
