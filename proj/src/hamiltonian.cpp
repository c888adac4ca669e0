#include "su3ym/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace su3ym {

Eigen::MatrixXd OperatorMatrix::dense(double g) const {
  const int d = dim();
  Eigen::MatrixXd h = Eigen::MatrixXd(magnetic) * (-1.0 / (2 * g * g));
  for (int i = 0; i < d; ++i)
    h(i, i) += 0.5 * g * g * electric_diag[i].value() + constant / (2 * g * g);
  return h;
}

Eigen::VectorXd OperatorMatrix::electric_values() const {
  Eigen::VectorXd v(dim());
  for (int i = 0; i < dim(); ++i) v(i) = electric_diag[i].value();
  return v;
}

Eigen::MatrixXd OperatorMatrix::magnetic_dense() const {
  return Eigen::MatrixXd(magnetic);
}

namespace {

constexpr double kMeTol = 1e-12;

const Irrep kFund{1, 0};
const Irrep kAntiFund{0, 1};

// Raw matrix element of box between three-point-vertex wavefunctions with the
// 1/(dim Q_l dim Q_r) normalization; multiplicity-bearing vertices need the
// sqrt(vertex multiplicity) corrections applied by the caller.
double box_me_raw(const LinkConfig& out, const LinkConfig& in, const PlaquetteLayout& p,
                  const LinkConfig& controls_of) {
  const Irrep rt = in[p.r_t], rb = in[p.r_b], ql = in[p.q_l], qr = in[p.q_r];
  const Irrep rtp = out[p.r_t], rbp = out[p.r_b], qlp = out[p.q_l], qrp = out[p.q_r];
  const Irrep c1 = controls_of[0], c2 = controls_of[1], c3 = controls_of[2],
              c4 = controls_of[3];

  if (tensor_multiplicity(rt, kAntiFund, rtp) == 0) return 0.0;
  if (tensor_multiplicity(rb, kFund, rbp) == 0) return 0.0;
  if (tensor_multiplicity(ql, kAntiFund, qlp) == 0) return 0.0;
  if (tensor_multiplicity(qr, kFund, qrp) == 0) return 0.0;

  double pref = std::sqrt(
      static_cast<double>(dimension(rt)) * dimension(rb) /
      (static_cast<double>(dimension(rtp)) * dimension(rbp) * dimension(ql) *
       dimension(qr) * std::pow(static_cast<double>(dimension(qlp)), 3) *
       std::pow(static_cast<double>(dimension(qrp)), 3)));

  double v_ul = nine_r(conjugate(rt), c1, conjugate(ql), conjugate(rtp), conjugate(qlp),
                       kFund);
  if (v_ul == 0.0) return 0.0;
  double v_ur = nine_r(rt, conjugate(c3), conjugate(qr), rtp, conjugate(qrp), kAntiFund);
  if (v_ur == 0.0) return 0.0;
  double v_ll = nine_r(conjugate(rb), c2, ql, conjugate(rbp), qlp, kAntiFund);
  if (v_ll == 0.0) return 0.0;
  double v_lr = nine_r(rb, conjugate(c4), qr, rbp, qrp, kFund);
  if (v_lr == 0.0) return 0.0;

  return pref * v_ul * v_ur * v_ll * v_lr;
}

}  // namespace

PlaquetteME plaquette_matrix_element(const LatticeGeometry& g, int plaquette,
                                     const LinkConfig& cfg_out, const LinkConfig& cfg_in) {
  const PlaquetteLayout& p = g.plaquettes.at(plaquette);

  if (g.kind == LatticeGeometry::Kind::OnePlaquette) {
    // All four links share one irrep; unit matrix elements along r (x) 3.
    PlaquetteME me;
    Irrep in = cfg_in[0], out = cfg_out[0];
    for (auto r : tensor_fundamental(in, FundDirection::Fund))
      if (r == out) me.box = 1.0;
    for (auto r : tensor_fundamental(in, FundDirection::AntiFund))
      if (r == out) me.box_dagger = 1.0;
    return me;
  }

  // Non-active links must agree.
  auto act = p.active();
  for (int l = 0; l < g.n_links; ++l) {
    bool active = std::find(act.begin(), act.end(), l) != act.end();
    if (!active && cfg_out[l] != cfg_in[l]) return {0.0, 0.0};
  }

  LinkConfig controls(4, Irrep{0, 0});
  for (int k = 0; k < 4; ++k)
    if (p.controls[k] >= 0) controls[k] = cfg_in[p.controls[k]];

  // Multiplicity-bearing configurations keep the coherent-sum convention of
  // the reference matrices: the 1/(dim Q_l dim Q_r) prefactor is treated as
  // the state normalization, with no extra sqrt(vertex-multiplicity) factor.
  PlaquetteME me;
  me.box = box_me_raw(cfg_out, cfg_in, p, controls);
  me.box_dagger = box_me_raw(cfg_in, cfg_out, p, controls);
  if (std::abs(me.box) < kMeTol) me.box = 0.0;
  if (std::abs(me.box_dagger) < kMeTol) me.box_dagger = 0.0;
  return me;
}

OperatorMatrix build_hamiltonian(const std::vector<LinkConfig>& basis,
                                 const LatticeGeometry& g,
                                 const HamiltonianOptions& opt) {
  if (basis.empty()) throw std::invalid_argument("build_hamiltonian: empty basis");

  std::vector<LinkConfig> kept;
  for (const auto& c : basis) {
    if (opt.casimir_cutoff) {
      Rational cc = config_casimir(c);
      if (cc.num * opt.casimir_cutoff->den > opt.casimir_cutoff->num * cc.den) continue;
    }
    kept.push_back(c);
  }
  if (kept.empty()) throw std::invalid_argument("build_hamiltonian: cutoff removed all states");

  std::map<LinkConfig, int, bool (*)(const LinkConfig&, const LinkConfig&)> index(
      config_less);
  for (size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<int>(i);

  const int d = static_cast<int>(kept.size());
  OperatorMatrix op;
  op.electric_diag.reserve(d);
  for (const auto& c : kept) {
    op.electric_diag.push_back(config_casimir(c));
    op.labels.push_back(config_label(c));
  }
  op.constant = opt.constant;

  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < d; ++i) {
    for (size_t np = 0; np < g.plaquettes.size(); ++np) {
      const auto& p = g.plaquettes[np];
      // box raises (R_b,Q_r) by 3 and (R_t,Q_l) by 3bar; box-dagger transposes.
      for (bool dagger : {false, true}) {
        auto dir_bar = dagger ? FundDirection::Fund : FundDirection::AntiFund;
        auto dir_fund = dagger ? FundDirection::AntiFund : FundDirection::Fund;
        for (Irrep rt : tensor_fundamental(kept[i][p.r_t], dir_bar))
          for (Irrep rb : tensor_fundamental(kept[i][p.r_b], dir_fund))
            for (Irrep ql : tensor_fundamental(kept[i][p.q_l], dir_bar))
              for (Irrep qr : tensor_fundamental(kept[i][p.q_r], dir_fund)) {
                LinkConfig next = kept[i];
                next[p.r_t] = rt;
                next[p.r_b] = rb;
                next[p.q_l] = ql;
                next[p.q_r] = qr;
                auto it = index.find(next);
                if (it == index.end()) continue;
                int j = it->second;
                auto me = plaquette_matrix_element(g, static_cast<int>(np), next, kept[i]);
                double v = dagger ? me.box_dagger : me.box;
                if (v != 0.0) trip.emplace_back(j, i, v);
              }
      }
    }
  }
  op.magnetic.resize(d, d);
  op.magnetic.setFromTriplets(trip.begin(), trip.end());
  return op;
}

OperatorMatrix project_operator(const OperatorMatrix& op,
                                const std::vector<LinkConfig>& basis,
                                const std::vector<GlobalState>& states) {
  std::map<LinkConfig, int, bool (*)(const LinkConfig&, const LinkConfig&)> index(
      config_less);
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);

  const int d = op.dim();
  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d, n);
  for (int s = 0; s < n; ++s)
    for (const auto& [c, a] : states[s].components) {
      auto it = index.find(c);
      if (it == index.end())
        throw std::invalid_argument("project_operator: state component outside basis");
      u(it->second, s) = a;
    }

  OperatorMatrix out;
  out.constant = op.constant;
  for (int s = 0; s < n; ++s) {
    out.electric_diag.push_back(states[s].casimir_total);
    out.labels.push_back(config_label(states[s].components.front().first));
  }
  Eigen::MatrixXd m = u.transpose() * op.magnetic_dense() * u;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(m(i, j)) > kMeTol) trip.emplace_back(i, j, m(i, j));
  out.magnetic.resize(n, n);
  out.magnetic.setFromTriplets(trip.begin(), trip.end());
  return out;
}

OperatorMatrix build_global_hamiltonian(const LatticeGeometry& g, const Truncation& t,
                                        int cp, int tr, int rf,
                                        const HamiltonianOptions& opt) {
  auto physical = enumerate_physical(g, t);
  auto singlets = global_singlet_filter(physical, g);
  auto states = project_symmetry(singlets, g, cp, tr, rf);
  auto config_op = build_hamiltonian(singlets, g, opt);
  if (opt.casimir_cutoff) {
    // Cutoff applied at the configuration level; drop affected states too.
    std::vector<GlobalState> kept;
    for (auto& s : states) {
      Rational cc = s.casimir_total;
      if (cc.num * opt.casimir_cutoff->den <= opt.casimir_cutoff->num * cc.den)
        kept.push_back(s);
    }
    std::vector<LinkConfig> cfg_kept;
    for (const auto& c : singlets) {
      Rational cc = config_casimir(c);
      if (cc.num * opt.casimir_cutoff->den <= opt.casimir_cutoff->num * cc.den)
        cfg_kept.push_back(c);
    }
    return project_operator(config_op, cfg_kept, kept);
  }
  return project_operator(config_op, singlets, states);
}

OperatorMatrix one_plaquette_hamiltonian(const Truncation& trunc,
                                         const HamiltonianOptions& opt) {
  auto irreps = trunc.admitted();
  const int d = static_cast<int>(irreps.size());
  if (d == 0) throw std::invalid_argument("one_plaquette_hamiltonian: empty truncation");
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < d; ++i) index[{irreps[i].p, irreps[i].q}] = i;

  OperatorMatrix op;
  op.constant = opt.constant;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < d; ++i) {
    op.electric_diag.push_back(casimir(irreps[i]) * 4);
    op.labels.push_back(dim_label(irreps[i]));
    for (Irrep r : tensor_fundamental(irreps[i], FundDirection::Fund)) {
      auto it = index.find({r.p, r.q});
      if (it != index.end()) {
        trip.emplace_back(it->second, i, 1.0);  // box
        trip.emplace_back(i, it->second, 1.0);  // box-dagger
      }
    }
  }
  op.magnetic.resize(d, d);
  op.magnetic.setFromTriplets(trip.begin(), trip.end());
  return op;
}

OperatorMatrix color_parity_reduce(const OperatorMatrix& op,
                                   const std::vector<Irrep>& basis) {
  const int d = op.dim();
  if (static_cast<int>(basis.size()) != d)
    throw std::invalid_argument("color_parity_reduce: basis size mismatch");
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < d; ++i) index[{basis[i].p, basis[i].q}] = i;

  std::vector<int> reps;  // representative index per reduced state
  for (int i = 0; i < d; ++i) {
    Irrep r = basis[i];
    if (r.q > r.p && index.count({r.q, r.p})) continue;  // partner of an earlier rep
    reps.push_back(i);
  }
  const int n = static_cast<int>(reps.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d, n);
  OperatorMatrix out;
  out.constant = op.constant;
  for (int s = 0; s < n; ++s) {
    Irrep r = basis[reps[s]];
    Irrep rc = conjugate(r);
    out.electric_diag.push_back(op.electric_diag[reps[s]]);
    if (rc == r || !index.count({rc.p, rc.q})) {
      u(reps[s], s) = 1.0;
      out.labels.push_back(dim_label(r));
    } else {
      u(reps[s], s) = 1.0 / std::sqrt(2.0);
      u(index[{rc.p, rc.q}], s) = 1.0 / std::sqrt(2.0);
      out.labels.push_back(dim_label(r) + "+");
    }
  }
  Eigen::MatrixXd m = u.transpose() * op.magnetic_dense() * u;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(m(i, j)) > kMeTol) trip.emplace_back(i, j, m(i, j));
  out.magnetic.resize(n, n);
  out.magnetic.setFromTriplets(trip.begin(), trip.end());
  return out;
}

OperatorMatrix reorder_operator(const OperatorMatrix& op, const std::vector<int>& perm) {
  const int d = op.dim();
  OperatorMatrix out;
  out.constant = op.constant;
  Eigen::MatrixXd m = op.magnetic_dense();
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < d; ++i) {
    out.electric_diag.push_back(op.electric_diag[perm[i]]);
    out.labels.push_back(perm[i] < static_cast<int>(op.labels.size()) ? op.labels[perm[i]]
                                                                      : "");
    for (int j = 0; j < d; ++j)
      if (m(perm[i], perm[j]) != 0.0) trip.emplace_back(i, j, m(perm[i], perm[j]));
  }
  out.magnetic.resize(d, d);
  out.magnetic.setFromTriplets(trip.begin(), trip.end());
  return out;
}

void dump_operator_json(const OperatorMatrix& op, const std::string& path) {
  nlohmann::json j;
  j["labels"] = op.labels;
  nlohmann::json diag = nlohmann::json::array();
  for (const auto& r : op.electric_diag) diag.push_back({r.num, r.den});
  j["electric_diag"] = diag;
  j["constant"] = op.constant;
  nlohmann::json trip = nlohmann::json::array();
  for (int k = 0; k < op.magnetic.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.magnetic, k); it; ++it)
      trip.push_back({it.row(), it.col(), it.value()});
  j["magnetic"] = trip;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

std::string render_operator(const OperatorMatrix& op) {
  std::ostringstream os;
  os.precision(12);
  const int d = op.dim();
  Eigen::MatrixXd m = op.magnetic_dense();
  os << "dim " << d << " constant " << op.constant << "\n";
  os << "electric:";
  for (const auto& r : op.electric_diag) os << " " << r.num << "/" << r.den;
  os << "\nmagnetic:\n";
  for (int i = 0; i < d && i < 20; ++i) {
    for (int j = 0; j < d && j < 20; ++j) os << m(i, j) << (j + 1 < d ? " " : "");
    os << "\n";
  }
  return os.str();
}

}  // namespace su3ym
