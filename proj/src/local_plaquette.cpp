#include "su3ym/local_plaquette.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace su3ym {

namespace {

const std::complex<double> kI(0.0, 1.0);

std::array<Irrep, 4> conj4(const std::array<Irrep, 4>& a) {
  return {conjugate(a[0]), conjugate(a[1]), conjugate(a[2]), conjugate(a[3])};
}

// Parity/conjugation images of a control sector (C1,C2,C3,C4).
std::array<Irrep, 4> horizontal_image(const std::array<Irrep, 4>& c) {
  return {conjugate(c[2]), conjugate(c[3]), conjugate(c[0]), conjugate(c[1])};
}
std::array<Irrep, 4> vertical_image(const std::array<Irrep, 4>& c) {
  return {c[1], c[0], c[3], c[2]};
}

bool sector_less(const std::array<Irrep, 4>& a, const std::array<Irrep, 4>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      irrep_less);
}

}  // namespace

std::vector<ControlSector> enumerate_control_sectors(const Truncation& trunc) {
  auto g = LatticeGeometry::plaquette_operator();
  auto configs = enumerate_physical(g, trunc);
  std::set<std::array<Irrep, 4>, bool (*)(const std::array<Irrep, 4>&,
                                          const std::array<Irrep, 4>&)>
      found(sector_less);
  for (const auto& c : configs) found.insert({c[4], c[5], c[6], c[7]});

  std::vector<ControlSector> sectors;
  std::map<std::array<Irrep, 4>, int,
           bool (*)(const std::array<Irrep, 4>&, const std::array<Irrep, 4>&)>
      orbit_of(sector_less);
  int next_orbit = 0;
  for (const auto& c : found) {
    if (orbit_of.count(c)) continue;
    // close the orbit under the two parities and conjugation
    std::vector<std::array<Irrep, 4>> frontier{c};
    orbit_of[c] = next_orbit;
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (auto img : {horizontal_image(cur), vertical_image(cur), conj4(cur)}) {
        if (found.count(img) && !orbit_of.count(img)) {
          orbit_of[img] = next_orbit;
          frontier.push_back(img);
        }
      }
    }
    ++next_orbit;
  }
  for (const auto& c : found) sectors.push_back({c, orbit_of[c]});
  return sectors;
}

SectorGenerator build_sector_generator(const ControlSector& sector,
                                       const Truncation& trunc) {
  auto g = LatticeGeometry::plaquette_operator();
  auto configs = enumerate_physical(g, trunc);
  std::vector<LinkConfig> members;
  for (const auto& c : configs)
    if (c[4] == sector.c[0] && c[5] == sector.c[1] && c[6] == sector.c[2] &&
        c[7] == sector.c[3])
      members.push_back(c);
  if (members.empty())
    throw std::invalid_argument("build_sector_generator: unphysical control sector");

  SectorGenerator gen;
  gen.sector = sector;
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      auto me = plaquette_matrix_element(g, 0, members[j], members[i]);
      double coeff = me.box + me.box_dagger;
      if (coeff == 0.0) continue;
      SectorTransition t;
      t.coeff = coeff;
      t.from = {members[i][0], members[i][1], members[i][2], members[i][3]};
      t.to = {members[j][0], members[j][1], members[j][2], members[j][3]};
      gen.transitions.push_back(t);
    }
  return gen;
}

int mode_of(const Truncation& trunc, Irrep r) {
  auto irreps = trunc.admitted();
  for (int i = 0; i < static_cast<int>(irreps.size()); ++i)
    if (irreps[i] == r) return i;
  throw std::invalid_argument("mode_of: irrep outside truncation");
}

Eigen::MatrixXcd sector_generator_matrix(const SectorGenerator& gen,
                                         const Truncation& trunc) {
  const int d = static_cast<int>(trunc.admitted().size());
  auto flip = [&](int j, int k) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
    x(j, k) = x(k, j) = 1.0;
    return x;
  };
  const long long total = 1LL * d * d * d * d;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(total, total);
  for (const auto& t : gen.transitions) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int s = 0; s < 4; ++s) {
      int j = mode_of(trunc, t.from[s]), k = mode_of(trunc, t.to[s]);
      Eigen::MatrixXcd x = flip(j, k);
      Eigen::MatrixXcd next(term.rows() * d, term.cols() * d);
      for (int a = 0; a < term.rows(); ++a)
        for (int b = 0; b < term.cols(); ++b)
          next.block(a * d, b * d, d, d) = term(a, b) * x;
      term = std::move(next);
    }
    m += t.coeff * term;
  }
  return m;
}

namespace {

/// Dense unitary on the four active sites, applied where every (site -> mode)
/// constraint in `need` holds.
void apply_controlled_active_unitary(QuditRegister& reg, const Eigen::MatrixXcd& u,
                                     const std::array<int, 4>& active,
                                     const std::map<int, int>& need) {
  const int d = reg.dims[active[0]];
  const int n = static_cast<int>(reg.dims.size());
  std::vector<long long> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * reg.dims[s + 1];

  const long long total = reg.total_dim();
  std::vector<int> levels(n);
  std::vector<long long> gathered(u.rows());
  std::vector<char> visited(total, 0);
  Eigen::VectorXcd block(u.rows());
  for (long long base = 0; base < total; ++base) {
    if (visited[base]) continue;
    long long rem = base;
    for (int s = 0; s < n; ++s) {
      levels[s] = static_cast<int>(rem / stride[s]);
      rem %= stride[s];
    }
    bool on = true;
    for (const auto& [site, mode] : need)
      if (levels[site] != mode) {
        on = false;
        break;
      }
    if (!on) continue;
    // gather the active-subspace block containing this index
    long long anchor = base;
    for (int s = 0; s < 4; ++s) anchor -= levels[active[s]] * stride[active[s]];
    int idx = 0;
    for (int a0 = 0; a0 < d; ++a0)
      for (int a1 = 0; a1 < d; ++a1)
        for (int a2 = 0; a2 < d; ++a2)
          for (int a3 = 0; a3 < d; ++a3, ++idx) {
            long long pos = anchor + a0 * stride[active[0]] + a1 * stride[active[1]] +
                            a2 * stride[active[2]] + a3 * stride[active[3]];
            gathered[idx] = pos;
            visited[pos] = 1;
            block(idx) = reg.amps(pos);
          }
    block = u * block;
    for (size_t i = 0; i < gathered.size(); ++i) reg.amps(gathered[i]) = block(i);
  }
}

/// Conflicting duplicate controls mean the sector can never fire.
std::optional<std::map<int, int>> control_requirements(const SectorGenerator& gen,
                                                       const Truncation& trunc,
                                                       const std::array<int, 4>& control) {
  std::map<int, int> need;
  for (int k = 0; k < 4; ++k) {
    int mode = mode_of(trunc, gen.sector.c[k]);
    auto it = need.find(control[k]);
    if (it != need.end() && it->second != mode) return std::nullopt;
    need[control[k]] = mode;
  }
  return need;
}

Eigen::MatrixXcd sector_rotation_unitary(const SectorGenerator& gen,
                                         const Truncation& trunc, double alpha) {
  Eigen::MatrixXcd m = sector_generator_matrix(gen, trunc);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXcd phases(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    phases(i) = std::exp(-kI * alpha * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

void apply_controlled_sector_rotation(QuditRegister& reg, const SectorGenerator& gen,
                                      const Truncation& trunc,
                                      const std::array<int, 4>& active,
                                      const std::array<int, 4>& control, double alpha) {
  auto need = control_requirements(gen, trunc, control);
  if (!need || alpha == 0.0) return;
  apply_controlled_active_unitary(reg, sector_rotation_unitary(gen, trunc, alpha),
                                  active, *need);
}

namespace {

// Single-site basis-change gates aligning mode pair (m,n) onto (j,k).
std::vector<QuditGate> align_gates(int site, int m, int n, int j, int k) {
  std::vector<QuditGate> gates;
  if (m == j && n == k) return gates;
  auto push = [&](int a, int b) {
    QuditGate g;
    g.kind = QuditGate::Kind::X;
    g.site = site;
    g.j = std::min(a, b);
    g.k = std::max(a, b);
    gates.push_back(g);
  };
  // compose at most two flips sending m -> j and n -> k
  if (m == j) {
    push(n, k);
  } else if (n == k) {
    push(m, j);
  } else if (m == k && n == j) {
    push(j, k);
  } else {
    // disjoint or crossing pairs: route through two flips
    if (n == j) {            // (m,n) -> flip(n,k): (m,k) then flip(m,j): (j,k)
      push(n, k);
      push(m, j);
    } else if (m == k) {
      push(m, j);
      push(n, k);
    } else {
      push(m, j);
      push(n, k);
    }
  }
  return gates;
}

}  // namespace

QuditCircuit compile_mode_string_rotation(const std::vector<std::pair<int, int>>& modes,
                                          double angle, int local_dim) {
  const int n = static_cast<int>(modes.size());
  QuditCircuit circ;
  circ.dims.assign(n, local_dim);
  if (n == 1) {
    QuditGate g;
    g.kind = QuditGate::Kind::Givens;
    g.site = 0;
    g.j = modes[0].first;
    g.k = modes[0].second;
    g.angle = angle;
    circ.gates.push_back(g);
    return circ;
  }
  // align every site onto the mode pair of the last site
  const int j = modes[n - 1].first, k = modes[n - 1].second;
  std::vector<QuditGate> pre, post;
  for (int s = 0; s + 1 < n; ++s) {
    auto a = align_gates(s, modes[s].first, modes[s].second, j, k);
    pre.insert(pre.end(), a.begin(), a.end());
    post.insert(post.end(), a.rbegin(), a.rend());
  }
  for (auto& g : pre) circ.gates.push_back(g);

  // chain of controlled flips walking the parity onto the last site
  std::vector<QuditGate> chain;
  for (int s = 0; s + 1 < n; ++s) {
    QuditGate g;
    g.kind = QuditGate::Kind::X;
    g.site = s;
    g.j = j;
    g.k = k;
    g.controls = {{s + 1, k}};
    chain.push_back(g);
  }
  for (auto& g : chain) circ.gates.push_back(g);

  QuditGate rot;
  rot.kind = QuditGate::Kind::Givens;
  rot.site = n - 1;
  rot.j = j;
  rot.k = k;
  rot.phi = 0.0;

  if (local_dim == 2) {
    rot.angle = angle;
    circ.gates.push_back(rot);
  } else {
    // the spectator mode of the leading sites must suspend the rotation
    int ell = 0;
    while (ell == j || ell == k) ++ell;
    QuditGate ory;
    ory.kind = QuditGate::Kind::Y;
    ory.site = n - 1;
    ory.j = j;
    ory.k = k;
    for (int s = 0; s + 1 < n; ++s) ory.or_controls.push_back({s, ell});
    rot.angle = angle / 2;
    circ.gates.push_back(rot);
    circ.gates.push_back(ory);
    circ.gates.push_back(rot);
    circ.gates.push_back(ory);
  }

  for (auto it = chain.rbegin(); it != chain.rend(); ++it) circ.gates.push_back(*it);
  for (auto& g : post) circ.gates.push_back(g);
  return circ;
}

QuditCircuit compile_sector_circuit(const SectorGenerator& gen, const Truncation& trunc,
                                    Encoding encoding, double alpha,
                                    const std::optional<std::array<int, 4>>& active,
                                    const std::optional<std::array<int, 4>>& control) {
  const int d = static_cast<int>(trunc.admitted().size());
  if (encoding == Encoding::SingleQudit && d != 3)
    throw std::invalid_argument("compile_sector_circuit: qutrit lowering needs d = 3");
  if (encoding == Encoding::PQPair && (trunc.lambda_p != 1 || trunc.lambda_q != 1 || d != 3))
    throw std::invalid_argument("compile_sector_circuit: pq lowering defined at lambda 1");

  QuditCircuit circ;
  const int n_sites = encoding == Encoding::SingleQudit ? 4 : 8;
  circ.dims.assign(n_sites, encoding == Encoding::SingleQudit ? 3 : 2);

  for (const auto& t : gen.transitions) {
    std::vector<std::pair<int, int>> modes;
    if (encoding == Encoding::SingleQudit) {
      for (int s = 0; s < 4; ++s) {
        int a = mode_of(trunc, t.from[s]), b = mode_of(trunc, t.to[s]);
        modes.emplace_back(std::min(a, b), std::max(a, b));
      }
    } else {
      // (p,q) pair per link; X01 -> X01 (x) I, X02 -> I (x) X01, X12 -> X01 (x) X01
      for (int s = 0; s < 4; ++s) {
        int a = mode_of(trunc, t.from[s]), b = mode_of(trunc, t.to[s]);
        int lo = std::min(a, b), hi = std::max(a, b);
        bool on_p = (lo == 0 && hi == 1) || (lo == 1 && hi == 2);
        bool on_q = (lo == 0 && hi == 2) || (lo == 1 && hi == 2);
        if (on_p) modes.emplace_back(0, 1);
        else modes.emplace_back(-1, -1);
        if (on_q) modes.emplace_back(0, 1);
        else modes.emplace_back(-1, -1);
      }
    }
    // strip identity slots but remember the site mapping
    std::vector<std::pair<int, int>> active_modes;
    std::vector<int> site_map;
    for (int s = 0; s < static_cast<int>(modes.size()); ++s)
      if (modes[s].first >= 0) {
        active_modes.push_back(modes[s]);
        site_map.push_back(s);
      }
    auto block = compile_mode_string_rotation(active_modes, alpha * t.coeff,
                                              circ.dims[0]);
    for (auto g : block.gates) {
      g.site = site_map[g.site];
      for (auto& c : g.controls) c.site = site_map[c.site];
      for (auto& c : g.or_controls) c.site = site_map[c.site];
      circ.gates.push_back(g);
    }
  }

  // Register-level remapping and sector controls.
  if (active) {
    for (auto& g : circ.gates) {
      g.site = (*active)[g.site];
      for (auto& c : g.controls) c.site = (*active)[c.site];
      for (auto& c : g.or_controls) c.site = (*active)[c.site];
    }
  }
  if (control) {
    for (auto& g : circ.gates)
      if (g.kind == QuditGate::Kind::Givens)
        for (int k = 0; k < 4; ++k)
          g.controls.push_back({(*control)[k], mode_of(trunc, gen.sector.c[k])});
  }
  return circ;
}

namespace {

struct LocalEvolveResult {
  Trajectory traj;
  QuditRegister reg;
};

LocalEvolveResult local_trotter_run(const LatticeGeometry& g, const Truncation& trunc,
                                    double coupling, double dt, int n_steps,
                                    const LocalEvolveOptions& opt) {
  auto irreps = trunc.admitted();
  const int d = static_cast<int>(irreps.size());
  const int n_links = g.n_links;

  QuditRegister reg = QuditRegister::basis_state(std::vector<int>(n_links, d),
                                                 std::vector<int>(n_links, 0));
  const Eigen::VectorXcd psi0 = reg.amps;

  // electric phases and observable per register index
  const long long total = reg.total_dim();
  Eigen::VectorXd electric(total);
  {
    std::vector<double> link_cas(d);
    for (int m = 0; m < d; ++m) link_cas[m] = casimir(irreps[m]).value();
    for (long long idx = 0; idx < total; ++idx) {
      long long rem = idx;
      double sum = 0;
      for (int s = 0; s < n_links; ++s) {
        long long stride = 1;
        for (int s2 = s + 1; s2 < n_links; ++s2) stride *= d;
        sum += link_cas[rem / stride];
        rem %= stride;
      }
      electric(idx) = 0.5 * coupling * coupling * sum;
    }
  }

  // physical subspace for leakage
  std::vector<long long> physical_idx;
  for (const auto& cfg : enumerate_physical(g, trunc)) {
    std::vector<int> levels;
    for (const auto& r : cfg) levels.push_back(mode_of(trunc, r));
    physical_idx.push_back(reg.index_of(levels));
  }

  // sector rotations per plaquette
  auto sectors = enumerate_control_sectors(trunc);
  std::vector<SectorGenerator> gens;
  gens.reserve(sectors.size());
  for (const auto& s : sectors) gens.push_back(build_sector_generator(s, trunc));

  const double alpha_full = -dt / (2 * coupling * coupling);

  std::map<std::pair<size_t, int>, Eigen::MatrixXcd> ucache;
  auto apply_magnetic = [&](const PlaquetteLayout& p, double scale) {
    std::array<int, 4> active{p.r_b, p.q_r, p.r_t, p.q_l};
    std::array<int, 4> control{p.controls[0], p.controls[1], p.controls[2],
                               p.controls[3]};
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      auto need = control_requirements(gens[gi], trunc, control);
      if (!need) continue;
      if (!opt.per_transition) {
        auto key = std::make_pair(gi, scale == 1.0 ? 1 : 0);
        auto it = ucache.find(key);
        if (it == ucache.end())
          it = ucache
                   .emplace(key, sector_rotation_unitary(gens[gi], trunc,
                                                         alpha_full * scale))
                   .first;
        apply_controlled_active_unitary(reg, it->second, active, *need);
      } else {
        auto circ = compile_sector_circuit(gens[gi], trunc, Encoding::SingleQudit,
                                           alpha_full * scale, active, control);
        circ.dims = reg.dims;
        apply_circuit(reg, circ);
      }
    }
  };
  auto apply_electric = [&](double scale) {
    for (long long idx = 0; idx < total; ++idx)
      reg.amps(idx) *= std::exp(-kI * dt * scale * electric(idx));
  };

  Trajectory traj;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.persistence.push_back(std::norm(psi0.dot(reg.amps)));
    traj.electric.push_back(
        std::real(reg.amps.dot(electric.asDiagonal() * reg.amps)));
    double phys = 0;
    for (long long idx : physical_idx) phys += std::norm(reg.amps(idx));
    traj.leakage.push_back(std::max(0.0, 1.0 - phys));
  };

  record(0.0);
  for (int step = 1; step <= n_steps; ++step) {
    if (opt.order == 1) {
      apply_electric(1.0);
      for (const auto& p : g.plaquettes) apply_magnetic(p, 1.0);
    } else {
      apply_electric(0.5);
      for (size_t pi = 0; pi + 1 < g.plaquettes.size(); ++pi)
        apply_magnetic(g.plaquettes[pi], 0.5);
      apply_magnetic(g.plaquettes.back(), 1.0);
      for (size_t pi = g.plaquettes.size() - 1; pi-- > 0;)
        apply_magnetic(g.plaquettes[pi], 0.5);
      apply_electric(0.5);
    }
    record(step * dt);
  }
  return {std::move(traj), std::move(reg)};
}

}  // namespace

Trajectory local_trotter_evolve(const LatticeGeometry& g, const Truncation& trunc,
                                double coupling, double dt, int n_steps,
                                const LocalEvolveOptions& opt) {
  return local_trotter_run(g, trunc, coupling, dt, n_steps, opt).traj;
}

QuditRegister local_trotter_state(const LatticeGeometry& g, const Truncation& trunc,
                                  double coupling, double dt, int n_steps,
                                  const LocalEvolveOptions& opt) {
  return local_trotter_run(g, trunc, coupling, dt, n_steps, opt).reg;
}

}  // namespace su3ym
