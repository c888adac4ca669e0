#include "su3ym/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace su3ym {

LatticeGeometry LatticeGeometry::one_plaquette() {
  LatticeGeometry g;
  g.kind = Kind::OnePlaquette;
  g.n_links = 4;
  for (int v = 0; v < 4; ++v)
    g.vertices.push_back({{(v + 3) % 4, true}, {v, false}});
  PlaquetteLayout p;
  p.r_b = 0;
  p.q_r = 1;
  p.r_t = 2;
  p.q_l = 3;
  g.plaquettes.push_back(p);
  return g;
}

// Links 0..5 = (R1, Q1, R2, R3, Q2, R4); horizontal links R, vertical rungs Q.
LatticeGeometry LatticeGeometry::two_plaquette_pbc() {
  LatticeGeometry g;
  g.kind = Kind::TwoPlaquettePBC;
  g.n_links = 6;
  g.vertices = {
      {{3, false}, {0, true}, {4, false}},   // R3 (x) conj(R1) (x) Q2
      {{0, false}, {3, true}, {1, false}},   // R1 (x) conj(R3) (x) Q1
      {{5, false}, {2, true}, {4, true}},    // R4 (x) conj(R2) (x) conj(Q2)
      {{2, false}, {5, true}, {1, true}},    // R2 (x) conj(R4) (x) conj(Q1)
  };
  PlaquetteLayout a;  // active (R_b,Q_r,R_t,Q_l) = (R2,Q1,R1,Q2), controls (R3,R4,R3,R4)
  a.r_b = 2;
  a.q_r = 1;
  a.r_t = 0;
  a.q_l = 4;
  a.controls = {3, 5, 3, 5};
  PlaquetteLayout b;  // translated copy
  b.r_b = 5;
  b.q_r = 4;
  b.r_t = 3;
  b.q_l = 1;
  b.controls = {0, 2, 0, 2};
  g.plaquettes = {a, b};
  return g;
}

// Links 0..7 = (R_b, Q_r, R_t, Q_l, C1, C2, C3, C4).
LatticeGeometry LatticeGeometry::plaquette_operator() {
  LatticeGeometry g;
  g.kind = Kind::PlaquetteOperator;
  g.n_links = 8;
  g.vertices = {
      {{4, false}, {2, true}, {3, false}},   // C1 (x) conj(R_t) (x) Q_l
      {{2, false}, {6, true}, {1, false}},   // R_t (x) conj(C3) (x) Q_r
      {{5, false}, {0, true}, {3, true}},    // C2 (x) conj(R_b) (x) conj(Q_l)
      {{0, false}, {7, true}, {1, true}},    // R_b (x) conj(C4) (x) conj(Q_r)
  };
  PlaquetteLayout p;
  p.r_b = 0;
  p.q_r = 1;
  p.r_t = 2;
  p.q_l = 3;
  p.controls = {4, 5, 6, 7};
  g.plaquettes.push_back(p);
  return g;
}

bool config_less(const LinkConfig& a, const LinkConfig& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      irrep_less);
}

std::string config_label(const LinkConfig& c) {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += " ";
    s += dim_label(c[i]);
  }
  return s;
}

int vertex_singlet_multiplicity(const std::vector<Irrep>& irreps,
                                const std::vector<bool>& incoming) {
  return singlet_multiplicity(irreps, incoming);
}

namespace {

int vertex_multiplicity(const LatticeGeometry& g, int v, const LinkConfig& c) {
  std::vector<Irrep> irreps;
  std::vector<bool> incoming;
  for (const auto& leg : g.vertices[v]) {
    irreps.push_back(c[leg.link]);
    incoming.push_back(leg.incoming);
  }
  return vertex_singlet_multiplicity(irreps, incoming);
}

}  // namespace

bool config_physical(const LatticeGeometry& g, const LinkConfig& c) {
  for (size_t v = 0; v < g.vertices.size(); ++v)
    if (vertex_multiplicity(g, static_cast<int>(v), c) == 0) return false;
  return true;
}

long long config_vertex_multiplicity(const LatticeGeometry& g, const LinkConfig& c) {
  long long m = 1;
  for (size_t v = 0; v < g.vertices.size(); ++v)
    m *= vertex_multiplicity(g, static_cast<int>(v), c);
  return m;
}

std::vector<LinkConfig> enumerate_physical(const LatticeGeometry& g,
                                           const Truncation& trunc) {
  const auto choices = trunc.admitted();
  // A vertex can be checked once its highest-index link is assigned.
  std::vector<std::vector<int>> check_at(g.n_links);
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int last = 0;
    for (const auto& leg : g.vertices[v]) last = std::max(last, leg.link);
    check_at[last].push_back(static_cast<int>(v));
  }

  std::vector<LinkConfig> out;
  LinkConfig cur(g.n_links, Irrep{0, 0});
  auto recurse = [&](auto&& self, int link) -> void {
    if (link == g.n_links) {
      out.push_back(cur);
      return;
    }
    for (const Irrep& r : choices) {
      cur[link] = r;
      bool ok = true;
      for (int v : check_at[link])
        if (vertex_multiplicity(g, v, cur) == 0) {
          ok = false;
          break;
        }
      if (ok) self(self, link + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

Rational config_casimir(const LinkConfig& c) {
  Rational total(0);
  for (const auto& r : c) total = total + casimir(r);
  return total;
}

namespace {

// Candidate plaquette moves: each active link steps by one fundamental index,
// box raising (R_t, Q_l) with 3bar and (R_b, Q_r) with 3, box-dagger the
// conjugate pattern.  Controls are untouched.
std::vector<LinkConfig> plaquette_moves(const LatticeGeometry& g, const LinkConfig& c) {
  std::vector<LinkConfig> moves;
  for (const auto& p : g.plaquettes) {
    for (bool dagger : {false, true}) {
      auto dir_bar = dagger ? FundDirection::Fund : FundDirection::AntiFund;
      auto dir_fund = dagger ? FundDirection::AntiFund : FundDirection::Fund;
      for (Irrep rt : tensor_fundamental(c[p.r_t], dir_bar))
        for (Irrep rb : tensor_fundamental(c[p.r_b], dir_fund))
          for (Irrep ql : tensor_fundamental(c[p.q_l], dir_bar))
            for (Irrep qr : tensor_fundamental(c[p.q_r], dir_fund)) {
              LinkConfig next = c;
              next[p.r_t] = rt;
              next[p.r_b] = rb;
              next[p.q_l] = ql;
              next[p.q_r] = qr;
              moves.push_back(std::move(next));
            }
    }
  }
  return moves;
}

}  // namespace

std::vector<LinkConfig> global_singlet_filter(const std::vector<LinkConfig>& configs,
                                              const LatticeGeometry& g) {
  if (configs.empty()) return {};
  if (g.kind == LatticeGeometry::Kind::OnePlaquette) return configs;
  std::set<LinkConfig, bool (*)(const LinkConfig&, const LinkConfig&)> pool(
      config_less);
  for (const auto& c : configs) pool.insert(c);

  LinkConfig vacuum(configs[0].size(), Irrep{0, 0});
  if (!pool.count(vacuum)) return {};

  std::set<LinkConfig, bool (*)(const LinkConfig&, const LinkConfig&)> seen(
      config_less);
  std::vector<LinkConfig> frontier{vacuum};
  seen.insert(vacuum);
  while (!frontier.empty()) {
    std::vector<LinkConfig> next;
    for (const auto& c : frontier)
      for (auto& m : plaquette_moves(g, c))
        if (pool.count(m) && !seen.count(m)) {
          seen.insert(m);
          next.push_back(m);
        }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

LinkConfig map_color_parity(const LatticeGeometry&, const LinkConfig& c) {
  LinkConfig out = c;
  for (auto& r : out) r = conjugate(r);
  return out;
}

LinkConfig map_translation(const LatticeGeometry& g, const LinkConfig& c) {
  if (g.kind != LatticeGeometry::Kind::TwoPlaquettePBC)
    throw std::invalid_argument("translation map needs the two-plaquette geometry");
  return {c[3], c[4], c[5], c[0], c[1], c[2]};
}

LinkConfig map_reflection(const LatticeGeometry& g, const LinkConfig& c) {
  if (g.kind != LatticeGeometry::Kind::TwoPlaquettePBC)
    throw std::invalid_argument("reflection map needs the two-plaquette geometry");
  // Horizontal-axis flip: top and bottom rows trade places, rungs reverse.
  return {c[2], conjugate(c[1]), c[0], c[5], conjugate(c[4]), c[3]};
}

std::vector<GlobalState> project_symmetry(const std::vector<LinkConfig>& configs,
                                          const LatticeGeometry& g, int cp, int tr,
                                          int rf) {
  struct Op {
    LinkConfig (*map)(const LatticeGeometry&, const LinkConfig&);
    int sign;
  };
  std::vector<Op> gens;
  gens.push_back({&map_color_parity, cp});
  if (g.kind == LatticeGeometry::Kind::TwoPlaquettePBC) {
    gens.push_back({&map_translation, tr});
    if (rf != 0) gens.push_back({&map_reflection, rf});
  }

  std::map<LinkConfig, int, bool (*)(const LinkConfig&, const LinkConfig&)> index(
      config_less);
  for (size_t i = 0; i < configs.size(); ++i) index[configs[i]] = static_cast<int>(i);

  std::vector<GlobalState> states;
  std::vector<bool> used(configs.size(), false);
  for (size_t seed = 0; seed < configs.size(); ++seed) {
    if (used[seed]) continue;
    // Accumulate sum_g chi(g) |g(seed)> over the group generated by gens.
    std::map<int, double> amp;
    const size_t n_gens = gens.size();
    for (size_t mask = 0; mask < (1u << n_gens); ++mask) {
      LinkConfig c = configs[seed];
      double sign = 1.0;
      for (size_t k = 0; k < n_gens; ++k)
        if (mask & (1u << k)) {
          c = gens[k].map(g, c);
          sign *= gens[k].sign;
        }
      auto it = index.find(c);
      if (it == index.end())
        throw std::logic_error("symmetry map left the configuration set");
      amp[it->second] += sign;
    }
    double norm2 = 0;
    for (auto& [i, a] : amp) norm2 += a * a;
    for (auto& [i, a] : amp) used[i] = true;
    if (norm2 < 1e-12) continue;

    GlobalState s;
    s.cp_sign = cp;
    s.tr_sign = tr;
    s.rf_sign = (g.kind == LatticeGeometry::Kind::TwoPlaquettePBC) ? rf : 0;
    double norm = std::sqrt(norm2);
    for (auto& [i, a] : amp)
      if (std::abs(a) > 1e-12) s.components.push_back({configs[i], a / norm});
    std::sort(s.components.begin(), s.components.end(),
              [](const auto& x, const auto& y) { return config_less(x.first, y.first); });
    // Sign anchor: positive amplitude on the heaviest-leading component.
    auto heavy_less = [](const LinkConfig& x, const LinkConfig& y) {
      auto heavier = [](Irrep a, Irrep b) {
        long long ca = casimir3(a), cb = casimir3(b);
        if (ca != cb) return ca > cb;
        if (a.p != b.p) return a.p > b.p;
        return a.q > b.q;
      };
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                          heavier);
    };
    const auto* anchor = &s.components.front();
    for (const auto& comp : s.components)
      if (heavy_less(comp.first, anchor->first)) anchor = &comp;
    if (anchor->second < 0)
      for (auto& [c, a] : s.components) a = -a;
    s.casimir_total = config_casimir(s.components.front().first);
    states.push_back(std::move(s));
  }

  std::sort(states.begin(), states.end(), [](const GlobalState& a, const GlobalState& b) {
    long long ca = a.casimir_total.num * b.casimir_total.den;
    long long cb = b.casimir_total.num * a.casimir_total.den;
    if (ca != cb) return ca < cb;
    return config_less(a.components.front().first, b.components.front().first);
  });
  return states;
}

void dump_basis_csv(const std::vector<GlobalState>& states, const std::string& path) {
  std::ofstream out(path);
  out << "# schema=1\n";
  out << "state,casimir,component,amplitude\n";
  for (size_t i = 0; i < states.size(); ++i)
    for (const auto& [c, a] : states[i].components) {
      out << i << "," << states[i].casimir_total.num << "/" << states[i].casimir_total.den
          << "," << config_label(c) << "," << a << "\n";
    }
}

}  // namespace su3ym
