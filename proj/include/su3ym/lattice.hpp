#pragma once

#include <array>
#include <string>
#include <vector>

#include "su3ym/irrep.hpp"

namespace su3ym {

/// One oriented attachment of a link to a vertex; incoming legs enter the
/// Gauss-law product conjugated.
struct VertexLeg {
  int link = 0;
  bool incoming = false;
};

/// Active links are listed in the operator order |R_b>|Q_r>|R_t>|Q_l>;
/// controls in the order (C1,C2,C3,C4), -1 when a plaquette has none.
struct PlaquetteLayout {
  int r_b = -1, q_r = -1, r_t = -1, q_l = -1;
  std::array<int, 4> controls{-1, -1, -1, -1};
  std::array<int, 4> active() const { return {r_b, q_r, r_t, q_l}; }
};

struct LatticeGeometry {
  enum class Kind { OnePlaquette, TwoPlaquettePBC, PlaquetteOperator };
  Kind kind = Kind::OnePlaquette;
  int n_links = 0;
  std::vector<std::vector<VertexLeg>> vertices;
  std::vector<PlaquetteLayout> plaquettes;

  static LatticeGeometry one_plaquette();
  static LatticeGeometry two_plaquette_pbc();
  /// Single plaquette with its four neighboring control links (8 links, open).
  static LatticeGeometry plaquette_operator();
};

using LinkConfig = std::vector<Irrep>;

bool config_less(const LinkConfig& a, const LinkConfig& b);
std::string config_label(const LinkConfig& c);

/// Multiplicity of the color singlet among oriented irreps meeting at a vertex.
int vertex_singlet_multiplicity(const std::vector<Irrep>& irreps,
                                const std::vector<bool>& incoming);

bool config_physical(const LatticeGeometry& g, const LinkConfig& c);

/// Product of the vertex singlet multiplicities (>= 1 for a physical config).
long long config_vertex_multiplicity(const LatticeGeometry& g, const LinkConfig& c);

/// All Gauss-law-satisfying assignments, lexicographic in the canonical irrep
/// order per link.
std::vector<LinkConfig> enumerate_physical(const LatticeGeometry& g,
                                           const Truncation& trunc);

/// Keeps the zero-winding sector: configs reachable from the trivial vacuum
/// through plaquette moves.
std::vector<LinkConfig> global_singlet_filter(const std::vector<LinkConfig>& configs,
                                              const LatticeGeometry& g);

/// Total electric Casimir of a configuration (sum over links).
Rational config_casimir(const LinkConfig& c);

// Symmetry maps of the two-plaquette system.
LinkConfig map_color_parity(const LatticeGeometry& g, const LinkConfig& c);
LinkConfig map_translation(const LatticeGeometry& g, const LinkConfig& c);
LinkConfig map_reflection(const LatticeGeometry& g, const LinkConfig& c);

struct GlobalState {
  std::vector<std::pair<LinkConfig, double>> components;  // lexicographically sorted
  int cp_sign = 1;
  int tr_sign = 1;
  int rf_sign = 0;  // 0 when reflection was not projected
  Rational casimir_total;
};

/// Symmetry-adapted combinations with the requested signs; rf = 0 skips the
/// reflection projection.  States come out ordered by (Casimir, first config).
std::vector<GlobalState> project_symmetry(const std::vector<LinkConfig>& configs,
                                          const LatticeGeometry& g, int cp, int tr,
                                          int rf = 0);

/// CSV dump: one row per state listing components and amplitudes.
void dump_basis_csv(const std::vector<GlobalState>& states, const std::string& path);

}  // namespace su3ym
