#pragma once

#include <array>
#include <optional>
#include <vector>

#include "su3ym/evolution.hpp"
#include "su3ym/hamiltonian.hpp"
#include "su3ym/qudit_circuit.hpp"

namespace su3ym {

/// Configuration of the four links neighboring a plaquette, order (C1,C2,C3,C4).
struct ControlSector {
  std::array<Irrep, 4> c;
  int orbit = 0;  // parity/conjugation class index
  bool operator==(const ControlSector& o) const { return c == o.c; }
};

/// All control sectors hosting at least one physical plaquette state, in
/// deterministic order, grouped into parity/conjugation orbits.
std::vector<ControlSector> enumerate_control_sectors(const Truncation& trunc);

/// One Hermitian term of a sector rotation generator: matrix element `coeff`
/// between the active configurations `from` and `to` (both being irreps of
/// (R_b, Q_r, R_t, Q_l)).
struct SectorTransition {
  double coeff = 0.0;
  std::array<Irrep, 4> from;
  std::array<Irrep, 4> to;
};

struct SectorGenerator {
  ControlSector sector;
  std::vector<SectorTransition> transitions;
};

SectorGenerator build_sector_generator(const ControlSector& sector,
                                       const Truncation& trunc);

/// Mode index of an irrep inside a truncation (canonical irrep order).
int mode_of(const Truncation& trunc, Irrep r);

/// Full gauge-variant-completed generator on the active d^4 space for the
/// qutrit truncation: sum of coeff * X X X X mode-pair strings.
Eigen::MatrixXcd sector_generator_matrix(const SectorGenerator& gen,
                                         const Truncation& trunc);

/// exp(-i alpha G) restricted to register states whose control sites match the
/// sector; identity elsewhere.  `active` and `control` list register sites in
/// (R_b,Q_r,R_t,Q_l) and (C1..C4) order.
void apply_controlled_sector_rotation(QuditRegister& reg, const SectorGenerator& gen,
                                      const Truncation& trunc,
                                      const std::array<int, 4>& active,
                                      const std::array<int, 4>& control, double alpha);

enum class Encoding { SingleQudit, PQPair };

/// Givens-rotation circuit for one sector: one compiled rotation block per
/// transition (the product form used for Trotterized evolution).  The optional
/// control sites attach the sector condition to the rotation gates.
QuditCircuit compile_sector_circuit(const SectorGenerator& gen, const Truncation& trunc,
                                    Encoding encoding, double alpha,
                                    const std::optional<std::array<int, 4>>& active = {},
                                    const std::optional<std::array<int, 4>>& control = {});

/// Circuit for exp(-i angle * XX...X) on explicit mode pairs (one per site);
/// the building block behind compile_sector_circuit.
QuditCircuit compile_mode_string_rotation(const std::vector<std::pair<int, int>>& modes,
                                          double angle, int local_dim);

struct LocalEvolveOptions {
  int order = 1;
  /// exact controlled rotations per sector (default) or per-transition Givens
  /// factorization
  bool per_transition = false;
};

/// Trotterized evolution of the qutrit-per-link register on a geometry,
/// starting from the trivial vacuum; tracks gauge leakage.
Trajectory local_trotter_evolve(const LatticeGeometry& g, const Truncation& trunc,
                                double coupling, double dt, int n_steps,
                                const LocalEvolveOptions& opt = {});

/// Final register after the same evolution.
QuditRegister local_trotter_state(const LatticeGeometry& g, const Truncation& trunc,
                                  double coupling, double dt, int n_steps,
                                  const LocalEvolveOptions& opt = {});

}  // namespace su3ym
