#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <string>
#include <vector>

#include "su3ym/clebsch.hpp"
#include "su3ym/lattice.hpp"

namespace su3ym {

/// H(g) = (g^2/2) diag(electric) + (1/(2 g^2)) (constant * I - magnetic),
/// where `magnetic` holds the matrix elements of box + box-dagger.
struct OperatorMatrix {
  std::vector<Rational> electric_diag;
  Eigen::SparseMatrix<double> magnetic;
  double constant = 0.0;
  std::vector<std::string> labels;

  int dim() const { return static_cast<int>(electric_diag.size()); }
  Eigen::MatrixXd dense(double g) const;
  Eigen::VectorXd electric_values() const;  // Casimir sums, no g factor
  Eigen::MatrixXd magnetic_dense() const;
};

struct PlaquetteME {
  double box = 0.0;
  double box_dagger = 0.0;
};

/// Matrix element of the plaquette operator between two physical
/// configurations; (0,0) for any disallowed transition.
PlaquetteME plaquette_matrix_element(const LatticeGeometry& g, int plaquette,
                                     const LinkConfig& cfg_out, const LinkConfig& cfg_in);

struct HamiltonianOptions {
  /// Coefficient of I/(2g^2); the explicit reference matrices carry a single
  /// +6 regardless of the plaquette count.
  double constant = 6.0;
  /// Optional global cutoff on the total electric Casimir of a basis config.
  std::optional<Rational> casimir_cutoff;
};

/// Hamiltonian over an explicit configuration basis.
OperatorMatrix build_hamiltonian(const std::vector<LinkConfig>& basis,
                                 const LatticeGeometry& g,
                                 const HamiltonianOptions& opt = {});

/// Projection of a configuration-basis operator onto symmetry-adapted states.
OperatorMatrix project_operator(const OperatorMatrix& op,
                                const std::vector<LinkConfig>& basis,
                                const std::vector<GlobalState>& states);

/// Convenience: enumerate, singlet-filter, project, build.
OperatorMatrix build_global_hamiltonian(const LatticeGeometry& g, const Truncation& t,
                                        int cp, int tr, int rf = 0,
                                        const HamiltonianOptions& opt = {});

/// One-plaquette Hamiltonian over the (p,q) grid admitted by the truncation;
/// electric diagonal 4*C2, unit magnetic matrix elements along the plaquette
/// connectivity.
OperatorMatrix one_plaquette_hamiltonian(const Truncation& trunc,
                                         const HamiltonianOptions& opt = {});

/// Projection onto positive color parity: |R+> = (|R> + |Rbar>)/sqrt(2) plus
/// real irreps.  Basis keeps the canonical order of the representatives.
OperatorMatrix color_parity_reduce(const OperatorMatrix& op,
                                   const std::vector<Irrep>& basis);

/// Reorder the basis of an operator by an index permutation (new <- old).
OperatorMatrix reorder_operator(const OperatorMatrix& op, const std::vector<int>& perm);

/// JSON export: labels, electric diagonal, magnetic triplets.
void dump_operator_json(const OperatorMatrix& op, const std::string& path);
/// Dense text rendering for golden-file comparisons (dims <= 20).
std::string render_operator(const OperatorMatrix& op);

}  // namespace su3ym
