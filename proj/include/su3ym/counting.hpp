#pragma once

#include <string>
#include <utility>
#include <vector>

#include "su3ym/irrep.hpp"

namespace su3ym {

/// Ordered irrep triples with p,q <= lambda whose product contains a singlet.
long long count_3pt_singlets(int lambda);
/// Ordered 4-tuples with at least one singlet in the product.
long long count_4pt_singlets(int lambda);

/// Closed-form total of three-point completions (with multiplicity) for fixed
/// second and third leg.
long long coleman_completions(Irrep r2, Irrep r3);
/// The same quantity summed over all pairs below the cutoff.
long long count_3pt_completions(int lambda);

struct PlaquetteCount {
  long long states = 0;
  long long nonzero_mes = 0;
};

/// Physical 8-link plaquette states and nonvanishing plaquette matrix elements
/// within a truncation.
PlaquetteCount count_plaquette_physical(const Truncation& trunc);

struct ScalingTable {
  std::vector<std::pair<int, long long>> rows;  // (lambda, count)
};

struct FitReport {
  int max_degree = 0;
  std::vector<double> residual_l2;                 // index d-1 for degree d
  std::vector<std::vector<double>> coefficients;   // per degree
  int plateau_degree = 0;  // degree beyond which residuals stop improving
};

FitReport fit_scaling(const ScalingTable& table, int max_degree);
void write_fit_json(const FitReport& report, const std::string& path);
void write_table_csv(const ScalingTable& table, const std::string& path);

/// ceil(2 L^D log2(lambda+1)) qubits for an L^D lattice.
long long qubit_estimate(int sites_per_dim, int dims, int lambda);

}  // namespace su3ym
