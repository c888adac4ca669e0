#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "su3ym/irrep.hpp"

namespace su3ym {

/// Internal irrep state labeled by twice the color isospin (t2), twice its
/// projection (tz2), and three times the color hypercharge (y3).
struct IrrepState {
  int t2 = 0;
  int tz2 = 0;
  int y3 = 0;
};

/// Gelfand-Tsetlin basis of one irrep: states ordered by descending
/// (Y, T, Tz); index 0 is the highest weight.
struct IrrepBasis {
  Irrep irrep;
  std::vector<std::array<int, 3>> patterns;  // (m12, m22, m11)
  std::vector<IrrepState> labels;
};

const IrrepBasis& irrep_basis(Irrep r);
std::vector<IrrepState> enumerate_states(Irrep r);

/// Eight Gell-Mann-normalized generator matrices in the GT basis;
/// sum_b e[b]^2 = casimir(r) * I.
struct GeneratorSet {
  std::array<Eigen::MatrixXcd, 8> e;
};

const GeneratorSet& generators(Irrep r);

/// Simple-root raising matrices (real in the GT basis); lowerings are the
/// transposes.  raise_t shifts (Tz) by +1, raise_u shifts (Tz,Y) by (-1/2,+1).
struct RaisingSet {
  Eigen::MatrixXd raise_t;
  Eigen::MatrixXd raise_u;
};

const RaisingSet& raising_operators(Irrep r);

/// Clebsch-Gordan block r1 (x) r2 -> out, multiplicity copy gamma.
/// Real coefficients; when r1 == r2 the copies are ordered symmetric-first
/// under factor exchange, otherwise by deterministic Gram-Schmidt seeding.
struct CGTensor {
  Irrep r1, r2, out;
  int gamma = 0;
  int d1 = 0, d2 = 0, dout = 0;
  std::vector<double> coeff;  // [ (i1*d2 + i2)*dout + s ]

  double at(int i1, int i2, int s) const { return coeff[(i1 * d2 + i2) * dout + s]; }
};

const std::vector<CGTensor>& cg_decompose(Irrep r1, Irrep r2);
const CGTensor* cg_find(Irrep r1, Irrep r2, Irrep out, int gamma);

/// Composite vertex factor: contraction of the four CG chains
///   <D,y'; B,x | E,q'>  <A,y; B,x | C,q>  <A,y; r,c | D,y'>  <C,q; r,c | E,q'>
/// summed over all component and multiplicity indices.  The nine slots are
/// rows (A,B,C), (r,1,r), (D,B,E); r must be 3 or 3bar and the middle-column
/// spectator must match.  Returns 0 when any chain is empty.
double nine_r(const std::array<Irrep, 9>& slots);
double nine_r(Irrep a, Irrep b, Irrep c, Irrep d, Irrep e, Irrep r);

/// Writes all CG tensors for r1 (x) r2 as JSON keyed "p1,q1|p2,q2|po,qo|gamma".
void dump_cg_json(Irrep r1, Irrep r2, const std::string& path);

}  // namespace su3ym
