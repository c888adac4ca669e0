#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace su3ym {

/// Exact reduced fraction on 64-bit integers.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator*(long long k) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// SU(3) irreducible representation labeled by the number of fundamental (p)
/// and antifundamental (q) tensor indices.
struct Irrep {
  int p = 0;
  int q = 0;

  bool operator==(const Irrep& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Irrep& o) const { return !(*this == o); }
};

long long dimension(Irrep r);
Rational casimir(Irrep r);
Irrep conjugate(Irrep r);

/// Integer 3*C2(r); handy for exact Casimir comparisons.
long long casimir3(Irrep r);

/// Canonical ordering: ascending (Casimir, p, q).
bool irrep_less(Irrep a, Irrep b);

struct IrrepOrder {
  bool operator()(Irrep a, Irrep b) const { return irrep_less(a, b); }
};

using IrrepMultiset = std::map<Irrep, int, IrrepOrder>;

/// "p,q" rendering used in CSV/CLI output.
std::string pq_label(Irrep r);
/// Dimension label with a bar when q > p, e.g. "3bar", "8", "15bar".
std::string dim_label(Irrep r);
/// Inverse of dim_label; also accepts "p,q". Empty optional on unknown labels.
std::optional<Irrep> parse_irrep(const std::string& text);

enum class FundDirection { Fund, AntiFund };

/// Surviving terms of r (x) 3 (Fund) or r (x) 3bar (AntiFund); multiplicity one each.
std::vector<Irrep> tensor_fundamental(Irrep r, FundDirection dir);

/// Full Littlewood-Richardson decomposition of a (x) b with multiplicities.
IrrepMultiset tensor_decompose(Irrep a, Irrep b);

/// Multiplicity of `out` in a (x) b.
int tensor_multiplicity(Irrep a, Irrep b, Irrep out);

/// Singlet multiplicity of an oriented product; `conjugated[i]` marks factors
/// entering with their conjugate.
int singlet_multiplicity(const std::vector<Irrep>& factors,
                         const std::vector<bool>& conjugated = {});

struct Truncation {
  int lambda_p = 0;
  int lambda_q = 0;
  std::optional<std::vector<Irrep>> allow;  // sorted canonically when present

  static Truncation lambda(int l);
  static Truncation lambda_pq(int lp, int lq);
  static Truncation allow_list(std::vector<Irrep> irreps);

  bool admits(Irrep r) const;
  /// All admitted irreps in canonical order.
  std::vector<Irrep> admitted() const;
};

struct HexNeighbors {
  std::vector<std::pair<Irrep, FundDirection>> out;
  std::vector<std::pair<Irrep, FundDirection>> in;
};

/// Directed plaquette-operator connectivity of r inside a truncation.
HexNeighbors hex_neighbors(Irrep r, const Truncation& trunc);

}  // namespace su3ym
