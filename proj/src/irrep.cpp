#include "su3ym/irrep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace su3ym {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(long long k) const { return Rational(num * k, den); }

long long dimension(Irrep r) {
  return static_cast<long long>(r.p + 1) * (r.q + 1) * (r.p + r.q + 2) / 2;
}

long long casimir3(Irrep r) {
  long long p = r.p, q = r.q;
  return p * p + q * q + p * q + 3 * p + 3 * q;
}

Rational casimir(Irrep r) { return Rational(casimir3(r), 3); }

Irrep conjugate(Irrep r) { return {r.q, r.p}; }

bool irrep_less(Irrep a, Irrep b) {
  long long ca = casimir3(a), cb = casimir3(b);
  if (ca != cb) return ca < cb;
  if (a.p != b.p) return a.p < b.p;
  return a.q < b.q;
}

std::string pq_label(Irrep r) {
  return std::to_string(r.p) + "," + std::to_string(r.q);
}

std::string dim_label(Irrep r) {
  std::string s = std::to_string(dimension(r));
  if (r.q > r.p) s += "bar";
  return s;
}

std::optional<Irrep> parse_irrep(const std::string& text) {
  auto comma = text.find(',');
  if (comma != std::string::npos) {
    try {
      int p = std::stoi(text.substr(0, comma));
      int q = std::stoi(text.substr(comma + 1));
      if (p < 0 || q < 0) return std::nullopt;
      return Irrep{p, q};
    } catch (...) {
      return std::nullopt;
    }
  }
  bool bar = false;
  std::string digits = text;
  if (digits.size() > 3 && digits.substr(digits.size() - 3) == "bar") {
    bar = true;
    digits = digits.substr(0, digits.size() - 3);
  }
  long long d = 0;
  try {
    d = std::stoll(digits);
  } catch (...) {
    return std::nullopt;
  }
  // Scan low (p,q) for a matching dimension; unbarred label means p >= q.
  for (int p = 0; p <= 40; ++p)
    for (int q = 0; q <= p; ++q)
      if (dimension({p, q}) == d) return bar ? Irrep{q, p} : Irrep{p, q};
  return std::nullopt;
}

std::vector<Irrep> tensor_fundamental(Irrep r, FundDirection dir) {
  std::vector<Irrep> out;
  auto push = [&out](int p, int q) {
    if (p >= 0 && q >= 0) out.push_back({p, q});
  };
  if (dir == FundDirection::Fund) {
    push(r.p + 1, r.q);
    push(r.p - 1, r.q + 1);
    push(r.p, r.q - 1);
  } else {
    push(r.p, r.q + 1);
    push(r.p + 1, r.q - 1);
    push(r.p - 1, r.q);
  }
  std::sort(out.begin(), out.end(), irrep_less);
  return out;
}

// Littlewood-Richardson on 3-row Young diagrams with at most two nontrivial
// rows per factor: a = (a1,a2,0), b = (b1,b2,0). Fillings use entries {1,2};
// x1j / x2j count 1s / 2s placed in row j of the product shape.
IrrepMultiset tensor_decompose(Irrep a, Irrep b) {
  IrrepMultiset result;
  const int a1 = a.p + a.q, a2 = a.q;
  const int b1 = b.p + b.q, b2 = b.q;
  for (int x12 = 0; x12 <= b1 && a2 + x12 <= a1; ++x12) {
    for (int x13 = 0; x13 + x12 <= b1 && x13 <= a2; ++x13) {
      const int x11 = b1 - x12 - x13;
      for (int x22 = 0; x22 <= b2 && x22 <= x11; ++x22) {
        const int x23 = b2 - x22;
        if (x13 + x23 > a2 + x12) continue;          // column strictness, row 3
        if (x22 + x23 > x11 + x12) continue;         // lattice word
        const int r1 = a1 + x11;
        const int r2 = a2 + x12 + x22;
        const int r3 = x13 + x23;
        if (r1 < r2 || r2 < r3) continue;
        result[Irrep{r1 - r2, r2 - r3}] += 1;
      }
    }
  }
  return result;
}

int tensor_multiplicity(Irrep a, Irrep b, Irrep out) {
  auto d = tensor_decompose(a, b);
  auto it = d.find(out);
  return it == d.end() ? 0 : it->second;
}

int singlet_multiplicity(const std::vector<Irrep>& factors,
                         const std::vector<bool>& conjugated) {
  if (factors.empty()) return 0;
  auto oriented = [&](size_t i) {
    bool c = i < conjugated.size() && conjugated[i];
    return c ? conjugate(factors[i]) : factors[i];
  };
  IrrepMultiset acc;
  acc[oriented(0)] = 1;
  for (size_t i = 1; i < factors.size(); ++i) {
    IrrepMultiset next;
    Irrep f = oriented(i);
    for (const auto& [r, m] : acc)
      for (const auto& [r2, m2] : tensor_decompose(r, f)) next[r2] += m * m2;
    acc = std::move(next);
  }
  auto it = acc.find(Irrep{0, 0});
  return it == acc.end() ? 0 : it->second;
}

Truncation Truncation::lambda(int l) { return {l, l, std::nullopt}; }

Truncation Truncation::lambda_pq(int lp, int lq) { return {lp, lq, std::nullopt}; }

Truncation Truncation::allow_list(std::vector<Irrep> irreps) {
  std::sort(irreps.begin(), irreps.end(), irrep_less);
  irreps.erase(std::unique(irreps.begin(), irreps.end()), irreps.end());
  int lp = 0, lq = 0;
  for (auto r : irreps) {
    lp = std::max(lp, r.p);
    lq = std::max(lq, r.q);
  }
  return {lp, lq, std::move(irreps)};
}

bool Truncation::admits(Irrep r) const {
  if (r.p < 0 || r.q < 0 || r.p > lambda_p || r.q > lambda_q) return false;
  if (!allow) return true;
  return std::binary_search(allow->begin(), allow->end(), r, irrep_less);
}

std::vector<Irrep> Truncation::admitted() const {
  if (allow) return *allow;
  std::vector<Irrep> out;
  for (int p = 0; p <= lambda_p; ++p)
    for (int q = 0; q <= lambda_q; ++q) out.push_back({p, q});
  std::sort(out.begin(), out.end(), irrep_less);
  return out;
}

HexNeighbors hex_neighbors(Irrep r, const Truncation& trunc) {
  HexNeighbors hn;
  for (auto dir : {FundDirection::Fund, FundDirection::AntiFund}) {
    for (auto n : tensor_fundamental(r, dir))
      if (trunc.admits(n)) hn.out.emplace_back(n, dir);
  }
  // Incoming edge via dir exists when r shows up in n (x) fund(dir).
  for (auto dir : {FundDirection::Fund, FundDirection::AntiFund}) {
    auto back = dir == FundDirection::Fund ? FundDirection::AntiFund : FundDirection::Fund;
    for (auto n : tensor_fundamental(r, back)) {
      if (!trunc.admits(n)) continue;
      auto fwd = tensor_fundamental(n, dir);
      if (std::find(fwd.begin(), fwd.end(), r) != fwd.end()) hn.in.emplace_back(n, dir);
    }
  }
  return hn;
}

}  // namespace su3ym
