#include "su3ym/clebsch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace su3ym {

namespace {

constexpr double kZeroTol = 1e-12;
constexpr double kRankTol = 1e-10;

template <typename K, typename V>
class Memo {
 public:
  template <typename F>
  const V& get(const K& key, F&& make) {
    {
      std::shared_lock lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return *it->second;
    }
    auto value = std::make_unique<V>(make());
    std::unique_lock lock(mutex_);
    auto [it, inserted] = cache_.try_emplace(key, std::move(value));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<K, std::unique_ptr<V>> cache_;
};

using IrrepKey = std::pair<int, int>;
IrrepKey key_of(Irrep r) { return {r.p, r.q}; }

IrrepBasis build_basis(Irrep r) {
  IrrepBasis b;
  b.irrep = r;
  const int m13 = r.p + r.q, m23 = r.q;
  struct Entry {
    IrrepState s;
    std::array<int, 3> m;
  };
  std::vector<Entry> entries;
  for (int m12 = m23; m12 <= m13; ++m12)
    for (int m22 = 0; m22 <= m23; ++m22)
      for (int m11 = m22; m11 <= m12; ++m11) {
        IrrepState s;
        s.t2 = m12 - m22;
        s.tz2 = 2 * m11 - m12 - m22;
        s.y3 = 3 * (m12 + m22) - 2 * (m13 + m23);
        entries.push_back({s, {m12, m22, m11}});
      }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.s.y3 != b.s.y3) return a.s.y3 > b.s.y3;
    if (a.s.t2 != b.s.t2) return a.s.t2 > b.s.t2;
    return a.s.tz2 > b.s.tz2;
  });
  for (auto& e : entries) {
    b.patterns.push_back(e.m);
    b.labels.push_back(e.s);
  }
  if (static_cast<long long>(b.labels.size()) != dimension(r))
    throw std::logic_error("GT enumeration does not match dimension");
  return b;
}

// Gelfand-Tsetlin matrix element of J^(l)_+ between (pattern + e_{k,l}) and
// pattern, for su(3) patterns (m13,m23,m33=0; m12,m22; m11).
double gt_raising(const std::array<int, 3>& m, Irrep r, int k, int l) {
  const int m13 = r.p + r.q, m23 = r.q, m33 = 0;
  const int m12 = m[0], m22 = m[1], m11 = m[2];
  auto row = [&](int i, int ll) -> int {
    if (ll == 3) return i == 1 ? m13 : (i == 2 ? m23 : m33);
    if (ll == 2) return i == 1 ? m12 : m22;
    return m11;
  };
  double num = 1.0, den = 1.0;
  const int mkl = row(k, l);
  for (int i = 1; i <= l + 1; ++i) num *= row(i, l + 1) - mkl + k - i;
  for (int i = 1; i <= l - 1; ++i) num *= row(i, l - 1) - mkl + k - i - 1;
  for (int i = 1; i <= l; ++i) {
    if (i == k) continue;
    den *= (row(i, l) - mkl + k - i) * (row(i, l) - mkl + k - i - 1);
  }
  double v = -num / den;
  return v > 0 ? std::sqrt(v) : 0.0;
}

RaisingSet build_raisings(Irrep r) {
  const IrrepBasis& b = irrep_basis(r);
  const int d = static_cast<int>(b.patterns.size());
  std::map<std::array<int, 3>, int> index;
  for (int i = 0; i < d; ++i) index[b.patterns[i]] = i;

  RaisingSet rs;
  rs.raise_t = Eigen::MatrixXd::Zero(d, d);
  rs.raise_u = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    auto m = b.patterns[i];
    // l=1: raise m11.
    {
      auto up = m;
      up[2] += 1;
      auto it = index.find(up);
      if (it != index.end()) rs.raise_t(it->second, i) = gt_raising(m, r, 1, 1);
    }
    // l=2: raise m12 (k=1) or m22 (k=2).
    for (int k = 1; k <= 2; ++k) {
      auto up = m;
      up[k - 1] += 1;
      auto it = index.find(up);
      if (it != index.end()) {
        double c = gt_raising(m, r, k, 2);
        if (std::abs(c) > kZeroTol) rs.raise_u(it->second, i) = c;
      }
    }
  }
  return rs;
}

GeneratorSet build_generators(Irrep r) {
  const IrrepBasis& b = irrep_basis(r);
  const RaisingSet& rs = raising_operators(r);
  const int d = static_cast<int>(b.patterns.size());
  const std::complex<double> im(0.0, 1.0);

  Eigen::MatrixXcd e12 = rs.raise_t, e23 = rs.raise_u;
  Eigen::MatrixXcd e21 = e12.adjoint(), e32 = e23.adjoint();
  Eigen::MatrixXcd e13 = e12 * e23 - e23 * e12;
  Eigen::MatrixXcd e31 = e13.adjoint();

  Eigen::VectorXd e11(d), e22(d), e33(d);
  for (int i = 0; i < d; ++i) {
    auto [m12, m22, m11] = b.patterns[i];
    e11(i) = m11;
    e22(i) = m12 + m22 - m11;
    e33(i) = (r.p + 2 * r.q) - (m12 + m22);
  }

  GeneratorSet g;
  g.e[0] = 0.5 * (e12 + e21);
  g.e[1] = -0.5 * im * (e12 - e21);
  g.e[2] = (0.5 * (e11 - e22)).asDiagonal();
  g.e[3] = 0.5 * (e13 + e31);
  g.e[4] = -0.5 * im * (e13 - e31);
  g.e[5] = 0.5 * (e23 + e32);
  g.e[6] = -0.5 * im * (e23 - e32);
  Eigen::VectorXd y = (e11 + e22 - 2.0 * e33) / 3.0;
  g.e[7] = (std::sqrt(3.0) / 2.0 * y).asDiagonal();
  return g;
}

struct Weight {
  int tz2, y3;
  bool operator<(const Weight& o) const {
    if (y3 != o.y3) return y3 > o.y3;
    return tz2 > o.tz2;
  }
  bool operator==(const Weight& o) const { return tz2 == o.tz2 && y3 == o.y3; }
};

std::vector<CGTensor> build_cg(Irrep r1, Irrep r2) {
  const IrrepBasis& b1 = irrep_basis(r1);
  const IrrepBasis& b2 = irrep_basis(r2);
  const int d1 = static_cast<int>(b1.labels.size());
  const int d2 = static_cast<int>(b2.labels.size());
  const int dp = d1 * d2;
  const RaisingSet& rs1 = raising_operators(r1);
  const RaisingSet& rs2 = raising_operators(r2);

  auto total = [&](const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dp, dp);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        if (std::abs(a1(i, j)) > kZeroTol)
          for (int k = 0; k < d2; ++k) m(i * d2 + k, j * d2 + k) += a1(i, j);
    for (int i = 0; i < d2; ++i)
      for (int j = 0; j < d2; ++j)
        if (std::abs(a2(i, j)) > kZeroTol)
          for (int k = 0; k < d1; ++k) m(k * d2 + i, k * d2 + j) += a2(i, j);
    return m;
  };
  Eigen::MatrixXd t_tot = total(rs1.raise_t, rs2.raise_t);
  Eigen::MatrixXd u_tot = total(rs1.raise_u, rs2.raise_u);

  std::vector<CGTensor> out;
  for (const auto& [rout, mult] : tensor_decompose(r1, r2)) {
    const IrrepBasis& bo = irrep_basis(rout);
    const int dout = static_cast<int>(bo.labels.size());
    Weight hw{bo.labels[0].tz2, bo.labels[0].y3};

    std::vector<int> sector;
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2; ++j)
        if (b1.labels[i].tz2 + b2.labels[j].tz2 == hw.tz2 &&
            b1.labels[i].y3 + b2.labels[j].y3 == hw.y3)
          sector.push_back(i * d2 + j);
    const int ns = static_cast<int>(sector.size());

    Eigen::MatrixXd sys(2 * dp, ns);
    for (int c = 0; c < ns; ++c) {
      sys.col(c).head(dp) = t_tot.col(sector[c]);
      sys.col(c).tail(dp) = u_tot.col(sector[c]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > kRankTol) ++rank;
    const int nullity = ns - rank;
    if (nullity != mult)
      throw std::logic_error("CG null-space dimension disagrees with tensor decomposition");

    // Highest-weight vectors in the full product space, one column per copy.
    Eigen::MatrixXd hw_vecs = Eigen::MatrixXd::Zero(dp, mult);
    for (int g = 0; g < mult; ++g) {
      Eigen::VectorXd v = svd.matrixV().col(ns - 1 - g);
      for (int c = 0; c < ns; ++c) hw_vecs(sector[c], g) = v(c);
    }

    if (mult > 1) {
      if (r1 == r2) {
        // Order copies by exchange parity: symmetric first.
        Eigen::MatrixXd pm(mult, mult);
        for (int a = 0; a < mult; ++a)
          for (int c = 0; c < mult; ++c) {
            double s = 0;
            for (int i = 0; i < d1; ++i)
              for (int j = 0; j < d2; ++j)
                s += hw_vecs(i * d2 + j, a) * hw_vecs(j * d2 + i, c);
            pm(a, c) = s;
          }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pm);
        Eigen::MatrixXd rot(mult, mult);
        int col = 0;
        for (int i = mult - 1; i >= 0; --i) rot.col(col++) = es.eigenvectors().col(i);
        hw_vecs = hw_vecs * rot;
      } else {
        // Deterministic Gram-Schmidt seeded by product-state order.
        Eigen::MatrixXd proj = hw_vecs * hw_vecs.transpose();
        Eigen::MatrixXd basis(dp, mult);
        int found = 0;
        for (int c = 0; c < ns && found < mult; ++c) {
          Eigen::VectorXd v = proj.col(sector[c]);
          for (int g = 0; g < found; ++g) v -= basis.col(g).dot(v) * basis.col(g);
          if (v.norm() > 1e-8) basis.col(found++) = v.normalized();
        }
        if (found != mult) throw std::logic_error("CG multiplicity seeding failed");
        hw_vecs = basis;
      }
    }

    // Phase: first contributing product state of the highest-weight row positive.
    for (int g = 0; g < mult; ++g) {
      for (int idx = 0; idx < dp; ++idx) {
        if (std::abs(hw_vecs(idx, g)) > kRankTol) {
          if (hw_vecs(idx, g) < 0) hw_vecs.col(g) = -hw_vecs.col(g);
          break;
        }
      }
    }

    // Lower through the weight diagram, solving each sector by least squares.
    const RaisingSet& rso = raising_operators(rout);
    Eigen::MatrixXd lower_t = rso.raise_t.transpose();
    Eigen::MatrixXd lower_u = rso.raise_u.transpose();
    Eigen::MatrixXd lt_tot = t_tot.transpose();
    Eigen::MatrixXd lu_tot = u_tot.transpose();

    std::map<Weight, std::vector<int>> groups;
    for (int s = 0; s < dout; ++s)
      groups[{bo.labels[s].tz2, bo.labels[s].y3}].push_back(s);
    std::map<Weight, std::vector<int>>::const_iterator git;

    for (int g = 0; g < mult; ++g) {
      Eigen::MatrixXd vecs = Eigen::MatrixXd::Zero(dp, dout);
      vecs.col(0) = hw_vecs.col(g);
      for (git = groups.begin(); git != groups.end(); ++git) {
        const auto& members = git->second;
        if (members.size() == 1 && members[0] == 0) continue;
        struct Parent {
          int state;
          const Eigen::MatrixXd* lo;      // lowering in the output irrep
          const Eigen::MatrixXd* lo_tot;  // total lowering in the product space
        };
        std::vector<Parent> parents;
        for (int sp = 0; sp < dout; ++sp) {
          Weight w{bo.labels[sp].tz2, bo.labels[sp].y3};
          if (w.tz2 == git->first.tz2 + 2 && w.y3 == git->first.y3)
            parents.push_back({sp, &lower_t, &lt_tot});
          if (w.tz2 == git->first.tz2 - 1 && w.y3 == git->first.y3 + 3)
            parents.push_back({sp, &lower_u, &lu_tot});
        }
        const int np = static_cast<int>(parents.size());
        const int nm = static_cast<int>(members.size());
        Eigen::MatrixXd a(np, nm);
        Eigen::MatrixXd rhs(np, dp);
        for (int pi = 0; pi < np; ++pi) {
          for (int mi = 0; mi < nm; ++mi)
            a(pi, mi) = (*parents[pi].lo)(members[mi], parents[pi].state);
          rhs.row(pi) = (*parents[pi].lo_tot * vecs.col(parents[pi].state)).transpose();
        }
        Eigen::MatrixXd x = a.colPivHouseholderQr().solve(rhs);
        for (int mi = 0; mi < nm; ++mi) vecs.col(members[mi]) = x.row(mi).transpose();
      }

      CGTensor t;
      t.r1 = r1;
      t.r2 = r2;
      t.out = rout;
      t.gamma = g;
      t.d1 = d1;
      t.d2 = d2;
      t.dout = dout;
      t.coeff.assign(static_cast<size_t>(dp) * dout, 0.0);
      for (int idx = 0; idx < dp; ++idx)
        for (int s = 0; s < dout; ++s) {
          double v = vecs(idx, s);
          if (std::abs(v) < kZeroTol) v = 0.0;
          t.coeff[static_cast<size_t>(idx) * dout + s] = v;
        }
      out.push_back(std::move(t));
    }
  }
  return out;
}

Memo<IrrepKey, IrrepBasis>& basis_memo() {
  static Memo<IrrepKey, IrrepBasis> m;
  return m;
}
Memo<IrrepKey, RaisingSet>& raising_memo() {
  static Memo<IrrepKey, RaisingSet> m;
  return m;
}
Memo<IrrepKey, GeneratorSet>& generator_memo() {
  static Memo<IrrepKey, GeneratorSet> m;
  return m;
}
Memo<std::pair<IrrepKey, IrrepKey>, std::vector<CGTensor>>& cg_memo() {
  static Memo<std::pair<IrrepKey, IrrepKey>, std::vector<CGTensor>> m;
  return m;
}
Memo<std::array<int, 12>, double>& nine_r_memo() {
  static Memo<std::array<int, 12>, double> m;
  return m;
}

double nine_r_compute(Irrep a, Irrep b, Irrep c, Irrep d, Irrep e, Irrep r);

}  // namespace

const IrrepBasis& irrep_basis(Irrep r) {
  return basis_memo().get(key_of(r), [r] { return build_basis(r); });
}

std::vector<IrrepState> enumerate_states(Irrep r) { return irrep_basis(r).labels; }

const RaisingSet& raising_operators(Irrep r) {
  return raising_memo().get(key_of(r), [r] { return build_raisings(r); });
}

const GeneratorSet& generators(Irrep r) {
  return generator_memo().get(key_of(r), [r] { return build_generators(r); });
}

const std::vector<CGTensor>& cg_decompose(Irrep r1, Irrep r2) {
  return cg_memo().get({key_of(r1), key_of(r2)},
                       [r1, r2] { return build_cg(r1, r2); });
}

const CGTensor* cg_find(Irrep r1, Irrep r2, Irrep out, int gamma) {
  for (const auto& t : cg_decompose(r1, r2))
    if (t.out == out && t.gamma == gamma) return &t;
  return nullptr;
}

double nine_r(const std::array<Irrep, 9>& slots) {
  if (slots[4] != Irrep{0, 0})
    throw std::invalid_argument("nine_r: middle slot must be the singlet");
  if (!(slots[3] == slots[5]))
    throw std::invalid_argument("nine_r: operator slots must match");
  if (!(slots[3] == Irrep{1, 0} || slots[3] == Irrep{0, 1}))
    throw std::invalid_argument("nine_r: operator must be 3 or 3bar");
  if (!(slots[1] == slots[7]))
    throw std::invalid_argument("nine_r: spectator column must match");
  return nine_r(slots[0], slots[1], slots[2], slots[6], slots[8], slots[3]);
}

double nine_r(Irrep a, Irrep b, Irrep c, Irrep d, Irrep e, Irrep r) {
  std::array<int, 12> key{a.p, a.q, b.p, b.q, c.p, c.q, d.p, d.q, e.p, e.q, r.p, r.q};
  return nine_r_memo().get(key, [&] { return nine_r_compute(a, b, c, d, e, r); });
}

namespace {

double nine_r_compute(Irrep a, Irrep b, Irrep c, Irrep d, Irrep e, Irrep r) {
  const int da = static_cast<int>(dimension(a));
  const int db = static_cast<int>(dimension(b));
  const int dc = static_cast<int>(dimension(c));
  const int dd = static_cast<int>(dimension(d));
  const int de = static_cast<int>(dimension(e));
  const int dr = static_cast<int>(dimension(r));

  std::vector<const CGTensor*> t1s, t2s, t3s, t4s;  // DB->E, AB->C, Ar->D, Cr->E
  for (const auto& t : cg_decompose(d, b))
    if (t.out == e) t1s.push_back(&t);
  for (const auto& t : cg_decompose(a, b))
    if (t.out == c) t2s.push_back(&t);
  for (const auto& t : cg_decompose(a, r))
    if (t.out == d) t3s.push_back(&t);
  for (const auto& t : cg_decompose(c, r))
    if (t.out == e) t4s.push_back(&t);
  if (t1s.empty() || t2s.empty() || t3s.empty() || t4s.empty()) return 0.0;

  double value = 0.0;
  std::vector<double> w(static_cast<size_t>(da) * dr * db * de);
  std::vector<double> v(static_cast<size_t>(da) * db * dc);
  for (const CGTensor* t3 : t3s)
    for (const CGTensor* t1 : t1s) {
      // w[y,c,x,q'] = sum_y' t3[y,c,y'] t1[y',x,q']
      std::fill(w.begin(), w.end(), 0.0);
      for (int y = 0; y < da; ++y)
        for (int cc = 0; cc < dr; ++cc)
          for (int yp = 0; yp < dd; ++yp) {
            double f3 = t3->at(y, cc, yp);
            if (f3 == 0.0) continue;
            for (int x = 0; x < db; ++x)
              for (int qp = 0; qp < de; ++qp) {
                double f1 = t1->at(yp, x, qp);
                if (f1 != 0.0)
                  w[((static_cast<size_t>(y) * dr + cc) * db + x) * de + qp] += f3 * f1;
              }
          }
      for (const CGTensor* t4 : t4s) {
        // v[y,x,q] = sum_{c,q'} w[y,c,x,q'] t4[q,c,q']
        std::fill(v.begin(), v.end(), 0.0);
        for (int y = 0; y < da; ++y)
          for (int cc = 0; cc < dr; ++cc)
            for (int x = 0; x < db; ++x)
              for (int qp = 0; qp < de; ++qp) {
                double fw = w[((static_cast<size_t>(y) * dr + cc) * db + x) * de + qp];
                if (fw == 0.0) continue;
                for (int qq = 0; qq < dc; ++qq) {
                  double f4 = t4->at(qq, cc, qp);
                  if (f4 != 0.0)
                    v[(static_cast<size_t>(y) * db + x) * dc + qq] += fw * f4;
                }
              }
        for (const CGTensor* t2 : t2s) {
          double s = 0.0;
          for (int y = 0; y < da; ++y)
            for (int x = 0; x < db; ++x)
              for (int qq = 0; qq < dc; ++qq) {
                double fv = v[(static_cast<size_t>(y) * db + x) * dc + qq];
                if (fv != 0.0) s += fv * t2->at(y, x, qq);
              }
          value += s;
        }
      }
    }
  return value;
}

}  // namespace

void dump_cg_json(Irrep r1, Irrep r2, const std::string& path) {
  nlohmann::json j;
  for (const auto& t : cg_decompose(r1, r2)) {
    std::string key = pq_label(r1) + "|" + pq_label(r2) + "|" + pq_label(t.out) + "|" +
                      std::to_string(t.gamma);
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < t.d1; ++i)
      for (int k = 0; k < t.d2; ++k)
        for (int s = 0; s < t.dout; ++s)
          if (t.at(i, k, s) != 0.0)
            entries.push_back({i, k, s, t.at(i, k, s)});
    j[key] = entries;
  }
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

}  // namespace su3ym
