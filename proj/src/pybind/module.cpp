#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "su3ym/counting.hpp"
#include "su3ym/evolution.hpp"
#include "su3ym/local_plaquette.hpp"
#include "su3ym/qubit_compile.hpp"
#include "su3ym/su2_plaquette.hpp"

namespace py = pybind11;
using namespace su3ym;

namespace {

Irrep as_irrep(std::pair<int, int> pq) { return {pq.first, pq.second}; }

Truncation truncation_from(py::object spec) {
  if (py::isinstance<py::int_>(spec)) return Truncation::lambda(spec.cast<int>());
  std::vector<Irrep> list;
  for (auto item : spec.cast<py::iterable>()) {
    if (py::isinstance<py::str>(item)) {
      auto r = parse_irrep(item.cast<std::string>());
      if (!r) throw py::value_error("unknown irrep label");
      list.push_back(*r);
    } else {
      list.push_back(as_irrep(item.cast<std::pair<int, int>>()));
    }
  }
  return Truncation::allow_list(list);
}

LatticeGeometry geometry_from(const std::string& name) {
  if (name == "one-plaquette") return LatticeGeometry::one_plaquette();
  if (name == "two-plaquette-pbc") return LatticeGeometry::two_plaquette_pbc();
  if (name == "plaquette-operator") return LatticeGeometry::plaquette_operator();
  throw py::value_error("unknown geometry: " + name);
}

py::dict traj_dict(const Trajectory& t) {
  py::dict d;
  d["times"] = t.times;
  d["persistence"] = t.persistence;
  d["electric"] = t.electric;
  if (!t.leakage.empty()) d["leakage"] = t.leakage;
  return d;
}

py::dict op_dict(const OperatorMatrix& op) {
  py::dict d;
  d["electric"] = op.electric_values();
  d["magnetic"] = op.magnetic_dense();
  d["constant"] = op.constant;
  d["labels"] = op.labels;
  return d;
}

}  // namespace

PYBIND11_MODULE(_su3ym, m) {
  m.doc() = "Truncated SU(3) Yang-Mills lattice simulation core";

  // irreps
  m.def("dimension", [](std::pair<int, int> r) { return dimension(as_irrep(r)); });
  m.def("casimir", [](std::pair<int, int> r) {
    auto c = casimir(as_irrep(r));
    return std::pair<long long, long long>(c.num, c.den);
  });
  m.def("conjugate_irrep", [](std::pair<int, int> r) {
    auto c = conjugate(as_irrep(r));
    return std::pair<int, int>(c.p, c.q);
  });
  m.def("dim_label", [](std::pair<int, int> r) { return dim_label(as_irrep(r)); });
  m.def("tensor_decompose", [](std::pair<int, int> a, std::pair<int, int> b) {
    py::dict out;
    for (const auto& [r, mult] : tensor_decompose(as_irrep(a), as_irrep(b)))
      out[py::make_tuple(r.p, r.q)] = mult;
    return out;
  });

  // states and vertex factors
  m.def("enumerate_states", [](std::pair<int, int> r) {
    py::list out;
    for (const auto& s : enumerate_states(as_irrep(r)))
      out.append(py::make_tuple(s.t2 / 2.0, s.tz2 / 2.0, s.y3 / 3.0));
    return out;
  });
  m.def("cg_tensor",
        [](std::pair<int, int> r1, std::pair<int, int> r2, std::pair<int, int> out,
           int gamma) {
          const CGTensor* t = cg_find(as_irrep(r1), as_irrep(r2), as_irrep(out), gamma);
          if (!t) throw py::value_error("no such coupling");
          py::array_t<double> arr({t->d1, t->d2, t->dout});
          auto a = arr.mutable_unchecked<3>();
          for (int i = 0; i < t->d1; ++i)
            for (int j = 0; j < t->d2; ++j)
              for (int s = 0; s < t->dout; ++s) a(i, j, s) = t->at(i, j, s);
          return arr;
        });
  m.def("nine_r", [](std::vector<std::pair<int, int>> slots) {
    if (slots.size() != 9) throw py::value_error("nine_r needs nine slots");
    std::array<Irrep, 9> arr;
    for (int i = 0; i < 9; ++i) arr[i] = as_irrep(slots[i]);
    return nine_r(arr);
  });

  // bases
  m.def("enumerate_physical", [](const std::string& geom, py::object trunc) {
    auto g = geometry_from(geom);
    py::list out;
    for (const auto& c : enumerate_physical(g, truncation_from(trunc)))
      out.append(config_label(c));
    return out;
  });
  m.def("global_singlet_count", [](const std::string& geom, py::object trunc) {
    auto g = geometry_from(geom);
    return global_singlet_filter(enumerate_physical(g, truncation_from(trunc)), g)
        .size();
  });
  m.def(
      "sector_dimensions",
      [](const std::string& geom, py::object trunc, bool with_reflection) {
        auto g = geometry_from(geom);
        auto singlets =
            global_singlet_filter(enumerate_physical(g, truncation_from(trunc)), g);
        py::dict out;
        for (int cp : {+1, -1})
          for (int tr : {+1, -1}) {
            if (with_reflection) {
              for (int rf : {+1, -1}) {
                auto states = project_symmetry(singlets, g, cp, tr, rf);
                out[py::make_tuple(cp, tr, rf)] = states.size();
              }
            } else {
              out[py::make_tuple(cp, tr)] = project_symmetry(singlets, g, cp, tr).size();
            }
          }
        return out;
      },
      py::arg("geometry"), py::arg("trunc"), py::arg("with_reflection") = false);

  // hamiltonians
  m.def("one_plaquette_hamiltonian", [](py::object trunc) {
    return op_dict(one_plaquette_hamiltonian(truncation_from(trunc)));
  });
  m.def(
      "global_hamiltonian",
      [](const std::string& geom, py::object trunc, int cp, int tr, int rf) {
        return op_dict(
            build_global_hamiltonian(geometry_from(geom), truncation_from(trunc), cp,
                                     tr, rf));
      },
      py::arg("geometry"), py::arg("trunc"), py::arg("cp") = 1, py::arg("tr") = 1,
      py::arg("rf") = 0);
  m.def("hamiltonian_dense",
        [](py::dict op, double g) {
          const int d = op["electric"].cast<Eigen::VectorXd>().size();
          Eigen::MatrixXd h =
              op["magnetic"].cast<Eigen::MatrixXd>() * (-1.0 / (2 * g * g));
          auto e = op["electric"].cast<Eigen::VectorXd>();
          double c = op["constant"].cast<double>();
          for (int i = 0; i < d; ++i)
            h(i, i) += 0.5 * g * g * e(i) + c / (2 * g * g);
          return h;
        });

  // evolution
  m.def(
      "evolve_exact",
      [](py::dict op, double g, const std::vector<double>& times) {
        OperatorMatrix o;
        Eigen::MatrixXd mag = op["magnetic"].cast<Eigen::MatrixXd>();
        Eigen::VectorXd e = op["electric"].cast<Eigen::VectorXd>();
        o.constant = op["constant"].cast<double>();
        for (int i = 0; i < e.size(); ++i)
          o.electric_diag.push_back(
              Rational(static_cast<long long>(std::llround(e(i) * 3)), 3));
        std::vector<Eigen::Triplet<double>> trip;
        for (int i = 0; i < mag.rows(); ++i)
          for (int j = 0; j < mag.cols(); ++j)
            if (mag(i, j) != 0.0) trip.emplace_back(i, j, mag(i, j));
        o.magnetic.resize(mag.rows(), mag.cols());
        o.magnetic.setFromTriplets(trip.begin(), trip.end());
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(e.size());
        psi0(0) = 1.0;
        return traj_dict(exact_evolve(o, g, psi0, times));
      },
      py::arg("op"), py::arg("g"), py::arg("times"));
  m.def(
      "evolve_local",
      [](const std::string& geom, py::object trunc, double g, double dt, int steps,
         int order) {
        LocalEvolveOptions opt;
        opt.order = order;
        return traj_dict(local_trotter_evolve(geometry_from(geom),
                                              truncation_from(trunc), g, dt, steps,
                                              opt));
      },
      py::arg("geometry"), py::arg("trunc"), py::arg("g"), py::arg("dt"),
      py::arg("steps"), py::arg("order") = 1);
  m.def("mass_gap", &one_plaquette_mass_gap, py::arg("lambda_"), py::arg("g"),
        py::arg("parity_even") = false);
  m.def("plaquette_vev", &one_plaquette_plaquette_vev);
  m.def("ground_state_amplitudes", [](int lambda, double g) {
    py::dict out;
    for (const auto& [r, a] : ground_state_amplitudes(lambda, g))
      out[py::make_tuple(r.p, r.q)] = a;
    return out;
  });

  // local sectors
  m.def("control_sector_count", [](py::object trunc) {
    return enumerate_control_sectors(truncation_from(trunc)).size();
  });
  m.def("sector_coefficients", [](py::object trunc) {
    auto t = truncation_from(trunc);
    py::dict out;
    for (const auto& s : enumerate_control_sectors(t)) {
      auto gen = build_sector_generator(s, t);
      py::list coeffs;
      for (const auto& tr : gen.transitions) coeffs.append(tr.coeff);
      out[py::make_tuple(dim_label(s.c[0]), dim_label(s.c[1]), dim_label(s.c[2]),
                         dim_label(s.c[3]))] = coeffs;
    }
    return out;
  });

  // counting and fits
  m.def("count_3pt_singlets", &count_3pt_singlets);
  m.def("count_4pt_singlets", &count_4pt_singlets);
  m.def("count_plaquette_physical", [](py::object trunc) {
    auto c = count_plaquette_physical(truncation_from(trunc));
    return std::pair<long long, long long>(c.states, c.nonzero_mes);
  });
  m.def("qubit_estimate", &qubit_estimate);

  // qubit compilation
  m.def("pauli_term_count", [](const Eigen::MatrixXcd& h, int n) {
    return pauli_decompose(h, n).size();
  });
  m.def("lowering_pauli_term_count", &lowering_pauli_term_count);
  m.def("plaquette_pq_hermitian_term_count", &plaquette_pq_hermitian_term_count);
  m.def("verify_circuit_identities", [](int draws) {
    py::dict out;
    for (const auto& r : verify_circuit_identities(draws)) out[py::str(r.name)] = r.max_deviation;
    return out;
  }, py::arg("draws") = 100);

  // su2 reference
  m.def("su2_ground_wavefunction", [](int j_max, double g) {
    return su2_ground_wavefunction({j_max, g});
  });
  m.def("su2_tail_slope", [](int j_max, double g) { return su2_tail_slope({j_max, g}); });
}
