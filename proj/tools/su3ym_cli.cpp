// Command-line driver: spectrum, evolve, converge, count, compile, benchmark,
// su2-tail.  Options may come from an INI config file (--config); command-line
// values override file values, which override defaults.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "su3ym/counting.hpp"
#include "su3ym/evolution.hpp"
#include "su3ym/local_plaquette.hpp"
#include "su3ym/qubit_compile.hpp"
#include "su3ym/su2_plaquette.hpp"

using namespace su3ym;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

Truncation parse_truncation(const std::string& spec, int lambda) {
  if (!spec.empty()) {
    std::vector<Irrep> list;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, '+')) {
      auto r = parse_irrep(token);
      if (!r) throw CLI::ValidationError("--trunc", "unknown irrep label: " + token);
      list.push_back(*r);
      list.push_back(conjugate(*r));
    }
    return Truncation::allow_list(list);
  }
  return Truncation::lambda(lambda);
}

LatticeGeometry parse_geometry(const std::string& name) {
  if (name == "one-plaquette") return LatticeGeometry::one_plaquette();
  if (name == "two-plaquette-pbc") return LatticeGeometry::two_plaquette_pbc();
  if (name == "plaquette-operator") return LatticeGeometry::plaquette_operator();
  throw CLI::ValidationError("--geometry", "unknown geometry: " + name);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("--out", "cannot open " + path);
  return out;
}

struct ExtremaRow {
  std::string label;
  ExtremaResult ext;
};

void write_extrema(std::ostream& out, const std::vector<ExtremaRow>& rows) {
  out << "# schema=1\n";
  out << "label,t_max,e_max,t_min,e_min\n";
  char buf[192];
  for (const auto& r : rows) {
    char t1[32], v1[32], t2[32], v2[32];
    auto fmt = [](const std::optional<Extremum>& e, char* t, char* v) {
      if (e) {
        std::snprintf(t, 32, "%.6g", e->t);
        std::snprintf(v, 32, "%.6g", e->value);
      } else {
        std::snprintf(t, 32, "-");
        std::snprintf(v, 32, "-");
      }
    };
    fmt(r.ext.first_max, t1, v1);
    fmt(r.ext.first_min, t2, v2);
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%s,%s\n", r.label.c_str(), t1, v1, t2, v2);
    out << buf;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated SU(3) Yang-Mills lattice toolkit"};
  app.set_config("--config", "", "INI config file; command line overrides it");
  app.require_subcommand(1);

  std::string out_path = "out.csv";
  std::string format = "csv";
  int threads = 0;
  app.add_option("--out", out_path, "output file")->capture_default_str();
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = hardware)")
      ->capture_default_str();

  // ---- spectrum -----------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "sector energy levels over a g grid");
  std::string sp_geom = "two-plaquette-pbc", sp_trunc = "1+3";
  int sp_lambda = 1;
  double sp_gmin = 0.4, sp_gmax = 2.0;
  int sp_gsteps = 17;
  spectrum->add_option("--geometry", sp_geom)->capture_default_str();
  spectrum->add_option("--trunc", sp_trunc, "irrep labels joined by +")
      ->capture_default_str();
  spectrum->add_option("--lambda", sp_lambda)->capture_default_str();
  spectrum->add_option("--gmin", sp_gmin)->capture_default_str();
  spectrum->add_option("--gmax", sp_gmax)->capture_default_str();
  spectrum->add_option("--gsteps", sp_gsteps)->capture_default_str();

  // ---- evolve -------------------------------------------------------------
  auto* evolve = app.add_subcommand("evolve", "trajectories from the trivial vacuum");
  std::string ev_geom = "one-plaquette", ev_trunc, ev_mode = "exact", ev_scheme;
  int ev_lambda = 1, ev_order = 2, ev_steps = 1;
  double ev_g = 1.0, ev_tmax = 10.0, ev_dt = 0.05;
  bool ev_extrema = false;
  evolve->add_option("--geometry", ev_geom)->capture_default_str();
  evolve->add_option("--trunc", ev_trunc)->capture_default_str();
  evolve->add_option("--lambda", ev_lambda)->capture_default_str();
  evolve->add_option("--g", ev_g)->capture_default_str();
  evolve->add_option("--tmax", ev_tmax)->capture_default_str();
  evolve->add_option("--dt", ev_dt)->capture_default_str();
  evolve->add_option("--mode", ev_mode, "exact | trotter | local")
      ->check(CLI::IsMember({"exact", "trotter", "local"}))
      ->capture_default_str();
  evolve->add_option("--scheme", ev_scheme,
                     "global8 | colorparity6 | twoplaq133pp | even-odd");
  evolve->add_option("--order", ev_order)->capture_default_str();
  evolve->add_option("--steps", ev_steps, "fixed trotter step count")
      ->capture_default_str();
  evolve->add_flag("--extrema", ev_extrema, "append a first-extrema report");

  // ---- converge -----------------------------------------------------------
  auto* converge =
      app.add_subcommand("converge", "truncation sweeps of one-plaquette observables");
  std::string cv_obs = "massgap";
  std::vector<double> cv_g{1.0};
  std::vector<int> cv_lambda{1, 2, 3, 4, 6, 8};
  int cv_ref = 12;
  double cv_t = 10.0;
  converge->add_option("--observable", cv_obs,
                       "massgap | massgap-even | plaqvev | electric-at")
      ->check(CLI::IsMember({"massgap", "massgap-even", "plaqvev", "electric-at"}))
      ->capture_default_str();
  converge->add_option("--g", cv_g)->capture_default_str();
  converge->add_option("--lambda", cv_lambda)->capture_default_str();
  converge->add_option("--lambda-ref", cv_ref)->capture_default_str();
  converge->add_option("--t", cv_t, "time for electric-at")->capture_default_str();

  // ---- count --------------------------------------------------------------
  auto* count = app.add_subcommand("count", "singlet and plaquette counting tables");
  std::string ct_what = "3pt";
  int ct_lmax = 5;
  std::string ct_trunc = "1+3";
  int ct_fit = 0, ct_l = 10, ct_d = 3, ct_lam = 1;
  count->add_option("--what", ct_what, "3pt | 4pt | plaquette | qubits")
      ->check(CLI::IsMember({"3pt", "4pt", "plaquette", "qubits"}))
      ->capture_default_str();
  count->add_option("--lmax", ct_lmax)->capture_default_str();
  count->add_option("--trunc", ct_trunc)->capture_default_str();
  count->add_option("--fit", ct_fit, "also fit polynomials up to this degree")
      ->capture_default_str();
  count->add_option("--sites", ct_l)->capture_default_str();
  count->add_option("--dims", ct_d)->capture_default_str();
  count->add_option("--lambda", ct_lam)->capture_default_str();

  // ---- compile ------------------------------------------------------------
  auto* compile = app.add_subcommand("compile", "controlled-plaquette sector circuits");
  std::string cp_encoding = "qudit", cp_sector;
  double cp_alpha = 1.0;
  compile->add_option("--encoding", cp_encoding, "qudit | pq")
      ->check(CLI::IsMember({"qudit", "pq"}))
      ->capture_default_str();
  compile->add_option("--alpha", cp_alpha)->capture_default_str();
  compile->add_option("--sector", cp_sector, "C1,C2,C3,C4 dim labels; empty = all");

  // ---- benchmark ----------------------------------------------------------
  auto* benchmark = app.add_subcommand("benchmark", "single-plaquette extrema table");
  double bm_g = 1.0;
  benchmark->add_option("--g", bm_g)->capture_default_str();

  // ---- su2-tail -----------------------------------------------------------
  auto* su2 = app.add_subcommand("su2-tail", "SU(2) plaquette gaussian tail");
  double s2_g = 1.0;
  int s2_jmax = 40;
  su2->add_option("--g", s2_g)->capture_default_str();
  su2->add_option("--jmax", s2_jmax)->capture_default_str();

  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*spectrum) {
      auto geom = parse_geometry(sp_geom);
      auto trunc = parse_truncation(sp_trunc, sp_lambda);
      auto out = open_out(out_path);
      out << "# schema=1\n";
      out << "sector,index,g,g2E\n";
      char buf[128];
      struct Sector {
        std::string name;
        OperatorMatrix op;
      };
      std::vector<Sector> sectors;
      if (geom.kind == LatticeGeometry::Kind::TwoPlaquettePBC) {
        for (int cp : {+1, -1})
          for (int tr : {+1, -1}) {
            std::string name = std::string(cp > 0 ? "+" : "-") + (tr > 0 ? "+" : "-");
            sectors.push_back({name, build_global_hamiltonian(geom, trunc, cp, tr)});
          }
      } else {
        sectors.push_back({"full", one_plaquette_hamiltonian(trunc)});
      }
      for (int k = 0; k < sp_gsteps; ++k) {
        double g = sp_gmin + (sp_gmax - sp_gmin) * k / std::max(1, sp_gsteps - 1);
        for (const auto& s : sectors) {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.op.dense(g));
          for (int i = 0; i < s.op.dim(); ++i) {
            std::snprintf(buf, sizeof buf, "%s,%d,%.12g,%.12g\n", s.name.c_str(), i, g,
                          g * g * es.eigenvalues()(i));
            out << buf;
          }
        }
      }
    } else if (*evolve) {
      auto trunc = parse_truncation(ev_trunc, ev_lambda);
      std::vector<double> times;
      for (double t = 0; t <= ev_tmax + 1e-12; t += ev_dt) times.push_back(t);
      Trajectory traj;
      if (ev_mode == "local") {
        auto geom = parse_geometry(ev_geom.empty() ? "two-plaquette-pbc" : ev_geom);
        int n = static_cast<int>(std::llround(ev_tmax / ev_dt));
        LocalEvolveOptions opt;
        opt.order = ev_order;
        traj = local_trotter_evolve(geom, trunc, ev_g, ev_dt, n, opt);
      } else if (ev_mode == "trotter") {
        TrotterScheme scheme;
        if (ev_scheme.empty() || ev_scheme == "even-odd") {
          OperatorMatrix op;
          if (ev_geom == "one-plaquette")
            op = one_plaquette_hamiltonian(trunc);
          else
            op = build_global_hamiltonian(parse_geometry(ev_geom), trunc, +1, +1);
          scheme = even_odd_scheme(op, ev_g, ev_order);
        } else {
          scheme = named_scheme(ev_scheme, ev_g, ev_order);
        }
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(scheme.electric.size());
        psi0(0) = 1.0;
        traj = trotter_fixed_steps_trace(scheme, psi0, times, ev_steps);
      } else {
        OperatorMatrix op;
        if (ev_geom == "one-plaquette")
          op = one_plaquette_hamiltonian(trunc);
        else
          op = build_global_hamiltonian(parse_geometry(ev_geom), trunc, +1, +1);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(op.dim());
        psi0(0) = 1.0;
        traj = exact_evolve(op, ev_g, psi0, times);
      }
      write_trajectory_csv(traj, out_path);
      if (ev_extrema) {
        auto ext = find_first_extrema(traj.times, traj.electric);
        auto out = open_out(out_path + ".extrema");
        write_extrema(out, {{ev_mode, ext}});
        if (!ext.first_max) {
          std::fprintf(stderr, "no extremum found in the sampled window\n");
          return kExitNumerical;
        }
      }
    } else if (*converge) {
      StaticObservable obs = StaticObservable::MassGap;
      if (cv_obs == "massgap-even") obs = StaticObservable::MassGapParityEven;
      if (cv_obs == "plaqvev") obs = StaticObservable::PlaquetteVEV;
      if (cv_obs == "electric-at") obs = StaticObservable::ElectricEnergyAt;
      auto rows = convergence_sweep(obs, cv_g, cv_lambda, cv_ref, cv_t, threads);
      write_sweep_csv(rows, out_path);
    } else if (*count) {
      if (ct_what == "3pt" || ct_what == "4pt") {
        ScalingTable table;
        for (int l = 0; l <= ct_lmax; ++l)
          table.rows.push_back(
              {l, ct_what == "3pt" ? count_3pt_singlets(l) : count_4pt_singlets(l)});
        write_table_csv(table, out_path);
        if (ct_fit > 0)
          write_fit_json(fit_scaling(table, ct_fit), out_path + ".fit.json");
      } else if (ct_what == "plaquette") {
        auto trunc = parse_truncation(ct_trunc, 1);
        auto counts = count_plaquette_physical(trunc);
        auto out = open_out(out_path);
        out << "# schema=1\n";
        out << "states,nonzero_mes,ratio\n";
        char buf[96];
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.6g\n", counts.states,
                      counts.nonzero_mes,
                      static_cast<double>(counts.nonzero_mes) / counts.states);
        out << buf;
      } else {
        auto out = open_out(out_path);
        out << "# schema=1\n";
        out << "sites,dims,lambda,qubits\n";
        out << ct_l << "," << ct_d << "," << ct_lam << ","
            << qubit_estimate(ct_l, ct_d, ct_lam) << "\n";
      }
    } else if (*compile) {
      auto trunc = parse_truncation("1+3", 1);
      auto sectors = enumerate_control_sectors(trunc);
      Encoding enc = cp_encoding == "qudit" ? Encoding::SingleQudit : Encoding::PQPair;
      std::filesystem::path base(out_path);
      std::filesystem::create_directories(base);
      nlohmann::json summary = nlohmann::json::array();
      int emitted = 0;
      for (const auto& s : sectors) {
        std::string label = dim_label(s.c[0]) + "_" + dim_label(s.c[1]) + "_" +
                            dim_label(s.c[2]) + "_" + dim_label(s.c[3]);
        if (!cp_sector.empty()) {
          std::string want = cp_sector;
          for (auto& ch : want)
            if (ch == ',') ch = '_';
          if (want != label) continue;
        }
        auto gen = build_sector_generator(s, trunc);
        auto circ = compile_sector_circuit(gen, trunc, enc, cp_alpha);
        auto file = base / (label + ".json");
        dump_circuit_json(circ, file.string());
        auto counts = count_gates(circ);
        summary.push_back({{"sector", label},
                           {"orbit", s.orbit},
                           {"rotations", counts.rotations},
                           {"controlled_paulis", counts.controlled_paulis},
                           {"paulis", counts.paulis}});
        ++emitted;
      }
      std::ofstream sum(base / "summary.json");
      sum << summary.dump(1) << "\n";
      if (emitted == 0) {
        std::fprintf(stderr, "no sector matched %s\n", cp_sector.c_str());
        return kExitConfig;
      }
    } else if (*benchmark) {
      std::vector<ExtremaRow> rows;
      auto scan = extrema_scan_times(bm_g, 20.0);
      auto run_exact = [&](const std::string& label, const OperatorMatrix& op,
                           bool refine) {
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(op.dim());
        psi0(0) = 1.0;
        if (refine) {
          auto traj = exact_evolve(op, bm_g, psi0, scan);
          rows.push_back({label, find_first_extrema(traj.times, traj.electric)});
        } else {
          // the published untruncated row was sampled at dt = 0.1
          std::vector<double> grid;
          for (double t = 0; t <= 20.0; t += 0.1) grid.push_back(t);
          auto traj = exact_evolve(op, bm_g, psi0, grid);
          rows.push_back({label, find_first_extrema(traj.times, traj.electric, false)});
        }
      };
      auto t133 = Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}});
      auto t6 = Truncation::allow_list({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}});
      run_exact("exact-full", one_plaquette_hamiltonian(Truncation::lambda(8)), false);
      run_exact("exact-cp3",
                color_parity_reduce(one_plaquette_hamiltonian(t133), t133.admitted()),
                true);
      run_exact("exact-lam1", one_plaquette_hamiltonian(Truncation::lambda(1)), true);
      run_exact(
          "exact-cp6",
          reorder_operator(color_parity_reduce(one_plaquette_hamiltonian(t6),
                                               t6.admitted()),
                           {0, 1, 3, 2}),
          true);
      struct TrotRow {
        const char* scheme;
        int order, steps;
      };
      for (auto [scheme, order, steps] :
           {TrotRow{"global8", 2, 1}, TrotRow{"global8", 2, 2}, TrotRow{"global8", 2, 3},
            TrotRow{"global8", 2, 4}, TrotRow{"colorparity6", 1, 1},
            TrotRow{"colorparity6", 1, 2}, TrotRow{"colorparity6", 2, 1}}) {
        auto s = named_scheme(scheme, bm_g, order);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(4);
        psi0(0) = 1.0;
        auto traj = trotter_fixed_steps_trace(s, psi0, scan, steps);
        char label[64];
        std::snprintf(label, sizeof label, "trotter-%s-o%d-n%d", scheme, order, steps);
        rows.push_back({label, find_first_extrema(traj.times, traj.electric)});
      }
      auto out = open_out(out_path);
      write_extrema(out, rows);
    } else if (*su2) {
      SU2PlaquetteModel model{s2_jmax, s2_g};
      write_su2_wavefunction_csv(model, out_path);
      double slope = su2_tail_slope(model);
      double predict = -s2_g * s2_g / (2 * std::sqrt(2.0));
      std::printf("slope %.6f  asymptotic %.6f  ratio %.4f\n", slope, predict,
                  slope / predict);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
