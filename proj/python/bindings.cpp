// Python bindings. Fields cross the boundary as float64 arrays of shape
// (nx, nz), index [ix, iz], matching the C++ storage order.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

#include "stratwave/adjoint.hpp"
#include "stratwave/conservation.hpp"
#include "stratwave/exact.hpp"
#include "stratwave/model.hpp"
#include "stratwave/runner.hpp"
#include "stratwave/snapshot.hpp"
#include "stratwave/symmetry.hpp"
#include "stratwave/variational.hpp"
#include "stratwave/verify.hpp"

namespace py = pybind11;
using namespace stratwave;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScalarField to_field(const Grid2D& grid, const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != grid.nx() || a.shape(1) != grid.nz()) {
    throw Error("expected an array of shape (nx, nz)");
  }
  return ScalarField(grid, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const ScalarField& f) {
  const Grid2D& g = f.grid();
  Array out({g.nx(), g.nz()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

Grid2D grid_of(const Array& v, double Lx, double Lz) {
  if (v.ndim() != 2) throw Error("expected a 2-D array");
  return Grid2D(static_cast<int>(v.shape(0)), static_cast<int>(v.shape(1)), Lx, Lz);
}

FieldState make_state(const Array& v, const Array& rho, const Array& psi, double Lx, double Lz, double t) {
  const Grid2D g = grid_of(v, Lx, Lz);
  return FieldState{t, to_field(g, v), to_field(g, rho), to_field(g, psi)};
}

py::dict state_dict(const FieldState& s) {
  py::dict d;
  d["t"] = s.t;
  d["v"] = to_array(s.v);
  d["rho"] = to_array(s.rho);
  d["psi"] = to_array(s.psi);
  d["Lx"] = s.grid().Lx();
  d["Lz"] = s.grid().Lz();
  return d;
}

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rotating stratified internal-wave model: solver, exact solutions and conservation checks";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](double g, double f, double N) {
             PhysicalParams p{g, f, N};
             p.validate();
             return p;
           }),
           py::arg("g") = 9.81, py::arg("f") = 0.0, py::arg("N") = 1.0)
      .def_readwrite("g", &PhysicalParams::g)
      .def_readwrite("f", &PhysicalParams::f)
      .def_readwrite("N", &PhysicalParams::N)
      .def("__repr__", [](const PhysicalParams& p) {
        return "PhysicalParams(g=" + std::to_string(p.g) + ", f=" + std::to_string(p.f) +
               ", N=" + std::to_string(p.N) + ")";
      });

  m.def("omega", [](double k, double mm, const PhysicalParams& p) { return omega(WaveVector{k, mm}, p); },
        py::arg("k"), py::arg("m"), py::arg("params"));

  m.def(
      "random_state",
      [](int nx, int nz, std::uint64_t seed, std::uint64_t stream, double Lx, double Lz) {
        return state_dict(random_state(Grid2D(nx, nz, Lx, Lz), seed, stream));
      },
      py::arg("nx"), py::arg("nz"), py::arg("seed"), py::arg("stream") = 0, py::arg("Lx") = kTwoPi,
      py::arg("Lz") = kTwoPi);

  m.def(
      "rhs",
      [](const Array& v, const Array& rho, const Array& psi, const PhysicalParams& p, double Lx, double Lz,
         bool dealias) {
        const Tendencies r = rhs(make_state(v, rho, psi, Lx, Lz, 0.0), p, RhsOptions{.dealias = dealias});
        py::dict d;
        d["dv_dt"] = to_array(r.dv_dt);
        d["drho_dt"] = to_array(r.drho_dt);
        d["dzeta_dt"] = to_array(r.dzeta_dt);
        d["dpsi_dt"] = to_array(r.dpsi_dt);
        return d;
      },
      py::arg("v"), py::arg("rho"), py::arg("psi"), py::arg("params"), py::arg("Lx") = kTwoPi,
      py::arg("Lz") = kTwoPi, py::arg("dealias") = false);

  m.def(
      "simulate",
      [](const Array& v, const Array& rho, const Array& psi, const PhysicalParams& p, double dt, int n_steps,
         double Lx, double Lz, double t0) {
        SimulationOptions opt;
        opt.dt = dt;
        opt.n_steps = n_steps;
        opt.snapshot_every = std::max(n_steps, 1);
        opt.keep_snapshots = false;
        std::optional<FieldState> last;
        std::vector<py::dict> invariants;
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = simulate(make_state(v, rho, psi, Lx, Lz, t0), p, opt,
                          [&](const FieldState& s, const InvariantSample&) { last = s; });
        }
        py::dict out = state_dict(*last);
        py::list inv;
        for (const InvariantSample& s : traj.invariants) {
          inv.append(py::make_tuple(s.t, s.v_integral, s.rho_integral, s.energy_integral));
        }
        out["invariants"] = inv;
        out["dt"] = traj.dt;
        return out;
      },
      py::arg("v"), py::arg("rho"), py::arg("psi"), py::arg("params"), py::arg("dt") = 0.0, py::arg("n_steps") = 1,
      py::arg("Lx") = kTwoPi, py::arg("Lz") = kTwoPi, py::arg("t0") = 0.0,
      "Advance n_steps with RK4; dt <= 0 picks the automatic step.");

  m.def(
      "exact_sample",
      [](const std::string& family, double t, const PhysicalParams& p, int nx, int nz, double Lx, double Lz,
         double k, double mm, double a, double width, double amplitude, double C1, double C2, double C3) {
        FamilyParams fp;
        fp.k = k;
        fp.m = mm;
        fp.a = a;
        fp.width = width;
        fp.amplitude = amplitude;
        fp.C1 = C1;
        fp.C2 = C2;
        fp.C3 = C3;
        return state_dict(make_family(family, fp, p).sample(Grid2D(nx, nz, Lx, Lz), t));
      },
      py::arg("family"), py::arg("t"), py::arg("params"), py::arg("nx") = 64, py::arg("nz") = 64,
      py::arg("Lx") = kTwoPi, py::arg("Lz") = kTwoPi, py::arg("k") = 1.0, py::arg("m") = 1.0, py::arg("a") = 1.0,
      py::arg("width") = 1.0, py::arg("amplitude") = 1.0, py::arg("C1") = 1.0, py::arg("C2") = 0.0,
      py::arg("C3") = 0.0);

  m.def(
      "pde_residual",
      [](const std::string& family, double t, double x, double z, const PhysicalParams& p, double k, double mm,
         double a) {
        FamilyParams fp;
        fp.k = k;
        fp.m = mm;
        fp.a = a;
        return pde_residual(make_family(family, fp, p)(t, x, z), p).max_relative();
      },
      py::arg("family"), py::arg("t"), py::arg("x"), py::arg("z"), py::arg("params"), py::arg("k") = 1.0,
      py::arg("m") = 1.0, py::arg("a") = 1.0, "Largest relative residual of an analytic family at one point.");

  m.def(
      "conserved_density",
      [](const std::string& vector, const Array& v, const Array& rho, const Array& psi, const PhysicalParams& p,
         double Lx, double Lz) {
        return to_array(density(conserved_vector_from_string(vector), make_state(v, rho, psi, Lx, Lz, 0.0), p));
      },
      py::arg("vector"), py::arg("v"), py::arg("rho"), py::arg("psi"), py::arg("params"), py::arg("Lx") = kTwoPi,
      py::arg("Lz") = kTwoPi);

  m.def(
      "divergence_check",
      [](const std::string& vector, const Array& v, const Array& rho, const Array& psi, const PhysicalParams& p,
         double Lx, double Lz) {
        const DivergenceCheck c =
            divergence_check(conserved_vector_from_string(vector), make_state(v, rho, psi, Lx, Lz, 0.0), p);
        return py::make_tuple(to_array(c.residual), c.scale);
      },
      py::arg("vector"), py::arg("v"), py::arg("rho"), py::arg("psi"), py::arg("params"), py::arg("Lx") = kTwoPi,
      py::arg("Lz") = kTwoPi, "Pointwise D_t C1 + D_x C2 + D_z C3 along the model tendencies, and its scale.");

  m.def(
      "theta_under_substitution",
      [](const Array& v, const Array& rho, const Array& psi, const PhysicalParams& p, double Lx, double Lz) {
        const FieldState s = make_state(v, rho, psi, Lx, Lz, 0.0);
        const Costate c = self_adjoint_substitution(s, p);
        return py::make_tuple(theta(s, c).max_abs(), theta_scale(s, c));
      },
      py::arg("v"), py::arg("rho"), py::arg("psi"), py::arg("params"), py::arg("Lx") = kTwoPi,
      py::arg("Lz") = kTwoPi);

  m.def(
      "is_divergence_energy",
      [](const PhysicalParams& p, int n, std::uint64_t seed) {
        const DivergenceVerdict v = is_divergence(energy_functional(p), Grid2D(n, n, kTwoPi, kTwoPi), 8, seed);
        return py::make_tuple(v.divergence, v.max_relative);
      },
      py::arg("params"), py::arg("n") = 32, py::arg("seed") = 1);

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed) {
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = run_suite(suite, seed);
        }
        std::vector<std::string> lines;
        for (const CheckResult& r : results) lines.push_back(format_check(r));
        return lines;
      },
      py::arg("suite"), py::arg("seed") = 1, "Report lines 'PASS|FAIL suite check measured tol'.");

  m.def("write_snapshot", [](const std::string& path, const Array& v, const Array& rho, const Array& psi, double t,
                             double Lx, double Lz) { write_snapshot(path, make_state(v, rho, psi, Lx, Lz, t)); },
        py::arg("path"), py::arg("v"), py::arg("rho"), py::arg("psi"), py::arg("t") = 0.0, py::arg("Lx") = kTwoPi,
        py::arg("Lz") = kTwoPi);
  m.def("read_snapshot", [](const std::string& path) { return state_dict(read_snapshot(path)); }, py::arg("path"));
}
