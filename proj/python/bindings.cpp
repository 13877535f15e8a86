#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "lomo/corpus.hpp"
#include "lomo/maximal.hpp"
#include "lomo/multiplier.hpp"
#include "lomo/norms.hpp"
#include "lomo/rearrangement.hpp"
#include "lomo/verify.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

/// Cube-shaped array of ndim 1..3 sampled at cell centers of [-side/2, side/2)^n.
lomo::GridFunction to_grid(const Array& a, double side) {
  if (a.ndim() < 1 || a.ndim() > 3) throw py::value_error("samples must have 1, 2 or 3 dimensions");
  const auto n = static_cast<std::size_t>(a.shape(0));
  for (py::ssize_t k = 1; k < a.ndim(); ++k) {
    if (static_cast<std::size_t>(a.shape(k)) != n) throw py::value_error("samples must have equal extent on every axis");
  }
  const lomo::Domain d = lomo::make_domain(static_cast<int>(a.ndim()), side, n);
  return lomo::GridFunction(d, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const lomo::GridFunction& f) {
  const auto n = static_cast<py::ssize_t>(f.domain().points_per_axis);
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(f.domain().dim), n);
  Array out(shape);
  std::copy(f.samples().begin(), f.samples().end(), out.mutable_data());
  return out;
}

lomo::SchrodingerMode mode_of(const std::string& m) {
  if (m == "t1") return lomo::SchrodingerMode::t1;
  if (m == "t2") return lomo::SchrodingerMode::t2;
  throw py::value_error("mode must be 't1' or 't2'");
}

}  // namespace

PYBIND11_MODULE(_lomo, m) {
  m.doc() = "Native core: rearrangements, maximal operators, Lorentz-Morrey norms, spectral multipliers";
  m.attr("__version__") = LOMO_VERSION;

  m.def(
      "decreasing_rearrangement",
      [](const Array& samples, double side) {
        const auto prof = lomo::decreasing_rearrangement(to_grid(samples, side));
        return py::make_tuple(std::vector<double>(prof.breakpoints().begin(), prof.breakpoints().end()),
                              std::vector<double>(prof.values().begin(), prof.values().end()));
      },
      py::arg("samples"), py::arg("side"), "f* as (breakpoints, values); step k holds on [t_{k-1}, t_k).");

  m.def(
      "fractional_maximal",
      [](const Array& samples, double side, double alpha, std::size_t radii) {
        const auto f = to_grid(samples, side);
        return to_array(lomo::fractional_maximal(f, alpha, lomo::RadiusGrid::for_domain(f.domain(), radii)));
      },
      py::arg("samples"), py::arg("side"), py::arg("alpha") = 0.0, py::arg("radii") = 32);

  m.def(
      "lorentz_norm",
      [](const Array& samples, double side, double p, double q) { return lomo::lorentz_norm(to_grid(samples, side), p, q); },
      py::arg("samples"), py::arg("side"), py::arg("p"), py::arg("q"));

  m.def(
      "lorentz_morrey_norm",
      [](const Array& samples, double side, double p, double q, double lam, std::size_t stride, std::size_t radii) {
        const auto f = to_grid(samples, side);
        return lomo::lorentz_morrey_norm(f, p, q, lam, lomo::SweepSpec::strided(f, stride, radii)).value;
      },
      py::arg("samples"), py::arg("side"), py::arg("p"), py::arg("q"), py::arg("lam"), py::arg("stride") = 0,
      py::arg("radii") = 32);

  m.def(
      "morrey_norm",
      [](const Array& samples, double side, double p, double lam, std::size_t stride, std::size_t radii) {
        const auto f = to_grid(samples, side);
        return lomo::morrey_norm(f, p, lam, lomo::SweepSpec::strided(f, stride, radii)).value;
      },
      py::arg("samples"), py::arg("side"), py::arg("p"), py::arg("lam"), py::arg("stride") = 0, py::arg("radii") = 32);

  m.def(
      "bochner_riesz",
      [](const Array& samples, double side, double delta, double r) {
        const auto f = to_grid(samples, side);
        return to_array(lomo::bochner_riesz(f, lomo::MultiplierSpec::make(f.domain().dim, delta, r)));
      },
      py::arg("samples"), py::arg("side"), py::arg("delta"), py::arg("r"));

  m.def(
      "schrodinger",
      [](const Array& samples, const Array& potential, double side, double gamma, double beta, const std::string& mode) {
        const auto spec = lomo::SchrodingerSpec::make(to_grid(potential, side), gamma, beta, mode_of(mode));
        const auto f = to_grid(samples, side);
        return to_array(spec.mode == lomo::SchrodingerMode::t1 ? lomo::t1_apply(f, spec) : lomo::t2_apply(f, spec));
      },
      py::arg("samples"), py::arg("potential"), py::arg("side"), py::arg("gamma"), py::arg("beta"),
      py::arg("mode") = "t1");

  m.def(
      "corpus_sample",
      [](int dim, double side, std::size_t grid, std::uint64_t seed, std::size_t count) {
        const lomo::Domain d = lomo::make_domain(dim, side, grid);
        py::list out;
        for (const auto& e : lomo::generate_corpus(dim, side, seed, count)) out.append(py::make_tuple(e.label, to_array(e.sample(d))));
        return out;
      },
      py::arg("dim"), py::arg("side"), py::arg("grid"), py::arg("seed") = 42, py::arg("count") = 12);

  m.def("suite_names", &lomo::suite_names);

  m.def(
      "run_suites",
      [](const std::vector<std::string>& suites, int dim, std::size_t grid, std::uint64_t seed, std::size_t corpus_size,
         std::size_t radii, double side) {
        lomo::VerifyOptions o;
        o.dim = dim;
        o.grid = grid;
        o.seed = seed;
        o.corpus_size = corpus_size;
        o.radii_count = radii;
        o.side = side;
        lomo::VerificationRun run;
        {
          py::gil_scoped_release release;
          run = lomo::run_suites(suites, o);
        }
        return py::make_tuple(run.report.dump(), run.passed);
      },
      py::arg("suites"), py::arg("dim") = 1, py::arg("grid") = 256, py::arg("seed") = 42, py::arg("corpus_size") = 12,
      py::arg("radii") = 32, py::arg("side") = 2.0, "Returns (report JSON text, passed).");

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
