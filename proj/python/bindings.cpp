#include "fkg/dynamics.hpp"
#include "fkg/errors.hpp"
#include "fkg/fft.hpp"
#include "fkg/fit.hpp"
#include "fkg/grid.hpp"
#include "fkg/mass.hpp"
#include "fkg/mollifier.hpp"
#include "fkg/netsweep.hpp"
#include "fkg/rational.hpp"
#include "fkg/selftest.hpp"
#include "fkg/symbol.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

namespace py = pybind11;
using namespace fkg;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

std::vector<Rational> parse_weights(const py::sequence& weights) {
    std::vector<Rational> w;
    for (const auto& item : weights) {
        if (py::isinstance<py::str>(item))
            w.push_back(parse_rational(item.cast<std::string>()));
        else
            w.push_back(Rational(item.cast<long long>()));
    }
    return w;
}

/// Fixed problem structure: grid, operator symbol and fractional order.
struct Problem {
    GridPtr grid;
    RocklandSymbol symbol;
    double s;
};

Problem make_problem(const py::sequence& weights, std::vector<double> extents,
                     std::vector<int> counts, std::vector<int> exponents, double s) {
    DilationStructure d(parse_weights(weights));
    GridPtr g = make_grid(d, std::move(extents), std::move(counts));
    if (!(s > 0.0)) throw ConfigError("s must be positive");
    return Problem{g, RocklandSymbol(d, std::move(exponents)), s};
}

std::vector<py::ssize_t> shape_of(const BoxGrid& g) {
    std::vector<py::ssize_t> shape;
    for (int n : g.counts()) shape.push_back(n);
    return shape;
}

Field to_field(const GridPtr& g, const CArray& arr) {
    if (static_cast<std::size_t>(arr.size()) != g->size())
        throw std::invalid_argument("array size does not match the grid");
    Field f(g);
    std::memcpy(f.data(), arr.data(), g->size() * sizeof(cplx));
    return f;
}

py::array from_field(const Field& f) {
    py::array_t<cplx> arr(shape_of(*f.grid()));
    std::memcpy(arr.mutable_data(), f.data(), f.size() * sizeof(cplx));
    return arr;
}

Field mass_field(const Problem& pb, const py::object& mass) {
    if (mass.is_none()) return Field(pb.grid);
    return to_field(pb.grid, mass.cast<CArray>());
}

} // namespace

PYBIND11_MODULE(_fkglab, m) {
    m.doc() = "spectral laboratory for fractional wave equations with singular mass";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<ResolutionError>(m, "ResolutionError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<Problem>(m, "Problem")
        .def(py::init(&make_problem), py::arg("weights"), py::arg("extents"),
             py::arg("counts"), py::arg("exponents"), py::arg("s") = 1.0)
        .def_property_readonly("counts", [](const Problem& p) { return p.grid->counts(); })
        .def_property_readonly("extents", [](const Problem& p) { return p.grid->extents(); })
        .def_property_readonly("spacings", [](const Problem& p) { return p.grid->spacings(); })
        .def_property_readonly("cell_volume",
                               [](const Problem& p) { return p.grid->cell_volume(); })
        .def_property_readonly("q", [](const Problem& p) { return p.grid->dilation().q(); })
        .def_property_readonly("degree", [](const Problem& p) { return p.symbol.degree(); })
        .def_property_readonly("s", [](const Problem& p) { return p.s; })
        .def("coords",
             [](const Problem& p, int axis) {
                 const int n = p.grid->counts().at(static_cast<std::size_t>(axis));
                 py::array_t<double> out(std::vector<py::ssize_t>{n});
                 for (int i = 0; i < n; ++i) out.mutable_at(i) = p.grid->coord(axis, i);
                 return out;
             },
             py::arg("axis"))
        .def("fft",
             [](const Problem& p, const CArray& f) {
                 return from_field(forward_fft(to_field(p.grid, f)));
             })
        .def("ifft",
             [](const Problem& p, const CArray& f) {
                 return from_field(inverse_fft(to_field(p.grid, f)));
             })
        .def("power",
             [](const Problem& p, double sigma, const CArray& f) {
                 return from_field(apply_power(p.symbol, sigma, to_field(p.grid, f)));
             },
             py::arg("sigma"), py::arg("f"))
        .def("convolve",
             [](const Problem& p, const CArray& f, const CArray& g) {
                 return from_field(convolve(to_field(p.grid, f), to_field(p.grid, g)));
             })
        .def("mollifier",
             [](const Problem& p, double eps) {
                 return from_field(mollifier_scale(eps, p.grid));
             },
             py::arg("eps"))
        .def("mollifier_resolved",
             [](const Problem& p, double eps) { return mollifier_resolved(eps, *p.grid); },
             py::arg("eps"))
        .def("regularize_delta",
             [](const Problem& p, double eps, double weight) {
                 RegularizedMass rm = regularize(MassSpec::dirac_delta(weight), eps, p.grid,
                                                 p.symbol.degree() * p.s);
                 py::dict norms;
                 norms["l1"] = rm.norm_l1;
                 norms["linf"] = rm.norm_linf;
                 return py::make_tuple(from_field(rm.field), norms);
             },
             py::arg("eps"), py::arg("weight") = 1.0)
        .def("solve",
             [](const Problem& p, const CArray& u0, const CArray& u1, double T,
                const py::object& mass, double dt, int stride) {
                 KleinGordonIntegrator integ(p.grid, p.symbol, p.s, mass_field(p, mass));
                 Trajectory traj =
                     integ.solve(to_field(p.grid, u0), to_field(p.grid, u1), T, dt, stride);
                 const auto nsnap = static_cast<py::ssize_t>(traj.snapshots.size());
                 std::vector<py::ssize_t> shape = shape_of(*p.grid);
                 shape.insert(shape.begin(), nsnap);
                 py::array_t<cplx> u(shape);
                 const std::vector<py::ssize_t> flat{nsnap};
                 py::array_t<double> t(flat), energy(flat);
                 cplx* dst = u.mutable_data();
                 for (py::ssize_t i = 0; i < nsnap; ++i) {
                     const Snapshot& snap = traj.snapshots[static_cast<std::size_t>(i)];
                     std::memcpy(dst + static_cast<std::size_t>(i) * p.grid->size(),
                                 snap.u.data(), p.grid->size() * sizeof(cplx));
                     t.mutable_at(i) = snap.t;
                     energy.mutable_at(i) = snap.energy.total;
                 }
                 py::dict out;
                 out["t"] = t;
                 out["u"] = u;
                 out["energy"] = energy;
                 out["dt"] = traj.dt;
                 out["steps"] = traj.steps;
                 out["drift"] = traj.energy_drift();
                 return out;
             },
             py::arg("u0"), py::arg("u1"), py::arg("T"), py::arg("mass") = py::none(),
             py::arg("dt") = 0.0, py::arg("stride") = 10);

    m.def("fit_exponent",
          [](const std::vector<double>& eps, const std::vector<double>& values) {
              FitResult fit = fit_exponent(eps, values);
              py::dict out;
              out["slope"] = fit.slope;
              out["intercept"] = fit.intercept;
              out["residual"] = fit.residual;
              return out;
          },
          py::arg("eps"), py::arg("values"));

    m.def("negligibility_check",
          [](const std::vector<double>& eps, const std::vector<double>& values, int k_max,
             double floor) {
              NegligibilityReport rep = negligibility_check(eps, values, k_max, floor);
              py::list margins;
              for (const auto& km : rep.margins) {
                  py::dict d;
                  d["k"] = km.k;
                  d["pass"] = km.pass;
                  d["last_ratio"] = km.last_ratio;
                  d["above_floor"] = km.above_floor;
                  margins.append(d);
              }
              py::dict out;
              out["negligible"] = rep.negligible;
              out["floor"] = rep.floor;
              out["margins"] = margins;
              return out;
          },
          py::arg("eps"), py::arg("values"), py::arg("k_max") = 10, py::arg("floor") = 0.0);

    m.def("selftest", [] {
        std::ostringstream log;
        bool ok = run_selftest(log);
        return py::make_tuple(ok, log.str());
    });
}
