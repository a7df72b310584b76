#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mirrorphase/constants.hpp"
#include "mirrorphase/dissipator.hpp"
#include "mirrorphase/dynamics.hpp"
#include "mirrorphase/errors.hpp"
#include "mirrorphase/params.hpp"
#include "mirrorphase/phase.hpp"
#include "mirrorphase/spectral.hpp"
#include "mirrorphase/verify.hpp"

namespace py = pybind11;
using namespace mirrorphase;

PYBIND11_MODULE(_mirrorphase, m) {
    m.doc() = "Open-system dynamics and geometric phase of a two-level atom "
              "near a reflecting plane";

    py::register_exception<NumericalFailure>(m, "NumericalFailure");

    py::class_<AtomParams>(m, "AtomParams")
        .def(py::init([](double omega0, double gamma_ratio, double theta,
                         std::array<double, 3> alpha) {
                 AtomParams p{omega0, gamma_ratio, theta, alpha};
                 p.validate();
                 return p;
             }),
             py::arg("omega0"), py::arg("gamma_ratio"), py::arg("theta"),
             py::arg("alpha") = std::array<double, 3>{1.0 / 3, 1.0 / 3, 1.0 / 3})
        .def_readwrite("omega0", &AtomParams::omega0)
        .def_readwrite("gamma_ratio", &AtomParams::gamma_ratio)
        .def_readwrite("theta", &AtomParams::theta)
        .def_readwrite("alpha", &AtomParams::alpha)
        .def("validate", &AtomParams::validate);

    py::class_<Geometry>(m, "Geometry")
        .def_static("free_space", &Geometry::free_space)
        .def_static("from_u", &Geometry::from_u, py::arg("u"))
        .def_static("from_distance", &Geometry::from_distance, py::arg("z_m"),
                    py::arg("omega0_rad_s"))
        .def_property_readonly("u", &Geometry::u)
        .def_property_readonly("is_free_space", &Geometry::is_free_space);

    py::class_<DissipatorCoeffs>(m, "DissipatorCoeffs")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"),
             py::arg("omega_eff") = 1.0)
        .def_readwrite("a", &DissipatorCoeffs::a)
        .def_readwrite("b", &DissipatorCoeffs::b)
        .def_readwrite("omega_eff", &DissipatorCoeffs::omega_eff);

    py::class_<DensityMatrix2>(m, "DensityMatrix2")
        .def(py::init<>())
        .def_readwrite("ee", &DensityMatrix2::ee)
        .def_readwrite("eg", &DensityMatrix2::eg)
        .def_readwrite("gg", &DensityMatrix2::gg)
        .def("trace", &DensityMatrix2::trace)
        .def("det", &DensityMatrix2::det)
        .def("purity", &DensityMatrix2::purity);

    py::class_<EigenDecomp>(m, "EigenDecomp")
        .def_readonly("lambda_plus", &EigenDecomp::lambda_plus)
        .def_readonly("lambda_minus", &EigenDecomp::lambda_minus)
        .def_readonly("theta_tau", &EigenDecomp::theta_tau)
        .def_readonly("eta", &EigenDecomp::eta)
        .def_readonly("rho3", &EigenDecomp::rho3)
        .def_readonly("degenerate", &EigenDecomp::degenerate);

    py::class_<TrajectoryPoint>(m, "TrajectoryPoint")
        .def_readonly("phi", &TrajectoryPoint::phi)
        .def_readonly("state", &TrajectoryPoint::state);

    py::class_<PhaseResult>(m, "PhaseResult")
        .def_readonly("total", &PhaseResult::total)
        .def_readonly("geometric_part", &PhaseResult::geometric_part)
        .def_readonly("environment_part", &PhaseResult::environment_part);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("z_m", &SweepRow::z_m)
        .def_readonly("delta_rad", &SweepRow::delta_rad);

    m.attr("speed_of_light") = speed_of_light;
    m.def("u_from_distance", &u_from_distance, py::arg("z_m"), py::arg("omega0_rad_s"));
    m.def("mod_fx", &mod_fx, py::arg("u"));
    m.def("mod_fy", &mod_fy, py::arg("u"));
    m.def("mod_fz", &mod_fz, py::arg("u"));
    m.def("spectral_density", &spectral_density, py::arg("lambda_over_omega0"),
          py::arg("geom"), py::arg("params"));

    m.def("build_coeffs", &build_coeffs, py::arg("params"), py::arg("geom"));
    m.def("kossakowski_matrix", [](const DissipatorCoeffs& c) {
        const KossakowskiMatrix k = kossakowski_matrix(c);
        std::vector<std::vector<std::complex<double>>> out(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[i].push_back(k(i, j));
        return out;
    });

    m.def("rho_analytic", &rho_analytic, py::arg("phi"), py::arg("params"),
          py::arg("coeffs"));
    m.def("eigen_decompose", &eigen_decompose, py::arg("phi"), py::arg("params"),
          py::arg("coeffs"));
    m.def("evolve_numeric", &evolve_numeric, py::arg("params"), py::arg("coeffs"),
          py::arg("phi_end"), py::arg("steps"));
    m.def("sample_analytic", &sample_analytic, py::arg("params"), py::arg("coeffs"),
          py::arg("phi_end"), py::arg("points"));

    m.def("gp_general", &gp_general, py::arg("trajectory"), py::arg("coeffs"));
    m.def("gp_integral", &gp_integral, py::arg("params"), py::arg("coeffs"),
          py::arg("phi_end"));
    m.def("gp_closed_form", &gp_closed_form, py::arg("params"), py::arg("coeffs"),
          py::arg("phi_end"));
    m.def("gp_first_order", &gp_first_order, py::arg("params"), py::arg("geom"));
    m.def("optimal_theta", &optimal_theta);
    m.def("phase_difference", &phase_difference, py::arg("z_m"), py::arg("z0_m"),
          py::arg("params"), py::arg("T_s"));
    m.def(
        "sweep_z",
        [](const std::vector<double>& grid, double z0, const AtomParams& p,
           double T_s, unsigned threads) {
            return sweep_z(grid, z0, p, T_s, threads);
        },
        py::arg("z_grid_m"), py::arg("z0_m"), py::arg("params"), py::arg("T_s"),
        py::arg("threads") = 1u);
    m.def("nonradiative_ratio", &nonradiative_ratio, py::arg("z_m"),
          py::arg("beta_m3"));
}
