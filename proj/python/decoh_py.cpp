#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decoh/decoherence.hpp"
#include "decoh/diffusion.hpp"
#include "decoh/model.hpp"
#include "decoh/run.hpp"

namespace py = pybind11;
using namespace decoh;

namespace {

CaseId parse_case(const std::string& tag) { return case_from_string(tag); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diffusion coefficients and decoherence factors for a subsystem "
              "coupled through an intermediate oscillator to a hot Ohmic bath";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("omega_B", &ModelParams::omega_B)
        .def_readwrite("lambda_c", &ModelParams::lambda_c)
        .def_readwrite("gamma0", &ModelParams::gamma0)
        .def_readwrite("kT", &ModelParams::kT)
        .def_readwrite("sigma", &ModelParams::sigma)
        .def_readwrite("sigma_A", &ModelParams::sigma_A)
        .def_readwrite("sigma_p0", &ModelParams::sigma_p0)
        .def_readwrite("hbar", &ModelParams::hbar)
        .def_readwrite("mass_A", &ModelParams::mass_A)
        .def_readwrite("mass_B", &ModelParams::mass_B)
        .def_readwrite("cutoff", &ModelParams::cutoff);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def_readonly("t0", &TimeSeries::t0)
        .def_readonly("dt", &TimeSeries::dt)
        .def_readonly("values", &TimeSeries::values)
        .def("time_at", &TimeSeries::time_at);

    m.def("diffusion_closed",
          [](double t, const ModelParams& p, const std::string& c) {
              return diffusion_closed(t, p, parse_case(c));
          },
          py::arg("t"), py::arg("params"), py::arg("case"));
    m.def("diffusion_quadrature",
          [](double t, const ModelParams& p, const std::string& c) {
              return diffusion_quadrature(t, p, parse_case(c));
          },
          py::arg("t"), py::arg("params"), py::arg("case"));
    m.def("diffusion_series",
          [](double horizon, std::size_t n, const ModelParams& p, const std::string& c) {
              return diffusion_series(horizon, n, p, parse_case(c));
          },
          py::arg("horizon"), py::arg("points"), py::arg("params"), py::arg("case"));
    m.def("gamma_factor",
          [](double horizon, std::size_t n, const ModelParams& p, const std::string& c) {
              return gamma_factor(horizon, n, p, parse_case(c));
          },
          py::arg("horizon"), py::arg("points"), py::arg("params"), py::arg("case"));
    m.def("t_dec_threshold",
          [](const TimeSeries& gamma, double epsilon) {
              return t_dec_threshold(gamma, epsilon);
          },
          py::arg("gamma_series"), py::arg("epsilon"));
}
