#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wgqed/conditions.hpp"
#include "wgqed/emitter.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/geometry.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/scattering.hpp"
#include "wgqed/selfenergy.hpp"

namespace py = pybind11;
using namespace wgqed;

namespace {

SelfEnergyOptions options(bool red_shift, double guard) {
    SelfEnergyOptions o;
    o.include_red_shift = red_shift;
    o.guard = guard;
    return o;
}

}  // namespace

PYBIND11_MODULE(_wgqed, m) {
    m.doc() = "Single-photon scattering off a V-type emitter in a rectangular waveguide";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<BoundaryError>(m, "BoundaryError", domain.ptr());
    py::register_exception<SingularResolvent>(m, "SingularResolvent", domain.ptr());
    py::register_exception<OracleFailure>(m, "OracleFailure", error.ptr());

    m.attr("LIGHT_SPEED") = kLightSpeed;

    py::class_<WaveguideGeometry>(m, "WaveguideGeometry")
        .def(py::init([](double a, double b, double c) {
                 WaveguideGeometry g{a, b, c};
                 g.validate();
                 return g;
             }),
             py::arg("a"), py::arg("b"), py::arg("c_light") = kLightSpeed)
        .def_static("from_aspect", &WaveguideGeometry::from_aspect, py::arg("b"), py::arg("aspect"),
                    py::arg("c_light") = kLightSpeed)
        .def_readonly("a", &WaveguideGeometry::a)
        .def_readonly("b", &WaveguideGeometry::b)
        .def_readonly("c_light", &WaveguideGeometry::c_light)
        .def_property_readonly("aspect", &WaveguideGeometry::aspect)
        .def("__repr__", [](const WaveguideGeometry& g) {
            return "WaveguideGeometry(a=" + std::to_string(g.a) + ", b=" + std::to_string(g.b) + ")";
        });

    py::class_<TmMode>(m, "TmMode")
        .def_readonly("m", &TmMode::m)
        .def_readonly("n", &TmMode::n)
        .def_readonly("cutoff", &TmMode::cutoff)
        .def_readonly("rank", &TmMode::rank)
        .def_property_readonly("parity", &TmMode::parity)
        .def_property_readonly("label", &TmMode::label)
        .def("__repr__", [](const TmMode& t) { return t.label() + "(" + std::to_string(t.cutoff) + ")"; });

    py::enum_<RegionKind>(m, "RegionKind")
        .value("cutoff", RegionKind::cutoff)
        .value("single_mode", RegionKind::single_mode)
        .value("multi_mode", RegionKind::multi_mode)
        .value("boundary", RegionKind::boundary);

    py::class_<Region>(m, "Region")
        .def_readonly("kind", &Region::kind)
        .def_readonly("j_max", &Region::j_max)
        .def_readonly("boundary_rank", &Region::boundary_rank);

    m.def("cutoff", &cutoff, py::arg("geometry"), py::arg("m"), py::arg("n"));
    m.def("enumerate_modes", &enumerate_modes, py::arg("geometry"), py::arg("omega_max"));
    m.def("lowest_modes", &lowest_modes, py::arg("geometry"), py::arg("count"));
    m.def("state_density", &state_density, py::arg("mode"), py::arg("omega"));
    m.def("critical_size", &critical_size, py::arg("omega_in"), py::arg("aspect"), py::arg("m"), py::arg("n"),
          py::arg("c_light") = kLightSpeed);
    m.def("classify_region", &classify_region, py::arg("geometry"), py::arg("omega_in"), py::arg("guard") = 0.0);

    py::enum_<EmitterVariant>(m, "EmitterVariant")
        .value("generic", EmitterVariant::generic)
        .value("degenerate", EmitterVariant::degenerate)
        .value("two_level", EmitterVariant::two_level);

    py::class_<EmitterParams>(m, "EmitterParams")
        .def(py::init([](double o1, double o2, double l1, double l2) {
                 EmitterParams em{o1, o2, l1, l2};
                 em.validate();
                 return em;
             }),
             py::arg("omega1"), py::arg("omega2"), py::arg("lambda1"), py::arg("lambda2"))
        .def_readonly("omega1", &EmitterParams::omega1)
        .def_readonly("omega2", &EmitterParams::omega2)
        .def_readonly("lambda1", &EmitterParams::lambda1)
        .def_readonly("lambda2", &EmitterParams::lambda2)
        .def_property_readonly("variant", &EmitterParams::variant);

    m.def("lambda_from_dipole", &lambda_from_dipole, py::arg("dipole"), py::arg("geometry"));

    m.def("decay_rate", &decay_rate, py::arg("emitter"), py::arg("transition"), py::arg("mode"), py::arg("energy"));
    m.def("lamb_shift", &lamb_shift, py::arg("emitter"), py::arg("transition"), py::arg("mode"), py::arg("energy"),
          py::arg("include_red_shift") = false);
    m.def(
        "h_total",
        [](const EmitterParams& em, int i, const WaveguideGeometry& g, double e, bool red, double guard) {
            return h_total(em, i, g, e, options(red, guard));
        },
        py::arg("emitter"), py::arg("transition"), py::arg("geometry"), py::arg("energy"),
        py::arg("include_red_shift") = false, py::arg("guard") = kCutoffGuard);
    m.def(
        "f_eval",
        [](const EmitterParams& em, const WaveguideGeometry& g, double e, bool red, double guard) {
            return f_eval(em, g, e, options(red, guard)).f;
        },
        py::arg("emitter"), py::arg("geometry"), py::arg("energy"), py::arg("include_red_shift") = false,
        py::arg("guard") = kCutoffGuard, "f(E) in the form selected by the emitter variant.");
    m.def("h_numeric_oracle",
          [](const EmitterParams& em, int i, const TmMode& mode, double e) { return h_numeric_oracle(em, i, mode, e); },
          py::arg("emitter"), py::arg("transition"), py::arg("mode"), py::arg("energy"));

    py::class_<InputState>(m, "InputState")
        .def_readonly("energy", &InputState::energy)
        .def_readonly("amplitudes", &InputState::amplitudes)
        .def_readonly("modes", &InputState::modes)
        .def_property_readonly("j_max", &InputState::j_max);

    m.def("make_single_mode", &make_single_mode, py::arg("geometry"), py::arg("omega_in"), py::arg("n"));
    m.def("make_css", &make_css, py::arg("geometry"), py::arg("omega_in"));
    m.def(
        "make_dark",
        [](const WaveguideGeometry& g, double e, const std::vector<complex>& free) { return make_dark(g, e, free); },
        py::arg("geometry"), py::arg("omega_in"), py::arg("free") = std::vector<complex>{});
    m.def(
        "make_custom",
        [](const WaveguideGeometry& g, double e, const std::vector<complex>& c, bool normalize) {
            return make_custom(g, e, c, normalize);
        },
        py::arg("geometry"), py::arg("omega_in"), py::arg("amplitudes"), py::arg("normalize") = false);

    py::enum_<CutoffResonance>(m, "CutoffResonance")
        .value("none", CutoffResonance::none)
        .value("occupied", CutoffResonance::occupied)
        .value("unoccupied", CutoffResonance::unoccupied);

    py::class_<ScatteringResult>(m, "ScatteringResult")
        .def_readonly("energy", &ScatteringResult::energy)
        .def_readonly("variant", &ScatteringResult::variant)
        .def_readonly("resonance", &ScatteringResult::resonance)
        .def_readonly("f", &ScatteringResult::f)
        .def_readonly("r", &ScatteringResult::r)
        .def_readonly("reflect", &ScatteringResult::reflect)
        .def_readonly("transmit", &ScatteringResult::transmit)
        .def_readonly("width", &ScatteringResult::width)
        .def_readonly("R", &ScatteringResult::R)
        .def_readonly("T", &ScatteringResult::T);

    m.def(
        "scatter",
        [](const EmitterParams& em, const WaveguideGeometry& g, const InputState& in, bool red) {
            return scatter(em, g, in, options(red, kCutoffGuard));
        },
        py::arg("emitter"), py::arg("geometry"), py::arg("input"), py::arg("include_red_shift") = false);

    py::enum_<ClosedFormKind>(m, "ClosedFormKind")
        .value("single_mode_window", ClosedFormKind::single_mode_window)
        .value("css", ClosedFormKind::css);
    m.def(
        "closed_form_R",
        [](const EmitterParams& em, const WaveguideGeometry& g, double e, ClosedFormKind kind) {
            return closed_form_R(em, g, e, kind);
        },
        py::arg("emitter"), py::arg("geometry"), py::arg("omega_in"), py::arg("kind") = ClosedFormKind::css);

    py::class_<SingleModeLaws>(m, "SingleModeLaws")
        .def_readonly("input_rank", &SingleModeLaws::input_rank)
        .def_readonly("width", &SingleModeLaws::width)
        .def_readonly("total_width", &SingleModeLaws::total_width)
        .def_readonly("reflect", &SingleModeLaws::reflect)
        .def_readonly("transmit", &SingleModeLaws::transmit)
        .def_readonly("R", &SingleModeLaws::R)
        .def_readonly("peak_bound", &SingleModeLaws::peak_bound);
    m.def(
        "single_mode_input_laws",
        [](const EmitterParams& em, const WaveguideGeometry& g, double e, int n) {
            return single_mode_input_laws(em, g, e, n);
        },
        py::arg("emitter"), py::arg("geometry"), py::arg("omega_in"), py::arg("n"));

    py::class_<Window>(m, "Window")
        .def(py::init([](double lo, double hi) { return Window{lo, hi}; }), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Window::lo)
        .def_readonly("hi", &Window::hi)
        .def("contains", &Window::contains);
    m.def("channel_window", &channel_window, py::arg("geometry"), py::arg("j"));

    py::enum_<Regime>(m, "Regime")
        .value("i", Regime::i)
        .value("ii", Regime::ii)
        .value("iii", Regime::iii)
        .value("iv", Regime::iv)
        .value("unclassified", Regime::unclassified);

    m.def("eit_root", &eit_root, py::arg("emitter"), py::arg("window") = std::optional<Window>{});
    m.def(
        "fano_roots",
        [](const EmitterParams& em, const WaveguideGeometry& g, const Window& w, int grid_points) {
            RootScanOptions o;
            o.grid_points = grid_points;
            return fano_roots(em, g, w, o);
        },
        py::arg("emitter"), py::arg("geometry"), py::arg("window"), py::arg("grid_points") = 2000);
    m.def("classify_regime", &classify_regime, py::arg("emitter"), py::arg("geometry"));

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("window", &ConditionReport::window)
        .def_readonly("regime", &ConditionReport::regime)
        .def_readonly("eit", &ConditionReport::eit)
        .def_readonly("eit_residual", &ConditionReport::eit_residual)
        .def_readonly("fano", &ConditionReport::fano)
        .def_readonly("fano_residual", &ConditionReport::fano_residual)
        .def_readonly("fano_reflectivity", &ConditionReport::fano_reflectivity)
        .def_readonly("shift", &ConditionReport::shift);
    m.def(
        "analyze_conditions",
        [](const EmitterParams& em, const WaveguideGeometry& g, const Window& w) { return analyze_conditions(em, g, w); },
        py::arg("emitter"), py::arg("geometry"), py::arg("window"));
}
