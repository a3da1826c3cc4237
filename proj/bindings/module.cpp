#include "prodinfluence/boxes.hpp"
#include "prodinfluence/core_model.hpp"
#include "prodinfluence/errors.hpp"
#include "prodinfluence/event_spec.hpp"
#include "prodinfluence/hfunction.hpp"
#include "prodinfluence/influence.hpp"
#include "prodinfluence/rational.hpp"
#include "prodinfluence/transport.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;

namespace pybind11::detail {

// Rational <-> fractions.Fraction, both lossless. Python ints and "p/q"
// strings are accepted on the way in; floats are deliberately rejected.
template <>
struct type_caster<prodinfluence::Rational> {
    PYBIND11_TYPE_CASTER(prodinfluence::Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (src.is_none() || PyFloat_Check(src.ptr())) {
            return false;
        }
        bool convertible = PyLong_Check(src.ptr()) || py::isinstance<py::str>(src);
        if (!convertible) {
            const auto fraction_type = py::module_::import("fractions").attr("Fraction");
            convertible = py::isinstance(src, fraction_type);
        }
        if (!convertible) {
            return false;
        }
        try {
            value = prodinfluence::parse_rational(py::str(src).cast<std::string>());
        } catch (const prodinfluence::InputError&) {
            return false;
        }
        return true;
    }

    static handle cast(const prodinfluence::Rational& value, return_value_policy, handle) {
        const auto fraction_type = py::module_::import("fractions").attr("Fraction");
        return fraction_type(prodinfluence::to_fraction_string(value)).release();
    }
};

} // namespace pybind11::detail

namespace {

using namespace prodinfluence;

std::vector<AtomId> as_atoms(const std::vector<AtomId>& coords) { return coords; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact influences on finite product spaces, with transport to box "
              "events on the Lebesgue cube.";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::class_<GroundSpace>(m, "GroundSpace")
        .def(py::init<std::vector<Rational>>(), py::arg("weights"))
        .def_static("uniform", &GroundSpace::uniform, py::arg("atom_count"))
        .def_static("fair_bit", &GroundSpace::fair_bit)
        .def_property_readonly("atom_count", &GroundSpace::atom_count)
        .def("weight", &GroundSpace::weight, py::arg("atom"))
        .def_property_readonly("weights", &GroundSpace::weights)
        .def(py::self == py::self);

    py::class_<ProductSpace>(m, "ProductSpace")
        .def(py::init<GroundSpace, std::size_t>(), py::arg("ground"), py::arg("dimension"))
        .def_property_readonly("ground", &ProductSpace::ground)
        .def_property_readonly("dimension", &ProductSpace::dimension)
        .def_property_readonly("atom_count", &ProductSpace::atom_count)
        .def("outcome_count", &ProductSpace::outcome_count)
        .def(
            "rank",
            [](const ProductSpace& space, const std::vector<AtomId>& coords) {
                return space.rank(coords);
            },
            py::arg("coords"))
        .def("unrank", &ProductSpace::unrank, py::arg("rank"))
        .def(py::self == py::self);

    py::class_<Event>(m, "Event")
        .def(py::init<ProductSpace, std::vector<bool>>(), py::arg("space"), py::arg("accepted"))
        .def_static("empty_event", &Event::empty_event, py::arg("space"))
        .def_static("full_event", &Event::full_event, py::arg("space"))
        .def_static("from_bits", &Event::from_bits, py::arg("space"), py::arg("bits"))
        .def_static("from_outcomes", &Event::from_outcomes, py::arg("space"),
                    py::arg("outcomes"))
        .def_property_readonly("space", &Event::space)
        .def("accepts_rank", &Event::accepts_rank, py::arg("rank"))
        .def(
            "accepts",
            [](const Event& event, const std::vector<AtomId>& coords) {
                return event.accepts(as_atoms(coords));
            },
            py::arg("coords"))
        .def("bits_string", &Event::bits_string)
        .def("complement", &Event::complement)
        .def(py::self == py::self);

    py::class_<HFunction>(m, "HFunction")
        .def_static("indicator01", &HFunction::indicator01)
        .def_static("quad_x_one_minus_x", &HFunction::quad_x_one_minus_x)
        .def_static("piecewise_polynomial", &HFunction::piecewise_polynomial,
                    py::arg("breakpoints"), py::arg("pieces"))
        .def_property_readonly("name", &HFunction::name)
        .def("__call__", &HFunction::operator(), py::arg("x"));

    m.def("event_measure", &event_measure, py::arg("event"));
    m.def("influence", &influence, py::arg("event"), py::arg("coord"));
    m.def("bkkkl_influence", &bkkkl_influence, py::arg("event"), py::arg("coord"));
    m.def("h_influence", &h_influence, py::arg("event"), py::arg("coord"), py::arg("h"));
    m.def("influence_vector", &influence_vector, py::arg("event"));
    m.def("bkkkl_influence_vector", &bkkkl_influence_vector, py::arg("event"));
    m.def("h_influence_vector", &h_influence_vector, py::arg("event"), py::arg("h"));

    py::class_<RatioField>(m, "RatioField")
        .def_property_readonly("applicable", &RatioField::applicable)
        .def_property_readonly("value",
                               [](const RatioField& field) -> py::object {
                                   if (!field.applicable()) {
                                       return py::none();
                                   }
                                   return py::float_(static_cast<double>(*field.value));
                               })
        .def_readonly("reason", &RatioField::reason);

    py::class_<InfluenceReport>(m, "InfluenceReport")
        .def_readonly("measure", &InfluenceReport::measure)
        .def_readonly("influences", &InfluenceReport::influences)
        .def_readonly("max_influence", &InfluenceReport::max_influence)
        .def_readonly("total_influence", &InfluenceReport::total_influence)
        .def_readonly("degenerate", &InfluenceReport::degenerate)
        .def_readonly("sum_ratio", &InfluenceReport::sum_ratio)
        .def_readonly("max_ratio", &InfluenceReport::max_ratio);
    m.def("influence_report", &influence_report, py::arg("event"));

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("estimate", &McEstimate::estimate)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("samples", &McEstimate::samples)
        .def_readonly("seed", &McEstimate::seed);
    m.def(
        "mc_influence",
        [](const Event& event, std::size_t coord, std::uint64_t samples, std::uint64_t seed) {
            return mc_influence(event, coord, samples, seed);
        },
        py::arg("event"), py::arg("coord"), py::arg("samples"), py::arg("seed"));

    py::class_<Interval>(m, "Interval")
        .def(py::init([](Rational lo, Rational hi) {
                 return Interval{std::move(lo), std::move(hi)};
             }),
             py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("empty", &Interval::empty)
        .def("length", &Interval::length)
        .def("contains", &Interval::contains, py::arg("x"))
        .def(py::self == py::self);

    py::class_<Box>(m, "Box")
        .def(py::init([](std::vector<Interval> intervals) {
                 return Box{std::move(intervals)};
             }),
             py::arg("intervals"))
        .def_readonly("intervals", &Box::intervals)
        .def("empty", &Box::empty)
        .def("volume", &Box::volume)
        .def(py::self == py::self);

    py::class_<BoxEvent>(m, "BoxEvent")
        .def(py::init<std::size_t, std::vector<Box>>(), py::arg("dimension"), py::arg("boxes"))
        .def_static("empty_event", &BoxEvent::empty_event, py::arg("dimension"))
        .def_static("full_cube", &BoxEvent::full_cube, py::arg("dimension"))
        .def_property_readonly("dimension", &BoxEvent::dimension)
        .def_property_readonly("boxes", &BoxEvent::boxes)
        .def(py::self == py::self);

    m.def("normalize", &normalize, py::arg("event"));
    m.def("box_measure", py::overload_cast<const BoxEvent&>(&box_measure), py::arg("event"));
    m.def("box_influence", py::overload_cast<const BoxEvent&, std::size_t>(&box_influence),
          py::arg("event"), py::arg("coord"));
    m.def("box_h_influence",
          py::overload_cast<const BoxEvent&, std::size_t, const HFunction&>(&box_h_influence),
          py::arg("event"), py::arg("coord"), py::arg("h"));

    py::class_<NullSlice>(m, "NullSlice")
        .def_readonly("coord", &NullSlice::coord)
        .def_readonly("at", &NullSlice::at)
        .def_readonly("included", &NullSlice::included)
        .def(py::self == py::self);

    py::class_<MarkedBoxEvent>(m, "MarkedBoxEvent")
        .def(py::init([](BoxEvent base) { return MarkedBoxEvent{std::move(base), {}}; }),
             py::arg("base"))
        .def_readonly("base", &MarkedBoxEvent::base)
        .def_readonly("slices", &MarkedBoxEvent::slices);

    m.def("add_null_slice",
          py::overload_cast<BoxEvent, std::size_t, Rational, bool>(&add_null_slice),
          py::arg("base"), py::arg("coord"), py::arg("at"), py::arg("included") = true);
    m.def("add_null_slice",
          py::overload_cast<MarkedBoxEvent, std::size_t, Rational, bool>(&add_null_slice),
          py::arg("event"), py::arg("coord"), py::arg("at"), py::arg("included") = true);
    m.def("box_measure", py::overload_cast<const MarkedBoxEvent&>(&box_measure),
          py::arg("event"));
    m.def("box_influence",
          py::overload_cast<const MarkedBoxEvent&, std::size_t>(&box_influence),
          py::arg("event"), py::arg("coord"));
    m.def("box_h_influence",
          py::overload_cast<const MarkedBoxEvent&, std::size_t, const HFunction&>(
              &box_h_influence),
          py::arg("event"), py::arg("coord"), py::arg("h"));
    m.def("bkkkl_line_influence", &bkkkl_line_influence, py::arg("event"), py::arg("coord"));

    py::class_<Transport>(m, "Transport")
        .def_property_readonly("ground", &Transport::ground)
        .def("cantor_point", &Transport::cantor_point, py::arg("atom"))
        .def_property_readonly("increasing_point_order", &Transport::increasing_point_order)
        .def_property_readonly("kappa_table", &Transport::kappa_table)
        .def("atom_interval", &Transport::atom_interval, py::arg("atom"));

    py::class_<VerificationRecord>(m, "VerificationRecord")
        .def_readonly("passed", &VerificationRecord::passed)
        .def("failure_report", &VerificationRecord::failure_report);

    m.def("build_transport", &build_transport, py::arg("ground"));
    m.def("push_event", &push_event, py::arg("transport"), py::arg("event"));
    m.def("verify_transport", &verify_transport, py::arg("transport"), py::arg("event"),
          py::arg("pushed"), py::arg("hs"));
    m.def("check_fibre_preservation", &check_fibre_preservation, py::arg("transport"),
          py::arg("event"), py::arg("coord"));

    m.def(
        "parse_event_spec", [](const std::string& text) { return parse_event_spec(text); },
        py::arg("text"),
        "Parse an event-spec JSON document into (ProductSpace, Event).");
    m.def(
        "serialize_event_json",
        [](const Event& event) { return serialize_event(event).dump(); }, py::arg("event"),
        "Event back to its spec document (bits form) as a JSON string.");
}
