#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnvc/cli.hpp"
#include "pnvc/net.hpp"

namespace py = pybind11;
using namespace pnvc;

namespace {

FiringSequence transitions_by_name(const PetriNet& net, const std::vector<std::string>& names) {
    FiringSequence seq;
    for (const auto& n : names) {
        auto t = net.find_transition(n);
        if (!t) throw Error(ErrorCode::UnknownIdentifier, "unknown transition " + n);
        seq.push_back(*t);
    }
    return seq;
}

Marking marking_or_initial(const ParsedNet& pn, const std::optional<std::vector<Tokens>>& m) {
    return m ? Marking(*m) : pn.initial;
}

}  // namespace

PYBIND11_MODULE(_pnvc, mod) {
    mod.doc() = "Native core of pnvc";

    static py::exception<Error> error(mod, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<ParsedNet>(mod, "Net")
        .def_static("parse", [](const std::string& s) { return parse_net(s); }, py::arg("text"))
        .def_static("parse_json", [](const std::string& s) { return parse_net_json(s); }, py::arg("text"))
        .def_static("load", &load_net_file, py::arg("path"))
        .def_property_readonly("name", [](const ParsedNet& pn) { return pn.net.name(); })
        .def_property_readonly("places", [](const ParsedNet& pn) { return pn.net.places(); })
        .def_property_readonly("transitions", [](const ParsedNet& pn) { return pn.net.transitions(); })
        .def_property_readonly("initial", [](const ParsedNet& pn) { return pn.initial.values(); })
        .def("pre", [](const ParsedNet& pn, const std::string& p, const std::string& t) {
            return pn.net.pre(pn.net.place_index(p), transitions_by_name(pn.net, {t})[0]);
        })
        .def("post", [](const ParsedNet& pn, const std::string& p, const std::string& t) {
            return pn.net.post(pn.net.place_index(p), transitions_by_name(pn.net, {t})[0]);
        })
        .def("to_text", [](const ParsedNet& pn) { return to_text(pn.net, pn.initial); })
        .def("to_json", [](const ParsedNet& pn) { return to_json_text(pn.net, pn.initial); })
        .def("enabled",
             [](const ParsedNet& pn, const std::string& t, const std::optional<std::vector<Tokens>>& m) {
                 return is_enabled(pn.net, marking_or_initial(pn, m), transitions_by_name(pn.net, {t})[0]);
             },
             py::arg("transition"), py::arg("marking") = py::none())
        .def("fire",
             [](const ParsedNet& pn, const std::vector<std::string>& seq, const std::optional<std::vector<Tokens>>& m) {
                 return fire_sequence(pn.net, marking_or_initial(pn, m), transitions_by_name(pn.net, seq), false)
                     .final.values();
             },
             py::arg("sequence"), py::arg("marking") = py::none())
        .def("__repr__", [](const ParsedNet& pn) {
            return "<pnvc.Net " + pn.net.name() + ": " + std::to_string(pn.net.num_places()) + " places, " +
                   std::to_string(pn.net.num_transitions()) + " transitions>";
        });

    // Runs one command with a JSON options object (the config-file keys) and
    // returns (report JSON, exit code).
    mod.def(
        "run",
        [](const std::string& command, const std::string& options) {
            RunConfig cfg;
            auto c = parse_command(command);
            if (!c) throw Error(ErrorCode::InvalidArgument, "unknown command " + command);
            cfg.command = *c;
            apply_config_json(cfg, nlohmann::json::parse(options));
            Report r;
            {
                py::gil_scoped_release release;
                r = report(cfg);
            }
            return py::make_tuple(r.body.dump(), r.exit_code);
        },
        py::arg("command"), py::arg("options") = "{}");
}
