#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the symplectica command layer";
  m.def(
      "run",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        symplectica::cli::CommandResult r;
        {
          py::gil_scoped_release release;
          r = symplectica::cli::run(args, in);
        }
        return py::make_tuple(symplectica::cli::exit_code(r.status), r.to_json().dump());
      },
      py::arg("args"), py::arg("input") = "",
      "Run one verb. Returns (exit_code, result JSON text). Use \"--input\", \"-\" to read `input`.");
  m.def("verbs", &symplectica::cli::verbs);
  m.attr("__version__") = SYMPLECTICA_VERSION;
}
