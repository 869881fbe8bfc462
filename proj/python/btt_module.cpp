// btt._core: the JSON-level commands of the CLI, one function each. Inputs
// and outputs are JSON text; the Python package parses them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "btt/cli.hpp"
#include "btt/errors.hpp"

namespace py = pybind11;
using btt::io::json;

namespace {

using Result = std::pair<std::string, int>;

Result out(const btt::cli::CommandResult& r) { return {r.body.dump(), r.exit_code}; }

btt::cli::FieldOverride field_of(const std::optional<std::string>& f) {
  if (!f) return std::nullopt;
  return btt::io::field_from_string(*f);
}

btt::QPoint point_of(const std::vector<std::string>& xs) {
  btt::QPoint x;
  for (const auto& s : xs) x.push_back(btt::parse_rational(s));
  return x;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattices, norms and piecewise affine maps into the Bruhat-Tits building";

  static py::exception<btt::Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const btt::Error& e) {
      // args = (message, code name)
      py::tuple args = py::make_tuple(e.what(), std::string(btt::errc_name(e.code())));
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def(
      "validate",
      [](const std::string& map, const std::optional<std::string>& field) {
        return out(btt::cli::validate(btt::io::parse_text(map), field_of(field)));
      },
      py::arg("map"), py::arg("field") = py::none());
  m.def(
      "evaluate",
      [](const std::string& map, const std::string& cell, const std::vector<std::string>& at,
         const std::optional<std::string>& field) {
        return out(btt::cli::evaluate(btt::io::parse_text(map), cell, point_of(at), field_of(field)));
      },
      py::arg("map"), py::arg("cell"), py::arg("at"), py::arg("field") = py::none());
  m.def(
      "lattice",
      [](const std::string& map, const std::vector<std::string>& vertex, const std::vector<long>& u,
         const std::optional<std::string>& field) {
        return out(btt::cli::lattice(btt::io::parse_text(map), point_of(vertex), u, field_of(field)));
      },
      py::arg("map"), py::arg("vertex"), py::arg("character"), py::arg("field") = py::none());
  m.def(
      "generic_fiber",
      [](const std::string& map, const std::optional<std::string>& field) {
        return out(btt::cli::generic_fiber(btt::io::parse_text(map), field_of(field)));
      },
      py::arg("map"), py::arg("field") = py::none());
  m.def(
      "split",
      [](const std::string& map, std::optional<int> depth, long far_cap, const std::optional<std::string>& field) {
        btt::SplitOptions opts{depth.value_or(btt::cli::default_depth()), far_cap};
        if (opts.depth < 0 || opts.depth > 16) throw btt::Error(btt::Errc::Parse, "depth must be in 0..16");
        return out(btt::cli::split(btt::io::parse_text(map), opts, field_of(field)));
      },
      py::arg("map"), py::arg("depth") = py::none(), py::arg("far_cap") = btt::SplitOptions{}.far_cap,
      py::arg("field") = py::none());
  m.def(
      "hom",
      [](const std::string& map, const std::string& morphism, std::uint64_t seed, std::size_t samples,
         const std::optional<std::string>& field) {
        return out(btt::cli::hom(btt::io::parse_text(map), btt::io::parse_text(morphism), {seed, samples},
                                 field_of(field)));
      },
      py::arg("map"), py::arg("morphism"), py::arg("seed") = 0, py::arg("samples") = 0,
      py::arg("field") = py::none());

  m.def(
      "tree_neighbors",
      [](const std::string& field, const std::string& center) {
        return out(btt::cli::tree_neighbors(btt::io::field_from_string(field), center));
      },
      py::arg("field") = "padic:2", py::arg("center") = "0:0");
  m.def(
      "tree_geodesic",
      [](const std::string& from, const std::string& to, const std::string& field) {
        return out(btt::cli::tree_geodesic(btt::io::field_from_string(field), from, to));
      },
      py::arg("source"), py::arg("target"), py::arg("field") = "padic:2");
  m.def(
      "tree_helly",
      [](const std::vector<std::string>& vertices, const std::string& field) {
        return out(btt::cli::tree_helly(btt::io::field_from_string(field), vertices));
      },
      py::arg("vertices"), py::arg("field") = "padic:2");
  m.def(
      "tree_dot",
      [](const std::string& field, const std::string& center, int radius, int cap) {
        return btt::cli::tree_dot(btt::io::field_from_string(field), center, radius, cap).body.get<std::string>();
      },
      py::arg("field") = "padic:2", py::arg("center") = "0:0", py::arg("radius") = 2, py::arg("radius_cap") = 8);
}
