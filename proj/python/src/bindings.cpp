#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "derand/app.hpp"
#include "derand/construction.hpp"
#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "derand/games.hpp"
#include "derand/report.hpp"
#include "derand/rng.hpp"

namespace py = pybind11;
using namespace derand;

namespace {

// Configs and reports cross the boundary as JSON text; the Python side
// wraps them in dicts.
py::tuple run_json(const std::string& config) {
  CommandResult res;
  {
    py::gil_scoped_release release;
    res = run_command(ExperimentConfig::from_json(nlohmann::json::parse(config)));
  }
  std::string report = res.report ? to_json(*res.report).dump() : std::string();
  return py::make_tuple(res.exit_code, report, res.text, res.message);
}

double exact_fraction_json(const std::string& config) {
  return exact_good_fraction(build_from_config(ExperimentConfig::from_json(nlohmann::json::parse(config))));
}

std::vector<std::uint64_t> stream_values(std::uint64_t seed, std::uint64_t index, std::size_t count) {
  RngStream rng(seed, index);
  std::vector<std::uint64_t> out(count);
  for (auto& x : out) x = rng.next();
  return out;
}

std::pair<std::string, std::string> even_odds_fraction(std::uint64_t rounds) {
  const auto r = even_odds_win_fraction(rounds);
  return {r.numerator().str(), r.denominator().str()};
}

}  // namespace

PYBIND11_MODULE(_derand, m) {
  m.def("version", &version);
  m.def("run_json", &run_json, py::arg("config"));
  m.def("exact_good_fraction_json", &exact_fraction_json, py::arg("config"));
  m.def("generate", &generate_instance_text, py::arg("spec"), py::arg("seed") = 0);
  m.def("construction_names", &construction_names);
  m.def("game_names", &game_names);
  m.def("stream_values", &stream_values, py::arg("seed"), py::arg("index"), py::arg("count"));
  m.def("even_odds_win_fraction", &even_odds_fraction, py::arg("rounds"));

  py::register_exception<Error>(m, "DerandError", PyExc_ValueError);
}
