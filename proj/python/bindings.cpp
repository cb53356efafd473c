#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lqembed/cli.hpp"
#include "lqembed/embeddability.hpp"
#include "lqembed/errors.hpp"
#include "lqembed/moment_identities.hpp"
#include "lqembed/norm_family.hpp"
#include "lqembed/numeric_validation.hpp"
#include "lqembed/serialize.hpp"

namespace py = pybind11;
using namespace lqembed;
using exact::Rational;

namespace {

// Every function returns canonical JSON text; the Python layer decodes it.
std::string text(const io::json& j) { return io::dump(j); }

std::string moment_identity(int n, const std::string& q, int max_power) {
  const auto id = moments::derive_moment_identity(n, Rational::parse(q), max_power);
  auto j = io::to_json(id);
  return text(j);
}

std::string convexity_interval(int s, int n) {
  return text(io::to_json(norms::convexity_interval(norms::PerturbedNormFamily::standard(n, s))));
}

std::string is_norm(int n, int s, const std::string& lambda) {
  return text(io::to_json(norms::is_norm(norms::PerturbedNormFamily::standard(n, s), Rational::parse(lambda))));
}

std::string density(int n, int s, const std::string& q) {
  return text(io::to_json(embed::density(norms::PerturbedNormFamily::standard(n, s), Rational::parse(q))));
}

std::string certify(int n, int s, const std::string& q, const std::string& lambda) {
  return text(io::to_json(
      embed::embeds(norms::PerturbedNormFamily::standard(n, s), Rational::parse(q), Rational::parse(lambda))));
}

std::string threshold(int n, int s, const std::string& q) {
  return text(io::to_json(embed::lambda_threshold(norms::PerturbedNormFamily::standard(n, s), Rational::parse(q))));
}

std::string quadratic_window(int n) { return text(io::to_json(embed::quadratic_window_data(n))); }

std::string quartic_window() { return text(io::to_json(embed::quartic_family_window())); }

std::string counterexample(int n) { return text(io::to_json(embed::counterexample_bundle(n))); }

std::string validate_representation(int n, int s, const std::string& q, const std::string& lambda, int samples,
                                    std::uint64_t seed, int theta, int phi) {
  numeric::QuadratureResolution grid;
  grid.theta = theta;
  grid.phi = phi;
  const auto rep = embed::density(norms::PerturbedNormFamily::standard(n, s), Rational::parse(q));
  return text(io::to_json(numeric::validate_representation(rep, Rational::parse(lambda), samples, seed, grid)));
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"lqembed"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_lqembed, m) {
  m.doc() = "Exact embeddability certificates for perturbed Euclidean norms";

  static py::exception<Error> base(m, "Error");
  static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
  static py::exception<NotANorm> not_a_norm(m, "NotANorm", base.ptr());
  static py::exception<DegenerateWindow> degenerate(m, "DegenerateWindow", base.ptr());
  static py::exception<ConsistencyError> consistency(m, "ConsistencyError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidInput& e) {
      invalid(e.what());
    } catch (const NotANorm& e) {
      not_a_norm(e.what());
    } catch (const DegenerateWindow& e) {
      degenerate(e.what());
    } catch (const ConsistencyError& e) {
      consistency(e.what());
    } catch (const Error& e) {
      base(e.what());
    }
  });

  m.def("moment_identity", &moment_identity, py::arg("n"), py::arg("q"), py::arg("max_power"));
  m.def("convexity_interval", &convexity_interval, py::arg("s"), py::arg("n") = 3);
  m.def("is_norm", &is_norm, py::arg("n"), py::arg("s"), py::arg("lam"));
  m.def("density", &density, py::arg("n"), py::arg("s"), py::arg("q"));
  m.def("certify", &certify, py::arg("n"), py::arg("s"), py::arg("q"), py::arg("lam"));
  m.def("threshold", &threshold, py::arg("n"), py::arg("s"), py::arg("q"));
  m.def("quadratic_window", &quadratic_window, py::arg("n"));
  m.def("quartic_window", &quartic_window);
  m.def("counterexample", &counterexample, py::arg("n"));
  m.def("validate_representation", &validate_representation, py::arg("n"), py::arg("s"), py::arg("q"),
        py::arg("lam"), py::arg("samples") = 20, py::arg("seed") = 1, py::arg("theta") = 200, py::arg("phi") = 400);
  m.def("run_cli", &run_cli, py::arg("args"));
}
