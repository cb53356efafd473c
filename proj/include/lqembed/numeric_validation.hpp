#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lqembed/embeddability.hpp"
#include "lqembed/exact/rational.hpp"
#include "lqembed/norm_family.hpp"

namespace lqembed::numeric {

using exact::Rational;

/// Largest dimension for which any quadrature (Monte Carlo) is offered.
inline constexpr int kMaxDimension = 64;

enum class Scheme { Circle, ProductGrid, MonteCarlo };
std::string to_string(Scheme s);

struct QuadratureResolution {
  int theta = 200;  // Gauss-Legendre nodes in v with cos(theta) = +-v^2, split evenly at the equator
  int phi = 400;    // trapezoid nodes in the azimuth; for n = 2 the number of circle nodes
  std::size_t monte_carlo_points = 1'000'000;
  std::uint64_t monte_carlo_seed = 1;
};

/// Nodes and weights for the unnormalised surface measure on S^{n-1} in R^n.
/// Deterministic grids (n = 2, 3) have their pole at e_n and Gauss-Legendre
/// panel breaks on the great circle orthogonal to it.
struct SphereQuadrature {
  int n = 0;
  Scheme scheme = Scheme::ProductGrid;
  std::vector<double> nodes;  // row-major, n coordinates per node
  std::vector<double> weights;
  double total_weight = 0.0;

  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
  double integrate(const std::function<double(std::span<const double>)>& f) const;
};

/// Surface area 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Throws InvalidInput for n < 2, n > kMaxDimension, fewer than 8 nodes per
/// axis, or resolutions beyond the configured caps.
SphereQuadrature build_quadrature(int n, const QuadratureResolution& resolution = {});

/// The pass flag holds exactly when max_rel_error <= tolerance. The meaning of
/// the error metric is fixed per report kind and described in `detail`.
struct ValidationReport {
  std::string name;
  std::size_t samples = 0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  bool informational = false;
  std::optional<std::string> skipped;
  std::string detail;
  std::map<std::string, double> metrics;
  std::vector<std::vector<double>> witness;

  /// A failure that must stop the caller.
  bool required_failure() const { return !pass && !informational && !skipped; }
};

/// Compares N_lambda(x)^q with prefactor * sum |(x, xi)|^q b(xi_n^2) over the
/// quadrature at `samples` uniform points x. For n <= 3 the grid pole is
/// aligned with x and the grid is turned by a random rotation about x.
/// Throws NotANorm outside the norm interval.
ValidationReport validate_representation(const embed::DensityRepresentation& rep, const Rational& lambda,
                                         int samples, std::uint64_t seed,
                                         const QuadratureResolution& resolution = {});

/// Minimum eigenvalue of [exp(-N(x_i - x_j)^q)] over random Gaussian points.
/// Required to pass when the configuration is certified embeddable (or
/// lambda = 0 with 0 < q <= 2), informational otherwise.
ValidationReport gram_psd_check(const norms::PerturbedNormFamily& family, const Rational& q, const Rational& lambda,
                                int points, int trials, std::uint64_t seed);

/// Midpoint convexity probe. Inside the certified interval: random pairs and
/// zero violations required. Outside by at least 1/1000: directed search
/// around the certified negative direction, a violation required. Otherwise
/// an informational random probe.
ValidationReport finite_difference_convexity(const norms::PerturbedNormFamily& family, const Rational& lambda,
                                             int samples, std::uint64_t seed);

}  // namespace lqembed::numeric
