#include "lqembed/numeric_validation.hpp"

#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "lqembed/errors.hpp"

namespace lqembed::numeric {

namespace {

constexpr int kMaxAxisNodes = 4000;
constexpr std::size_t kMaxMonteCarlo = 20'000'000;
constexpr std::size_t kMinMonteCarlo = 1000;

struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

// Nodes on [a, b].
GaussLegendre gauss_legendre(int count, double a, double b) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(count)), &gsl_integration_glfixed_table_free);
  GaussLegendre g;
  for (int i = 0; i < count; ++i) {
    double xi = 0.0;
    double wi = 0.0;
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &xi, &wi, table.get());
    g.x.push_back(xi);
    g.w.push_back(wi);
  }
  return g;
}

std::vector<double> gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& c : v) c = normal(rng);
  return v;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

std::vector<double> unit_vector(std::mt19937_64& rng, int n) {
  std::vector<double> v;
  double r = 0.0;
  do {
    v = gaussian_vector(rng, n);
    r = norm2(v);
  } while (r == 0.0);
  for (double& c : v) c /= r;
  return v;
}

// Orthogonal matrix whose last column is x (unit), other columns random.
Eigen::MatrixXd frame_with_last_axis(std::mt19937_64& rng, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) a(i, 0) = x[static_cast<std::size_t>(i)];
  for (int j = 1; j < n; ++j) {
    const auto g = gaussian_vector(rng, n);
    for (int i = 0; i < n; ++i) a(i, j) = g[static_cast<std::size_t>(i)];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  if (q.col(0).dot(a.col(0)) < 0) q.col(0) *= -1.0;
  Eigen::MatrixXd out(n, n);
  for (int j = 1; j < n; ++j) out.col(j - 1) = q.col(j);
  out.col(n - 1) = q.col(0);
  return out;
}

std::string lambda_tag(const Rational& lambda) { return "lambda=" + lambda.str(); }

ValidationReport finish(ValidationReport r) {
  r.pass = r.max_rel_error <= r.tolerance;
  return r;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Circle: return "circle-gauss-legendre";
    case Scheme::ProductGrid: return "product-gauss-legendre-trapezoid";
    case Scheme::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

double SphereQuadrature::integrate(const std::function<double(std::span<const double>)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) acc += weights[i] * f(point(i));
  return acc;
}

SphereQuadrature build_quadrature(int n, const QuadratureResolution& res) {
  if (n < 2) throw InvalidInput("quadrature needs n >= 2");
  if (n > kMaxDimension) throw InvalidInput("no quadrature beyond n = " + std::to_string(kMaxDimension));
  SphereQuadrature q;
  q.n = n;
  if (n == 2) {
    if (res.phi < 8 || res.phi > kMaxAxisNodes) throw InvalidInput("circle resolution must be in [8, 4000]");
    q.scheme = Scheme::Circle;
    const int per_panel = (res.phi + 3) / 4;
    for (int panel = 0; panel < 4; ++panel) {
      const double a = panel * std::numbers::pi / 2;
      const auto g = gauss_legendre(per_panel, a, a + std::numbers::pi / 2);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        q.nodes.push_back(std::sin(g.x[i]));
        q.nodes.push_back(std::cos(g.x[i]));
        q.weights.push_back(g.w[i]);
      }
    }
  } else if (n == 3) {
    if (res.theta < 8 || res.phi < 8) throw InvalidInput("grid resolution below 8 nodes per axis");
    if (res.theta > kMaxAxisNodes || res.phi > 2 * kMaxAxisNodes) throw InvalidInput("grid resolution too large");
    q.scheme = Scheme::ProductGrid;
    const int half = (res.theta + 1) / 2;
    const double dphi = 2 * std::numbers::pi / res.phi;
    // cos(theta) = +-v^2 with v Gauss-Legendre on [0, 1]: smooths |cos(theta)|^q at the equator.
    const auto g = gauss_legendre(half, 0.0, 1.0);
    for (double side : {-1.0, 1.0}) {
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double c = side * g.x[i] * g.x[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < res.phi; ++j) {
          const double phi = j * dphi;
          q.nodes.push_back(s * std::cos(phi));
          q.nodes.push_back(s * std::sin(phi));
          q.nodes.push_back(c);
          q.weights.push_back(2.0 * g.x[i] * g.w[i] * dphi);
        }
      }
    }
  } else {
    if (res.monte_carlo_points < kMinMonteCarlo || res.monte_carlo_points > kMaxMonteCarlo) {
      throw InvalidInput("Monte Carlo point count must be in [1000, 20000000]");
    }
    q.scheme = Scheme::MonteCarlo;
    std::mt19937_64 rng(res.monte_carlo_seed);
    const double w = sphere_area(n) / static_cast<double>(res.monte_carlo_points);
    q.nodes.reserve(res.monte_carlo_points * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < res.monte_carlo_points; ++i) {
      const auto v = unit_vector(rng, n);
      q.nodes.insert(q.nodes.end(), v.begin(), v.end());
    }
    q.weights.assign(res.monte_carlo_points, w);
  }
  for (double w : q.weights) q.total_weight += w;
  return q;
}

ValidationReport validate_representation(const embed::DensityRepresentation& rep, const Rational& lambda,
                                         int samples, std::uint64_t seed, const QuadratureResolution& res) {
  ValidationReport r;
  r.name = "representation n=" + std::to_string(rep.n()) + " s=" + std::to_string(rep.family.s) +
           " q=" + rep.q.str() + " " + lambda_tag(lambda);
  r.seed = seed;
  r.tolerance = rep.q < Rational(1) ? 1e-3 : 1e-5;
  r.detail = "max over samples of |N^q - prefactor * quadrature| / N^q";
  if (rep.n() > kMaxDimension) {
    r.skipped = "no quadrature for n = " + std::to_string(rep.n());
    r.pass = true;
    return r;
  }
  const auto decision = norms::is_norm(rep.family, lambda);
  if (!decision.is_norm) throw NotANorm("lambda = " + lambda.str() + " is outside the norm interval");

  const norms::PerturbedNorm norm(rep.family, lambda);
  const std::vector<double> b = rep.at(lambda).to_double();
  auto density = [&b](double u) {
    double acc = 0.0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) acc = acc * u + *it;
    return acc;
  };
  const double prefactor = rep.prefactor.value();
  const double q = rep.q.to_double();
  const int n = rep.n();
  const SphereQuadrature grid = build_quadrature(n, res);
  if (grid.scheme == Scheme::MonteCarlo) {
    r.informational = true;
    r.tolerance = 1e-2;
    r.detail += "; Monte Carlo, advisory only";
  }
  r.metrics["nodes"] = static_cast<double>(grid.size());

  std::mt19937_64 rng(seed);
  double worst_se = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto x = unit_vector(rng, n);
    double integral = 0.0;
    double sum_sq = 0.0;
    if (grid.scheme == Scheme::MonteCarlo) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto xi = grid.point(i);
        double dot = 0.0;
        for (int c = 0; c < n; ++c) dot += x[static_cast<std::size_t>(c)] * xi[static_cast<std::size_t>(c)];
        const double v = std::pow(std::abs(dot), q) * density(xi.back() * xi.back());
        integral += grid.weights[i] * v;
        sum_sq += v * v;
      }
      const double mean = integral / grid.total_weight;
      const double var = sum_sq / static_cast<double>(grid.size()) - mean * mean;
      worst_se = std::max(worst_se, std::sqrt(std::max(var, 0.0) / static_cast<double>(grid.size())) / mean);
    } else {
      // Nodes are rotated by a frame whose last axis is x: (x, xi) is the
      // node's last coordinate and xi_n is the frame's last row applied to it.
      const Eigen::MatrixXd frame = frame_with_last_axis(rng, x);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto z = grid.point(i);
        double xn = 0.0;
        for (int c = 0; c < n; ++c) xn += frame(n - 1, c) * z[static_cast<std::size_t>(c)];
        integral += grid.weights[i] * std::pow(std::abs(z.back()), q) * density(xn * xn);
      }
    }
    const double expected = std::pow(norm(x), q);
    r.max_rel_error = std::max(r.max_rel_error, std::abs(prefactor * integral - expected) / expected);
    ++r.samples;
  }
  if (grid.scheme == Scheme::MonteCarlo) r.metrics["relative_standard_error"] = worst_se;
  return finish(r);
}

ValidationReport gram_psd_check(const norms::PerturbedNormFamily& family, const Rational& q, const Rational& lambda,
                                int points, int trials, std::uint64_t seed) {
  ValidationReport r;
  r.name = "gram-psd n=" + std::to_string(family.n) + " s=" + std::to_string(family.s) + " q=" + q.str() + " " +
           lambda_tag(lambda);
  r.seed = seed;
  r.tolerance = 1e-8;
  r.detail = "max over trials of max(0, -min eigenvalue / max entry) of [exp(-N(x_i - x_j)^q)]";
  if (q.sign() <= 0) throw InvalidInput("q must be positive");
  if (!norms::is_norm(family, lambda).is_norm) {
    throw NotANorm("lambda = " + lambda.str() + " is outside the norm interval");
  }
  bool required = false;
  if (lambda.is_zero()) {
    required = q <= Rational(2);
  } else {
    try {
      required = embed::embeds(family, q, lambda).embeds;
    } catch (const InvalidInput& e) {
      r.detail += "; no exact decision available: " + std::string(e.what());
    }
  }
  r.informational = !required;

  const norms::PerturbedNorm norm(family, lambda);
  const double qd = q.to_double();
  const int n = family.n;
  std::mt19937_64 rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<double>> xs;
    for (int i = 0; i < points; ++i) xs.push_back(gaussian_vector(rng, n));
    Eigen::MatrixXd m(points, points);
    std::vector<double> diff(static_cast<std::size_t>(n));
    for (int i = 0; i < points; ++i) {
      for (int j = 0; j <= i; ++j) {
        for (int c = 0; c < n; ++c) {
          diff[static_cast<std::size_t>(c)] =
              xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -
              xs[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        }
        m(i, j) = m(j, i) = std::exp(-std::pow(norm(diff), qd));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    const double violation = std::max(0.0, -min_eig / m.maxCoeff());
    if (min_eig < worst) worst = min_eig;
    if (violation > r.max_rel_error) {
      r.max_rel_error = violation;
      if (violation > r.tolerance) r.witness = xs;
    }
    ++r.samples;
  }
  r.metrics["min_eigenvalue"] = worst;
  return finish(r);
}

ValidationReport finite_difference_convexity(const norms::PerturbedNormFamily& family, const Rational& lambda,
                                             int samples, std::uint64_t seed) {
  ValidationReport r;
  r.seed = seed;
  const auto cert = norms::shared_convexity_interval(family);
  const norms::PerturbedNorm norm(family, lambda);
  const int n = family.n;
  const Rational margin(1, 1000);

  const bool inside = cert->contains(lambda);
  bool directed = false;
  if (!inside) {
    directed = (cert->upper && exact::compare(cert->upper->value, lambda - margin) <= 0) ||
               (cert->lower && exact::compare(cert->lower->value, lambda + margin) >= 0);
  }

  if (directed) {
    r.name = "convexity-directed-search n=" + std::to_string(n) + " s=" + std::to_string(family.s) + " " +
             lambda_tag(lambda);
    r.detail = "error metric is 0 when a midpoint violation is found and 1 otherwise";
    r.tolerance = 0.0;
    const auto decision = norms::is_norm(family, *cert, lambda);
    const double t = decision.direction_witness ? decision.direction_witness->to_double() : 0.5;
    r.metrics["witness_t"] = t;
    // The tangential form is negative at (sqrt(1-t), sqrt(t)) along (-sqrt(t), sqrt(1-t)).
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    std::vector<double> tau(static_cast<std::size_t>(n), 0.0);
    p.front() = std::sqrt(1.0 - t);
    p.back() = std::sqrt(t);
    tau.front() = -std::sqrt(t);
    tau.back() = std::sqrt(1.0 - t);
    double best = -std::numeric_limits<double>::infinity();
    double eps = 0.2;
    const int steps = std::clamp(samples, 1, 40);
    for (int k = 0; k < steps; ++k, eps *= 0.7) {
      std::vector<double> a = p;
      std::vector<double> b = p;
      for (int c = 0; c < n; ++c) {
        a[static_cast<std::size_t>(c)] += eps * tau[static_cast<std::size_t>(c)];
        b[static_cast<std::size_t>(c)] -= eps * tau[static_cast<std::size_t>(c)];
      }
      const double avg = 0.5 * (norm(a) + norm(b));
      const double excess = (norm(p) - avg) / avg;
      if (excess > best) {
        best = excess;
        if (excess > 1e-12) r.witness = {a, b};
      }
      ++r.samples;
    }
    r.metrics["max_violation"] = best;
    r.max_rel_error = best > 1e-12 ? 0.0 : 1.0;
    return finish(r);
  }

  r.name = "convexity-midpoint n=" + std::to_string(n) + " s=" + std::to_string(family.s) + " " + lambda_tag(lambda);
  r.detail = "max over random pairs of max(0, (N((x+y)/2) - (N(x)+N(y))/2) / ((N(x)+N(y))/2))";
  r.tolerance = 1e-12;
  r.informational = !inside;
  if (!inside) r.detail += "; lambda lies within 1/1000 outside the certified interval";
  std::mt19937_64 rng(seed);
  std::vector<double> mid(static_cast<std::size_t>(n));
  for (int k = 0; k < samples; ++k) {
    const auto x = gaussian_vector(rng, n);
    const auto y = gaussian_vector(rng, n);
    for (int c = 0; c < n; ++c) {
      mid[static_cast<std::size_t>(c)] = 0.5 * (x[static_cast<std::size_t>(c)] + y[static_cast<std::size_t>(c)]);
    }
    const double avg = 0.5 * (norm(x) + norm(y));
    const double excess = std::max(0.0, (norm(mid) - avg) / avg);
    if (excess > r.max_rel_error) {
      r.max_rel_error = excess;
      if (excess > r.tolerance) r.witness = {x, y};
    }
    ++r.samples;
  }
  return finish(r);
}

}  // namespace lqembed::numeric
