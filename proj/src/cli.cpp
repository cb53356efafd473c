#include "lqembed/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "lqembed/errors.hpp"
#include "lqembed/serialize.hpp"

namespace lqembed::cli {

namespace {

using exact::Rational;
using io::json;
using io::to_json;

struct Outcome {
  json doc;
  std::string text;
  int code = kOk;
};

struct Options {
  std::string format = "human";
  std::string out_path;
  std::uint64_t seed = 1;

  int n = 3;
  int s = 2;
  std::string q;
  std::string lambda;
  int max_power = 4;

  std::vector<int> dims;
  std::string family_filter = "both";

  int samples = 20;
  int points = 12;
  int trials = 20;
  int convexity_samples = 10000;
  numeric::QuadratureResolution grid;
};

std::string approx(const exact::AlgebraicNumber& x) {
  if (auto r = x.rational(); r && r->is_integer()) return r->str();
  const std::string exact_text = x.str();
  const std::string dec = exact::to_decimal(x);
  return exact_text == dec ? exact_text : exact_text + " ~ " + dec;
}

std::string verdict(bool ok) { return ok ? "yes" : "NO"; }

std::string report_line(const numeric::ValidationReport& r) {
  std::ostringstream os;
  os << (r.skipped ? "SKIP" : r.pass ? "PASS" : r.informational ? "INFO" : "FAIL") << "  " << r.name;
  if (r.skipped) {
    os << "  (" << *r.skipped << ")";
  } else {
    os << "  error=" << r.max_rel_error << " tol=" << r.tolerance << " samples=" << r.samples << " seed=" << r.seed;
    for (const auto& [k, v] : r.metrics) os << " " << k << "=" << v;
    if (r.informational) os << "  [informational]";
  }
  return os.str();
}

// ---- identity ---------------------------------------------------------------

Outcome cmd_identity(const Options& o) {
  const auto identity = moments::derive_moment_identity(o.n, Rational::parse(o.q), o.max_power);
  Outcome out{to_json(identity), {}, kOk};
  std::ostringstream os;
  os << "moment identity n=" << identity.n << " q=" << identity.q << " (u = xi_n^2, unnormalised surface measure)\n";
  os << "prefactor C = " << identity.rows.front().prefactor.str() << "\n";
  for (const auto& r : identity.rows) {
    os << "  x_n^" << 2 * r.power << " = C * int |(x,xi)|^q (" << r.density.str("u") << ") dxi\n";
  }
  for (const auto& c : moments::reference_form_checks(identity)) {
    os << (c.matches ? "  match     " : "  MISMATCH  ") << c.form << ": expected " << c.expected << ", derived "
       << c.derived << "\n";
  }
  out.text = os.str();
  return out;
}

// ---- threshold --------------------------------------------------------------

Outcome cmd_threshold(const Options& o) {
  const auto family = norms::PerturbedNormFamily::standard(o.n, o.s);
  const Rational q = Rational::parse(o.q);
  const auto cert = embed::lambda_threshold(family, q);
  Outcome out{{{"family", to_json(family)}, {"threshold", to_json(cert)}}, {}, kOk};
  std::ostringstream os;
  os << family.describe() << "\n";
  os << "L_" << q << " threshold: " << approx(cert.threshold) << "\n";
  os << "  condition: " << cert.condition.str("lambda") << " = 0\n  binding:";
  for (const auto& b : cert.binding) os << " " << b;
  os << "\n";
  const bool checks_ok = cert.convexity_limited
                             ? cert.checks.nonneg_interior
                             : cert.checks.all();
  os << "  tightness checks: " << verdict(checks_ok) << "\n";
  if (!checks_ok) out.code = kConsistencyFailure;

  if (o.s == 2 && (q == Rational(1) || q == Rational(1, 2))) {
    const auto w = embed::quadratic_window_data(o.n);
    if (!w.window_nonempty) {
      const std::string warning = "degenerate window at n = " + std::to_string(o.n) + ": alpha_n = " +
                                  w.l1.threshold.str() + " equals the convexity bound " + w.convexity_upper.str();
      out.doc["warning"] = warning;
      os << "warning: " << warning << "\n";
      if (out.code == kOk) out.code = kDegenerateWindow;
    }
  }
  out.text = os.str();
  return out;
}

// ---- convexity --------------------------------------------------------------

Outcome cmd_convexity(const Options& o) {
  const auto family = norms::PerturbedNormFamily::standard(o.n, o.s);
  const auto cert = norms::convexity_interval(family);
  Outcome out{{{"family", to_json(family)}, {"convexity", to_json(cert)}}, {}, kOk};
  std::ostringstream os;
  os << family.describe() << "\n";
  os << "norm for lambda in [" << (cert.lower ? approx(cert.lower->value) : "-inf") << ", "
     << (cert.upper ? approx(cert.upper->value) : "+inf") << "]\n";
  os << "tangential form coefficients (x^2)^(d-k) (y^2)^k, k = 0..d:\n";
  for (const auto& c : cert.hessian.coefficients) os << "  " << c.str("lambda") << "\n";
  os << cert.factored_note << "\n" << cert.reduction_note << "\n";
  out.text = os.str();
  return out;
}

// ---- certify ----------------------------------------------------------------

Outcome cmd_certify(const Options& o) {
  const auto family = norms::PerturbedNormFamily::standard(o.n, o.s);
  const Rational q = Rational::parse(o.q);
  const Rational lambda = Rational::parse(o.lambda);
  const auto norm = norms::is_norm(family, lambda);
  if (!norm.is_norm) {
    throw NotANorm("lambda = " + lambda.str() + " is outside the norm interval of " + family.describe());
  }
  const auto d = embed::embeds(family, q, lambda);
  Outcome out{{{"family", to_json(family)}, {"norm", to_json(norm)}, {"embed", to_json(d)}}, {}, kOk};
  std::ostringstream os;
  os << family.describe() << ", lambda = " << lambda << "\n";
  os << "density b(u) = " << d.density.str("u") << "\n";
  os << "embeds in L_" << q << ": " << (d.embeds ? "yes" : "no") << "\n";
  os << "  minimum at u = " << approx(d.minimum.location) << ", value "
     << (d.minimum.value ? d.minimum.value->str() : "~" + std::to_string(d.minimum.approx)) << "\n";
  if (d.witness) os << "  witness u = " << *d.witness << ", b = " << *d.witness_value << "\n";
  out.text = os.str();
  return out;
}

// ---- counterexample ---------------------------------------------------------

Outcome cmd_counterexample(const Options& o) {
  const auto b = embed::counterexample_bundle(o.n);
  Outcome out{to_json(b), {}, kOk};
  std::ostringstream os;
  os << "n = " << b.n << ", lambda = " << b.lambda << "\n";
  os << "  norm: " << verdict(b.norm.is_norm) << " (interval [" << approx(b.convexity_lower) << ", "
     << approx(b.convexity_upper) << "])\n";
  os << "  embeds in L_1/2: " << verdict(b.embed.embeds) << ", minimum " << b.embed.minimum.location.str() << " -> "
     << (b.embed.minimum.value ? b.embed.minimum.value->str() : "?") << "\n";
  os << "  embeds in L_1: " << (b.non_embed.embeds ? "yes" : "no");
  if (b.non_embed.witness) os << ", b(" << *b.non_embed.witness << ") = " << *b.non_embed.witness_value;
  os << "\n  alpha_n = " << approx(b.alpha) << "\n";
  out.text = os.str();
  if (!b.norm.is_norm || !b.embed.embeds || b.non_embed.embeds) out.code = kConsistencyFailure;
  return out;
}

// ---- validation helpers -----------------------------------------------------

struct ValidationRun {
  json reports = json::array();
  std::string text;
  bool required_failure = false;

  void add(const numeric::ValidationReport& r) {
    reports.push_back(to_json(r));
    text += "  " + report_line(r) + "\n";
    required_failure = required_failure || r.required_failure();
  }
};

void representation_suite(ValidationRun& run, const Options& o, int s, const Rational& q,
                          const std::vector<Rational>& lambdas) {
  const auto family = norms::PerturbedNormFamily::standard(3, s);
  const auto rep = embed::density(family, q);
  for (const auto& l : lambdas) {
    run.add(numeric::validate_representation(rep, l, o.samples, o.seed, o.grid));
    run.add(numeric::gram_psd_check(family, q, l, o.points, o.trials, o.seed));
  }
}

// ---- reproduce --------------------------------------------------------------

Outcome cmd_reproduce(const Options& o) {
  Outcome out;
  std::ostringstream os;
  bool failure = false;
  bool degenerate = false;
  const bool first = o.family_filter != "quartic";
  const bool second = o.family_filter != "quadratic";

  if (first) {
    std::vector<int> dims = o.dims;
    if (dims.empty()) {
      for (int n = 3; n <= 10; ++n) dims.push_back(n);
    }
    json blocks = json::array();
    os << "s = 2 family: L_1/2 but not L_1\n";
    for (int n : dims) {
      const auto w = embed::quadratic_window_data(n);
      json block = to_json(w);
      if (!w.window_nonempty) {
        degenerate = true;
        block["notice"] = "degenerate: alpha_n coincides with the convexity bound 1/11";
        os << "  n=" << n << ": alpha_n = " << approx(w.l1.threshold) << " = convexity bound; window is empty\n";
      } else {
        failure = failure || !w.chain_holds();
        os << "  n=" << n << ": alpha_n = " << approx(w.l1.threshold) << " < 1/(6n-2) = " << w.one_over_6n_minus_2
           << " < 1/(6n-4) = " << w.one_over_6n_minus_4 << " < " << w.convexity_upper.str()
           << "  chain certified: " << verdict(w.chain_holds()) << "\n";
      }
      blocks.push_back(block);
    }
    out.doc["quadratic_family"] = blocks;
  }

  if (second) {
    const auto w = embed::quartic_family_window();
    out.doc["quartic_family"] = to_json(w);
    failure = failure || !w.window_nonempty || !w.half_below_quarter;
    os << "s = 4 family, n = 3: L_1/4 but not L_1/2\n";
    os << "  convexity endpoint " << approx(w.convexity_upper) << "\n";
    os << "  L_1/4 threshold    " << approx(w.l_quarter.threshold) << "\n";
    os << "  L_1/2 threshold    " << approx(w.l_half.threshold) << "\n";
    os << "  stated bound 1/28: lambda-bar <= 1/28 " << verdict(w.half_below_stated_bound)
       << (w.half_below_stated_bound ? " (1/28 is sufficient, not sharp)" : " (disagrees with the stated bound)")
       << "\n";
    os << "  window (" << approx(w.window_lower) << ", " << w.l_quarter.threshold.str()
       << "] nonempty: " << verdict(w.window_nonempty) << "\n";
  }

  ValidationRun run;
  if (first) {
    representation_suite(run, o, 2, Rational(1, 2), {Rational(0), Rational(1, 20), Rational(1, 14)});
    representation_suite(run, o, 2, Rational(1), {Rational(0), Rational(1, 20), Rational(1, 14)});
    const auto family = norms::PerturbedNormFamily::standard(3, 2);
    for (const auto& l : {Rational(0), Rational(1, 14), Rational(1, 11), Rational(19, 200)}) {
      run.add(numeric::finite_difference_convexity(family, l, o.convexity_samples, o.seed));
    }
  }
  if (second) {
    representation_suite(run, o, 4, Rational(1, 4), {Rational(1, 26)});
    representation_suite(run, o, 4, Rational(1, 2), {Rational(1, 30)});
    const auto family = norms::PerturbedNormFamily::standard(3, 4);
    for (const auto& l : {Rational(1, 26), Rational(1, 23), Rational(1, 23) + Rational(1, 500)}) {
      run.add(numeric::finite_difference_convexity(family, l, o.convexity_samples, o.seed));
    }
  }
  out.doc["seed"] = o.seed;
  out.doc["validation"] = run.reports;
  os << "numeric validation (seed " << o.seed << ")\n" << run.text;
  failure = failure || run.required_failure;

  out.code = failure ? kConsistencyFailure : degenerate ? kDegenerateWindow : kOk;
  out.text = os.str();
  return out;
}

// ---- validate ---------------------------------------------------------------

Outcome cmd_validate(const Options& o) {
  const auto family = norms::PerturbedNormFamily::standard(o.n, o.s);
  const Rational q = Rational::parse(o.q);
  const Rational lambda = Rational::parse(o.lambda);
  if (!norms::is_norm(family, lambda).is_norm) {
    throw NotANorm("lambda = " + lambda.str() + " is outside the norm interval of " + family.describe());
  }
  const auto rep = embed::density(family, q);
  const auto decision = embed::embeds(rep, lambda);
  ValidationRun run;
  run.add(numeric::validate_representation(rep, lambda, o.samples, o.seed, o.grid));
  run.add(numeric::gram_psd_check(family, q, lambda, o.points, o.trials, o.seed));
  run.add(numeric::finite_difference_convexity(family, lambda, o.convexity_samples, o.seed));

  Outcome out{{{"family", to_json(family)}, {"embed", to_json(decision)}, {"seed", o.seed}, {"reports", run.reports}},
              {},
              kOk};
  std::ostringstream os;
  os << family.describe() << ", q = " << q << ", lambda = " << lambda << "\n";
  os << "exact: embeds in L_" << q << ": " << (decision.embeds ? "yes" : "no") << "\n" << run.text;
  out.text = os.str();
  if (run.required_failure) out.code = kConsistencyFailure;
  return out;
}

// ---- output -----------------------------------------------------------------

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render(const Outcome& o, const std::string& format) {
  if (format == "json") return io::dump(o.doc);
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(o.doc, "", rows);
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows) out += csv_escape(k) + "," + csv_escape(v) + "\n";
    return out;
  }
  return o.text;
}

void add_family_flags(CLI::App* cmd, Options& o, bool need_q) {
  cmd->add_option("--n", o.n, "ambient dimension")->required();
  cmd->add_option("--s", o.s, "profile power")->required();
  if (need_q) cmd->add_option("--q", o.q, "exponent as an exact rational, e.g. 1/2")->required();
}

void add_sampling_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples", o.samples, "sample points for the representation check")->capture_default_str();
  cmd->add_option("--points", o.points, "points per Gram matrix")->capture_default_str();
  cmd->add_option("--trials", o.trials, "Gram matrix trials")->capture_default_str();
  cmd->add_option("--convexity-samples", o.convexity_samples, "random pairs for the midpoint probe")
      ->capture_default_str();
  cmd->add_option("--theta", o.grid.theta, "Gauss-Legendre nodes in cos(theta)")->capture_default_str();
  cmd->add_option("--phi", o.grid.phi, "azimuth nodes")->capture_default_str();
  cmd->add_option("--mc-points", o.grid.monte_carlo_points, "Monte Carlo nodes for n > 3")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact L_q embedding certificates for perturbed Euclidean norms", "lqembed"};
  app.set_config("--config", "", "key=value file mirroring the flags (subcommand keys as section.key)");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "human, json or csv")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", o.out_path, "write the report to this file");
  app.add_option("--seed", o.seed, "random seed")->envname("LQEMBED_SEED")->capture_default_str();

  std::function<Outcome(const Options&)> action;

  auto* identity = app.add_subcommand("identity", "derive x_n^{2j} moment identities");
  identity->add_option("--n", o.n)->required();
  identity->add_option("--q", o.q)->required();
  identity->add_option("--max-power", o.max_power, "even, at most 8")->required();
  identity->callback([&] { action = cmd_identity; });

  auto* threshold = app.add_subcommand("threshold", "exact embedding threshold in lambda");
  add_family_flags(threshold, o, true);
  threshold->callback([&] { action = cmd_threshold; });

  auto* convexity = app.add_subcommand("convexity", "exact lambda-interval on which the family is a norm");
  convexity->add_option("--s", o.s)->required();
  convexity->add_option("--n", o.n)->capture_default_str();
  convexity->callback([&] { action = cmd_convexity; });

  auto* certify = app.add_subcommand("certify", "decide embeddability at one lambda");
  add_family_flags(certify, o, true);
  certify->add_option("--lambda", o.lambda, "exact rational")->required();
  certify->callback([&] { action = cmd_certify; });

  auto* counterexample = app.add_subcommand("counterexample", "norm / L_1/2 / not L_1 bundle at lambda = 1/(6n-4)");
  counterexample->add_option("--n", o.n)->required();
  counterexample->callback([&] { action = cmd_counterexample; });

  auto* reproduce = app.add_subcommand("reproduce", "every threshold constant plus numeric validation");
  reproduce->add_option("--n", o.dims, "dimensions (default 3..10)")->delimiter(',');
  reproduce->add_option("--family", o.family_filter, "quadratic (s = 2), quartic (s = 4) or both")
      ->check(CLI::IsMember({"quadratic", "quartic", "both"}))
      ->capture_default_str();
  add_sampling_flags(reproduce, o);
  reproduce->callback([&] { action = cmd_reproduce; });

  auto* validate = app.add_subcommand("validate", "numeric cross-checks at one configuration");
  add_family_flags(validate, o, true);
  validate->add_option("--lambda", o.lambda, "exact rational")->required();
  add_sampling_flags(validate, o);
  validate->callback([&] { action = cmd_validate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    const Outcome result = action(o);
    const std::string text = render(result, o.format);
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path);
      if (!file) throw InvalidInput("cannot write " + o.out_path);
      file << text;
    }
    if (result.code == kDegenerateWindow) err << "degenerate window\n";
    if (result.code == kConsistencyFailure) err << "consistency failure: a certified claim failed its cross-check\n";
    return result.code;
  } catch (const DegenerateWindow& e) {
    err << "degenerate window: " << e.what() << "\n";
    return kDegenerateWindow;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kConsistencyFailure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const NotANorm& e) {
    err << "not a norm: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const UnreducibleGammaRatio& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kConsistencyFailure;
  }
}

}  // namespace lqembed::cli
