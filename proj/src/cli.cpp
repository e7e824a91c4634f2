#include "kreweras/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "kreweras/asymptotics.hpp"
#include "kreweras/cone.hpp"
#include "kreweras/cover_walk.hpp"
#include "kreweras/errors.hpp"
#include "kreweras/theta_numeric.hpp"
#include "kreweras/theta_q.hpp"

#ifndef KREWERAS_VERSION
#define KREWERAS_VERSION "0.0.0"
#endif

namespace kreweras::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view command_name(Command c) {
  switch (c) {
    case Command::series: return "series";
    case Command::cone: return "cone";
    case Command::verify: return "verify";
    case Command::asymptotics: return "asymptotics";
    case Command::oracle: return "oracle";
  }
  return "?";
}

const std::vector<std::string> kSuites = {"functional-eq", "oracle-equivalence", "kernel",
                                          "jacobi", "reflection-cross-check"};

bool has_cone(const RunConfig& c) { return c.k || c.k1 || c.k2; }

ConeSpec cone_of(const RunConfig& c) { return ConeSpec(*c.k, *c.k1, *c.k2); }

Json rational_json(const Rational& r) { return r.get_str(); }

Json winding_json(const WindingPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    out.push_back(Json::array({e, c.get_num().get_str(), c.get_den().get_str()}));
  }
  return out;
}

Json complex_json(std::complex<long double> z) {
  return Json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())});
}

std::string real_text(long double x) {
  std::ostringstream s;
  s << std::setprecision(17) << static_cast<double>(x);
  return s.str();
}

Json parameters_json(const RunConfig& c) {
  Json p;
  p["variant"] = std::string(to_string(c.variant));
  p["order"] = c.order;
  if (c.k) p["k"] = *c.k;
  if (c.k1) p["k1"] = *c.k1;
  if (c.k2) p["k2"] = *c.k2;
  if (c.alpha) p["alpha"] = std::to_string(c.alpha->p) + "/" + std::to_string(c.alpha->q);
  if (c.command == Command::verify) {
    p["suite"] = c.suite;
    p["t"] = c.t;
    p["samples"] = c.samples;
    p["seed"] = c.seed;
  }
  if (c.precision) p["precision"] = static_cast<double>(*c.precision);
  p["guard"] = c.guard;
  return p;
}

Json envelope(const RunConfig& c) {
  Json doc;
  doc["meta"] = {{"command", std::string(command_name(c.command))},
                 {"parameters", parameters_json(c)},
                 {"truncation", c.order},
                 {"version", KREWERAS_VERSION}};
  doc["rows"] = Json::array();
  return doc;
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

int run_series(const RunConfig& c, std::ostream& out) {
  const TSeries gf = generating_function({c.variant, c.order, c.guard});
  if (c.format == Format::csv) {
    out << "n,k,count\n";
    for (int n = 0; n <= gf.truncation_order(); ++n) {
      for (const auto& [k, v] : gf[n].terms()) out << n << ',' << k << ',' << v.get_str() << '\n';
    }
    return kExitOk;
  }
  Json doc = envelope(c);
  for (int n = 0; n <= gf.truncation_order(); ++n) {
    doc["rows"].push_back({{"n", n}, {"coefficient", winding_json(gf[n])}});
  }
  emit_json(out, doc);
  return kExitOk;
}

Json asymptotic_json(const ConeSpec& spec) {
  if (spec.width() % 3 == 0) return nullptr;
  const PowerLawAsymptotic law = cone_asymptotic(spec);
  return {{"constant", static_cast<double>(law.constant.real())},
          {"exponent", static_cast<double>(law.exponent)},
          {"base", static_cast<double>(law.growth_base)}};
}

int run_cone(const RunConfig& c, std::ostream& out) {
  const ConeSpec spec = cone_of(c);
  const auto counts = reflect_series(spec, c.order);
  if (c.format == Format::csv) {
    out << "n,count\n";
    for (std::size_t n = 0; n < counts.size(); ++n) out << n << ',' << counts[n].get_str() << '\n';
    return kExitOk;
  }
  Json doc = envelope(c);
  for (std::size_t n = 0; n < counts.size(); ++n) {
    doc["rows"].push_back({{"n", n}, {"count", rational_json(counts[n])}});
  }
  doc["summary"] = {{"classification", std::string(to_string(classify(spec)))},
                    {"asymptotic", asymptotic_json(spec)}};
  emit_json(out, doc);
  return kExitOk;
}

struct SuiteResult {
  std::string suite;
  bool pass = true;
  bool numeric = false;  // failure maps to the numeric exit code
  std::string detail;
  std::optional<long double> max_residual;
};

SuiteResult suite_functional_eq(const RunConfig& c) {
  SuiteResult r;
  r.suite = "functional-eq";
  const EquationReport report = verify_functional_equation(c.variant, c.order);
  r.pass = report.holds;
  r.detail = report.describe();
  return r;
}

SuiteResult suite_oracle(const RunConfig& c) {
  SuiteResult r;
  r.suite = "oracle-equivalence";
  const TSeries closed = generating_function({c.variant, c.order, c.guard});
  const TSeries dp = excursion_series(c.variant, c.order);
  for (int n = 0; n <= c.order; ++n) {
    if (!(closed[n] == dp[n])) {
      r.pass = false;
      r.detail = "first mismatch at t^" + std::to_string(n) + ": closed form " +
                 to_string(closed[n]) + ", enumeration " + to_string(dp[n]);
      return r;
    }
  }
  r.detail = "closed form equals enumeration for n <= " + std::to_string(c.order);
  return r;
}

SuiteResult suite_kernel(const RunConfig& c) {
  SuiteResult r;
  r.suite = "kernel";
  r.numeric = true;
  const Complex tau = solve_tau(c.t);
  long double worst = 0;
  Complex worst_z = 0;
  for (const Complex z : sample_cell_points(tau, c.samples, c.seed)) {
    const long double res = kernel_residual(KernelPoint{t_of_tau(tau).real(), tau, z});
    if (!(res <= worst)) {
      worst = res;
      worst_z = z;
    }
  }
  r.max_residual = worst;
  r.pass = worst < 1e-10L;
  std::ostringstream s;
  s << "max |K(X(z),Y(z))| = " << real_text(worst) << " at z = (" << real_text(worst_z.real())
    << ", " << real_text(worst_z.imag()) << ")";
  r.detail = s.str();
  return r;
}

SuiteResult suite_jacobi(const RunConfig& c) {
  SuiteResult r;
  r.suite = "jacobi";
  r.numeric = true;
  const QhatReport report = qhat_expansion_check(c.seed, c.samples);
  r.max_residual = report.jacobi_max_residual;
  const bool fit_ok = std::abs(report.fitted[0] - 1.0L / 3) < 1e-6L &&
                      std::abs(report.fitted[1] + 3) < 1e-6L &&
                      std::abs(report.fitted[2] - 18) < 1e-6L;
  r.pass = report.jacobi_max_residual < 1e-10L && fit_ok;
  std::ostringstream s;
  s << "max Jacobi residual " << real_text(report.jacobi_max_residual) << "; t(qhat) fit ("
    << real_text(report.fitted[0]) << ", " << real_text(report.fitted[1]) << ", "
    << real_text(report.fitted[2]) << ")";
  r.detail = s.str();
  return r;
}

SuiteResult suite_reflection(const RunConfig& c) {
  SuiteResult r;
  r.suite = "reflection-cross-check";
  std::vector<ConeSpec> specs;
  if (has_cone(c)) {
    specs.push_back(cone_of(c));
  } else {
    for (int k1 = -5; k1 < 0; ++k1) {
      for (int k2 = 1; k2 - k1 <= 6; ++k2) {
        for (int k = -3; k <= 3; ++k) {
          if (k1 < 2 * k && 2 * k < k2) specs.emplace_back(k, k1, k2);
        }
      }
    }
  }
  const TSeries vertex = vertex_excursion_gf(c.order);
  int checked = 0;
  for (const ConeSpec& spec : specs) {
    const auto exact = reflect_series(spec, vertex);
    const TSeries corridor = corridor_excursions(spec.k1(), spec.k2(), c.order);
    const auto rou_gap = reflect_rou_deviation(spec, vertex);
    for (int n = 0; n <= c.order; ++n) {
      const Rational direct = corridor[n].coeff(spec.k());
      if (direct != exact[n]) {
        r.pass = false;
        r.detail = "spec (" + std::to_string(spec.k()) + "," + std::to_string(spec.k1()) + "," +
                   std::to_string(spec.k2()) + ") at n=" + std::to_string(n) + ": reflection " +
                   exact[n].get_str() + ", corridor enumeration " + direct.get_str();
        return r;
      }
    }
    if (rou_gap > 1e-9L) {
      r.pass = false;
      r.numeric = true;
      r.detail = "root-of-unity deviation " + real_text(rou_gap);
      return r;
    }
    ++checked;
  }
  r.detail = std::to_string(checked) + " cone specs agree for n <= " + std::to_string(c.order);
  return r;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  std::vector<std::string> selected;
  if (c.suite == "all") {
    selected = kSuites;
  } else {
    selected.push_back(c.suite);
  }
  std::vector<SuiteResult> results;
  for (const auto& name : selected) {
    if (name == "functional-eq") results.push_back(suite_functional_eq(c));
    else if (name == "oracle-equivalence") results.push_back(suite_oracle(c));
    else if (name == "kernel") results.push_back(suite_kernel(c));
    else if (name == "jacobi") results.push_back(suite_jacobi(c));
    else results.push_back(suite_reflection(c));
  }
  int code = kExitOk;
  for (const auto& r : results) {
    if (r.pass) continue;
    const int this_code = r.numeric ? kExitNumeric : kExitVerification;
    if (code == kExitOk || this_code == kExitVerification) code = this_code;
  }
  if (c.format == Format::csv) {
    out << "suite,pass,max_residual,detail\n";
    for (const auto& r : results) {
      out << r.suite << ',' << (r.pass ? "pass" : "fail") << ','
          << (r.max_residual ? real_text(*r.max_residual) : "") << ",\"" << r.detail << "\"\n";
    }
    return code;
  }
  Json doc = envelope(c);
  for (const auto& r : results) {
    Json row = {{"suite", r.suite}, {"pass", r.pass}};
    row["max_residual"] = r.max_residual ? Json(static_cast<double>(*r.max_residual)) : Json();
    row["detail"] = r.detail;
    doc["rows"].push_back(row);
  }
  doc["summary"] = {{"pass", code == kExitOk}};
  emit_json(out, doc);
  return code;
}

int run_asymptotics(const RunConfig& c, std::ostream& out) {
  std::vector<AsymptoticRow> rows;
  const auto ns = sample_lengths(3, c.order, 3);
  if (c.alpha) {
    rows = compare_winding_asymptotic(c.alpha->radians(), vertex_excursion_gf(c.order), ns);
  } else {
    const ConeSpec spec = cone_of(c);
    rows = compare_asymptotic(reflect_series(spec, c.order), cone_asymptotic(spec), ns);
  }
  if (c.format == Format::csv) {
    out << "n,coefficient_re,coefficient_im,prediction_re,prediction_im,relative_error\n";
    for (const auto& r : rows) {
      out << r.n << ',' << real_text(r.scaled_coefficient.real()) << ','
          << real_text(r.scaled_coefficient.imag()) << ',' << real_text(r.scaled_prediction.real())
          << ',' << real_text(r.scaled_prediction.imag()) << ',' << real_text(r.relative_error)
          << '\n';
    }
    return kExitOk;
  }
  Json doc = envelope(c);
  for (const auto& r : rows) {
    doc["rows"].push_back({{"n", r.n},
                           {"coefficient", complex_json(r.scaled_coefficient)},
                           {"prediction", complex_json(r.scaled_prediction)},
                           {"relative_error", static_cast<double>(r.relative_error)}});
  }
  doc["meta"]["scaling"] = "coefficient and prediction divided by 3^n";
  emit_json(out, doc);
  return kExitOk;
}

int run_oracle(const RunConfig& c, std::ostream& out) {
  const CountTable table = enumerate(c.variant, c.order);
  if (c.format == Format::csv) {
    out << "n,k,a,b,count\n";
    for (int n = 0; n <= c.order; ++n) {
      table.for_each_nonzero(n, [&](const WedgeState& v, const Integer& count) {
        out << n << ',' << v.k << ',' << v.a << ',' << v.b << ',' << count.get_str() << '\n';
      });
    }
    return kExitOk;
  }
  Json doc = envelope(c);
  for (int n = 0; n <= c.order; ++n) {
    table.for_each_nonzero(n, [&](const WedgeState& v, const Integer& count) {
      doc["rows"].push_back(
          {{"n", n}, {"k", v.k}, {"a", v.a}, {"b", v.b}, {"count", count.get_str()}});
    });
  }
  emit_json(out, doc);
  return kExitOk;
}

}  // namespace

long double AlphaFraction::radians() const {
  return kPi * static_cast<long double>(p) / static_cast<long double>(q);
}

AlphaFraction parse_alpha(const std::string& text) {
  AlphaFraction a;
  std::size_t used = 0;
  try {
    const auto slash = text.find('/');
    a.p = std::stol(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw ConfigError("");
    if (slash != std::string::npos) {
      const std::string den = text.substr(slash + 1);
      a.q = std::stol(den, &used);
      if (used != den.size()) throw ConfigError("");
    }
  } catch (const std::exception&) {
    throw ConfigError("--alpha: expected p/q (a multiple of pi), got '" + text + "'");
  }
  if (a.q <= 0 || a.p < 0 || a.p > a.q) {
    throw ConfigError("--alpha: need 0 <= p/q <= 1, got '" + text + "'");
  }
  if (std::gcd(a.p, a.q) != 1) throw ConfigError("--alpha: p/q must be in lowest terms");
  return a;
}

void validate(const RunConfig& c) {
  if (c.order < 0) throw ConfigError("--order must be non-negative");
  if (c.guard < 0) throw ConfigError("--guard must be non-negative");
  if (c.precision && !(*c.precision > 0)) throw ConfigError("--precision must be positive");
  if (has_cone(c)) {
    if (!(c.k && c.k1 && c.k2)) throw ConfigError("--k, --k1 and --k2 must be given together");
    try {
      (void)cone_of(c);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  switch (c.command) {
    case Command::cone:
      if (!has_cone(c)) throw ConfigError("cone needs --k, --k1 and --k2");
      break;
    case Command::asymptotics:
      if (c.alpha.has_value() == has_cone(c)) {
        throw ConfigError("asymptotics needs exactly one of --alpha or the cone triple");
      }
      break;
    case Command::verify: {
      bool known = c.suite == "all";
      for (const auto& s : kSuites) known = known || s == c.suite;
      if (!known) throw ConfigError("unknown --suite '" + c.suite + "'");
      if (!(c.t > 0 && c.t < 1.0 / 3)) throw ConfigError("--t must lie in (0, 1/3)");
      if (c.samples <= 0) throw ConfigError("--samples must be positive");
      break;
    }
    default:
      break;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.precision) {
      const std::string text = real_text(*config.precision);
      ::setenv("KREWERAS_PRECISION", text.c_str(), 1);
    }
    switch (config.command) {
      case Command::series: return run_series(config, out);
      case Command::cone: return run_cone(config, out);
      case Command::verify: return run_verify(config, out);
      case Command::asymptotics: return run_asymptotics(config, out);
      case Command::oracle: return run_oracle(config, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DegenerateAlpha& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DegenerateCase& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const SeriesError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kreweras walks counted by length and winding angle", "kreweras"};
  RunConfig c;
  std::string command, variant = "cell", format = "json", alpha;
  std::optional<double> precision;
  app.add_option("command", command, "series | cone | verify | asymptotics | oracle")
      ->required()
      ->check(CLI::IsMember({"series", "cone", "verify", "asymptotics", "oracle"}));
  app.add_option("--variant", variant, "cell | vertex")->check(CLI::IsMember({"cell", "vertex"}));
  app.add_option("--order", c.order, "Highest power of t");
  app.add_option("--k", c.k, "Target corner index");
  app.add_option("--k1", c.k1, "Lower winding bound in units of pi/3");
  app.add_option("--k2", c.k2, "Upper winding bound in units of pi/3");
  app.add_option("--alpha", alpha, "Winding angle as p/q, meaning (p/q)*pi");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--precision", precision, "Theta summation tolerance");
  app.add_option("--guard", c.guard, "Extra series terms carried through inversions");
  app.add_option("--suite", c.suite, "Verification suite or 'all'");
  app.add_option("--t", c.t, "t for the kernel suite");
  app.add_option("--samples", c.samples, "Number of random points");
  app.add_option("--seed", c.seed, "Random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (command == "series") c.command = Command::series;
  else if (command == "cone") c.command = Command::cone;
  else if (command == "verify") c.command = Command::verify;
  else if (command == "asymptotics") c.command = Command::asymptotics;
  else c.command = Command::oracle;
  c.variant = *parse_variant(variant);
  c.format = format == "csv" ? Format::csv : Format::json;
  if (precision) c.precision = *precision;
  if (!alpha.empty()) {
    try {
      c.alpha = parse_alpha(alpha);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitValidation;
    }
  }
  return run(c, out, err);
}

}  // namespace kreweras::cli
