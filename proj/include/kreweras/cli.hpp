#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "kreweras/variant.hpp"

namespace kreweras::cli {

enum class Command { series, cone, verify, asymptotics, oracle };
enum class Format { json, csv };

/// alpha = (p/q) * pi with p/q in lowest terms and 0 <= p/q <= 1.
struct AlphaFraction {
  long p = 0;
  long q = 1;
  long double radians() const;
};

struct RunConfig {
  Command command = Command::series;
  Variant variant = Variant::cell;
  int order = 10;
  std::optional<int> k, k1, k2;
  std::optional<AlphaFraction> alpha;
  Format format = Format::json;
  std::optional<long double> precision;
  int guard = 12;
  std::string suite = "all";
  double t = 0.2;
  int samples = 100;
  std::uint64_t seed = 1;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitNumeric = 3;

AlphaFraction parse_alpha(const std::string& text);

/// Checks the cross-field invariants; throws ConfigError.
void validate(const RunConfig& config);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; --help prints usage and returns 0.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kreweras::cli
