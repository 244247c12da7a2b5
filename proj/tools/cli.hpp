#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fthresh::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // verify found a failing invariant
  kParse = 2,        // bad polynomial / rational / flag syntax
  kDomain = 3,
  kInfeasible = 4,   // resource limit or cap reached
  kInternal = 70,
};

struct Command {
  std::string subcommand;
  std::uint64_t prime = 0;
  std::vector<std::string> variables{"x", "y"};
  std::string polynomial;
  std::optional<std::string> lambda;
  std::optional<std::uint64_t> bound;
  std::optional<std::uint64_t> e;
  std::optional<std::string> ideal;   // "g1; g2; ..."; m when absent
  std::optional<std::string> window;  // "lo:hi"
  std::vector<std::uint64_t> exponents;
  std::vector<std::string> perturbations;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> cap;
  bool json = false;
  bool csv = false;
  bool timing = false;
  bool left_limit = false;
};

struct Outcome {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

Outcome execute(const Command& cmd);

/// Parses command-line words (without the program name) and executes them.
Outcome run(const std::vector<std::string>& args);

}  // namespace fthresh::cli
