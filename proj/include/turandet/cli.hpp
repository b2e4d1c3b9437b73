#pragma once

// Command-line front end. Parsing lives here rather than in tools/ so tests can drive it.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "turandet/sequences.hpp"

namespace turandet::cli {

/// Invalid flag values that CLI11 cannot catch on its own (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;  // density, table, christoffel, pair, oracle-check, assumptions, poly-eval

  std::string family = "genhermite";
  double t = 0.0;
  double lambda = 0.5;
  double phi = 1.5707963267948966;
  double beta = 4.0;
  double kappa = 0.8;
  double epsilon = 1.0;
  std::string file;  // custom family

  std::string mode = "auto";  // regular, critical, christoffel, pair, auto
  std::size_t N = 1;
  std::vector<std::size_t> ns;  // empty: per-command default
  std::optional<double> x;
  std::optional<double> xmin;
  std::optional<double> xmax;
  std::size_t points = 512;
  std::size_t residue = 0;
  std::optional<double> tol;  // switch density to the adaptive g_limit path

  std::string preset;    // table: table1 | table2
  std::size_t m = 200;   // oracle-check: Gauss nodes
  std::size_t M = 1000;  // assumptions: horizon

  std::string output;  // empty: stdout
  Format format = Format::Csv;
};

/// Throws UsageError when the config breaks the grid, n-list or residue invariants.
void validate(const RunConfig& config);

CoefficientSequence build_sequence(const RunConfig& config);

/// Largest n' ≤ n with n' ≡ residue (mod N); UsageError if there is none ≥ 1.
std::size_t round_to_residue(std::size_t n, std::size_t N, std::size_t residue);

/// Executes an already parsed config. Returns the exit status; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs. --help exits 0, bad flags exit 2, module errors exit 1.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace turandet::cli
