#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace graphaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Everything a command depends on. Serialized verbatim as manifest.json.
struct RunConfig {
  std::string command;
  std::string input;               // TU dataset directory
  std::string name;                // dataset name (file prefix)
  std::string synthetic;           // "mixed" or "clustered" instead of input/name
  std::size_t corpus_size = 60;
  std::uint64_t corpus_seed = 1;
  std::vector<std::string> methods;
  std::string variant = "full";
  std::size_t count = 1;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  double p = 0.4;
  double rho = 0.7;
  std::size_t repeat = 1;
  std::vector<std::string> properties;
  bool all_properties = false;
  bool matrix = false;
  std::string sizes;
  std::string family;
  double degree = 6.0;
  std::size_t repeats = 5;
  std::size_t folds = 10;
  std::size_t threads = 0;
  std::string output;
};

// Parses argv-style arguments (without the program name) and runs the command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Runs an already-parsed configuration.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string manifest_json(const RunConfig& cfg);
RunConfig manifest_from_json(const std::string& text);

}  // namespace graphaug::cli
