#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blowup/field.hpp"
#include "blowup/params.hpp"
#include "blowup/solver.hpp"
#include "blowup/study.hpp"

namespace blowup {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key/value text with TOML-style [section] headers. Values are kept as
/// canonical text (trimmed, arrays as "[a, b]") in file order; typed getters
/// parse on demand. Keys before any header live in the unnamed section.
class FlatConfig {
 public:
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
    bool operator==(const Entry&) const = default;
  };

  static FlatConfig parse(std::string_view text);
  static FlatConfig load(const std::string& path);
  std::string serialize() const;

  /// "section.key", or "key" for the unnamed section.
  bool has(std::string_view dotted) const;
  const std::string* raw(std::string_view dotted) const;
  void set(std::string_view section, std::string_view key, std::string value);

  std::optional<double> get_double(std::string_view dotted) const;
  std::optional<long> get_int(std::string_view dotted) const;
  std::optional<bool> get_bool(std::string_view dotted) const;
  std::optional<std::string> get_string(std::string_view dotted) const;
  std::optional<std::vector<double>> get_double_list(std::string_view dotted) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool operator==(const FlatConfig&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// Text-level canonical form: comments and blank lines dropped, whitespace
/// trimmed, "key = value", arrays as "[a, b]", one blank line before each
/// section header after the first line.
std::string normalize_config_text(std::string_view text);

/// FNV-1a 64 of the canonical text.
std::uint64_t config_hash(const FlatConfig& cfg);
std::string hex_hash(std::uint64_t h);

enum class Command { CheckParams, ProfileNorms, Evolve, BlowupStudy, FitRates };
const char* to_string(Command c);
Command parse_command(std::string_view name);

struct InitialData {
  /// "gaussian": amplitude exp(-(x - center)^2 / width^2); "profile": U(time).
  std::string shape = "gaussian";
  double amplitude = 0.1;
  double width = 1.0;
  double center = 0.0;
  double time = -1.0;
};

struct ProfileNormsConfig {
  double t_first = -1.0;
  double t_last = -0.1;
  int count = 16;
  std::vector<double> p_list{2.0, 4.0, std::numeric_limits<double>::infinity()};
};

struct RunConfig {
  Command command = Command::CheckParams;
  PhysParams params;
  Grid grid;
  SolveConfig solve;
  std::optional<StudyConfig> study;
  InitialData initial;
  ProfileNormsConfig profile;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  FlatConfig source;
};

/// [params] N, alpha, lambda_re, lambda_im, k (number or "auto"); also
/// accepted without a section header. Throws ConfigError when a key is
/// missing or malformed.
PhysParams read_params(const FlatConfig& cfg);

/// Builds the full run configuration for a command; fills defaults that
/// depend on the parameters (grid radius, δ).
RunConfig make_run_config(const FlatConfig& cfg, Command command);

/// Halves dt and doubles diag_every in solve and study blocks.
void refine_dt(RunConfig& cfg);

}  // namespace blowup
