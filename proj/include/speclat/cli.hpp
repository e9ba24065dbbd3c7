#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "speclat/lattice.hpp"

namespace speclat::cli {

using nlohmann::json;

inline constexpr const char* kResultSchema = "speclat.result/1";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"bn", "moments", "walks", "spectrum", "mahler", "padic"};
  return names;
}

/// Parsed job: the point set plus the raw per-command parameter blocks.
struct JobConfig {
  WeightedPointSet points;
  std::optional<IntMatrix> basis;
  /// The whole config document; per-command blocks live under their command
  /// name ("bn", "moments", ...).
  json document;

  /// Parameter block for a command, {} when absent.
  json block(const std::string& command) const;
};

/// Validates the document (point set invariants, basis) and throws
/// InvalidInput on any problem.
JobConfig parse_config(const json& document);
JobConfig load_config(const std::filesystem::path& path);

/// Scalar overrides given on the command line; they replace the
/// corresponding key of the command's block.
struct Overrides {
  std::optional<long long> N;
  std::optional<long long> K;
  std::optional<std::string> z;
  std::optional<long long> p;
  std::optional<long long> nu;
};

JobConfig apply_overrides(JobConfig config, const std::string& command, const Overrides& overrides);

struct ResultRecord {
  std::string schema = kResultSchema;
  std::string command;
  std::string config_hash;
  json payload;

  json to_json() const;
  /// Throws InvalidInput when the schema tag or a field is missing.
  static ResultRecord from_json(const json& j);

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// Hex FNV-1a 64 of the canonical dump of {command, points, basis, block}.
std::string config_hash(const JobConfig& config, const std::string& command);

ResultRecord cmd_bn(const JobConfig& config);
ResultRecord cmd_moments(const JobConfig& config);
ResultRecord cmd_walks(const JobConfig& config);
ResultRecord cmd_spectrum(const JobConfig& config);
ResultRecord cmd_mahler(const JobConfig& config);
ResultRecord cmd_padic(const JobConfig& config);

ResultRecord run_command(const std::string& command, const JobConfig& config);

/// RFC 4180 table of the record's main payload, header row first.
std::string to_csv(const ResultRecord& record);

/// Content-addressed store of result records, one file per config hash.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// The cached record, or nullopt on a miss or an unreadable/mismatched file.
  std::optional<ResultRecord> load(const std::string& command, const std::string& hash) const;
  /// Write-temp-then-rename.
  void store(const ResultRecord& record) const;
  std::filesystem::path path_for(const std::string& command, const std::string& hash) const;

 private:
  std::filesystem::path dir_;
};

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kConfigError = 2, kResourceCap = 3 };

/// Full command-line entry point; returns the exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace speclat::cli
