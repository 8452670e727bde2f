// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binrank/generators.hpp"
#include "binrank/testers.hpp"

namespace binrank {

inline constexpr int kSchemaVersion = 1;

/// One instance of a plan: generated from an InstanceSpec or loaded from a .bm file.
struct PlanInstance {
  std::string id;
  std::optional<InstanceSpec> spec;
  std::optional<std::string> file;
  /// Generated instances without an explicit seed derive one from the plan seed.
  bool seed_from_master = false;
  /// Tester parameters; InstanceSpec::d and ::s are the defaults.
  unsigned d = 1;
  unsigned s = 1;
  double epsilon = 0.1;
};

enum class OutputFormat { Csv, JsonLines };

/// Algorithm names: "adaptive", "nonadaptive", "baseline", "exact".
struct ExperimentPlan {
  std::vector<PlanInstance> instances;
  std::vector<std::string> algorithms;
  unsigned trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;
  bool allow_unknown = false;
  /// Adds wall_time to aggregates. Off by default: timings break byte-identical reruns.
  bool timing = false;
  bool verify = false;

  /// Throws ContractError on an empty plan, zero trials or unknown algorithms.
  void validate() const;
};

/// Throws ParseError on malformed JSON or an unsupported schema_version.
/// Relative instance and output paths are resolved against `base_dir`.
ExperimentPlan parse_plan(const nlohmann::json& j, const std::string& base_dir = ".");

struct AggregateRow {
  std::string instance_id;
  std::string algorithm;
  unsigned d = 0;
  unsigned s = 0;
  double epsilon = 0;
  Index n = 0;
  Index m = 0;
  unsigned trials = 0;
  unsigned accepts = 0;
  unsigned rejects = 0;
  unsigned unknown = 0;
  double accept_rate = 0;
  double mean_queries = 0;
  std::uint64_t max_queries = 0;
  /// Largest proven per-run bound over the trials; 0 when none exists.
  std::uint64_t theoretical_budget = 0;
  double utilization = 0;
  double wall_time = 0;
};

struct PlanResult {
  std::vector<AggregateRow> rows;
  /// One JSON object per trial, in canonical (instance, algorithm, trial) order.
  std::vector<nlohmann::json> trials;
  std::uint64_t unknown = 0;
  std::uint64_t budget_violations = 0;
  /// Tester self-check failures, replay misses and any other invariant breach.
  std::uint64_t invariant_violations = 0;
  std::vector<std::string> messages;
};

/// Per-trial seed: hash(master, instance id, algorithm, trial).
std::uint64_t trial_seed(std::uint64_t master, const std::string& instance_id, const std::string& algorithm,
                         unsigned trial);

/// Runs every (instance, algorithm, trial). Generation and parse failures
/// throw; tester-level failures are tallied in the result.
PlanResult run_plan(const ExperimentPlan& plan);

std::string aggregates_csv(const std::vector<AggregateRow>& rows, bool with_timing);
std::string trials_jsonl(const PlanResult& result);

struct ComparisonRow {
  unsigned d = 0;
  std::size_t instances = 0;
  double reference_mean = 0;
  double other_mean = 0;
  /// Mean over instances of other_mean / reference_mean.
  double ratio = 0;
};

struct ComparisonTable {
  std::string reference;
  std::string other;
  std::vector<ComparisonRow> rows;  // ascending d

  std::string to_csv() const;
  std::string to_markdown() const;
  bool ratio_nondecreasing() const;
};

/// Per-d ratio of `other`'s mean queries to `reference`'s over instances run
/// with both. Throws ContractError on empty input or when an instance has
/// only one of the two algorithms.
ComparisonTable compare_table(const std::vector<AggregateRow>& rows, const std::string& reference = "adaptive",
                              const std::string& other = "baseline");

}  // namespace binrank
