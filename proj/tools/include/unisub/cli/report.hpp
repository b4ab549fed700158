#pragma once

// Structured run report: one JSON document per run, tables mirrored to CSV.

#include "unisub/obstruction.hpp"
#include "unisub/universality.hpp"

#include <nlohmann/json.hpp>

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

namespace unisub::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class ExitCode : int { Ok = 0, ConfigError = 1, Inconsistent = 2, BudgetExceeded = 3 };

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

class Report {
 public:
  explicit Report(std::string command);

  Json& config() { return config_; }
  [[nodiscard]] const std::string& command() const { return command_; }

  Json& add_verdict(const std::string& id, const Verdict& v);
  Json& add_obstruction(const std::string& id, const ObstructionReport& r);
  void add_flag(const std::string& claim, bool agrees, const std::string& detail = {});
  /// Adds a flag comparing a verdict with its predicted kind. An Inconclusive
  /// verdict that ran out of iterations adds no flag; it is recorded as a
  /// budget overrun instead.
  void add_verdict_flag(const std::string& claim, const Verdict& v, VerdictKind expected);
  void note_budget(const std::string& claim);
  Table& add_table(std::string name, std::vector<std::string> columns);
  Json& extra() { return extra_; }
  void set_timing(double seconds) { timing_ = seconds; }

  [[nodiscard]] const Json& flags() const { return flags_; }
  [[nodiscard]] const std::deque<Table>& tables() const { return tables_; }
  [[nodiscard]] bool all_agree() const;
  [[nodiscard]] ExitCode exit_code() const;

  [[nodiscard]] Json to_json() const;
  [[nodiscard]] std::string json_text() const;
  /// Tables as CSV blocks, each preceded by "# <name>".
  [[nodiscard]] std::string csv_text() const;

  /// Writes the JSON report to `path` and one "<stem>.<table>.csv" per table next to it.
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  Json config_ = Json::object();
  Json verdicts_ = Json::array();
  Json obstructions_ = Json::array();
  Json flags_ = Json::array();
  Json budget_ = Json::array();
  Json extra_ = Json::object();
  std::deque<Table> tables_;  // stable references for add_table
  double timing_ = -1.0;
};

Json verdict_json(const Verdict& v);
Json obstruction_json(const ObstructionReport& r);
Json cohomology_json(const CohomologyValue& c);
std::string csv_escape(const Json& cell);

}  // namespace unisub::cli
