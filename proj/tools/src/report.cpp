#include "unisub/cli/report.hpp"

#include "unisub/error.hpp"

#include <fstream>
#include <sstream>

namespace unisub::cli {

Json cohomology_json(const CohomologyValue& c) {
  Json j;
  j["group"] = c.group_name();
  j["value"] = c.str();
  j["coordinates"] = c.coordinates;
  j["is_zero"] = c.is_zero();
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["evidence"] = v.evidence;
  j["samples"] = v.samples;
  j["tolerance"] = v.tolerance;
  j["max_min_distance"] = v.max_min_distance;
  j["mean_min_distance"] = v.mean_min_distance;
  j["restarts_total"] = v.restarts_total;
  j["budget_exceeded"] = v.budget_exceeded;
  if (v.witness) {
    Json w = Json::array();
    for (Eigen::Index k = 0; k < v.witness->size(); ++k) w.push_back({(*v.witness)(k).real(), (*v.witness)(k).imag()});
    j["witness_index"] = v.witness_index;
    j["witness"] = w;
    j["witness_lower_bound"] = v.witness_lower_bound;
  }
  return j;
}

Json obstruction_json(const ObstructionReport& r) {
  Json j;
  j["base_space"] = r.base_space;
  Json bundle = Json::array();
  for (const auto& b : r.bundle) bundle.push_back(b.describe());
  j["bundle"] = bundle;
  j["class"] = cohomology_json(r.class_value);
  j["vanishes"] = r.vanishes;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string csv_escape(const Json& cell) {
  std::string s;
  if (cell.is_string()) {
    s = cell.get<std::string>();
  } else if (cell.is_null()) {
    return "";
  } else {
    s = cell.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

void write_rows(std::ostream& out, const Table& t) {
  for (size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_escape(t.columns[c]);
  out << "\n";
  for (const auto& r : t.rows) {
    for (size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << csv_escape(r[c]);
    out << "\n";
  }
}

}  // namespace

Report::Report(std::string command) : command_(std::move(command)) {}

Json& Report::add_verdict(const std::string& id, const Verdict& v) {
  Json j;
  j["id"] = id;
  j.update(verdict_json(v));
  verdicts_.push_back(std::move(j));
  return verdicts_.back();
}

Json& Report::add_obstruction(const std::string& id, const ObstructionReport& r) {
  Json j;
  j["id"] = id;
  j.update(obstruction_json(r));
  obstructions_.push_back(std::move(j));
  return obstructions_.back();
}

void Report::add_flag(const std::string& claim, bool agrees, const std::string& detail) {
  Json j;
  j["claim"] = claim;
  j["agrees"] = agrees;
  if (!detail.empty()) j["detail"] = detail;
  flags_.push_back(std::move(j));
}

void Report::add_verdict_flag(const std::string& claim, const Verdict& v, VerdictKind expected) {
  if (v.kind == VerdictKind::Inconclusive && v.budget_exceeded) {
    note_budget(claim);
    return;
  }
  add_flag(claim, v.kind == expected, "expected " + to_string(expected) + ", got " + to_string(v.kind));
}

void Report::note_budget(const std::string& claim) { budget_.push_back(claim); }

Table& Report::add_table(std::string name, std::vector<std::string> columns) {
  tables_.push_back(Table{std::move(name), std::move(columns), {}});
  return tables_.back();
}

bool Report::all_agree() const {
  for (const auto& f : flags_)
    if (!f["agrees"].get<bool>()) return false;
  return true;
}

ExitCode Report::exit_code() const {
  if (!all_agree()) return ExitCode::Inconsistent;
  if (!budget_.empty()) return ExitCode::BudgetExceeded;
  return ExitCode::Ok;
}

Json Report::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command_;
  j["config"] = config_;
  j["verdicts"] = verdicts_;
  j["obstructions"] = obstructions_;
  Json tables = Json::object();
  for (const auto& t : tables_) {
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    tables[t.name] = {{"columns", t.columns}, {"rows", rows}};
  }
  j["tables"] = tables;
  for (const auto& [k, v] : extra_.items()) j[k] = v;
  j["consistency_flags"] = flags_;
  j["budget_exceeded"] = budget_;
  if (timing_ >= 0.0) j["timing"] = {{"wall_seconds", timing_}};
  j["exit_code"] = static_cast<int>(exit_code());
  return j;
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

std::string Report::csv_text() const {
  std::ostringstream out;
  for (const auto& t : tables_) {
    out << "# " << t.name << "\n";
    write_rows(out, t);
  }
  return out.str();
}

void Report::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream js(path);
  require(static_cast<bool>(js), ErrorCode::ConfigError, "cannot write " + path.string());
  js << json_text();
  for (const auto& t : tables_) {
    std::filesystem::path csv = path;
    csv.replace_filename(path.stem().string() + "." + t.name + ".csv");
    std::ofstream out(csv);
    require(static_cast<bool>(out), ErrorCode::ConfigError, "cannot write " + csv.string());
    write_rows(out, t);
  }
}

}  // namespace unisub::cli
