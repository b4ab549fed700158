// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "unisub/cli/commands.hpp"
#include "unisub/cli/report.hpp"
#include "unisub/levi.hpp"
#include "unisub/obstruction.hpp"
#include "unisub/subalgebra.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace unisub;
using namespace unisub::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS " : "FAIL ") << name;
  if (!out.detail.empty()) std::cout << ": " << out.detail;
  std::cout << " [" << std::fixed;
  std::cout.precision(1);
  std::cout << secs << " s]" << std::endl;
}

std::string str(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

const Options kDefaults{};

// Closed 3-subsets of the A2 roots without opposite pairs are exactly the
// positive systems; a root set contains one iff some such 3-subset is inside it.
bool contains_positive_system_oracle(const std::vector<Weight>& roots, const std::vector<Weight>& subset) {
  const std::set<Weight> all(roots.begin(), roots.end());
  const std::set<Weight> have(subset.begin(), subset.end());
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      for (size_t k = j + 1; k < roots.size(); ++k) {
        const std::vector<Weight> s{roots[i], roots[j], roots[k]};
        const std::set<Weight> ss(s.begin(), s.end());
        bool ok = true;
        for (const auto& a : s) {
          if (ss.count(negate(a))) ok = false;
          for (const auto& b : s) {
            const Weight c = add(a, b);
            if (all.count(c) && !ss.count(c)) ok = false;
          }
        }
        if (ok && have.count(s[0]) && have.count(s[1]) && have.count(s[2])) return true;
      }
  return false;
}

// Grid over unit quaternions of dist(diag(A, A)(e1, e2), span(e1, e1')) / |(e1, e2)|.
double levi_grid_minimum(int steps) {
  const double pi = 3.141592653589793;
  double best = 1.0;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j)
      for (int k = 0; k < 2 * steps; ++k) {
        const double psi = pi / 2 * i / steps, th = pi * j / steps, ph = pi * k / steps;
        const Complex alpha(std::cos(psi), std::sin(psi) * std::cos(th));
        const Complex beta(std::sin(psi) * std::sin(th) * std::cos(ph), std::sin(psi) * std::sin(th) * std::sin(ph));
        // A = [[alpha, -conj beta], [beta, conj alpha]]; (A e1, A e2) has second
        // coordinates beta and conj alpha.
        const double num = std::norm(beta) + std::norm(std::conj(alpha));
        const double den = (std::norm(alpha) + std::norm(beta)) + (std::norm(beta) + std::norm(alpha));
        best = std::min(best, std::sqrt(num / den));
      }
  return best;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UNISUB_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  criterion("SU(2) classification, n <= 12", [] {
    Outcome o;
    int rows = 0;
    for (int n = 1; n <= 12; ++n) {
      const Json j = cmd_su2_classify(n, kDefaults).to_json();
      const Json& obs = j["obstructions"];
      const Json& ver = j["verdicts"];
      o.expect(obs.size() == static_cast<size_t>(n + 1) && ver.size() == static_cast<size_t>(n + 1),
               "n=" + std::to_string(n) + ": wrong row count");
      for (int i = 0; i <= n && i < static_cast<int>(obs.size()); ++i) {
        const std::string id = "n=" + std::to_string(n) + " i=" + std::to_string(i);
        const Json& ob = obs[static_cast<size_t>(i)];
        const Json& v = ver[static_cast<size_t>(i)];
        if (2 * i != n) {
          o.expect(ob["class"]["group"] == "Z" && ob["class"]["coordinates"][0] == 2 * i - n, id + ": class");
        }
        o.expect(ob["vanishes"] == (n % 4 == 0 && 2 * i == n), id + ": vanishing");
        o.expect(v["kind"] == "Universal", id + ": verdict " + v["kind"].get<std::string>());
        o.expect(v["samples"].get<int>() >= 100, id + ": samples");
        o.expect(v["max_min_distance"].get<double>() < 1e-6, id + ": distance " + str(v["max_min_distance"]));
        ++rows;
      }
    }
    if (o.pass) o.detail = std::to_string(rows) + " hyperplanes, classes 2i-n, vanishing only at n=4m, i=2m";
    return o;
  });

  criterion("counterexample over S^2 x RP^2", [] {
    Outcome o;
    const Report r = cmd_counterexample(CounterexampleVariant::Default, kDefaults);
    const Json j = r.to_json();
    const Json& obs = j["obstructions"];
    o.expect(obs.size() == 3, "expected two factors and a top class");
    if (obs.size() == 3) {
      const long long c1 = obs[0]["class"]["coordinates"][0];
      o.expect(obs[0]["base_space"] == "S^2" && std::llabs(c1) == 2, "S^2 component is not twice the generator");
      o.expect(obs[1]["base_space"] == "RP^2" && obs[1]["class"]["group"] == "Z/2" &&
                   obs[1]["class"]["coordinates"][0] == 1,
               "RP^2 component is not the torsion generator");
      o.expect(obs[2]["class"]["group"] == "Z/2" && obs[2]["vanishes"] == true, "top class does not vanish");
      if (o.pass)
        o.detail = "c1 = " + std::to_string(c1) + " on S^2, generator of Z/2 on RP^2, top class " +
                   obs[2]["class"]["value"].get<std::string>();
    }
    o.expect(j["verdicts"][0]["kind"] == "Universal", "verdict " + j["verdicts"][0]["kind"].get<std::string>());
    o.expect(r.exit_code() == ExitCode::Ok, "exit code " + std::to_string(static_cast<int>(r.exit_code())));
    if (o.pass) o.detail += ", verdict Universal, exit 0";
    return o;
  });

  criterion("Euler characteristic and localization", [] {
    Outcome o;
    const GroupSpec su2 = GroupSpec::su2(), su3 = GroupSpec::su3();
    const long long t2 = euler_characteristic_quotient(su2, subgroup_by_name(su2, "T")).value;
    const long long n2 = euler_characteristic_quotient(su2, subgroup_by_name(su2, "N(T)")).value;
    const long long t3 = euler_characteristic_quotient(su3, subgroup_by_name(su3, "T")).value;
    o.expect(t2 == 2, "chi(SU(2)/T) = " + std::to_string(t2));
    o.expect(n2 == 1, "chi(SU(2)/N(T)) = " + std::to_string(n2));
    o.expect(t3 == 6, "chi(SU(3)/T) = " + std::to_string(t3));
    long long l2 = 0, l3 = 0;
    for (const auto& [g, loc] : {std::pair{su2, &l2}, std::pair{su3, &l3}}) {
      const RootSystem rs = build_root_system(g);
      std::vector<Weight> tangent;
      for (const auto& a : rs.positive_roots) tangent.push_back(negate(a));
      *loc = localization_number(rs, tangent);
    }
    o.expect(std::llabs(l2) == t2, "|localization| over SU(2)/T = " + std::to_string(l2));
    o.expect(std::llabs(l3) == t3, "|localization| over SU(3)/T = " + std::to_string(l3));
    if (o.pass)
      o.detail = "chi = 2, 1, 6; localization " + std::to_string(l2) + ", " + std::to_string(l3);
    return o;
  });

  criterion("Schur triangularization", [] {
    Outcome o;
    for (const std::string g : {"su2", "su3"}) {
      const Json j = cmd_schur(g, kDefaults).to_json();
      const Json& v = j["verdicts"][0];
      o.expect(v["kind"] == "Universal", g + ": verdict " + v["kind"].get<std::string>());
      o.expect(v["samples"].get<int>() >= 100, g + ": samples");
      o.expect(v["max_min_distance"].get<double>() < 1e-6, g + ": distance " + str(v["max_min_distance"]));
      if (o.pass) o.detail += (o.detail.empty() ? "" : ", ") + g + " max " + str(v["max_min_distance"]);
    }
    return o;
  });

  criterion("Borel containment equivalence", [] {
    Outcome o;
    const RootSystem a2 = build_root_system(GroupSpec::su3());
    const auto subsets = sl3_root_subsets();
    const Json j = cmd_borel_subsets(kDefaults).to_json();
    o.expect(subsets.size() >= 6 && j["verdicts"].size() == subsets.size(), "too few root subsets");
    const std::set<std::string> required{"empty", "{a1,-a1}", "B+", "P1", "P2", "all"};
    std::set<std::string> seen;
    for (size_t k = 0; k < subsets.size() && k < j["verdicts"].size(); ++k) {
      const bool borel = contains_positive_system_oracle(a2.roots, subsets[k].roots);
      o.expect(borel == contains_positive_system(a2, subsets[k].roots), subsets[k].name + ": library disagrees with oracle");
      const std::string kind = j["verdicts"][k]["kind"];
      o.expect(kind == (borel ? "Universal" : "NotUniversal"), subsets[k].name + ": verdict " + kind);
      seen.insert(subsets[k].name);
    }
    for (const auto& name : required) o.expect(seen.count(name) == 1, "missing subset " + name);
    if (o.pass) o.detail = std::to_string(subsets.size()) + " root subsets agree";
    return o;
  });

  criterion("maximal-rank equivalence", [] {
    Outcome o;
    const Report r = cmd_maxrank(kDefaults);
    const Table& t = r.tables().front();
    std::set<std::string> groups;
    for (const auto& row : t.rows) {
      const std::string id = row[0].get<std::string>() + " " + row[1].get<std::string>();
      const bool maxrank = row[3].get<bool>();
      const long long chi = row[4].get<long long>();
      const std::string verdict = row[6].get<std::string>();
      o.expect(maxrank == (chi > 0), id + ": chi " + std::to_string(chi));
      o.expect(verdict == (maxrank ? "Universal" : "NotUniversal"), id + ": verdict " + verdict);
      groups.insert(row[0].get<std::string>());
    }
    o.expect(groups.size() == 3, "catalog does not cover SU(2), SU(2)xSU(2) and SU(3)");
    if (o.pass) o.detail = std::to_string(t.rows.size()) + " catalog entries agree";
    return o;
  });

  criterion("solvable witnesses", [] {
    Outcome o;
    const Report r = cmd_solvable(3, 50, kDefaults, 1000);
    const Table& t = r.tables().front();
    const auto col = [&](const std::string& name) {
      return static_cast<size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
    };
    const size_t spread = col("spread"), cert = col("certificate");
    o.expect(t.rows.size() == 50, "expected 50 trials");
    double worst_spread = 0.0;
    for (const auto& row : t.rows) {
      worst_spread = std::max(worst_spread, row[spread].get<double>());
      o.expect(row[cert].get<double>() > 0.0, "non-positive certificate");
    }
    o.expect(worst_spread <= 1e-10, "spread " + str(worst_spread));
    o.expect(r.to_json()["certified_witnesses"] == 50, "not every trial certified");
    o.expect(r.all_agree(), "a search beat its certificate");
    if (o.pass) o.detail = "50 certified witnesses, max spread " + str(worst_spread);
    return o;
  });

  criterion("Levi counterexample", [] {
    Outcome o;
    const double grid = levi_grid_minimum(60);
    o.expect(std::abs(grid - 1.0 / std::sqrt(2.0)) < 1e-9, "grid oracle " + str(grid));
    const Report r = cmd_levi_demo(kDefaults);
    const Table& w = r.tables().front();
    o.expect(w.rows.size() == 2, "expected S and G rows");
    if (w.rows.size() != 2) return o;
    // Row 0: the Levi factor S; row 1: the block group G.
    const double s = w.rows[0][1].get<double>(), g = w.rows[1][1].get<double>();
    const int restarts = w.rows[0][2].get<int>();
    o.expect(std::abs(s - grid) <= 1e-4, "S distance " + str(s));
    o.expect(restarts == 64, "S restarts " + std::to_string(restarts));
    o.expect(g >= 0.0 && g < 1e-6, "G distance " + str(g));
    if (o.pass) o.detail = "S " + str(s) + " vs grid " + str(grid) + ", G " + str(g);
    return o;
  });

  criterion("determinism", [] {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "unisub_acceptance";
    std::filesystem::remove_all(dir);
    const std::string cfg = std::string(UNISUB_CONFIG_DIR) + "/";
    const std::vector<std::pair<std::string, std::string>> runs{
        {"hyperplane", "run --config " + cfg + "su2_hyperplane.yaml"},
        {"levi", "run --config " + cfg + "levi_u1_su2.yaml"},
        {"counterexample", "counterexample"},
    };
    for (const auto& [name, args] : runs) {
      const auto a = dir / (name + "_a.json"), b = dir / (name + "_b.json");
      o.expect(run_cli("--out " + a.string() + " " + args) == 0, name + ": first run failed");
      o.expect(run_cli("--threads 1 --out " + b.string() + " " + args) == 0, name + ": second run failed");
      const std::string ta = slurp(a), tb = slurp(b);
      o.expect(!ta.empty() && ta == tb, name + ": reports differ");
    }
    std::filesystem::remove_all(dir);
    if (o.pass) o.detail = std::to_string(runs.size()) + " configurations byte-identical across runs";
    return o;
  });

  return failures == 0 ? 0 : 1;
}
