#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* binary() {
  const char* bin = std::getenv("ORTHOBOUND_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

// Runs `[env_prefix] <binary> <args>` through the shell, captures stdout.
RunResult run_with_prefix(const std::string& env_prefix, const std::string& args) {
  std::string cmd;
  if (!env_prefix.empty()) cmd += env_prefix + " ";
  cmd += std::string("\"") + binary() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run(const std::string& args) { return run_with_prefix("", args); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double csv_cell(const RunResult& r, const std::string& key) {
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() >= 2);
  const auto head = split_csv_line(ls[0]);
  const auto vals = split_csv_line(ls[1]);
  REQUIRE(head.size() == vals.size());
  for (size_t i = 0; i < head.size(); ++i)
    if (head[i] == key) return std::strtod(vals[i].c_str(), nullptr);
  FAIL("column not found: ", key);
  return 0.0;
}

}  // namespace

TEST_CASE("eval emits the closed-form value") {
  const auto r = run("eval F3 --l 0.5 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(std::fabs(csv_cell(r, "value") / 5.4850012405831694 - 1.0) <= 1e-14);
}

TEST_CASE("csv and json carry identical numbers") {
  const auto csv = run("table Kn --n 3..6 --format csv");
  const auto js = run("table Kn --n 3..6 --format json");
  CHECK(csv.exit_code == 0);
  CHECK(js.exit_code == 0);

  const auto parsed = nlohmann::json::parse(js.out);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 4);

  const auto ls = lines_of(csv.out);
  REQUIRE(ls.size() == 5);
  const auto head = split_csv_line(ls[0]);
  size_t vcol = head.size();
  for (size_t i = 0; i < head.size(); ++i)
    if (head[i] == "value") vcol = i;
  REQUIRE(vcol < head.size());
  for (size_t i = 0; i < 4; ++i) {
    const double from_csv =
        std::strtod(split_csv_line(ls[i + 1])[vcol].c_str(), nullptr);
    const double from_json = parsed[i]["value"].get<double>();
    CHECK(from_csv == from_json);
  }
}

TEST_CASE("verify exit codes reflect case outcomes") {
  CHECK(run("verify constants").exit_code == 0);
  CHECK(run("verify lemma-fb --n 3..8").exit_code == 0);
  // The full sweep includes the published-value and large-b comparison
  // cases that fail by honest margins, so "all" exits nonzero.
  CHECK(run("verify all --format json").exit_code == 1);
}

TEST_CASE("argument errors exit 2") {
  CHECK(run("verify no-such-suite").exit_code == 2);
  CHECK(run("eval nope --l 1").exit_code == 2);
  CHECK(run("eval F3").exit_code == 2);
  CHECK(run("eval Mn --n 3 --b 0.5").exit_code == 2);
  CHECK(run("table gn --n 3..9999").exit_code == 2);
  CHECK(run("eval F3 --l 0.5 --format yaml").exit_code == 2);
  CHECK(run("eval Fn --n 4 --l 0.5 --max-evals 50").exit_code == 2);
}

TEST_CASE("numerical failures exit 3") {
  CHECK(run("eval Mn-oracle --n 8 --b 1.001 --max-evals 200").exit_code == 3);
}

TEST_CASE("environment variables configure tolerances, flags win") {
  const auto from_env = run_with_prefix("ORTHOBOUND_MAX_EVALS=200",
                                        "eval Mn-oracle --n 8 --b 1.001");
  CHECK(from_env.exit_code == 3);
  const auto flag_wins = run_with_prefix(
      "ORTHOBOUND_MAX_EVALS=200",
      "eval Mn-oracle --n 8 --b 1.001 --max-evals 2000000");
  CHECK(flag_wins.exit_code == 0);
}

TEST_CASE("precision control") {
  const auto csv = run("eval gn --n 3 --precision 10 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("0.1208216742") != std::string::npos);
  const auto plain = run("eval gn --n 3");
  CHECK(plain.exit_code == 0);
  CHECK(plain.out.find("0.120822") != std::string::npos);
}

TEST_CASE("packaged solve report") {
  const auto r = run("solve dim3-bound --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j["root"].get<double>() - 0.6276850220781588) <= 1e-8);
  CHECK(std::fabs(j["bound"].get<double>() - 4.0759225032) <= 1e-8);
  CHECK(j["n"].get<int>() == 3);
}

TEST_CASE("bound report carries the branch") {
  const auto r = run("bound volume-from-boundary --n 3 --area 0.5 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["branch"].get<std::string>() == "long_ortho");
  CHECK(j["bound_value"].get<double>() ==
        doctest::Approx(0.11453634148426939).epsilon(1e-12));
}

TEST_CASE("flag surface") {
  CHECK(run("--seedless eval F3 --l 1").exit_code == 0);
  CHECK(run("--help").exit_code == 0);
  CHECK(run("eval --help").exit_code == 0);
}

TEST_CASE("verify output is deterministic") {
  const auto a = run("verify mn-oracle --format csv");
  const auto b = run("verify mn-oracle --format csv");
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.out == b.out);
}
