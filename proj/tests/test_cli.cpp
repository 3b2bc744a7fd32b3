#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MCSALLOC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
    r.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path(std::string("/tmp/mcsalloc_cli_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("generate --out /tmp/x.json").code == 2);  // --mode missing
  CHECK(run("solve missing.json").code == 2);          // --solver missing
  CHECK(run("solve missing.json --solver no-such").code == 2);
}

TEST_CASE("generate, validate and solve an fpmt instance") {
  TempFile inst("fpmt.json");
  const auto gen = run("generate --mode fpmt --seed 7 --m 3 --n 6 --q 2 --p 2 --out " +
                       inst.path);
  REQUIRE(gen.code == 0);
  const std::string digest = strip(gen.out);
  CHECK(digest.size() == 16);

  const auto val = run("validate " + inst.path);
  CHECK(val.code == 0);
  CHECK(strip(val.out) == "ok " + digest);

  const auto sol = run("solve " + inst.path + " --solver mt-mcmf");
  REQUIRE(sol.code == 0);
  const json report = json::parse(sol.out);
  CHECK(report["solver"] == "mt-mcmf");
  CHECK(report["instance_digest"] == digest);
  CHECK(report["objectives"]["accomplished"].get<int>() == 6);
  CHECK(report["objectives"]["total_distance"].get<double>() > 0.0);
  CHECK(report["objectives"].contains("mean_completion_min"));
  CHECK(report.contains("runtime_ms"));
  REQUIRE(report["assignment"].is_array());
  CHECK(report["assignment"].size() == 3);

  // Deterministic output modulo the runtime field.
  const auto a = run("solve " + inst.path + " --solver mt-mcmf --no-runtime");
  const auto b = run("solve " + inst.path + " --solver mt-mcmf --no-runtime");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!json::parse(a.out).contains("runtime_ms"));

  // Greedy and pruned variants run on the same file.
  CHECK(run("solve " + inst.path + " --solver mt-grdpt").code == 0);
  const auto pruned = run("solve " + inst.path + " --solver mtp-mcmf --k 4");
  REQUIRE(pruned.code == 0);
  CHECK(json::parse(pruned.out)["parameters"]["k"] == 4);

  // Oracle agrees on the small instance.
  const auto oracle = run("solve " + inst.path + " --solver oracle");
  REQUIRE(oracle.code == 0);
  CHECK(json::parse(oracle.out)["objectives"]["accomplished"].get<int>() == 6);

  // CSV format.
  const auto csv = run("solve " + inst.path + " --solver mt-mcmf --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("solver,instance_digest,accomplished", 0) == 0);
  CHECK(csv.out.find("mt-mcmf," + digest + ",6,") != std::string::npos);
}

TEST_CASE("generate and solve an mpft instance") {
  TempFile inst("mpft.json");
  const auto gen = run("generate --mode mpft --seed 3 --out " + inst.path);
  REQUIRE(gen.code == 0);

  const auto bounds = run("bounds " + inst.path);
  REQUIRE(bounds.code == 0);
  const json b = json::parse(bounds.out);
  CHECK(b["c_min"].get<double>() > 0.0);
  CHECK(b["c_min"].get<double>() <= b["c_max"].get<double>());
  CHECK(b["d_min"].get<double>() <= b["d_max"].get<double>());

  const auto w = run("solve " + inst.path + " --solver w-ilp --k1 0.5 --k2 0.5");
  REQUIRE(w.code == 0);
  const json wr = json::parse(w.out);
  CHECK(wr["objectives"]["total_incentive"].get<double>() >=
        b["c_min"].get<double>() - 1e-6);
  CHECK(wr["objectives"]["total_distance"].get<double>() >=
        b["d_min"].get<double>() - 1e-6);
  CHECK(wr["parameters"]["k1"] == 0.5);

  const double budget = b["c_max"].get<double>();
  std::ostringstream cmd;
  cmd << "solve " << inst.path << " --solver c-ilp --budget " << budget;
  CHECK(run(cmd.str()).code == 0);

  // c-ilp without a budget is an input error.
  CHECK(run("solve " + inst.path + " --solver c-ilp").code == 3);
  // A budget below c_min is infeasible.
  std::ostringstream low;
  low << "solve " << inst.path << " --solver c-ilp --budget "
      << b["c_min"].get<double>() / 2.0;
  CHECK(run(low.str()).code == 4);
}

TEST_CASE("mode mismatches exit with 3") {
  TempFile fp("mm_fpmt.json"), mp("mm_mpft.json");
  REQUIRE(run("generate --mode fpmt --seed 1 --m 2 --n 4 --q 2 --out " + fp.path)
              .code == 0);
  REQUIRE(run("generate --mode mpft --seed 1 --out " + mp.path).code == 0);
  CHECK(run("solve " + fp.path + " --solver w-ilp").code == 3);
  CHECK(run("solve " + mp.path + " --solver mt-mcmf").code == 3);
  CHECK(run("bounds " + fp.path).code == 3);
}

TEST_CASE("broken input files exit with 3") {
  TempFile bad("bad.json");
  {
    std::ofstream out(bad.path);
    out << "{\"format_version\": 1}\n";
  }
  CHECK(run("validate " + bad.path).code == 3);
  CHECK(run("solve /no/such/file.json --solver mt-mcmf").code == 3);
}

TEST_CASE("oversized exact enumeration exits with 5") {
  TempFile inst("big_mpft.json");
  REQUIRE(run("generate --mode mpft --seed 2 --out " + inst.path).code == 0);
  // 6 areas and 20 tasks are far past the oracle admission limit.
  CHECK(run("solve " + inst.path + " --solver oracle").code == 5);
}

TEST_CASE("sweep emits grid-ordered CSV with aggregates") {
  const auto r = run(
      "sweep --axis tasks --values 6,8 --seeds 1..2 --m 3 --q 2 --p 2");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "axis,value,seed,solver,accomplished,total_distance,total_incentive,"
        "mean_completion_min,runtime_ms");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  // 2 values x 2 seeds x 3 solvers, plus mean and stddev per (value, solver).
  CHECK(rows.size() == 12 + 12);
  CHECK(rows[0].rfind("tasks,6,1,mt-mcmf,", 0) == 0);
  CHECK(rows[1].rfind("tasks,6,1,mtp-mcmf,", 0) == 0);
  CHECK(rows[2].rfind("tasks,6,1,mt-grdpt,", 0) == 0);
  CHECK(rows[3].rfind("tasks,6,2,mt-mcmf,", 0) == 0);
  CHECK(rows[6].rfind("tasks,8,1,mt-mcmf,", 0) == 0);
  CHECK(rows[12].rfind("tasks,6,mean,mt-mcmf,", 0) == 0);
  CHECK(rows[13].rfind("tasks,6,stddev,mt-mcmf,", 0) == 0);
}

TEST_CASE("sweep parallelism matches serial output") {
  // Compare all but the runtime column across worker counts.
  const std::string pipeline =
      std::string(MCSALLOC_CLI_PATH) +
      " sweep --axis q --values 2,3 --seeds 1..3 --m 3 --n 8 --p 2"
      " 2>/dev/null | cut -d, -f1-8";
  auto run_raw = [&](const char* workers) {
    const std::string full =
        std::string("env MCSALLOC_WORKERS=") + workers + " " + pipeline;
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
      r.out.append(buf.data(), n);
    }
    r.code = WEXITSTATUS(pclose(pipe));
    return r;
  };
  const RunResult ser = run_raw("1");
  const RunResult par = run_raw("4");
  CHECK(par.code == 0);
  CHECK(ser.code == 0);
  CHECK(par.out == ser.out);
  CHECK(!par.out.empty());
}

TEST_CASE("sweep over budgets on a fixed instance") {
  TempFile inst("sweep_mpft.json");
  REQUIRE(run("generate --mode mpft --seed 9 --out " + inst.path).code == 0);
  const json b = json::parse(run("bounds " + inst.path).out);
  std::ostringstream cmd;
  cmd.precision(17);
  cmd << "sweep --axis budgets --instance " << inst.path << " --values "
      << b["c_min"].get<double>() * 1.001 << "," << b["c_max"].get<double>();
  const auto r = run(cmd.str());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("c-ilp") != std::string::npos);
  CHECK(r.out.find("c-grd") != std::string::npos);
}

TEST_CASE("generated files are seed-stable") {
  TempFile a("stable_a.json"), b("stable_b.json");
  const auto ra = run("generate --mode fpmt --seed 11 --m 4 --n 8 --q 2 --out " + a.path);
  const auto rb = run("generate --mode fpmt --seed 11 --m 4 --n 8 --q 2 --out " + b.path);
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK(strip(ra.out) == strip(rb.out));
  std::ifstream fa(a.path), fb(b.path);
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}
