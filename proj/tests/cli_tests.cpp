// End-to-end checks of the d2dmm command line: exit codes, determinism of
// emitted bytes, and the solve/validate round trip. Takes the binary path
// as argv[1] and works inside a throwaway directory.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define REQUIRE(cond, msg)                                                       \
  do {                                                                           \
    if (!(cond)) {                                                               \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg        \
                << "\n";                                                         \
      ++g_failures;                                                              \
    }                                                                            \
  } while (0)

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr combined
};

CmdResult run_cmd(const std::string& cmd) {
  CmdResult res;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) {
    res.exit_code = -1;
    return res;
  }
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    res.output.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-d2dmm>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path work =
      fs::temp_directory_path() / ("d2dmm_cli_" + std::to_string(::getpid()));
  fs::create_directories(work);
  const std::string W = work.string();

  // --help succeeds
  REQUIRE(run_cmd(bin + " --help").exit_code == 0, "--help should exit 0");

  // generate: deterministic bytes, empty scenario allowed
  {
    const auto a = run_cmd(bin + " generate --seed 7 --c 5");
    const auto b = run_cmd(bin + " generate --seed 7 --c 5");
    REQUIRE(a.exit_code == 0, "generate exit code");
    REQUIRE(a.output == b.output, "generate must be byte-identical on reruns");

    const auto c0 = run_cmd(bin + " generate --seed 7 --c 0");
    REQUIRE(c0.exit_code == 0, "generate --c 0 is a valid empty scenario");

    const auto other_seed = run_cmd(bin + " generate --seed 8 --c 5");
    REQUIRE(other_seed.output != a.output, "different seed changes the output");
  }

  // config errors: unknown key named, exit 2
  {
    write_file(work / "bad.conf", "radius_m = 500\nshadow_sigma = 4\n");
    const auto r = run_cmd(bin + " --config " + W + "/bad.conf generate --seed 1 --c 2");
    REQUIRE(r.exit_code == 2, "unknown config key should exit 2");
    REQUIRE(r.output.find("shadow_sigma") != std::string::npos,
            "error message should name the offending key");

    // the config path can also arrive through the environment
    const auto env = run_cmd("D2DMM_CONFIG=" + W + "/bad.conf " + bin +
                             " generate --seed 1 --c 2");
    REQUIRE(env.exit_code == 2, "D2DMM_CONFIG should be honored");
  }

  // scenario for the solve tests
  const std::string scenario5 = W + "/scenario5.json";
  REQUIRE(run_cmd(bin + " generate --seed 42 --c 5 --out " + scenario5).exit_code == 0,
          "generate to file");

  // solve each algorithm; optimal must be the cheapest of the four
  {
    double optimal_power = 0.0, cg = 0.0, cl = 0.0, bs = 0.0;
    for (const std::string alg :
         {"optimal", "channel-gain", "cluster", "bs-broadcast"}) {
      const std::string out = W + "/plan_" + alg + ".json";
      const auto r = run_cmd(bin + " solve --scenario " + scenario5 +
                             " --algorithm " + alg + " --out " + out);
      REQUIRE(r.exit_code == 0, "solve " + alg + " exit code, got " + r.output);
      const auto doc = nlohmann::json::parse(read_file(out));
      const double p = doc.at("total_power_w").get<double>();
      if (alg == "optimal") optimal_power = p;
      if (alg == "channel-gain") cg = p;
      if (alg == "cluster") cl = p;
      if (alg == "bs-broadcast") bs = p;

      // solve then validate round-trips cleanly
      const auto v = run_cmd(bin + " validate --scenario " + scenario5 + " --plan " + out);
      REQUIRE(v.exit_code == 0, "validate after solve (" + alg + "): " + v.output);
    }
    REQUIRE(optimal_power <= cg * (1.0 + 1e-12), "oracle beats channel gain");
    REQUIRE(optimal_power <= cl * (1.0 + 1e-12), "oracle beats cluster");
    REQUIRE(optimal_power <= bs * (1.0 + 1e-12), "oracle beats broadcast");
  }

  // deterministic solve bytes; human summary reports W and dBm
  {
    const auto a = run_cmd(bin + " solve --scenario " + scenario5 +
                           " --algorithm cluster");
    const auto b = run_cmd(bin + " solve --scenario " + scenario5 +
                           " --algorithm cluster");
    REQUIRE(a.output == b.output, "solve output must be reproducible");
    REQUIRE(a.output.find("dBm") != std::string::npos,
            "metrics block should report power in dBm as well");
  }

  // oracle cap: c=9 over the default cap of 8 -> exit 3
  {
    const std::string big = W + "/scenario9.json";
    run_cmd(bin + " generate --seed 1 --c 9 --out " + big);
    const auto r = run_cmd(bin + " solve --scenario " + big + " --algorithm optimal");
    REQUIRE(r.exit_code == 3, "oracle cap should exit 3, got " +
                                  std::to_string(r.exit_code));
  }

  // tampered plan: validate reports the tag and exits 1
  {
    const std::string plan = W + "/plan_tamper.json";
    run_cmd(bin + " solve --scenario " + scenario5 + " --algorithm bs-broadcast --out " +
            plan);
    auto doc = nlohmann::json::parse(read_file(plan));
    auto& group = doc["hops"][0]["groups"][0];
    group["power_w"] = group["power_w"].get<double>() * 0.5;
    write_file(plan, doc.dump(2) + "\n");
    const auto r = run_cmd(bin + " validate --scenario " + scenario5 + " --plan " + plan);
    REQUIRE(r.exit_code == 1, "tampered plan should exit 1");
    REQUIRE(r.output.find("(8)") != std::string::npos,
            "low declared power should cite the rate constraint");
  }

  // plan/scenario MD count mismatch is a user error (2), not a violation
  {
    const std::string other = W + "/scenario3.json";
    run_cmd(bin + " generate --seed 5 --c 3 --out " + other);
    const auto r = run_cmd(bin + " validate --scenario " + other + " --plan " + W +
                           "/plan_optimal.json");
    REQUIRE(r.exit_code == 2, "MD count mismatch should exit 2");
  }

  // experiment: table2 ratios >= 1, reruns byte-identical, manifest sane
  {
    write_file(work / "exp.conf",
               "trials = 12\nc_values = 1,2,3\nmaster_seed = 9\noutput_dir = " + W +
                   "/out_a\n");
    const auto r1 = run_cmd(bin + " --config " + W + "/exp.conf experiment table2");
    REQUIRE(r1.exit_code == 0, "experiment table2: " + r1.output);
    const std::string csv_a = read_file(work / "out_a" / "table2.csv");
    REQUIRE(csv_a.rfind("c,algorithm,mean_power_w,ratio_to_optimal\n", 0) == 0,
            "table2 csv header");
    {
      std::istringstream is(csv_a);
      std::string line;
      std::getline(is, line);  // header
      while (std::getline(is, line)) {
        const auto last_comma = line.rfind(',');
        const double ratio = std::stod(line.substr(last_comma + 1));
        REQUIRE(ratio >= 1.0 - 1e-12, "table2 ratio >= 1: " + line);
      }
    }

    // same config, fresh output dir: byte-identical CSV
    write_file(work / "exp_b.conf",
               "trials = 12\nc_values = 1,2,3\nmaster_seed = 9\noutput_dir = " + W +
                   "/out_b\n");
    const auto r2 = run_cmd(bin + " --config " + W + "/exp_b.conf experiment table2");
    REQUIRE(r2.exit_code == 0, "experiment rerun");
    REQUIRE(read_file(work / "out_b" / "table2.csv") == csv_a,
            "table2.csv must be byte-identical across reruns");

    const auto manifest =
        nlohmann::json::parse(read_file(work / "out_a" / "table2.manifest.json"));
    REQUIRE(manifest.at("command") == "experiment table2", "manifest command");
    REQUIRE(manifest.at("config").contains("master_seed"), "manifest echoes config");
  }

  // experiment fig4 on a small trial count: monotone coverage columns
  {
    write_file(work / "fig4.conf",
               "trials = 2\nmaster_seed = 3\noutput_dir = " + W + "/out_fig4\n");
    const auto r = run_cmd(bin + " --config " + W + "/fig4.conf experiment fig4");
    REQUIRE(r.exit_code == 0, "experiment fig4: " + r.output);
    std::istringstream is(read_file(work / "out_fig4" / "fig4.csv"));
    std::string line;
    std::getline(is, line);
    REQUIRE(line == "hop,algorithm,mean_coverage", "fig4 header");
    double prev_cg = 0.0, prev_cl = 0.0;
    while (std::getline(is, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.rfind(',');
      const std::string alg = line.substr(c1 + 1, c2 - c1 - 1);
      const double cov = std::stod(line.substr(c2 + 1));
      if (alg == "channel_gain") {
        REQUIRE(cov >= prev_cg - 1e-12, "fig4 channel_gain coverage monotone");
        prev_cg = cov;
      } else {
        REQUIRE(cov >= prev_cl - 1e-12, "fig4 cluster coverage monotone");
        prev_cl = cov;
      }
    }
    REQUIRE(prev_cg > 0.999, "channel_gain reaches full coverage");
    REQUIRE(prev_cl > 0.999, "cluster reaches full coverage");
  }

  // unwritable output directory -> exit 2
  {
    write_file(work / "blocker", "not a directory\n");
    write_file(work / "unwritable.conf",
               "trials = 2\nc_values = 1\noutput_dir = " + W + "/blocker/out\n");
    const auto r = run_cmd(bin + " --config " + W + "/unwritable.conf experiment fig3");
    REQUIRE(r.exit_code == 2, "unwritable output dir should exit 2, got " +
                                  std::to_string(r.exit_code));
  }

  std::error_code ec;
  fs::remove_all(work, ec);

  if (g_failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_tests: " << g_failures << " failure(s)\n";
  return 1;
}
