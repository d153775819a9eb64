// Command-line front end.  Talks to the toolkit exclusively through the C
// API in weilrep.h.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weilrep.h"

namespace {

// Exit status contract: 0 = all checks passed, 1 = a check failed,
// 2 = configuration / usage error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for the three explicit Weil "
               "representations of GL(2) over small finite fields"};
  app.require_subcommand(1);

  // --- verify ---
  auto* verify = app.add_subcommand(
      "verify", "Run the configured checks and emit a report");
  std::uint32_t q = 3;
  std::string case_name = "all";
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  std::string checks_arg;
  bool dense_oracle = false;
  bool allow_large = false;
  verify->add_option("--q", q, "Field size (odd prime)");
  verify->add_option("--case", case_name, "triple | fxe | cubic | all");
  verify->add_option("--tol", tol, "Multiplicity rounding tolerance");
  verify->add_option("--seed", seed, "Random seed for sampled checks");
  verify->add_option("--out", out_path, "Output path (default: stdout)");
  verify->add_option("--format", format, "json | csv");
  verify->add_option("--checks", checks_arg,
                     "Comma-separated subset of: chartab, orbits, "
                     "homomorphism, appendix2, decomposition");
  verify->add_flag("--dense-oracle", dense_oracle,
                   "Cross-check traces against dense matrices (q = 3 only)");
  verify->add_flag("--allow-large", allow_large,
                   "Permit the expensive q = 7 configuration");

  // --- chartab ---
  auto* chartab = app.add_subcommand(
      "chartab", "Dump a character table as CSV (labels x classes)");
  std::uint32_t ct_q = 3;
  std::uint32_t ct_degree = 1;
  std::string ct_out;
  chartab->add_option("--q", ct_q, "Field size (odd prime)");
  chartab->add_option("--degree", ct_degree,
                      "Coefficient field degree over the base (1, 2 or 3)");
  chartab->add_option("--out", ct_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  if (chartab->parsed()) {
    char* text = nullptr;
    if (wr_chartab_csv(ct_q, ct_degree, &text) != WR_OK) {
      std::cerr << "error: " << wr_last_error() << "\n";
      return kExitConfigError;
    }
    bool ok = write_output(ct_out, text);
    wr_string_free(text);
    if (!ok) {
      std::cerr << "error: cannot write " << ct_out << "\n";
      return kExitConfigError;
    }
    return kExitPass;
  }

  wr_config* cfg = wr_config_new();
  wr_config_set_q(cfg, q);
  wr_config_set_case(cfg, case_name.c_str());
  wr_config_set_tolerance(cfg, tol);
  wr_config_set_seed(cfg, seed);
  wr_config_set_format(cfg, format.c_str());
  for (const auto& c : split_csv(checks_arg))
    wr_config_add_check(cfg, c.c_str());
  wr_config_set_dense_oracle(cfg, dense_oracle ? 1 : 0);
  wr_config_set_allow_large(cfg, allow_large ? 1 : 0);

  auto t0 = std::chrono::steady_clock::now();
  wr_report* rep = nullptr;
  int status = wr_run(cfg, &rep);
  auto t1 = std::chrono::steady_clock::now();
  wr_config_free(cfg);

  if (status == WR_CONFIG_ERROR) {
    std::cerr << "error: " << wr_last_error() << "\n";
    return kExitConfigError;
  }

  char* text = wr_report_text(rep);
  bool wrote = text != nullptr && write_output(out_path, text);
  wr_string_free(text);
  int pass = wr_report_pass(rep);
  wr_report_free(rep);

  // Wall-clock timing goes to stderr so reports stay byte-deterministic.
  std::cerr << "elapsed_ms "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                   .count()
            << "\n";

  if (!wrote) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitConfigError;
  }
  return pass ? kExitPass : kExitCheckFailed;
}
