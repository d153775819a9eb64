#include "weilrep.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "report.hpp"

struct wr_config {
  weil::RunConfig cfg;
};

struct wr_report {
  weil::RunReport rep;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

wr_config* wr_config_new(void) { return new (std::nothrow) wr_config(); }

void wr_config_free(wr_config* cfg) { delete cfg; }

int wr_config_set_q(wr_config* cfg, uint32_t q) {
  if (!cfg) return WR_CONFIG_ERROR;
  cfg->cfg.q = q;
  return WR_OK;
}

int wr_config_set_case(wr_config* cfg, const char* name) {
  if (!cfg || !name) return WR_CONFIG_ERROR;
  cfg->cfg.model_case = name;
  return WR_OK;
}

int wr_config_set_tolerance(wr_config* cfg, double tol) {
  if (!cfg) return WR_CONFIG_ERROR;
  cfg->cfg.tol = tol;
  return WR_OK;
}

int wr_config_set_seed(wr_config* cfg, uint64_t seed) {
  if (!cfg) return WR_CONFIG_ERROR;
  cfg->cfg.seed = seed;
  return WR_OK;
}

int wr_config_set_format(wr_config* cfg, const char* fmt) {
  if (!cfg || !fmt) return WR_CONFIG_ERROR;
  cfg->cfg.format = fmt;
  return WR_OK;
}

int wr_config_add_check(wr_config* cfg, const char* name) {
  if (!cfg || !name) return WR_CONFIG_ERROR;
  cfg->cfg.checks.push_back(name);
  return WR_OK;
}

int wr_config_set_dense_oracle(wr_config* cfg, int enabled) {
  if (!cfg) return WR_CONFIG_ERROR;
  cfg->cfg.dense_oracle = enabled != 0;
  return WR_OK;
}

int wr_config_set_allow_large(wr_config* cfg, int enabled) {
  if (!cfg) return WR_CONFIG_ERROR;
  cfg->cfg.allow_large = enabled != 0;
  return WR_OK;
}

int wr_run(const wr_config* cfg, wr_report** out) {
  if (out) *out = nullptr;
  if (!cfg || !out) {
    g_last_error = "null argument";
    return WR_CONFIG_ERROR;
  }
  try {
    weil::RunReport rep = weil::run_verify(cfg->cfg);
    auto* handle = new wr_report{std::move(rep)};
    *out = handle;
    g_last_error.clear();
    return handle->rep.pass() ? WR_OK : WR_CHECK_FAILED;
  } catch (const weil::ConfigError& e) {
    g_last_error = e.what();
    return WR_CONFIG_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WR_CONFIG_ERROR;
  }
}

void wr_report_free(wr_report* rep) { delete rep; }

int wr_report_pass(const wr_report* rep) {
  return rep && rep->rep.pass() ? 1 : 0;
}

char* wr_report_text(const wr_report* rep) {
  if (!rep) return nullptr;
  return dup_string(rep->rep.cfg.format == "csv" ? weil::render_csv(rep->rep)
                                                 : weil::render_json(rep->rep));
}

int wr_chartab_csv(uint32_t q, uint32_t degree, char** out) {
  if (out) *out = nullptr;
  if (!out) {
    g_last_error = "null argument";
    return WR_CONFIG_ERROR;
  }
  try {
    *out = dup_string(weil::chartab_csv(q, degree));
    g_last_error.clear();
    return WR_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WR_CONFIG_ERROR;
  }
}

const char* wr_last_error(void) { return g_last_error.c_str(); }

void wr_string_free(char* s) { std::free(s); }

}  // extern "C"
