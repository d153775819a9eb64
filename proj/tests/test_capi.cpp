#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "weilrep.h"

TEST_CASE("config lifecycle and a passing run at q = 3") {
  wr_config* cfg = wr_config_new();
  REQUIRE(cfg != nullptr);
  CHECK(wr_config_set_q(cfg, 3) == WR_OK);
  CHECK(wr_config_set_case(cfg, "triple") == WR_OK);
  CHECK(wr_config_set_seed(cfg, 42) == WR_OK);

  wr_report* rep = nullptr;
  CHECK(wr_run(cfg, &rep) == WR_OK);
  REQUIRE(rep != nullptr);
  CHECK(wr_report_pass(rep) == 1);

  char* text = wr_report_text(rep);
  REQUIRE(text != nullptr);
  std::string s(text);
  CHECK(s.find("\"case\": \"triple\"") != std::string::npos);
  CHECK(s.find("\"orthogonality\"") != std::string::npos);
  CHECK(s.find("\"multiplicities\"") != std::string::npos);
  wr_string_free(text);

  wr_report_free(rep);
  wr_config_free(cfg);
}

TEST_CASE("identical configurations give byte-identical reports") {
  std::string texts[2];
  for (int i = 0; i < 2; ++i) {
    wr_config* cfg = wr_config_new();
    wr_config_set_q(cfg, 3);
    wr_config_set_case(cfg, "fxe");
    wr_config_set_seed(cfg, 7);
    wr_report* rep = nullptr;
    REQUIRE(wr_run(cfg, &rep) == WR_OK);
    char* text = wr_report_text(rep);
    REQUIRE(text != nullptr);
    texts[i] = text;
    wr_string_free(text);
    wr_report_free(rep);
    wr_config_free(cfg);
  }
  CHECK(texts[0] == texts[1]);
  CHECK(!texts[0].empty());
}

TEST_CASE("configuration errors") {
  wr_report* rep = reinterpret_cast<wr_report*>(0x1);

  wr_config* cfg = wr_config_new();
  wr_config_set_q(cfg, 4);  // even
  CHECK(wr_run(cfg, &rep) == WR_CONFIG_ERROR);
  CHECK(rep == nullptr);
  CHECK(std::strlen(wr_last_error()) > 0);
  wr_config_free(cfg);

  cfg = wr_config_new();
  wr_config_set_q(cfg, 9);  // prime power, not prime
  CHECK(wr_run(cfg, &rep) == WR_CONFIG_ERROR);
  wr_config_free(cfg);

  cfg = wr_config_new();
  wr_config_set_case(cfg, "sextic");
  CHECK(wr_run(cfg, &rep) == WR_CONFIG_ERROR);
  wr_config_free(cfg);

  cfg = wr_config_new();
  wr_config_add_check(cfg, "nonsense");
  CHECK(wr_run(cfg, &rep) == WR_CONFIG_ERROR);
  wr_config_free(cfg);

  cfg = wr_config_new();
  wr_config_set_case(cfg, "triple");
  wr_config_add_check(cfg, "appendix2");  // cubic-only check
  CHECK(wr_run(cfg, &rep) == WR_CONFIG_ERROR);
  wr_config_free(cfg);

  cfg = wr_config_new();
  wr_config_set_q(cfg, 5);
  wr_config_set_dense_oracle(cfg, 1);  // q = 3 only
  CHECK(wr_run(cfg, &rep) == WR_CONFIG_ERROR);
  wr_config_free(cfg);

  CHECK(wr_run(nullptr, &rep) == WR_CONFIG_ERROR);
  CHECK(wr_config_set_q(nullptr, 3) == WR_CONFIG_ERROR);
}

TEST_CASE("csv format lists one row per nonzero multiplicity") {
  wr_config* cfg = wr_config_new();
  wr_config_set_q(cfg, 3);
  wr_config_set_case(cfg, "triple");
  wr_config_set_format(cfg, "csv");
  wr_config_add_check(cfg, "decomposition");
  wr_report* rep = nullptr;
  REQUIRE(wr_run(cfg, &rep) == WR_OK);
  char* text = wr_report_text(rep);
  REQUIRE(text != nullptr);
  std::string s(text);
  int rows = 0;
  for (char ch : s)
    if (ch == '\n') ++rows;
  CHECK(rows == 15);  // header + 14 constituents
  CHECK(s.rfind("label,mult\n", 0) == 0);
  wr_string_free(text);
  wr_report_free(rep);
  wr_config_free(cfg);
}

TEST_CASE("character table CSV export") {
  char* text = nullptr;
  CHECK(wr_chartab_csv(3, 1, &text) == WR_OK);
  REQUIRE(text != nullptr);
  std::string s(text);
  // 8 labels + header for GL2(F_3).
  int rows = 0;
  for (char ch : s)
    if (ch == '\n') ++rows;
  CHECK(rows == 9);
  CHECK(s.rfind("label,", 0) == 0);
  CHECK(s.find("\"Cusp[") != std::string::npos);
  wr_string_free(text);

  CHECK(wr_chartab_csv(4, 1, &text) == WR_CONFIG_ERROR);
  CHECK(text == nullptr);
  CHECK(wr_chartab_csv(3, 4, &text) == WR_CONFIG_ERROR);
}
