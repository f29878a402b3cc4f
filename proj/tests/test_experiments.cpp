#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "torlab/experiments.hpp"

using namespace torlab;

TEST_CASE("records: csv and json round trip") {
  RecordTable table;
  table.columns = {"experiment", "m", "value", "status"};
  table.rows.push_back({{std::string("shells"), std::int64_t(25), 0.1, std::string("ok")}});
  const auto csv = to_csv(table);
  CHECK(csv == "schema_version,experiment,m,value,status\n"
               "1,shells,25,0.10000000000000001,ok\n");

  const auto doc = nlohmann::json::parse(to_json(table));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["schema_version"] == 1);
  CHECK(doc[0]["m"] == 25);
  CHECK(doc[0]["value"] == 0.1);
  CHECK(doc[0]["status"] == "ok");

  table.rows.push_back({{std::string("short")}});
  CHECK_THROWS_AS(to_csv(table), std::logic_error);
  CHECK_THROWS_AS(to_json(table), std::logic_error);
}

TEST_CASE("write_atomic leaves no temp file") {
  const auto path = std::filesystem::temp_directory_path() / "torlab_records_test.csv";
  write_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body == "hello\n");
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST_CASE("shells experiment matches the divisor oracle") {
  ExperimentConfig cfg;
  cfg.experiment = "shells";
  cfg.d = 2;
  cfg.m_min = 0;
  cfg.m_max = 200;
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 201);
  for (std::int64_t m = 0; m <= 200; ++m) {
    const auto& row = table.rows[m];
    CHECK(std::get<std::int64_t>(row.fields[2]) == m);
    CHECK(std::get<std::int64_t>(row.fields[4]) ==
          std::int64_t(two_squares_count_oracle(m)));
    CHECK(std::get<std::string>(row.fields[5]) == "ok");
  }
}

TEST_CASE("run_experiment rejects invalid configs") {
  ExperimentConfig cfg;
  cfg.experiment = "shells";  // no m range at all
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg.experiment = "nope";
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("empty shells produce status rows, not aborts") {
  ExperimentConfig cfg;
  cfg.experiment = "jarnik";
  cfg.m_list = {3, 25};  // m=3 is not a sum of two squares
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 2);
  CHECK(std::get<std::string>(table.rows[0].fields.back()) == "empty_shell");
  CHECK(std::get<std::string>(table.rows[1].fields.back()) == "ok");
  CHECK(std::get<std::int64_t>(table.rows[1].fields[4]) == 12);

  ExperimentConfig certify;
  certify.experiment = "certify";
  certify.m_list = {3};
  const auto ct = run_experiment(certify);
  REQUIRE(ct.rows.size() == 1);
  CHECK(std::get<std::string>(ct.rows[0].fields.back()) == "empty_shell");
}

TEST_CASE("sweep output is identical at any job count") {
  ExperimentConfig base;
  base.experiment = "jarnik";
  base.m_min = 2;
  base.m_max = 400;
  base.jobs = 1;
  const auto serial = to_csv(run_experiment(base));
  for (int jobs : {2, 5, 8}) {
    auto cfg = base;
    cfg.jobs = jobs;
    CHECK(to_csv(run_experiment(cfg)) == serial);
  }

  ExperimentConfig bil;
  bil.experiment = "bilinear";
  bil.beta_list = {100.0, 1000.0};
  bil.trials = 3;
  bil.jobs = 1;
  const auto bserial = to_csv(run_experiment(bil));
  bil.jobs = 7;
  CHECK(to_csv(run_experiment(bil)) == bserial);
}

TEST_CASE("restrict experiment row content") {
  ExperimentConfig cfg;
  cfg.experiment = "restrict";
  cfg.m_list = {25};
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 1);
  const auto& row = table.rows[0];
  CHECK(std::get<std::int64_t>(row.fields[4]) == 12);          // count
  const double c_est = std::get<double>(row.fields[9]);
  const double C_est = std::get<double>(row.fields[10]);
  const double lo = std::get<double>(row.fields[11]);
  const double hi = std::get<double>(row.fields[12]);
  CHECK(c_est <= lo + 1e-10);
  CHECK(C_est >= hi - 1e-10);
  CHECK(lo > 0);
  CHECK(hi < 12.0);
  CHECK(std::get<std::string>(row.fields.back()) == "ok");
}

TEST_CASE("bilinear experiment row content") {
  ExperimentConfig cfg;
  cfg.experiment = "bilinear";
  cfg.beta_list = {100.0};
  cfg.pattern = "maximal_grid";
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 1);
  const auto& row = table.rows[0];
  CHECK(std::get<double>(row.fields[2]) == 100.0);
  CHECK(std::get<std::string>(row.fields[4]) == "maximal_grid");
  CHECK(std::get<std::int64_t>(row.fields[5]) == 10);
  const double mag = std::get<double>(row.fields[7]);
  const double trivial = std::get<double>(row.fields[8]);
  CHECK(trivial == 100.0);
  CHECK(mag <= trivial + 1e-9);
  CHECK(std::get<double>(row.fields[9]) ==
        doctest::Approx(mag / std::pow(100.0, 23.0 / 24.0)));
}

TEST_CASE("meansquare experiment fine cells equal the shell size") {
  ExperimentConfig cfg;
  cfg.experiment = "meansquare";
  cfg.m_list = {1009};
  cfg.cell_side = 0.25;  // every occupied cell holds exactly one point
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 1);
  const auto& row = table.rows[0];
  const auto count = std::get<std::int64_t>(row.fields[4]);
  CHECK(std::get<std::int64_t>(row.fields[6]) == count);  // cells
  CHECK(std::get<std::int64_t>(row.fields[7]) == count);  // sum of squares
}
