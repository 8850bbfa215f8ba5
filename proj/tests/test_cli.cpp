#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "cli_helper.hpp"

using testutil::run_cli;

TEST_CASE("critical subcommand reports the I2 fold") {
  const auto r = run_cli("critical --system I2 --k 2 --i 2");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("system,k,i,lambda_cr,arg,method") == 0);
  // second line: I2,2,2,<lambda>,<arg>,fold-min
  const auto line = r.out.substr(r.out.find('\n') + 1);
  CHECK(line.find("I2,2,2,") == 0);
  const double lambda = std::atof(line.substr(7).c_str());
  CHECK(std::abs(lambda - 4.0) < 1e-9);
  CHECK(line.find("fold-min") != std::string::npos);
}

TEST_CASE("branches output is deterministic and carries the curve columns") {
  const std::string args = "branches --case I2 --t-min 0.01 --t-max 0.99 --steps 200";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.status == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("t,phi1,phi2,phi3\n") == 0);
  // header + 200 rows
  int lines = 0;
  for (char c : first.out) lines += (c == '\n');
  CHECK(lines == 201);

  const auto i3 = run_cli("branches --case I3 --t-min 0.05 --t-max 0.95 --steps 10");
  REQUIRE(i3.status == 0);
  CHECK(i3.out.find("t,lambda1,lambda2,lambda3\n") == 0);
}

TEST_CASE("verify-consistency emits a small residual for the TI law") {
  const auto r = run_cli(
      "verify-consistency --graph pipe --k 2 --n 2 --lambda 1.0 --law ti");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["residual"].get<double>() < 1e-10);
  CHECK(j["config"]["command"] == "verify-consistency");
  CHECK(j["config"]["graph"] == "pipe");
  CHECK(j["config"]["lambda"].get<double>() == 1.0);

  const auto hinge = run_cli(
      "verify-consistency --graph hinge --k 2 --n 2 --lambda 3.0 --law ti");
  REQUIRE(hinge.status == 0);
  CHECK(nlohmann::json::parse(hinge.out)["residual"].get<double>() < 1e-10);

  // at n = 1 the root weight carries the extra recursion factor
  for (const char* args :
       {"verify-consistency --graph pipe --k 2 --n 1 --lambda 1.5 --law ti",
        "verify-consistency --graph wand --k 2 --n 1 --lambda 2.0 --law ti"}) {
    const auto r = run_cli(args);
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["residual"].get<double>() < 1e-10);
  }
}

TEST_CASE("verify-consistency accepts an explicit weakly periodic law") {
  // constant tuple at the k=2 fixed point of z = (1+z)^-2
  const auto r = run_cli(
      "verify-consistency --graph pipe --k 2 --n 2 --lambda 1.0 --law wp --i 2 "
      "--z 0.46557123187676804 0.46557123187676804 0.46557123187676804 "
      "0.46557123187676804 0.46557123187676804 0.46557123187676804 "
      "0.46557123187676804 0.46557123187676804");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["residual"].get<double>() < 1e-10);
}

TEST_CASE("solve subcommand JSON mirrors the run configuration") {
  const auto r = run_cli("solve --system I2 --k 2 --i 2 --lambda 5 --format json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"].get<int>() == 3);
  CHECK(j["solutions"].size() == 3);
  CHECK(j["config"]["lambda"].get<double>() == 5.0);
  for (const auto& sol : j["solutions"])
    CHECK(sol["residual"].get<double>() < 1e-10);
}

TEST_CASE("solve CSV layout") {
  const auto r = run_cli("solve --system ti3-wand --k 2 --lambda 2");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("lambda,count,sol1_a,sol1_b,sol1_class,sol2_a,sol2_b,"
                   "sol2_class,sol3_a,sol3_b,sol3_class\n") == 0);
  CHECK(r.out.find("translation_invariant") != std::string::npos);
  CHECK(r.out.find("weakly_periodic_nonperiodic") != std::string::npos);

  const auto fold = run_cli("solve --system I2 --k 2 --i 2 --lambda 4");
  REQUIRE(fold.status == 0);
  CHECK(fold.out.find("+tangency") != std::string::npos);
}

TEST_CASE("enumerate matches the transfer count") {
  const auto r = run_cli("enumerate --graph hinge --k 2 --n 1");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("graph,k,n,count,transfer_count,match\n") == 0);
  CHECK(r.out.find("hinge,2,1,43,43,true") != std::string::npos);

  const auto listed = run_cli("enumerate --graph pipe --k 1 --n 0 --list");
  REQUIRE(listed.status == 0);
  CHECK(listed.out == "index,states\n0,0\n1,1\n");
}

TEST_CASE("invalid parameter combinations are rejected with diagnostics") {
  CHECK(run_cli("solve --system I4 --k 2 --i 3 --lambda 1").status != 0);
  CHECK(run_cli("solve --system I2 --k 3 --i 2 --lambda 1").status != 0);
  CHECK(run_cli("verify-consistency --graph wrench --k 2 --n 2 --lambda 1").status != 0);
  CHECK(run_cli("verify-consistency --graph hinge --k 2 --n 2 --lambda 1 --law wp").status != 0);
  CHECK(run_cli("sweep --system I2 --k 2 --i 2 --lambda-min 2 --lambda-max 1 --steps 5").status != 0);
  CHECK(run_cli("branches --case I5").status != 0);
  CHECK(run_cli("enumerate --graph pipe --k 2 --n 9").status != 0);
}

TEST_CASE("sweep output does not depend on the thread budget") {
  const std::string args =
      "sweep --system ti3-wand --k 2 --lambda-min 0.5 --lambda-max 2 --steps 7";
  const auto serial = run_cli(args, "HC_THREADS=1");
  const auto parallel = run_cli(args, "HC_THREADS=4");
  REQUIRE(serial.status == 0);
  REQUIRE(parallel.status == 0);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("sweep CSV is wide enough for the largest count") {
  const auto r = run_cli(
      "sweep --system I2 --k 2 --i 2 --lambda-min 3 --lambda-max 5 --steps 5");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("lambda,count,sol1_a") == 0);
  CHECK(r.out.find("sol3_class") != std::string::npos);
  // rows below the fold are padded to the same width
  const auto start = r.out.find("\n3,") + 1;
  const auto row = r.out.substr(start, r.out.find('\n', start) - start);
  CHECK(row.find(",,,") != std::string::npos);
}
