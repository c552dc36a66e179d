// End-to-end checks of the installed command line.  The binary path arrives
// through the GREENFORGE_CLI environment variable set by ctest.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "grid.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("GREENFORGE_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  int rc = pclose(pipe);
  return {WEXITSTATUS(rc), out};
}

json strip_timestamp(const std::string& text) {
  json doc = json::parse(text);
  doc.erase("timestamp");
  return doc;
}

}  // namespace

TEST_CASE("criterion subcommand") {
  auto res = run_cli("criterion --weight power:0 --p 2");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.stdout_text);
  CHECK(doc["classification"] == "holds");
  CHECK(doc.contains("rule"));
  CHECK(doc["trace"].is_array());
}

TEST_CASE("capacity subcommand and closed-form value") {
  auto res = run_cli("capacity --weight power:0 --p 2 --r 0.1 --R 1");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.stdout_text);
  CHECK(doc["method"] == "closed_form");
  CHECK(std::abs(doc["value"].get<double>() - 2.7287527) < 1e-4);
}

TEST_CASE("domain errors exit with code 2 and a parsable error object") {
  auto res = run_cli("capacity --weight power:0 --p 1 --r 0.1 --R 1");
  CHECK(res.exit_code == 2);
  json doc = json::parse(res.stdout_text);
  CHECK(doc.contains("error"));
  CHECK(doc["error"]["status"] == "domain");

  auto res2 = run_cli("criterion --weight bogus:3 --p 2");
  CHECK(res2.exit_code == 2);
}

TEST_CASE("reports are byte-identical modulo the timestamp") {
  auto r1 = run_cli("criterion --weight osc:2,3,4,5 --p 3");
  auto r2 = run_cli("criterion --weight osc:2,3,4,5 --p 3");
  CHECK(r1.exit_code == 0);
  CHECK(strip_timestamp(r1.stdout_text).dump() ==
        strip_timestamp(r2.stdout_text).dump());
}

TEST_CASE("solve subcommand round-trips the field csv") {
  json spec{{"weight", "power:0"},
            {"p", 2.0},
            {"norm", "euclid"},
            {"grid", {{"M", 32}, {"N", 16}, {"r0", 0.1}, {"R", 1.0}}},
            {"bc", {{"kind", "capacitary_ring"}}}};
  {
    std::ofstream f("/tmp/gf_solve_spec.json");
    f << spec.dump();
  }
  auto res = run_cli(
      "solve --spec /tmp/gf_solve_spec.json --field-out /tmp/gf_field.csv");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.stdout_text);
  CHECK(doc["energy"].get<double>() > 0.0);
  CHECK(doc["iterations"].get<long>() >= 1);

  std::ifstream f("/tmp/gf_field.csv");
  REQUIRE(f.good());
  std::string csv((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
  auto field = greenforge::ScalarField::from_csv(csv);
  CHECK(field.grid->M() == 32);
  CHECK(field.grid->N() == 16);
  CHECK(field.to_csv() == csv);  // reload is identity
}

TEST_CASE("green evaluation through the cli") {
  auto res = run_cli(
      "green --p 1.5 --alpha 0 --R 1 --profile zero --eval 0.5,0.0");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.stdout_text);
  CHECK(std::abs(doc["eval"][0]["value"].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("witness refusal exits with code 3") {
  auto res = run_cli(
      "witness nonuniqueness --p 2.5 --alpha 0 --f1 zero --f2 triangle");
  CHECK(res.exit_code == 3);
  json doc = json::parse(res.stdout_text);
  CHECK(doc["accepted"] == false);
}

TEST_CASE("harnack constants through the cli") {
  auto res = run_cli("harnack --A 3 --lambda 2");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.stdout_text);
  CHECK(std::abs(doc["C0"].get<double>() - 4.5) < 1e-12);
}

TEST_CASE("results do not depend on GREENFORGE_THREADS") {
  json spec{{"weight", "power:0"},
            {"p", 1.5},
            {"norm", "finsler"},
            {"grid", {{"M", 24}, {"N", 12}, {"r0", 0.2}, {"R", 1.0}}},
            {"bc", {{"kind", "capacitary_ring"}}}};
  {
    std::ofstream f("/tmp/gf_thread_spec.json");
    f << spec.dump();
  }
  const char* bin = std::getenv("GREENFORGE_CLI");
  REQUIRE(bin != nullptr);
  auto run_with = [&](const std::string& envs) {
    std::string cmd = envs + " " + bin +
                      " solve --spec /tmp/gf_thread_spec.json 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      out.append(buf.data(), n);
    }
    pclose(pipe);
    return strip_timestamp(out).dump();
  };
  CHECK(run_with("GREENFORGE_THREADS=1") == run_with("GREENFORGE_THREADS=2"));
}

TEST_CASE("report subcommand runs a criteria subset") {
  auto res = run_cli("report --only 5");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.stdout_text);
  REQUIRE(doc["criteria"].size() == 1);
  CHECK(doc["criteria"][0]["id"] == 5);
  CHECK(doc["criteria"][0]["pass"] == true);
  CHECK(doc["all_pass"] == true);
}

TEST_CASE("profile export writes the documented columns") {
  auto res = run_cli(
      "profile --weight osc:2,3,4,5 --csv-out /tmp/gf_profile.csv");
  CHECK(res.exit_code == 0);
  std::ifstream f("/tmp/gf_profile.csv");
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "log2_r,log2_mu");
}
