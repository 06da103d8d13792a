#include <doctest.h>

#include "kato/error.hpp"
#include "kato/golden.hpp"

using namespace kato;

TEST_CASE("embedded expectations equal the bundled golden file") {
  const auto file = io::load_json_file(std::string(KATO_SOURCE_DIR) + "/data/golden.json");
  CHECK(file == golden::embedded_expectations());
  const auto& systems = file.at("systems");
  for (const auto& name : golden::system_names()) CHECK(systems.contains(name));
  CHECK(systems.size() == golden::system_names().size());
}

TEST_CASE("fast golden systems reproduce") {
  const auto expected = golden::embedded_expectations();
  for (const std::string name : {"finite", "circle"}) {
    auto run = golden::run_system(name, 1);
    CHECK(golden::compare({run}, expected).empty());
  }
}

TEST_CASE("compare reports corrupted expectations") {
  auto run = golden::run_system("finite", 1);
  auto expected = golden::embedded_expectations();
  expected["systems"]["finite"]["sensitivity"] = "Established";
  auto mismatches = golden::compare({run}, expected);
  REQUIRE(mismatches.size() == 1);
  CHECK(mismatches[0].system == "finite");
  CHECK(mismatches[0].check == "sensitivity");
  CHECK(mismatches[0].expected == "Established");
  CHECK(mismatches[0].actual == "Refuted");

  expected = golden::embedded_expectations();
  expected["systems"]["finite"].erase("conjugacy");
  expected["systems"]["finite"]["extra"] = "Established";
  CHECK(golden::compare({run}, expected).size() == 2);

  CHECK_THROWS_AS(golden::compare({run}, io::json::parse("{}")), Error);
  CHECK_THROWS_AS(golden::run_system("nonexistent"), Error);
}
