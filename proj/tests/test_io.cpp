// Presentation files and report formats.
#include <catch2/catch_amalgamated.hpp>

#include "ssp/io.hpp"

using namespace ssp;

TEST_CASE("presentation files round-trip byte-stable") {
  EssentialChain chain(PrimeModulus(3), 6,
                       {{0}, {0, 0}, {0, 1, 0}, {1, 0, 0, 2}});
  std::string text = serialize_presentation(chain);
  EssentialChain parsed = parse_presentation(text);
  CHECK(parsed == chain);
  CHECK(serialize_presentation(parsed) == text);
  // keys are sorted for byte stability
  CHECK(text.find("\"chain\"") < text.find("\"n\""));
  CHECK(text.find("\"n\"") < text.find("\"p\""));
}

TEST_CASE("the two-generator chain round-trips with an empty chain array") {
  EssentialChain base(PrimeModulus(5), 2);
  std::string text = serialize_presentation(base);
  CHECK(parse_presentation(text) == base);
  CHECK(text.find("\"chain\": []") != std::string::npos);
}

TEST_CASE("parse diagnostics") {
  SECTION("malformed JSON reports line and column") {
    try {
      parse_presentation("{\n  \"p\": 3,\n  \"n\": }");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SECTION("missing fields are named") {
    CHECK_THROWS_WITH(parse_presentation("{\"p\": 3}"),
                      Catch::Matchers::ContainsSubstring("'n'"));
  }
  SECTION("the infinite case is rejected at parse time") {
    CHECK_THROWS_WITH(
        parse_presentation("{\"p\": \"infinity\", \"n\": 3, \"chain\": [[1]]}"),
        Catch::Matchers::ContainsSubstring("finite prime"));
  }
  SECTION("composite p is rejected") {
    CHECK_THROWS_AS(
        parse_presentation("{\"p\": 6, \"n\": 3, \"chain\": [[1]]}"),
        parse_error);
  }
  SECTION("chain entries out of range are rejected") {
    CHECK_THROWS_WITH(
        parse_presentation("{\"p\": 3, \"n\": 3, \"chain\": [[5]]}"),
        Catch::Matchers::ContainsSubstring("out of range"));
  }
  SECTION("row length mismatches are rejected") {
    CHECK_THROWS_AS(
        parse_presentation("{\"p\": 3, \"n\": 3, \"chain\": [[1, 1]]}"),
        parse_error);
  }
  SECTION("n disagreeing with the chain length is rejected") {
    CHECK_THROWS_AS(
        parse_presentation("{\"p\": 3, \"n\": 4, \"chain\": [[1]]}"),
        parse_error);
  }
  SECTION("unknown keys are ignored") {
    EssentialChain parsed = parse_presentation(
        "{\"p\": 3, \"n\": 3, \"chain\": [[1]], \"comment\": \"x\"}");
    CHECK(parsed.row(3) == std::vector<std::uint8_t>{1});
  }
}

TEST_CASE("CSV report format") {
  EnumerationReport rep;
  rep.p = 3;
  rep.n_max = 3;
  rep.rows = {{2, 1, 0, 0, 0, 0.125, 1}, {3, 1, 2, 0, 0, 1.5, 3}};
  SECTION("fixed column order with timing") {
    std::string csv = report_csv(rep, true);
    CHECK(csv.find("# generated ") == 0);
    CHECK(csv.find("n,class1,class2,class3,class4plus,seconds\n") !=
          std::string::npos);
    CHECK(csv.find("2,1,0,0,0,0.125\n") != std::string::npos);
    CHECK(csv.find("3,1,2,0,0,1.500\n") != std::string::npos);
  }
  SECTION("no-timing output is reproducible") {
    std::string csv = report_csv(rep, false);
    CHECK(csv ==
          "n,class1,class2,class3,class4plus,seconds\n"
          "2,1,0,0,0,0.000\n"
          "3,1,2,0,0,0.000\n");
  }
  SECTION("truncation is marked") {
    rep.truncated = true;
    CHECK(report_csv(rep, false).find("# truncated\n") != std::string::npos);
  }
}

TEST_CASE("JSON report") {
  EnumerationReport rep;
  rep.p = 5;
  rep.n_max = 2;
  rep.rows = {{2, 1, 0, 0, 0, 0.5, 1}};
  rep.total_tested = 1;
  auto doc = nlohmann::json::parse(report_json(rep, false));
  CHECK(doc["p"] == 5);
  CHECK(doc["rows"][0]["class1"] == 1);
  CHECK(doc["rows"][0]["seconds"] == 0.0);
  CHECK(doc["truncated"] == false);
  // identical reports serialize identically
  CHECK(report_json(rep, false) == report_json(rep, false));
}

TEST_CASE("structure report serialization") {
  EssentialChain chain(PrimeModulus(3), 3, {{1}});
  auto rep = analyze_structure(chain);
  auto doc = structure_report_json(rep);
  CHECK(doc["consistent"] == true);
  CHECK(doc["cutoff"] == 2);
  CHECK(doc["class"] == 2);
  CHECK(doc["metabelian"] == true);
  CHECK(doc["center"].size() == 1);
  std::string text = structure_report_text(rep);
  CHECK(text.find("cut-off c = 2") != std::string::npos);
  CHECK(text.find("class: 2") != std::string::npos);
}
