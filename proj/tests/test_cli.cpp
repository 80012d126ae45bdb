// Report rendering and the result cache; the binary itself is exercised by
// cli_smoke.cmake.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "covol/cache.hpp"
#include "covol/report.hpp"

using namespace covol;
using covol::hermitian::diagonal;
using covol::hermitian::make_field;
using nlohmann::json;

TEST_CASE("volume report") {
  const auto doc = report::volume_report(diagonal(make_field(7), {1, -1, -1, -1}), 30);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "volume");
  CHECK(doc["su_covolume"]["exact"] == "1/105");
  CHECK(doc["n"] == 3);
  CHECK(doc["signature"] == json::array({1, 3}));
  CHECK(doc["inputs"]["lattice"]["D"] == 7);
  // keys come out sorted and the dump is stable
  const std::string a = report::render(doc, "json");
  const std::string b = report::render(report::volume_report(diagonal(make_field(7), {1, -1, -1, -1}), 30), "json");
  CHECK(a == b);
  CHECK(a.find("\"D\"") < a.find("\"schema_version\""));
}

TEST_CASE("slope and scan reports") {
  const auto s = report::slope_report(freeness::reflective_check(101, 7, Rational(1, 102)), 20);
  CHECK(s["verdict"] == "NO_SUCH_FORM");
  CHECK(s["inputs"]["slope"] == "1/102");
  const auto t = report::threshold_report(freeness::threshold_scan(7, 120), 20);
  CHECK(t["threshold_n"] == 100);
  CHECK(t["monotone_tail"] == true);
}

TEST_CASE("csv and text rendering") {
  const json doc = {{"b", {{"c", 1}, {"d", json::array({"x,y", 2})}}}, {"a", "q\"uote"}};
  CHECK(report::render(doc, "csv") == "path,value\na,\"q\"\"uote\"\nb.c,1\nb.d[0],\"x,y\"\nb.d[1],2\n");
  CHECK(report::render(doc, "text") == "a: q\"uote\nb.c: 1\nb.d[0]: x,y\nb.d[1]: 2\n");
  CHECK_THROWS(report::render(doc, "yaml"));
}

TEST_CASE("content hashes") {
  CHECK(cache::content_hash("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cache::content_hash("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("report cache") {
  const auto path = std::filesystem::temp_directory_path() / "covol_test_cache.jsonl";
  std::filesystem::remove(path);
  cache::ReportCache c(path.string());
  CHECK_FALSE(c.lookup("k1"));
  c.store("k1", {{"v", 1}});
  c.store("k2", {{"v", 2}});
  c.store("k1", {{"v", 3}});
  CHECK(c.lookup("k1").value()["v"] == 3);
  CHECK(c.lookup("k2").value()["v"] == 2);
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"key\": \"k2\", \"rep";  // torn write
  }
  CHECK(c.lookup("k2").value()["v"] == 2);
  std::filesystem::remove(path);
}
