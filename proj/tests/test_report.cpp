#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "entropic/parallel.hpp"
#include "entropic/report.hpp"

using namespace entropic;

TEST_SUITE("report") {
  TEST_CASE("settings mirror flags") {
    RunConfig c;
    apply_setting(c, "model", "maxps-a1");
    apply_setting(c, "n", "6");
    apply_setting(c, "alphabet", "3");
    apply_setting(c, "profile", "trace,volume");
    apply_setting(c, "filter", "weeded");
    CHECK(c.model == "maxps-a1");
    CHECK(c.n == 6);
    CHECK(c.alpha == 3);
    CHECK(c.trace_profile);
    CHECK(c.volume_profile);
    CHECK(c.filter == EventFilter::Weeded);
    CHECK_THROWS_AS(apply_setting(c, "n", "six"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "colour", "red"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "profile", "spectrum"), ConfigError);
  }

  TEST_CASE("config file and environment") {
    const auto path = std::filesystem::temp_directory_path() / "entropic_test.conf";
    {
      std::ofstream out(path);
      out << "# comment\nmodel = xor\n\nn=6\nprofile=volume\n";
    }
    RunConfig c;
    apply_config_file(c, path.string());
    CHECK(c.model == "xor");
    CHECK(c.n == 6);
    CHECK(c.volume_profile);
    std::filesystem::remove(path);

    setenv("ENTROPIC_CAP", "1000", 1);
    apply_environment(c);
    unsetenv("ENTROPIC_CAP");
    CHECK(c.cap == 1000);
    CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/entropic.conf"), ConfigError);
  }

  TEST_CASE("validation happens before enumeration") {
    RunConfig c;
    c.model = "bogus";
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c = RunConfig{};
    c.trace_profile = true;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.input = "0101";
    CHECK_THROWS_AS(validate_config(c), ConfigError);  // length differs from n
    c = RunConfig{};
    c.program_path = "some.prog";
    CHECK_THROWS_AS(validate_config(c), ConfigError);  // no oracle
  }

  TEST_CASE("analysis is deterministic across thread counts") {
    RunConfig c;
    c.model = "maxps-a0";
    c.n = 7;
    c.alpha = 2;
    c.trace_profile = true;
    c.volume_profile = true;
    c.input = "aaaaaab";
    c.samples = 50;
    const int before = thread_count();
    set_thread_count(1);
    const AnalyzeResult a = analyze(c);
    set_thread_count(4);
    const AnalyzeResult b = analyze(c);
    set_thread_count(before);
    CHECK(a.ok);
    CHECK(strip_timestamp(a.report).dump() == strip_timestamp(b.report).dump());
    CHECK(a.trace_csv == b.trace_csv);
    CHECK(a.trace_csv.rfind("t,literal_key,D\n", 0) == 0);
    CHECK(a.report.contains("timestamp"));
    CHECK_FALSE(strip_timestamp(a.report).contains("timestamp"));
  }

  TEST_CASE("XOR volume report carries the closed-form note") {
    RunConfig c;
    c.model = "xor";
    c.n = 6;
    c.volume_profile = true;
    c.samples = 0;
    const AnalyzeResult r = analyze(c);
    CHECK(r.ok);
    REQUIRE(r.report["notes"].size() == 1);
    CHECK(r.report["notes"][0].get<std::string>().find("n-k+1") != std::string::npos);
    CHECK(r.report["domain"]["range_size"] == 2);
  }
}
