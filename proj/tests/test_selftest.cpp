#include <catch_amalgamated.hpp>

#include <sstream>

#include "mixedmi/selftest.hpp"

TEST_CASE("selftest passes on a healthy build") {
  std::ostringstream out;
  CHECK(mixedmi::run_selftest(out));
  CHECK(out.str().find("FAIL") == std::string::npos);
}

TEST_CASE("selftest detects a corrupted digamma") {
  mixedmi::SelftestOptions opts;
  opts.digamma_fn = [](double x) { return mixedmi::digamma(x) + 0.01; };
  std::ostringstream out;
  CHECK_FALSE(mixedmi::run_selftest(out, opts));
  CHECK(out.str().find("FAIL") != std::string::npos);
}
