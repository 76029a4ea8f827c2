#include "doctest.h"
#include "fixtures.hpp"

#include "jlpath/error.hpp"
#include "jlpath/suites.hpp"

using namespace jlpath;

TEST_CASE("operators suite on the rank-one Cartan matrix") {
  SuiteOptions o;
  o.samples = 200;
  const auto r = run_operators_suite(fx::a1(), o);
  CHECK(r.passed());
  CHECK(r.checks.at("e f = id") > 0);
}

TEST_CASE("embedding suite is deterministic") {
  SuiteOptions o;
  o.samples = 150;
  o.word_length = 8;
  const auto a = run_embedding_suite(fx::gkm2(), o);
  const auto b = run_embedding_suite(fx::gkm2(), o);
  CHECK(a.passed());
  CHECK(a.checks.at("prefix H evaluations") > 0);
  CHECK(a.to_json().dump() == b.to_json().dump());
  o.seed = 1;
  CHECK(run_embedding_suite(fx::gkm2(), o).to_json().dump() != a.to_json().dump());
}

TEST_CASE("monoid suite") {
  SuiteOptions o;
  o.samples = 100;
  o.word_length = 4;
  CHECK(run_monoid_suite(fx::gkm2(), o).passed());
}

TEST_CASE("monoid suite catches an injected relation bug") {
  SuiteOptions o;
  o.samples = 100;
  o.word_length = 4;
  o.monoid.fault_imaginary_involution = true;
  const auto r = run_monoid_suite(fx::gkm2(), o);
  CHECK_FALSE(r.passed());
  CHECK(r.failures.count("normal form acts like the word") == 1);
  CHECK_FALSE(r.counterexamples.empty());
}

TEST_CASE("decomposition suite") {
  SuiteOptions o;
  o.samples = 4;
  o.depth = 3;
  CHECK(run_decomposition_suite(fx::a2(), o).passed());
  CHECK(run_decomposition_suite(fx::gkm2(), o).passed());
}

TEST_CASE("unknown suite") {
  try {
    run_suite("nope", fx::a1(), SuiteOptions{});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Usage);
  }
}
