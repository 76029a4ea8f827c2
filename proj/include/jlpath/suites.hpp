#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/crystal.hpp"
#include "jlpath/serialize.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace jlpath {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 2000;    // random paths / words per datum
  std::size_t word_length = 6;   // exhaustive word length (monoid), max length (embedding)
  long depth = 4;                // truncation depth for crystal-based checks
  std::size_t max_failures = 20; // counterexamples kept in the report
  CrystalOptions crystal;
  MonoidOptions monoid;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> checks;    // per property
  std::map<std::string, std::size_t> failures;  // per property
  std::vector<Json> counterexamples;

  bool passed() const { return failures.empty(); }
  std::size_t total_checks() const;
  Json to_json() const;
};

// Deterministic across platforms: only raw 64-bit draws are used.
class SuiteRng {
 public:
  explicit SuiteRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() & 1u) != 0; }

 private:
  std::mt19937_64 engine_;
};

// A random element of B(lambda): a random walk of f-operators of length at
// most max_steps from pi_lambda.
RationalPath random_crystal_path(const CrystalEngine& engine, const Weight& lambda, std::size_t max_steps,
                                 SuiteRng& rng, OperatorWord* fword = nullptr);

// Random dominant weight with coroot evaluations in [0, max_eval], not all zero.
Weight random_dominant(const CartanDatum& datum, long max_eval, SuiteRng& rng);

SuiteReport run_operators_suite(const CartanDatum& datum, const SuiteOptions& options);
SuiteReport run_monoid_suite(const CartanDatum& datum, const SuiteOptions& options);
SuiteReport run_embedding_suite(const CartanDatum& datum, const SuiteOptions& options);
SuiteReport run_decomposition_suite(const CartanDatum& datum, const SuiteOptions& options);

// Dispatch by name; throws Usage for an unknown suite.
SuiteReport run_suite(const std::string& name, const CartanDatum& datum, const SuiteOptions& options);

// Every word of length <= max_length over the datum's alphabet.
std::vector<MonoidWord> all_words(const CartanDatum& datum, std::size_t max_length);

// pi + lambda stays in the dominant chamber (checked at breakpoints).
bool is_dominant_shifted(const CartanDatum& datum, const RationalPath& path, const Weight& lambda);

}  // namespace jlpath
