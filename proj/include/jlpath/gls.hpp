#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/paths.hpp"
#include "jlpath/root_table.hpp"
#include "jlpath/weight.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace jlpath {

// A GLS path (lambda_1 > ... > lambda_k; 0 = a_0 < ... < a_k = 1) of a given
// shape.  breaks holds a_1..a_k.
struct GLSPath {
  std::vector<Weight> weights;
  std::vector<Rational> breaks;
  Weight shape;

  // Merges repeated consecutive weights and empty intervals.
  GLSPath canonical() const;
  RationalPath to_path() const;
  static GLSPath from_path(const RationalPath& path, const Weight& shape);

  bool operator==(const GLSPath&) const = default;
};

// mu = nu_0 <-beta_1- nu_1 <- ... <-beta_k- nu_k = nu.  nodes has k+1 entries.
struct AChain {
  Rational a;
  std::vector<Weight> nodes;
  std::vector<RootEntry> roots;

  const Weight& top() const { return nodes.front(); }
  const Weight& bottom() const { return nodes.back(); }
  std::size_t size() const { return roots.size(); }
};

struct GlsCertificate {
  bool valid = false;
  std::string reason;
  // chains[s] is the a_s-chain for (lambda_s, lambda_{s+1}); the last entry is
  // the 1-chain for (lambda_k, lambda).
  std::vector<AChain> chains;
  // orbit_words[s] maps the shape to weights[s].
  std::vector<MonoidWord> orbit_words;
};

struct GlsOptions {
  long height_bound = 32;
};

// Orbit order, covers and a-chains over a fixed datum.  All searches run in
// the box between the two weights and report TableTooSmall rather than an
// absent answer when the root table could be missing a needed root.
// Thread-safe; results are memoized.
class GlsContext {
 public:
  explicit GlsContext(const CartanDatum& datum, GlsOptions options = {});

  const CartanDatum& datum() const { return *datum_; }
  const RootTable& table() const { return table_; }
  const WeylMonoid& monoid() const { return monoid_; }

  // mu >= nu in the orbit order (mu is further from the shape).
  bool geq(const Weight& mu, const Weight& nu) const;
  // mu <-beta- nu for some beta, and mu covers nu.
  std::optional<RootEntry> cover_root(const Weight& mu, const Weight& nu) const;

  std::optional<AChain> find_a_chain(const Weight& mu, const Weight& nu, const Rational& a) const;

  GlsCertificate certify(const GLSPath& candidate) const;
  bool is_gls(const GLSPath& candidate) const { return certify(candidate).valid; }

  // Chain for (r_i^{-1} mu, nu) from an a-chain for (mu, nu), i imaginary.
  AChain rewrite_chain_imaginary(const AChain& chain, int i) const;

  // The imaginary e-operator on B(shape) with cutoff.
  std::optional<GLSPath> cutoff_e_imag(const GLSPath& path, int i) const;

 private:
  // Weights r_beta x with beta^vee(x) > 0 that stay below `ceiling`.
  std::vector<std::pair<RootEntry, Weight>> steps_below(const Weight& x, const Weight& ceiling) const;
  bool in_box(const Weight& x, const Weight& ceiling) const;
  void require_table(const Weight& mu, const Weight& nu, const char* context) const;
  bool search_chain(const Weight& x, const Weight& target, const Rational& a, AChain& out,
                    std::set<std::string>& dead) const;

  const CartanDatum* datum_;
  GlsOptions options_;
  RootTable table_;
  WeylMonoid monoid_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::string, std::string>, bool> geq_cache_;
  mutable std::map<std::pair<std::string, std::string>, std::optional<RootEntry>> cover_cache_;
};

bool chain_condition_holds(const AChain& chain, const CartanDatum& datum);

}  // namespace jlpath
