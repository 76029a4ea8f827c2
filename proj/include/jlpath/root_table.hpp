#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/rational.hpp"
#include "jlpath/weight.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace jlpath {

// A positive real root or a W_re-translate of an imaginary simple root,
// beta = v alpha_i, with its coroot v alpha_i^vee.
struct RootEntry {
  std::vector<long> root;    // coordinates in the simple roots
  std::vector<long> coroot;  // coordinates in the simple coroots
  int simple = 0;            // the index i
  bool imaginary = false;
  MonoidWord witness;        // real word v
  long height = 0;

  Rational coroot_eval(const CartanDatum& datum, const Weight& mu) const;
};

// Reflection closure of the simple roots under the real simple reflections,
// truncated at a height bound.  Immutable after build.
class RootTable {
 public:
  static RootTable build(const CartanDatum& datum, long height_bound);

  const CartanDatum& datum() const { return *datum_; }
  long height_bound() const { return height_bound_; }
  const std::vector<RootEntry>& entries() const { return entries_; }
  std::vector<const RootEntry*> real_roots() const;
  std::vector<const RootEntry*> imag_roots() const;

  const RootEntry* find(const std::vector<long>& root) const;
  const RootEntry& simple(int i) const { return entries_[simple_[i]]; }

  // True when the closure terminated below the bound, so no root is missing.
  bool complete() const { return complete_; }

  // Throws TableTooSmall when a root of the given height could be missing.
  void require_height(long height, const char* context) const;

 private:
  const CartanDatum* datum_ = nullptr;
  long height_bound_ = 0;
  bool complete_ = true;
  std::vector<RootEntry> entries_;
  std::vector<std::size_t> simple_;
  std::map<std::vector<long>, std::size_t> index_;
};

// All roots v alpha_i with v a real word of length <= max_length, each with a
// shortest witness.  Computed directly, independent of any table.
std::vector<RootEntry> roots_by_witness_length(const CartanDatum& datum, std::size_t max_length);

}  // namespace jlpath
