#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/paths.hpp"
#include "jlpath/weight.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jlpath {

using LiftedPath = BasicPath<LiftedWeight>;

// Operator words F_i = f_{i_k} ... f_{i_1} reuse MonoidWord: letters[0] is
// applied last.
using OperatorWord = MonoidWord;

// The lifted operator word; levels count imaginary occurrences from the right.
OrderedIndexWord embed_word(const CartanDatum& datum, const OperatorWord& fword);

// The fixed lift of a weight: coroot evaluations replicated over all levels,
// zero lifted offset.
LiftedWeight lift_weight(const CartanDatum& datum, const Weight& mu);

// A real word w with w[mu] = mu for the dominant representative [mu], or
// nullopt if real descent does not reach the dominant chamber within `cap`
// steps.
std::optional<MonoidWord> real_orbit_witness(const CartanDatum& datum, const Weight& mu,
                                             std::size_t cap = 10000);

struct EmbeddedPair {
  std::optional<RationalPath> gkm;
  std::optional<LiftedPath> lifted;
};

// Applies F downstairs to pi_Lambda and the lifted word upstairs to
// pi_{Lambda~} in lockstep.  Both sides are Null together; a disagreement is
// a std::logic_error.  Throws WitnessMissing for weights outside W P^+.
EmbeddedPair embed_path(const CartanDatum& datum, const OperatorWord& fword, const std::vector<Weight>& shapes);

struct HProbeReport {
  std::size_t prefixes_checked = 0;
  std::vector<std::size_t> mismatches;  // prefix lengths s with differing H
  bool passed() const { return mismatches.empty(); }
};

HProbeReport h_equality_probe(const CartanDatum& datum, const OperatorWord& fword,
                              const std::vector<Weight>& shapes);

// H_{(i,m)}(t) + shift(i,m) >= 0 for all t and all lifted indices.  Indices
// outside the finite support are decided by one fresh representative per
// imaginary base index.
bool is_lifted_dominant(const CartanDatum& datum, const LiftedPath& path, const LiftedWeight& shift);

// Dominance for the lifted Levi subalgebra over S, zero shift.
bool is_levi_dominant(const CartanDatum& datum, const LiftedPath& path, const std::vector<int>& subset);

// The finitely many lifted indices that decide dominance of the path.
std::vector<LiftedIndex> dominance_representatives(const CartanDatum& datum, const LiftedPath& path,
                                                   const LiftedWeight& shift, const std::vector<int>& bases);

}  // namespace jlpath
