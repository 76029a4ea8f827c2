#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/weight.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace jlpath {

class RootTable;
struct RootEntry;

// A word r_{i_k} ... r_{i_1} in the generators of the monoid.  letters[0] is
// the leftmost generator; the rightmost letter acts first.
struct MonoidWord {
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  auto operator<=>(const MonoidWord&) const = default;
};

// Lifted form of a word: letters over the shadow Coxeter alphabet.
using OrderedIndexWord = std::vector<LiftedIndex>;

struct MonoidOptions {
  // Cap on the size of a braid-move class during enumeration.
  std::size_t enumeration_cap = 50000;
  // Mutation fixture for the property suites: treats imaginary generators as
  // involutions.  Never enable outside of tests.
  bool fault_imaginary_involution = false;
};

struct DominantExpression {
  MonoidWord word;
  // Lengths of the real blocks w_0, w_1, ..., w_k, rightmost first.
  std::vector<std::size_t> block_lengths;
  // Imaginary letters i_1, ..., i_k, rightmost first.
  std::vector<int> imaginary_letters;
  // Whether every prefix r_{i_s} w_{s-1} ... w_0 maps the fundamental weights
  // into the dominant chamber.
  bool dominant = false;
};

struct StabilizerResult {
  bool member = false;
  // A reduced expression using only letters i with alpha_i^vee(lambda) = 0.
  std::optional<MonoidWord> witness;
};

// The generalized Weyl monoid of a Borcherds-Cartan datum.  Equality and
// length are decided through the shadow Coxeter group on lifted indices.
// Thread-safe; normal forms are memoized.
class WeylMonoid {
 public:
  explicit WeylMonoid(const CartanDatum& datum, MonoidOptions options = {});

  const CartanDatum& datum() const { return *datum_; }
  const MonoidOptions& options() const { return options_; }

  // Levels count the occurrences of each imaginary index from the right.
  OrderedIndexWord to_ordered_index(const MonoidWord& w) const;
  MonoidWord pull_back(const OrderedIndexWord& w) const;

  // Order of s_p s_q in the shadow Coxeter group; 0 encodes infinity.
  long coxeter_order(const LiftedIndex& p, const LiftedIndex& q) const;

  // Shortest expression; lexicographically least among all reduced ones.
  MonoidWord normal_form(const MonoidWord& w) const;
  std::size_t length(const MonoidWord& w) const { return normal_form(w).size(); }
  bool equal(const MonoidWord& a, const MonoidWord& b) const { return normal_form(a) == normal_form(b); }
  bool is_reduced(const MonoidWord& w) const { return length(w) == w.size(); }

  // Every reduced expression of w (braid-move class of the lifted word).
  // Throws EnumerationBound beyond the cap.
  std::vector<MonoidWord> reduced_words(const MonoidWord& w) const;

  Weight act(const MonoidWord& w, const Weight& mu) const;
  Weight reflect(int i, const Weight& mu) const;
  // r_i^{-1} for imaginary i; for real i it coincides with r_i.
  Weight act_inverse_imag(int i, const Weight& mu) const;

  // Word for the reflection r_beta = v r_i v^{-1}.
  MonoidWord reflection_word(const RootEntry& beta) const;
  MonoidWord left_multiply(const RootEntry& beta, const MonoidWord& w) const;

  // u <= w in the Bruhat order.  Throws TableTooSmall when a reflection that
  // the search may need lies outside the table.
  bool bruhat_leq(const MonoidWord& u, const MonoidWord& w, const RootTable& table) const;

  // Positions s (1-based, counted from the right as in r_{i_k}...r_{i_1})
  // whose deletion yields r_beta w.  Throws NotShortening when
  // l(r_beta w) >= l(w) and PreconditionFalsified when w is not reduced.
  std::vector<std::size_t> exchange_positions_real(const MonoidWord& w, const RootEntry& beta) const;
  std::size_t exchange_check_real(const MonoidWord& w, const RootEntry& beta) const;

  // Deletes the leftmost occurrence of the imaginary index of beta and
  // verifies r_beta v' = v.  Throws NoOccurrence or PreconditionFalsified.
  MonoidWord exchange_check_imag(const MonoidWord& v, const RootEntry& beta) const;

  DominantExpression dominant_reduced_expression(const MonoidWord& w) const;

  StabilizerResult stabilizer_membership(const MonoidWord& w, const Weight& lambda) const;

 private:
  std::vector<std::vector<LiftedIndex>> braid_class(const std::vector<LiftedIndex>& word) const;
  std::vector<LiftedIndex> reduce_lifted(std::vector<LiftedIndex> word) const;

  const CartanDatum* datum_;
  MonoidOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<int>, MonoidWord> normal_cache_;
};

std::string format_word(const CartanDatum& datum, const MonoidWord& w);
// Accepts labels separated by spaces or commas; "" and "e" give the empty word.
MonoidWord parse_word(const CartanDatum& datum, const std::string& text);

}  // namespace jlpath
