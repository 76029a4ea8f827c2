#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace jlpath {

using IntMatrix = std::vector<std::vector<long>>;

// An index of the lifted Kac-Moody datum: a base index together with a level.
// Real base indices only ever carry level 1.
struct LiftedIndex {
  int base = 0;
  int level = 1;

  auto operator<=>(const LiftedIndex&) const = default;
};

struct SymmetrizerOptions {
  long bound = 64;
};

// A validated Borcherds-Cartan datum over a finite index set.  Indices are
// addressed internally by position 0..rank-1; labels are only for I/O.
// Immutable after construction.
class CartanDatum {
 public:
  // Validates the three Borcherds-Cartan conditions and derives the
  // real/imaginary partition.  Throws Error with DiagonalViolation,
  // SignViolation, ZeroAsymmetry or MalformedDatum.
  static CartanDatum validate(IntMatrix matrix, std::vector<std::string> labels,
                              std::optional<std::vector<long>> symmetrizer = std::nullopt);

  // Labels default to "1".."n".
  static CartanDatum validate(IntMatrix matrix);

  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const IntMatrix& matrix() const { return matrix_; }
  long entry(int i, int j) const { return matrix_[i][j]; }
  bool is_real(int i) const { return matrix_[i][i] == 2; }
  bool is_imaginary(int i) const { return !is_real(i); }
  const std::vector<int>& real_indices() const { return real_; }
  const std::vector<int>& imaginary_indices() const { return imaginary_; }
  const std::optional<std::vector<long>>& symmetrizer() const { return symmetrizer_; }

  // Position of a label; throws UnknownLabel.
  int index_of(const std::string& label) const;
  const std::string& label(int i) const { return labels_[i]; }

  // Restriction to a subset of indices (in the given order), used for Levi
  // branching.
  CartanDatum restrict_to(const std::vector<int>& subset) const;

  bool operator==(const CartanDatum& other) const {
    return matrix_ == other.matrix_ && labels_ == other.labels_;
  }

 private:
  IntMatrix matrix_;
  std::vector<std::string> labels_;
  std::vector<int> real_;
  std::vector<int> imaginary_;
  std::optional<std::vector<long>> symmetrizer_;
};

// Minimal positive integers d with d_i a_ij = d_j a_ji, normalized to be
// coprime on each connected component.  Returns nullopt when the datum is not
// symmetrizable.  Throws BoundExceeded when the minimal symmetrizer has an
// entry above the bound.
std::optional<std::vector<long>> find_symmetrizer(const CartanDatum& datum,
                                                  const SymmetrizerOptions& options = {});

// Checks d_i a_ij = d_j a_ji and d_i >= 1.
bool is_symmetrizer(const CartanDatum& datum, const std::vector<long>& d);

bool is_even(const CartanDatum& datum);

// Entry of the lifted Cartan matrix: 2 on the diagonal, a_ij elsewhere.
// Throws LevelViolation for a real index with level != 1 or a level < 1.
long lifted_entry(const CartanDatum& datum, const LiftedIndex& p, const LiftedIndex& q);

void check_lifted_index(const CartanDatum& datum, const LiftedIndex& p);

}  // namespace jlpath
