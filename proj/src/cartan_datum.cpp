#include "jlpath/cartan_datum.hpp"

#include "jlpath/error.hpp"
#include "jlpath/rational.hpp"

#include <numeric>
#include <queue>

namespace jlpath {

CartanDatum CartanDatum::validate(IntMatrix matrix, std::vector<std::string> labels,
                                  std::optional<std::vector<long>> symmetrizer) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorCode::MalformedDatum, "empty index set");
  if (matrix.size() != n) throw Error(ErrorCode::MalformedDatum, "matrix and labels differ in size");
  for (const auto& row : matrix) {
    if (row.size() != n) throw Error(ErrorCode::MalformedDatum, "matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (labels[i] == labels[j]) throw Error(ErrorCode::MalformedDatum, "duplicate label " + labels[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const long d = matrix[i][i];
    if (d != 2 && d > 0) {
      throw Error(ErrorCode::DiagonalViolation,
                  "a_" + labels[i] + labels[i] + " = " + std::to_string(d));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (matrix[i][j] > 0) {
        throw Error(ErrorCode::SignViolation, "a_" + labels[i] + "," + labels[j] + " = " +
                                                  std::to_string(matrix[i][j]));
      }
      if ((matrix[i][j] == 0) != (matrix[j][i] == 0)) {
        throw Error(ErrorCode::ZeroAsymmetry, "a_" + labels[i] + "," + labels[j] + " and a_" +
                                                  labels[j] + "," + labels[i]);
      }
    }
  }

  CartanDatum datum;
  datum.matrix_ = std::move(matrix);
  datum.labels_ = std::move(labels);
  for (std::size_t i = 0; i < n; ++i) {
    (datum.matrix_[i][i] == 2 ? datum.real_ : datum.imaginary_).push_back(static_cast<int>(i));
  }
  if (symmetrizer) {
    if (symmetrizer->size() != n || !is_symmetrizer(datum, *symmetrizer)) {
      throw Error(ErrorCode::MalformedDatum, "supplied symmetrizer does not symmetrize the matrix");
    }
    datum.symmetrizer_ = std::move(symmetrizer);
  }
  return datum;
}

CartanDatum CartanDatum::validate(IntMatrix matrix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < matrix.size(); ++i) labels.push_back(std::to_string(i + 1));
  return validate(std::move(matrix), std::move(labels));
}

int CartanDatum::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  throw Error(ErrorCode::UnknownLabel, "no index labelled '" + label + "'");
}

CartanDatum CartanDatum::restrict_to(const std::vector<int>& subset) const {
  IntMatrix m;
  std::vector<std::string> labels;
  for (int i : subset) {
    labels.push_back(labels_.at(i));
    std::vector<long> row;
    for (int j : subset) row.push_back(matrix_[i][j]);
    m.push_back(std::move(row));
  }
  return validate(std::move(m), std::move(labels));
}

bool is_symmetrizer(const CartanDatum& datum, const std::vector<long>& d) {
  const std::size_t n = datum.rank();
  if (d.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] < 1) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i] * datum.entry(i, j) != d[j] * datum.entry(j, i)) return false;
    }
  }
  return true;
}

std::optional<std::vector<long>> find_symmetrizer(const CartanDatum& datum,
                                                  const SymmetrizerOptions& options) {
  const int n = static_cast<int>(datum.rank());
  std::vector<Rational> d(n, Rational(0));
  std::vector<int> component(n, -1);
  int components = 0;
  // Propagate d_j = d_i a_ij / a_ji along nonzero off-diagonal entries.
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    component[start] = components;
    d[start] = 1;
    std::queue<int> queue;
    queue.push(start);
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop();
      for (int j = 0; j < n; ++j) {
        if (j == i || datum.entry(i, j) == 0) continue;
        const Rational dj = d[i] * Rational(datum.entry(i, j)) / Rational(datum.entry(j, i));
        if (component[j] < 0) {
          component[j] = components;
          d[j] = dj;
          queue.push(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    ++components;
  }
  std::vector<long> result(n, 0);
  for (int c = 0; c < components; ++c) {
    mpz_class lcm = 1;
    for (int i = 0; i < n; ++i) {
      if (component[i] == c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d[i].get_den_mpz_t());
    }
    mpz_class g = 0;
    std::vector<mpz_class> scaled(n);
    for (int i = 0; i < n; ++i) {
      if (component[i] != c) continue;
      scaled[i] = d[i].get_num() * (lcm / d[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled[i].get_mpz_t());
    }
    for (int i = 0; i < n; ++i) {
      if (component[i] != c) continue;
      const mpz_class v = scaled[i] / g;
      if (v > options.bound) {
        throw Error(ErrorCode::BoundExceeded, "symmetrizer entry " + v.get_str() + " exceeds bound " +
                                                  std::to_string(options.bound));
      }
      result[i] = v.get_si();
    }
  }
  if (!is_symmetrizer(datum, result)) return std::nullopt;
  return result;
}

bool is_even(const CartanDatum& datum) {
  for (std::size_t i = 0; i < datum.rank(); ++i) {
    if (datum.entry(i, i) % 2 != 0) return false;
  }
  return true;
}

void check_lifted_index(const CartanDatum& datum, const LiftedIndex& p) {
  if (p.base < 0 || static_cast<std::size_t>(p.base) >= datum.rank()) {
    throw Error(ErrorCode::LevelViolation, "lifted index base out of range");
  }
  if (p.level < 1) throw Error(ErrorCode::LevelViolation, "level must be positive");
  if (datum.is_real(p.base) && p.level != 1) {
    throw Error(ErrorCode::LevelViolation,
                "real index " + datum.label(p.base) + " carries level " + std::to_string(p.level));
  }
}

long lifted_entry(const CartanDatum& datum, const LiftedIndex& p, const LiftedIndex& q) {
  check_lifted_index(datum, p);
  check_lifted_index(datum, q);
  if (p == q) return 2;
  return datum.entry(p.base, q.base);
}

}  // namespace jlpath
