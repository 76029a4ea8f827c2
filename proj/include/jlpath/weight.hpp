#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace jlpath {

// An element of the real weight space, written as b - sum_j c_j alpha_j where
// b is recorded only through its coroot evaluations (base_evals) and c is the
// simple-root offset.  Simple roots and the base part are formally independent,
// so equality is componentwise.  depth_i of a weight of shape lambda is c_i.
class Weight {
 public:
  Weight() = default;
  Weight(std::vector<Rational> base_evals, std::vector<Rational> offset);

  static Weight zero(std::size_t rank);
  static Weight from_evals(const std::vector<long>& evals);

  std::size_t rank() const { return base_.size(); }
  const std::vector<Rational>& base_evals() const { return base_; }
  const std::vector<Rational>& offset() const { return offset_; }

  // alpha_i^vee of this weight: b_i - sum_j c_j a_ij.
  Rational eval(const CartanDatum& datum, int i) const;
  std::vector<Rational> evals(const CartanDatum& datum) const;

  // this += c * alpha_i
  void add_root(int i, const Rational& c) { offset_[i] -= c; }

  // Sum of the offset coordinates; the number of f-steps separating a weight
  // from its base.
  Rational height() const;

  bool is_integral(const CartanDatum& datum) const;
  bool is_dominant(const CartanDatum& datum) const;

  Weight& operator+=(const Weight& other);
  Weight& operator-=(const Weight& other);
  Weight& operator*=(const Rational& s);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(Weight a, const Rational& s) { return a *= s; }
  friend Weight operator*(const Rational& s, Weight a) { return a *= s; }

  bool operator==(const Weight& other) const { return base_ == other.base_ && offset_ == other.offset_; }
  bool operator<(const Weight& other) const;

  std::string key() const;
  std::size_t hash() const;

 private:
  std::vector<Rational> base_;
  std::vector<Rational> offset_;
};

// A weight of the lifted Kac-Moody datum.  The base part is replicated over
// all levels (its (i,m)-evaluation is base_evals[i]); the offset has finite
// support over the lifted indices and is never materialized densely.
class LiftedWeight {
 public:
  LiftedWeight() = default;
  explicit LiftedWeight(std::vector<Rational> base_evals) : base_(std::move(base_evals)) {}
  LiftedWeight(std::vector<Rational> base_evals, std::map<LiftedIndex, Rational> offset);

  // The lift of a weight with the given coroot evaluations: zero offset.
  static LiftedWeight lift_evals(const std::vector<Rational>& evals) { return LiftedWeight(evals); }

  std::size_t rank() const { return base_.size(); }
  const std::vector<Rational>& base_evals() const { return base_; }
  const std::map<LiftedIndex, Rational>& offset() const { return offset_; }

  Rational eval(const CartanDatum& datum, const LiftedIndex& p) const;
  void add_root(const LiftedIndex& p, const Rational& c);

  // Highest level carried by base index i in the offset support (0 if none).
  int max_level(int base) const;

  LiftedWeight& operator+=(const LiftedWeight& other);
  LiftedWeight& operator-=(const LiftedWeight& other);
  LiftedWeight& operator*=(const Rational& s);
  friend LiftedWeight operator+(LiftedWeight a, const LiftedWeight& b) { return a += b; }
  friend LiftedWeight operator*(LiftedWeight a, const Rational& s) { return a *= s; }

  bool operator==(const LiftedWeight& other) const {
    return base_ == other.base_ && offset_ == other.offset_;
  }
  bool operator<(const LiftedWeight& other) const;

  std::string key() const;

 private:
  void prune();

  std::vector<Rational> base_;
  std::map<LiftedIndex, Rational> offset_;
};

}  // namespace jlpath
