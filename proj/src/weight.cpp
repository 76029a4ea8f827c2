#include "jlpath/weight.hpp"

#include "jlpath/error.hpp"

#include <functional>

namespace jlpath {

Weight::Weight(std::vector<Rational> base_evals, std::vector<Rational> offset)
    : base_(std::move(base_evals)), offset_(std::move(offset)) {
  if (base_.size() != offset_.size()) throw Error(ErrorCode::MalformedDatum, "weight rank mismatch");
}

Weight Weight::zero(std::size_t rank) {
  return Weight(std::vector<Rational>(rank, Rational(0)), std::vector<Rational>(rank, Rational(0)));
}

Weight Weight::from_evals(const std::vector<long>& evals) {
  std::vector<Rational> base;
  for (long v : evals) base.emplace_back(v);
  return Weight(std::move(base), std::vector<Rational>(evals.size(), Rational(0)));
}

Rational Weight::eval(const CartanDatum& datum, int i) const {
  Rational value = base_[i];
  for (std::size_t j = 0; j < offset_.size(); ++j) {
    if (offset_[j] != 0) value -= offset_[j] * datum.entry(i, static_cast<int>(j));
  }
  return value;
}

std::vector<Rational> Weight::evals(const CartanDatum& datum) const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < rank(); ++i) out.push_back(eval(datum, static_cast<int>(i)));
  return out;
}

Rational Weight::height() const {
  Rational h = 0;
  for (const auto& c : offset_) h += c;
  return h;
}

bool Weight::is_integral(const CartanDatum& datum) const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (!is_integer(eval(datum, static_cast<int>(i)))) return false;
  }
  return true;
}

bool Weight::is_dominant(const CartanDatum& datum) const {
  for (std::size_t i = 0; i < rank(); ++i) {
    const Rational v = eval(datum, static_cast<int>(i));
    if (!is_integer(v) || v < 0) return false;
  }
  return true;
}

Weight& Weight::operator+=(const Weight& other) {
  for (std::size_t i = 0; i < base_.size(); ++i) {
    base_[i] += other.base_[i];
    offset_[i] += other.offset_[i];
  }
  return *this;
}

Weight& Weight::operator-=(const Weight& other) {
  for (std::size_t i = 0; i < base_.size(); ++i) {
    base_[i] -= other.base_[i];
    offset_[i] -= other.offset_[i];
  }
  return *this;
}

Weight& Weight::operator*=(const Rational& s) {
  for (std::size_t i = 0; i < base_.size(); ++i) {
    base_[i] *= s;
    offset_[i] *= s;
  }
  return *this;
}

bool Weight::operator<(const Weight& other) const {
  if (base_ != other.base_) return base_ < other.base_;
  return offset_ < other.offset_;
}

std::string Weight::key() const {
  std::string out;
  for (const auto& b : base_) out += format_rational(b) + ",";
  out += "|";
  for (const auto& c : offset_) out += format_rational(c) + ",";
  return out;
}

std::size_t Weight::hash() const {
  std::size_t seed = base_.size();
  for (const auto& b : base_) hash_combine(seed, hash_rational(b));
  for (const auto& c : offset_) hash_combine(seed, hash_rational(c));
  return seed;
}

LiftedWeight::LiftedWeight(std::vector<Rational> base_evals, std::map<LiftedIndex, Rational> offset)
    : base_(std::move(base_evals)), offset_(std::move(offset)) {
  prune();
}

void LiftedWeight::prune() {
  for (auto it = offset_.begin(); it != offset_.end();) {
    if (it->second == 0) {
      it = offset_.erase(it);
    } else {
      ++it;
    }
  }
}

Rational LiftedWeight::eval(const CartanDatum& datum, const LiftedIndex& p) const {
  Rational value = base_[p.base];
  for (const auto& [q, c] : offset_) value -= c * lifted_entry(datum, p, q);
  return value;
}

void LiftedWeight::add_root(const LiftedIndex& p, const Rational& c) {
  auto& slot = offset_[p];
  slot -= c;
  if (slot == 0) offset_.erase(p);
}

int LiftedWeight::max_level(int base) const {
  int level = 0;
  for (const auto& [q, c] : offset_) {
    if (q.base == base && q.level > level) level = q.level;
  }
  return level;
}

LiftedWeight& LiftedWeight::operator+=(const LiftedWeight& other) {
  for (std::size_t i = 0; i < base_.size(); ++i) base_[i] += other.base_[i];
  for (const auto& [q, c] : other.offset_) offset_[q] += c;
  prune();
  return *this;
}

LiftedWeight& LiftedWeight::operator-=(const LiftedWeight& other) {
  for (std::size_t i = 0; i < base_.size(); ++i) base_[i] -= other.base_[i];
  for (const auto& [q, c] : other.offset_) offset_[q] -= c;
  prune();
  return *this;
}

LiftedWeight& LiftedWeight::operator*=(const Rational& s) {
  for (auto& b : base_) b *= s;
  for (auto& [q, c] : offset_) c *= s;
  prune();
  return *this;
}

bool LiftedWeight::operator<(const LiftedWeight& other) const {
  if (base_ != other.base_) return base_ < other.base_;
  return offset_ < other.offset_;
}

std::string LiftedWeight::key() const {
  std::string out;
  for (const auto& b : base_) out += format_rational(b) + ",";
  out += "|";
  for (const auto& [q, c] : offset_) {
    out += std::to_string(q.base) + ":" + std::to_string(q.level) + "=" + format_rational(c) + ",";
  }
  return out;
}

}  // namespace jlpath
