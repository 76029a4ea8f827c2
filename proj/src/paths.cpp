#include "jlpath/paths.hpp"

namespace jlpath {

long integer_minimum(const std::vector<Rational>& values) {
  // H(0) = 0 is always attained.
  long best = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (is_integer(values[k])) best = std::min(best, to_long(values[k]));
    if (k + 1 < values.size()) {
      const Rational& lo = std::min(values[k], values[k + 1]);
      const Rational& hi = std::max(values[k], values[k + 1]);
      // Least integer strictly inside (lo, hi).
      long candidate = floor_long(lo) + 1;
      if (Rational(candidate) < hi) best = std::min(best, candidate);
    }
  }
  return best;
}

Rational HFunction::value_at(const Rational& t) const {
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const Rational& a = breakpoints[k];
    const Rational& b = breakpoints[k + 1];
    if (t >= a && t <= b) return values[k] + (values[k + 1] - values[k]) * (t - a) / (b - a);
  }
  throw Error(ErrorCode::OutOfRange, "t outside [0,1]: " + format_rational(t));
}

std::optional<Rational> HFunction::first_at(const Rational& from, const Rational& level) const {
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const Rational& b = breakpoints[k + 1];
    if (b < from) continue;
    const Rational a = std::max(breakpoints[k], from);
    const Rational va = value_at(a);
    const Rational& vb = values[k + 1];
    if (va == level) return a;
    if ((va < level && level <= vb) || (va > level && level >= vb)) {
      return a + (level - va) * (b - a) / (vb - va);
    }
  }
  return std::nullopt;
}

std::optional<Rational> HFunction::last_at(const Rational& upto, const Rational& level) const {
  for (std::size_t k = breakpoints.size() - 1; k > 0; --k) {
    const Rational& a = breakpoints[k - 1];
    if (a > upto) continue;
    const Rational b = std::min(breakpoints[k], upto);
    const Rational vb = value_at(b);
    const Rational& va = values[k - 1];
    if (vb == level) return b;
    if ((vb < level && level <= va) || (vb > level && level >= va)) {
      return b - (level - vb) * (b - a) / (va - vb);
    }
  }
  return std::nullopt;
}

Rational HFunction::min_on(const Rational& from, const Rational& to) const {
  Rational best = value_at(from);
  best = std::min(best, value_at(to));
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (breakpoints[k] > from && breakpoints[k] < to) best = std::min(best, values[k]);
  }
  return best;
}

Rational HFunction::max_on(const Rational& from, const Rational& to) const {
  Rational best = value_at(from);
  best = std::max(best, value_at(to));
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (breakpoints[k] > from && breakpoints[k] < to) best = std::max(best, values[k]);
  }
  return best;
}

bool HFunction::operator==(const HFunction& other) const {
  std::vector<Rational> ts = breakpoints;
  ts.insert(ts.end(), other.breakpoints.begin(), other.breakpoints.end());
  for (const auto& t : ts) {
    if (value_at(t) != other.value_at(t)) return false;
  }
  return true;
}

std::optional<RationalPath> f_op(const CartanDatum& datum, const RationalPath& path, int i) {
  return f_op(GkmModel{&datum}, path, i);
}

std::optional<RationalPath> e_op_real(const CartanDatum& datum, const RationalPath& path, int i) {
  if (!datum.is_real(i)) throw Error(ErrorCode::ImaginaryIndex, "index " + datum.label(i) + " is imaginary");
  return e_op_real_unchecked(GkmModel{&datum}, path, i);
}

std::optional<RationalPath> e_op_imag_raw(const CartanDatum& datum, const RationalPath& path, int i) {
  if (datum.is_real(i)) throw Error(ErrorCode::RealIndex, "index " + datum.label(i) + " is real");
  return e_op_imag_unchecked(GkmModel{&datum}, path, i);
}

HFunction h_function(const CartanDatum& datum, const RationalPath& path, int i) {
  return h_function(GkmModel{&datum}, path, i);
}

long m_value(const CartanDatum& datum, const RationalPath& path, int i) {
  return h_function(datum, path, i).minimum;
}

Weight wt(const RationalPath& path) { return path.endpoint(); }

long epsilon(const CartanDatum& datum, const RationalPath& path, int i) {
  if (datum.is_imaginary(i)) return 0;
  return -m_value(datum, path, i);
}

long phi(const CartanDatum& datum, const RationalPath& path, int i) {
  return epsilon(datum, path, i) + to_long(wt(path).eval(datum, i));
}

}  // namespace jlpath
