#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/error.hpp"
#include "jlpath/rational.hpp"
#include "jlpath/weight.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jlpath {

template <class W>
struct Segment {
  W slope;
  Rational duration;

  bool operator==(const Segment&) const = default;
};

// A piecewise-linear path t -> sum of completed slope*duration plus the
// partial current segment, starting at the zero weight.  Always stored in
// canonical form: no zero durations and no two consecutive equal slopes, so
// structural equality is equality of functions.
template <class W>
class BasicPath {
 public:
  BasicPath() = default;

  // Throws OutOfRange if a duration is negative or the durations do not sum to 1.
  explicit BasicPath(std::vector<Segment<W>> segments) : segments_(std::move(segments)) {
    Rational total = 0;
    for (const auto& s : segments_) {
      if (s.duration < 0) throw Error(ErrorCode::OutOfRange, "negative duration");
      total += s.duration;
    }
    if (total != 1) throw Error(ErrorCode::OutOfRange, "durations must sum to 1");
    canonicalize();
  }

  static BasicPath straight(const W& weight) { return BasicPath({Segment<W>{weight, Rational(1)}}); }

  const std::vector<Segment<W>>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }

  // Breakpoints 0 = t_0 < t_1 < ... < t_k = 1.
  std::vector<Rational> breakpoints() const {
    std::vector<Rational> out{Rational(0)};
    Rational t = 0;
    for (const auto& s : segments_) {
      t += s.duration;
      out.push_back(t);
    }
    return out;
  }

  W evaluate(const Rational& t) const {
    if (t < 0 || t > 1) throw Error(ErrorCode::OutOfRange, "t outside [0,1]: " + format_rational(t));
    W value = segments_.front().slope * Rational(0);
    Rational start = 0;
    for (const auto& s : segments_) {
      const Rational end = start + s.duration;
      if (t >= end) {
        value += s.slope * s.duration;
      } else {
        if (t > start) value += s.slope * (t - start);
        break;
      }
      start = end;
    }
    return value;
  }

  W endpoint() const { return evaluate(Rational(1)); }

  bool operator==(const BasicPath& other) const { return segments_ == other.segments_; }

  std::string key() const {
    std::string out;
    for (const auto& s : segments_) out += s.slope.key() + "#" + format_rational(s.duration) + ";";
    return out;
  }

 private:
  void canonicalize() {
    std::vector<Segment<W>> merged;
    for (auto& s : segments_) {
      if (s.duration == 0) continue;
      if (!merged.empty() && merged.back().slope == s.slope) {
        merged.back().duration += s.duration;
      } else {
        merged.push_back(std::move(s));
      }
    }
    segments_ = std::move(merged);
  }

  std::vector<Segment<W>> segments_;
};

using RationalPath = BasicPath<Weight>;

// Operator model over the Borcherds-Cartan datum itself.
struct GkmModel {
  using weight_type = Weight;
  using index_type = int;

  const CartanDatum* datum = nullptr;

  Rational eval(const Weight& w, int i) const { return w.eval(*datum, i); }
  void add_root(Weight& w, int i, const Rational& c) const { w.add_root(i, c); }
  long diagonal(int i) const { return datum->entry(i, i); }
};

// Operator model over the lifted Kac-Moody datum; every lifted index is real.
struct LiftedModel {
  using weight_type = LiftedWeight;
  using index_type = LiftedIndex;

  const CartanDatum* datum = nullptr;

  Rational eval(const LiftedWeight& w, const LiftedIndex& p) const { return w.eval(*datum, p); }
  void add_root(LiftedWeight& w, const LiftedIndex& p, const Rational& c) const { w.add_root(p, c); }
  long diagonal(const LiftedIndex&) const { return 2; }
};

// The height function H_i along a path, stored at the path's breakpoints.
// H is linear between consecutive breakpoints.
struct HFunction {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;
  long minimum = 0;  // least integer value attained by H

  Rational value_at(const Rational& t) const;

  // Least t >= from with H(t) == level.
  std::optional<Rational> first_at(const Rational& from, const Rational& level) const;
  // Greatest t <= upto with H(t) == level.
  std::optional<Rational> last_at(const Rational& upto, const Rational& level) const;
  // Minimum / maximum of H on [from, to].
  Rational min_on(const Rational& from, const Rational& to) const;
  Rational max_on(const Rational& from, const Rational& to) const;

  bool operator==(const HFunction& other) const;
};

// Least integer attained by a piecewise-linear function with H(0) = 0, from
// integer values at breakpoints and integers crossed strictly inside segments.
long integer_minimum(const std::vector<Rational>& values);

template <class Model, class W = typename Model::weight_type>
HFunction h_function(const Model& model, const BasicPath<W>& path, const typename Model::index_type& i) {
  HFunction h;
  Rational t = 0;
  Rational value = 0;
  h.breakpoints.push_back(t);
  h.values.push_back(value);
  for (const auto& s : path.segments()) {
    t += s.duration;
    value += s.duration * model.eval(s.slope, i);
    h.breakpoints.push_back(t);
    h.values.push_back(value);
  }
  h.minimum = integer_minimum(h.values);
  return h;
}

template <class Model, class W = typename Model::weight_type>
long m_value(const Model& model, const BasicPath<W>& path, const typename Model::index_type& i) {
  return h_function(model, path, i).minimum;
}

// Replaces every slope inside [from, to] by map(slope), splitting segments at
// the endpoints.  The part after `to` is translated implicitly.
template <class W, class Map>
BasicPath<W> remap_slopes(const BasicPath<W>& path, const Rational& from, const Rational& to, Map map) {
  std::vector<Segment<W>> out;
  Rational start = 0;
  for (const auto& s : path.segments()) {
    const Rational end = start + s.duration;
    std::vector<Rational> cuts{start};
    if (from > start && from < end) cuts.push_back(from);
    if (to > start && to < end && to != from) cuts.push_back(to);
    cuts.push_back(end);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Rational& a = cuts[k];
      const Rational& b = cuts[k + 1];
      if (a == b) continue;
      const bool inside = a >= from && b <= to;
      out.push_back(Segment<W>{inside ? map(s.slope) : s.slope, b - a});
    }
    start = end;
  }
  return BasicPath<W>(std::move(out));
}

// Times f_+ and f_- of the f-operator, or nullopt when f kills the path.
struct OperatorWindow {
  Rational lower;
  Rational upper;
};

template <class Model, class W = typename Model::weight_type>
std::optional<OperatorWindow> f_window(const Model& model, const BasicPath<W>& path,
                                       const typename Model::index_type& i) {
  const HFunction h = h_function(model, path, i);
  const Rational m(h.minimum);
  const Rational f_plus = *h.last_at(Rational(1), m);
  if (f_plus == 1) return std::nullopt;
  const Rational f_minus = *h.first_at(f_plus, m + 1);
  return OperatorWindow{f_plus, f_minus};
}

template <class Model, class W = typename Model::weight_type>
W reflect(const Model& model, const W& slope, const typename Model::index_type& i) {
  W out = slope;
  model.add_root(out, i, -model.eval(slope, i));
  return out;
}

template <class Model, class W = typename Model::weight_type>
std::optional<BasicPath<W>> f_op(const Model& model, const BasicPath<W>& path,
                                 const typename Model::index_type& i) {
  const auto window = f_window(model, path, i);
  if (!window) return std::nullopt;
  return remap_slopes(path, window->lower, window->upper,
                      [&](const W& slope) { return reflect(model, slope, i); });
}

// Times e_- and e_+ of the e-operator for a real index.
template <class Model, class W = typename Model::weight_type>
std::optional<OperatorWindow> e_window_real(const Model& model, const BasicPath<W>& path,
                                            const typename Model::index_type& i) {
  const HFunction h = h_function(model, path, i);
  const Rational m(h.minimum);
  const Rational e_plus = *h.first_at(Rational(0), m);
  if (e_plus == 0) return std::nullopt;
  const Rational e_minus = *h.last_at(e_plus, m + 1);
  return OperatorWindow{e_minus, e_plus};
}

template <class Model, class W = typename Model::weight_type>
std::optional<BasicPath<W>> e_op_real_unchecked(const Model& model, const BasicPath<W>& path,
                                                const typename Model::index_type& i) {
  const auto window = e_window_real(model, path, i);
  if (!window) return std::nullopt;
  return remap_slopes(path, window->lower, window->upper,
                      [&](const W& slope) { return reflect(model, slope, i); });
}

// Why the raw imaginary e-operator returned Null, if it did.
enum class ImagRaiseOutcome {
  Applies,
  AtEnd,             // e_- = 1
  NeverReached,      // H stays below m + 1 - a_ii after e_-
  DipsAfterThreshold // H returns to <= m - a_ii after e_+
};

struct ImagRaiseAnalysis {
  ImagRaiseOutcome outcome = ImagRaiseOutcome::AtEnd;
  Rational lower;  // e_-
  Rational upper;  // e_+ (meaningful unless AtEnd / NeverReached)
};

template <class Model, class W = typename Model::weight_type>
ImagRaiseAnalysis analyze_e_imag(const Model& model, const BasicPath<W>& path,
                                 const typename Model::index_type& i) {
  const HFunction h = h_function(model, path, i);
  const Rational m(h.minimum);
  ImagRaiseAnalysis a;
  a.lower = *h.last_at(Rational(1), m);
  if (a.lower == 1) {
    a.outcome = ImagRaiseOutcome::AtEnd;
    return a;
  }
  const Rational threshold = m + 1 - model.diagonal(i);
  if (h.max_on(a.lower, Rational(1)) < threshold) {
    a.outcome = ImagRaiseOutcome::NeverReached;
    return a;
  }
  a.upper = *h.first_at(a.lower, threshold);
  if (h.min_on(a.upper, Rational(1)) <= threshold - 1) {
    a.outcome = ImagRaiseOutcome::DipsAfterThreshold;
    return a;
  }
  a.outcome = ImagRaiseOutcome::Applies;
  return a;
}

template <class Model, class W = typename Model::weight_type>
W reflect_inverse(const Model& model, const W& slope, const typename Model::index_type& i) {
  W out = slope;
  model.add_root(out, i, model.eval(slope, i) / Rational(1 - model.diagonal(i)));
  return out;
}

// Raw imaginary e-operator on the ambient set of all paths (no cutoff).
template <class Model, class W = typename Model::weight_type>
std::optional<BasicPath<W>> e_op_imag_unchecked(const Model& model, const BasicPath<W>& path,
                                                const typename Model::index_type& i) {
  const auto a = analyze_e_imag(model, path, i);
  if (a.outcome != ImagRaiseOutcome::Applies) return std::nullopt;
  return remap_slopes(path, a.lower, a.upper,
                      [&](const W& slope) { return reflect_inverse(model, slope, i); });
}

// Index-checked entry points over a Borcherds-Cartan datum.
std::optional<RationalPath> f_op(const CartanDatum& datum, const RationalPath& path, int i);
// Throws ImaginaryIndex for an imaginary i.
std::optional<RationalPath> e_op_real(const CartanDatum& datum, const RationalPath& path, int i);
// Throws RealIndex for a real i.
std::optional<RationalPath> e_op_imag_raw(const CartanDatum& datum, const RationalPath& path, int i);

HFunction h_function(const CartanDatum& datum, const RationalPath& path, int i);
long m_value(const CartanDatum& datum, const RationalPath& path, int i);

Weight wt(const RationalPath& path);
// -m_i for real i, 0 for imaginary i.
long epsilon(const CartanDatum& datum, const RationalPath& path, int i);
// epsilon + alpha_i^vee(wt).
long phi(const CartanDatum& datum, const RationalPath& path, int i);

// Concatenation of n paths, each occupying [(m-1)/n, m/n].
template <class W>
BasicPath<W> concatenate(const std::vector<BasicPath<W>>& factors) {
  const Rational n(static_cast<long>(factors.size()));
  std::vector<Segment<W>> out;
  for (const auto& f : factors) {
    for (const auto& s : f.segments()) out.push_back(Segment<W>{s.slope * n, s.duration / n});
  }
  return BasicPath<W>(std::move(out));
}

// Inverse of concatenate: cuts at m/n and rescales each piece to [0,1].
template <class W>
std::vector<BasicPath<W>> split(const BasicPath<W>& path, std::size_t n) {
  const Rational count(static_cast<long>(n));
  std::vector<std::vector<Segment<W>>> pieces(n);
  Rational start = 0;
  for (const auto& s : path.segments()) {
    const Rational end = start + s.duration;
    Rational a = start;
    while (a < end) {
      const long slot = floor_long(a * count);
      const Rational slot_end = Rational(slot + 1) / count;
      const Rational b = std::min(end, slot_end);
      pieces[slot].push_back(Segment<W>{s.slope * (Rational(1) / count), (b - a) * count});
      a = b;
    }
    start = end;
  }
  std::vector<BasicPath<W>> out;
  for (auto& p : pieces) out.emplace_back(std::move(p));
  return out;
}

}  // namespace jlpath
