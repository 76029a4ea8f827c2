#include "jlpath/lift_embed.hpp"

#include "jlpath/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace jlpath {

OrderedIndexWord embed_word(const CartanDatum& datum, const OperatorWord& fword) {
  return WeylMonoid(datum).to_ordered_index(fword);
}

LiftedWeight lift_weight(const CartanDatum& datum, const Weight& mu) {
  return LiftedWeight::lift_evals(mu.evals(datum));
}

std::optional<MonoidWord> real_orbit_witness(const CartanDatum& datum, const Weight& mu, std::size_t cap) {
  Weight x = mu;
  MonoidWord word;
  for (std::size_t step = 0; step <= cap; ++step) {
    int descent = -1;
    for (int j : datum.real_indices()) {
      if (x.eval(datum, j) < 0) {
        descent = j;
        break;
      }
    }
    if (descent < 0) {
      if (!x.is_dominant(datum)) return std::nullopt;
      // mu = r_{j_1} ... r_{j_s} [mu], with j_1 applied last in the descent.
      return word;
    }
    x.add_root(descent, -x.eval(datum, descent));
    word.letters.push_back(descent);
  }
  return std::nullopt;
}

namespace {

void require_witnesses(const CartanDatum& datum, const std::vector<Weight>& shapes) {
  if (shapes.empty()) throw Error(ErrorCode::Usage, "empty shape list");
  for (const auto& mu : shapes) {
    if (!real_orbit_witness(datum, mu)) {
      throw Error(ErrorCode::WitnessMissing, "weight " + mu.key() + " has no W_re P^+ witness");
    }
  }
}

RationalPath initial_path(const std::vector<Weight>& shapes) {
  std::vector<RationalPath> factors;
  for (const auto& mu : shapes) factors.push_back(RationalPath::straight(mu));
  return concatenate(factors);
}

LiftedPath initial_lifted(const CartanDatum& datum, const std::vector<Weight>& shapes) {
  std::vector<LiftedPath> factors;
  for (const auto& mu : shapes) factors.push_back(LiftedPath::straight(lift_weight(datum, mu)));
  return concatenate(factors);
}

}  // namespace

EmbeddedPair embed_path(const CartanDatum& datum, const OperatorWord& fword, const std::vector<Weight>& shapes) {
  require_witnesses(datum, shapes);
  const OrderedIndexWord lifted_word = embed_word(datum, fword);
  const GkmModel down{&datum};
  const LiftedModel up{&datum};
  EmbeddedPair out{initial_path(shapes), initial_lifted(datum, shapes)};
  for (std::size_t k = fword.size(); k-- > 0;) {
    out.gkm = f_op(down, *out.gkm, fword.letters[k]);
    out.lifted = f_op(up, *out.lifted, lifted_word[k]);
    if (out.gkm.has_value() != out.lifted.has_value()) {
      throw std::logic_error("lifted operator word disagrees on Null at letter " + std::to_string(k));
    }
    if (!out.gkm) break;
  }
  return out;
}

HProbeReport h_equality_probe(const CartanDatum& datum, const OperatorWord& fword,
                              const std::vector<Weight>& shapes) {
  require_witnesses(datum, shapes);
  const OrderedIndexWord lifted_word = embed_word(datum, fword);
  const GkmModel down{&datum};
  const LiftedModel up{&datum};
  HProbeReport report;
  std::optional<RationalPath> pi = initial_path(shapes);
  std::optional<LiftedPath> lifted = initial_lifted(datum, shapes);
  for (std::size_t k = fword.size(); k-- > 0;) {
    const std::size_t s = fword.size() - k;
    ++report.prefixes_checked;
    if (!(h_function(down, *pi, fword.letters[k]) == h_function(up, *lifted, lifted_word[k]))) {
      report.mismatches.push_back(s);
    }
    pi = f_op(down, *pi, fword.letters[k]);
    lifted = f_op(up, *lifted, lifted_word[k]);
    if (!pi || !lifted) {
      if (pi.has_value() != lifted.has_value()) report.mismatches.push_back(s);
      break;
    }
  }
  return report;
}

std::vector<LiftedIndex> dominance_representatives(const CartanDatum& datum, const LiftedPath& path,
                                                   const LiftedWeight& shift, const std::vector<int>& bases) {
  std::vector<LiftedIndex> out;
  for (int i : bases) {
    if (datum.is_real(i)) {
      out.push_back(LiftedIndex{i, 1});
      continue;
    }
    int top = shift.max_level(i);
    for (const auto& s : path.segments()) top = std::max(top, s.slope.max_level(i));
    // Levels above the support share one row pattern; top + 1 stands for all.
    for (int m = 1; m <= top + 1; ++m) out.push_back(LiftedIndex{i, m});
  }
  return out;
}

namespace {

bool dominant_on(const CartanDatum& datum, const LiftedPath& path, const LiftedWeight& shift,
                 const std::vector<int>& bases) {
  const LiftedModel model{&datum};
  for (const auto& p : dominance_representatives(datum, path, shift, bases)) {
    const HFunction h = h_function(model, path, p);
    const Rational lowest = *std::min_element(h.values.begin(), h.values.end());
    if (lowest + shift.eval(datum, p) < 0) return false;
  }
  return true;
}

}  // namespace

bool is_lifted_dominant(const CartanDatum& datum, const LiftedPath& path, const LiftedWeight& shift) {
  std::vector<int> all(datum.rank());
  for (std::size_t i = 0; i < datum.rank(); ++i) all[i] = static_cast<int>(i);
  return dominant_on(datum, path, shift, all);
}

bool is_levi_dominant(const CartanDatum& datum, const LiftedPath& path, const std::vector<int>& subset) {
  return dominant_on(datum, path, LiftedWeight(std::vector<Rational>(datum.rank(), Rational(0))), subset);
}

}  // namespace jlpath
