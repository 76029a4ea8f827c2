#include "doctest.h"
#include "fixtures.hpp"

#include "jlpath/lift_embed.hpp"
#include "jlpath/suites.hpp"

#include <string>
#include <vector>

using namespace jlpath;
using fx::w;

namespace {

std::string text(const CartanDatum& d, const OrderedIndexWord& word) {
  std::string out;
  for (const auto& p : word) out += "(" + d.label(p.base) + "," + std::to_string(p.level) + ")";
  return out;
}

// alpha_(i,m) -> alpha_i.
Weight project(const LiftedWeight& x) {
  std::vector<Rational> offset(x.rank(), 0);
  for (const auto& [p, c] : x.offset()) offset[p.base] += c;
  return Weight(x.base_evals(), offset);
}

RationalPath project(const LiftedPath& p) {
  std::vector<Segment<Weight>> segs;
  for (const auto& s : p.segments()) segs.push_back({project(s.slope), s.duration});
  return RationalPath(segs);
}

// Applies the lifted word directly with the lifted operators, and the word
// itself downstairs.
std::optional<LiftedPath> lifted_by_hand(const CartanDatum& d, const OperatorWord& f, const Weight& lambda) {
  const LiftedModel model{&d};
  std::optional<LiftedPath> p = LiftedPath::straight(lift_weight(d, lambda));
  const auto word = embed_word(d, f);
  for (std::size_t k = word.size(); k-- > 0 && p;) p = f_op(model, *p, word[k]);
  return p;
}

std::optional<RationalPath> downstairs(const CartanDatum& d, const OperatorWord& f, const Weight& lambda) {
  std::optional<RationalPath> p = RationalPath::straight(lambda);
  for (std::size_t k = f.size(); k-- > 0 && p;) p = f_op(d, *p, f.letters[k]);
  return p;
}

OperatorWord random_word(const CartanDatum& d, std::size_t max_len, SuiteRng& rng) {
  OperatorWord f;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t k = 0; k < len; ++k) f.letters.push_back(static_cast<int>(rng.below(d.rank())));
  return f;
}

}  // namespace

TEST_CASE("embedding operator words") {
  const auto& d = fx::gkm2();
  CHECK(text(d, embed_word(d, parse_word(d, "2 2 1 2 2 2 1 1 2 2"))) ==
        "(2,7)(2,6)(1,1)(2,5)(2,4)(2,3)(1,1)(1,1)(2,2)(2,1)");
  CHECK(embed_word(d, OperatorWord{}).empty());
  CHECK(text(d, embed_word(d, parse_word(d, "1 1"))) == "(1,1)(1,1)");
}

TEST_CASE("embedding paths") {
  const auto& d = fx::gkm2();
  const Weight lambda = w({2, 1});
  const auto empty = embed_path(d, OperatorWord{}, {lambda});
  CHECK(*empty.gkm == RationalPath::straight(lambda));
  CHECK(*empty.lifted == LiftedPath::straight(lift_weight(d, lambda)));

  const auto f = parse_word(d, "2 2 1 2 2 2 1 1 2 2");
  for (const auto& mu : {w({2, 1}), w({3, 1}), w({1, 2}), w({4, 3})}) {
    const auto pair = embed_path(d, f, {mu});
    const auto by_hand = lifted_by_hand(d, f, mu);
    const auto down = downstairs(d, f, mu);
    CHECK(pair.gkm.has_value() == down.has_value());
    CHECK(pair.lifted.has_value() == by_hand.has_value());
    if (!pair.gkm) continue;
    CHECK(*pair.gkm == *down);
    CHECK(*pair.lifted == *by_hand);
    CHECK(project(*pair.lifted) == *pair.gkm);
  }
}

TEST_CASE("both sides vanish together on random words") {
  for (const auto* d : {&fx::gkm2(), &fx::rank1_imag(), &fx::split()}) {
    SuiteRng rng(21);
    std::size_t alive = 0;
    for (int k = 0; k < 300; ++k) {
      const Weight lambda = random_dominant(*d, 2, rng);
      const OperatorWord f = random_word(*d, 8, rng);
      const auto pair = embed_path(*d, f, {lambda});
      const auto by_hand = lifted_by_hand(*d, f, lambda);
      const auto down = downstairs(*d, f, lambda);
      CHECK(pair.gkm.has_value() == pair.lifted.has_value());
      CHECK(down.has_value() == by_hand.has_value());
      if (pair.gkm) {
        ++alive;
        CHECK(project(*pair.lifted) == *pair.gkm);
      }
    }
    CHECK(alive > 20);
  }
}

TEST_CASE("H agrees on every prefix") {
  const auto& d = fx::gkm2();
  const auto empty = h_equality_probe(d, OperatorWord{}, {w({1, 1})});
  CHECK(empty.passed());
  const auto ex = h_equality_probe(d, parse_word(d, "2 2 1 2 2 2 1 1 2 2"), {w({3, 1})});
  CHECK(ex.passed());
  CHECK(ex.prefixes_checked >= 10);
  SuiteRng rng(8);
  for (int k = 0; k < 200; ++k) {
    const Weight lambda = random_dominant(d, 2, rng);
    const Weight mu = random_dominant(d, 2, rng);
    CHECK(h_equality_probe(d, random_word(d, 8, rng), {lambda, mu}).passed());
  }
}

TEST_CASE("lifted dominance") {
  const auto& d = fx::a1();
  const LiftedWeight zero = LiftedWeight::lift_evals({Rational(0)});
  CHECK(is_lifted_dominant(d, LiftedPath::straight(lift_weight(d, w({2}))), zero));

  const auto f_mu = *embed_path(d, parse_word(d, "1"), {w({1})}).lifted;
  CHECK_FALSE(is_lifted_dominant(d, f_mu, lift_weight(d, w({0}))));
  CHECK(is_lifted_dominant(d, f_mu, lift_weight(d, w({1}))));

  // Every lifted index is real, so f_(2,1) of a straight path dips to -1.
  const auto& ex = fx::gkm2();
  const auto f_imag = *embed_path(ex, parse_word(ex, "2"), {w({0, 1})}).lifted;
  CHECK_FALSE(is_lifted_dominant(ex, f_imag, lift_weight(ex, w({0, 0}))));
  CHECK(is_lifted_dominant(ex, f_imag, lift_weight(ex, w({0, 1}))));
}

TEST_CASE("Levi dominance") {
  const auto& d = fx::a2();
  const auto top = LiftedPath::straight(lift_weight(d, w({1, 1})));
  for (const auto& s : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}}) CHECK(is_levi_dominant(d, top, s));
  const auto f1 = *embed_path(d, parse_word(d, "1"), {w({1, 1})}).lifted;
  CHECK(is_levi_dominant(d, f1, {}));
  CHECK(is_levi_dominant(d, f1, {1}));
  CHECK_FALSE(is_levi_dominant(d, f1, {0}));
  CHECK_FALSE(is_levi_dominant(d, f1, {0, 1}));
}
