#include "doctest.h"
#include "fixtures.hpp"

#include "jlpath/error.hpp"
#include "jlpath/root_table.hpp"
#include "jlpath/suites.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace jlpath;
using fx::w;

namespace {

MonoidWord word(const CartanDatum& d, const std::string& text) { return parse_word(d, text); }

std::string text(const CartanDatum& d, const OrderedIndexWord& word) {
  std::string out;
  for (const auto& p : word) out += "(" + d.label(p.base) + "," + std::to_string(p.level) + ")";
  return out;
}

// Applies the letters one at a time, rightmost first.
Weight act_by_letters(const WeylMonoid& m, const MonoidWord& w, Weight mu) {
  for (std::size_t k = w.size(); k-- > 0;) mu = m.reflect(w.letters[k], mu);
  return mu;
}

Weight fundamental(std::size_t rank, std::size_t j) {
  std::vector<long> evals(rank, 0);
  evals[j] = 1;
  return Weight::from_evals(evals);
}

const RootEntry& root(const RootTable& t, std::vector<long> coords) {
  const RootEntry* r = t.find(coords);
  REQUIRE(r != nullptr);
  return *r;
}

}  // namespace

TEST_CASE("ordered index words") {
  const auto d3 = CartanDatum::validate({{2, -1, -1}, {-1, -2, -1}, {-1, -1, -2}});
  const WeylMonoid m3(d3);
  CHECK(text(d3, m3.to_ordered_index(word(d3, "3 1 3 3 1 2 3 1 3 2 1 2"))) ==
        "(3,5)(1,1)(3,4)(3,3)(1,1)(2,3)(3,2)(1,1)(3,1)(2,2)(1,1)(2,1)");
  CHECK(m3.to_ordered_index(MonoidWord{}).empty());

  const WeylMonoid m(fx::split());
  CHECK(text(fx::split(), m.to_ordered_index(word(fx::split(), "2 2"))) == "(2,2)(2,1)");
  const auto w = word(fx::split(), "2 1 2 1 2");
  CHECK(m.pull_back(m.to_ordered_index(w)) == w);
}

TEST_CASE("normal forms") {
  const auto& s = fx::split();
  const WeylMonoid m(s);
  CHECK(m.normal_form(word(s, "1 1")).empty());
  CHECK(m.length(word(s, "2 2")) == 2);
  CHECK(m.normal_form(word(s, "2 2")) == word(s, "2 2"));
  CHECK(m.length(word(s, "2 1 2")) == 3);
  CHECK(m.equal(word(s, "2 1 2"), word(s, "1 2 2")));
  CHECK(m.length(word(s, "1 2 1")) == 1);

  const WeylMonoid a2(fx::a2());
  CHECK(a2.equal(word(fx::a2(), "1 2 1"), word(fx::a2(), "2 1 2")));
  CHECK(a2.length(word(fx::a2(), "1 2 1 2 1 2")) == 0);
  CHECK(parse_word(fx::a2(), "e").empty());
  CHECK_THROWS_AS(parse_word(fx::a2(), "1 3"), Error);
}

TEST_CASE("coxeter orders of the lifted alphabet") {
  const auto order = [](const IntMatrix& a) {
    const auto d = CartanDatum::validate(a);
    return WeylMonoid(d).coxeter_order({0, 1}, {1, 1});
  };
  CHECK(order({{2, 0}, {0, 2}}) == 2);
  CHECK(order({{2, -1}, {-1, 2}}) == 3);
  CHECK(order({{2, -1}, {-2, 2}}) == 4);
  CHECK(order({{2, -1}, {-3, 2}}) == 6);
  CHECK(order({{2, -2}, {-2, 2}}) == 0);
  CHECK(order({{2, 0}, {0, -2}}) == 2);
  CHECK(WeylMonoid(fx::rank1_imag()).coxeter_order({0, 1}, {0, 2}) == 0);
}

TEST_CASE("action on weights") {
  const WeylMonoid a1(fx::a1());
  Weight expected = w({2});
  expected.add_root(0, -2);
  CHECK(a1.reflect(0, w({2})) == expected);

  const auto& im = fx::rank1_imag();
  const WeylMonoid m(im);
  for (long n = 0; n <= 4; ++n) {
    Weight down = w({n});
    down.add_root(0, -n);
    CHECK(m.reflect(0, w({n})) == down);
    CHECK(m.act_inverse_imag(0, down) == w({n}));
  }
  const Weight mu({Rational(1, 3), Rational(-2)}, {Rational(1), Rational(5, 2)});
  const WeylMonoid ex(fx::gkm2());
  CHECK(ex.act_inverse_imag(1, ex.reflect(1, mu)) == mu);
  CHECK(ex.reflect(1, ex.act_inverse_imag(1, mu)) == mu);
}

TEST_CASE("the action does not depend on the expression") {
  for (const auto* d : {&fx::gkm2(), &fx::a2(), &fx::split()}) {
    const WeylMonoid m(*d);
    SuiteRng rng(4);
    for (const auto& w : all_words(*d, 5)) {
      const Weight mu = random_dominant(*d, 3, rng);
      CHECK(act_by_letters(m, w, mu) == act_by_letters(m, m.normal_form(w), mu));
    }
  }
}

TEST_CASE("reduced expressions are connected by braid moves") {
  for (const auto* d : {&fx::gkm2(), &fx::a2()}) {
    const WeylMonoid m(*d);
    const auto words = all_words(*d, 5);
    for (const auto& a : words) {
      if (!m.is_reduced(a)) continue;
      const auto cls = m.reduced_words(a);
      for (const auto& b : words) {
        if (b.size() != a.size() || !m.equal(a, b)) continue;
        CHECK(std::find(cls.begin(), cls.end(), b) != cls.end());
      }
    }
  }
}

TEST_CASE("bruhat order") {
  const auto& ex = fx::gkm2();
  const WeylMonoid m(ex);
  const auto table = RootTable::build(ex, 32);
  CHECK(m.bruhat_leq(MonoidWord{}, word(ex, "2 1 2 1"), table));
  CHECK(m.bruhat_leq(word(ex, "1"), word(ex, "2 1"), table));
  CHECK_FALSE(m.bruhat_leq(word(ex, "2 1"), word(ex, "1"), table));

  const auto& a2 = fx::a2();
  const WeylMonoid ma(a2);
  const auto ta = RootTable::build(a2, 8);
  CHECK_FALSE(ma.bruhat_leq(word(a2, "1"), word(a2, "2"), ta));
  CHECK(ma.bruhat_leq(word(a2, "1"), word(a2, "1 2"), ta));
  CHECK(ma.bruhat_leq(word(a2, "1 2"), word(a2, "1 2 1"), ta));
  CHECK(ma.bruhat_leq(word(a2, "2 1"), word(a2, "1 2 1"), ta));
}

TEST_CASE("real exchange") {
  const auto& a2 = fx::a2();
  const WeylMonoid m(a2);
  const auto t = RootTable::build(a2, 8);
  CHECK(m.exchange_check_real(word(a2, "1"), root(t, {1, 0})) == 1);
  CHECK(m.exchange_positions_real(word(a2, "1 2 1"), root(t, {1, 1})) == std::vector<std::size_t>{2});
  // Every deletion, tested directly.
  for (std::size_t s = 1; s <= 3; ++s) {
    MonoidWord del = word(a2, "1 2 1");
    del.letters.erase(del.letters.end() - static_cast<long>(s));
    const bool hit = m.equal(del, MonoidWord{});
    CHECK(hit == (s == 2));
  }
  CHECK_THROWS_AS(m.exchange_check_real(word(a2, "1"), root(t, {0, 1})), Error);

  const auto& s = fx::split();
  const WeylMonoid ms(s);
  const auto ts = RootTable::build(s, 8);
  CHECK(ms.exchange_check_real(word(s, "2 1"), root(ts, {1, 0})) == 1);
}

TEST_CASE("imaginary exchange") {
  const auto& ex = fx::gkm2();
  const WeylMonoid m(ex);
  const auto t = RootTable::build(ex, 8);
  const auto& alpha2 = root(t, {0, 1});
  CHECK(m.exchange_check_imag(word(ex, "2 1"), alpha2) == word(ex, "1"));
  CHECK(m.exchange_check_imag(word(ex, "2 2"), alpha2) == word(ex, "2"));
  try {
    m.exchange_check_imag(word(ex, "1"), alpha2);
    FAIL("no occurrence accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoOccurrence);
  }
}

TEST_CASE("dominant reduced expressions") {
  const auto& a2 = fx::a2();
  const WeylMonoid ma(a2);
  const auto real = ma.dominant_reduced_expression(word(a2, "1 2"));
  CHECK(real.word == word(a2, "1 2"));
  CHECK(real.imaginary_letters.empty());

  const auto& s = fx::split();
  const WeylMonoid m(s);
  CHECK(m.dominant_reduced_expression(word(s, "2")).word == word(s, "2"));
  // r_2 r_1 sends omega_1 outside the chamber; r_1 r_2 does not.
  CHECK_FALSE(act_by_letters(m, word(s, "2 1"), fundamental(2, 0)).is_dominant(s));
  const auto e = m.dominant_reduced_expression(word(s, "2 1"));
  CHECK(e.word == word(s, "1 2"));
  CHECK(e.dominant);

  // Check the defining condition on the fundamental weights for all short
  // words of the gkm2 datum.
  const auto& ex = fx::gkm2();
  const WeylMonoid mx(ex);
  for (const auto& w : all_words(ex, 4)) {
    const auto expr = mx.dominant_reduced_expression(w);
    CHECK(mx.equal(expr.word, w));
    CHECK(expr.word.size() == mx.length(w));
    bool dominant = true;
    for (std::size_t k = expr.word.size(); k-- > 0;) {
      if (ex.is_real(expr.word.letters[k])) continue;
      MonoidWord prefix;
      prefix.letters.assign(expr.word.letters.begin() + static_cast<long>(k), expr.word.letters.end());
      for (std::size_t j = 0; j < ex.rank(); ++j)
        dominant = dominant && act_by_letters(mx, prefix, fundamental(2, j)).is_dominant(ex);
    }
    CHECK(dominant == expr.dominant);
    CHECK(expr.dominant);
  }
}

TEST_CASE("stabilizers") {
  const auto& a2 = fx::a2();
  const WeylMonoid m(a2);
  const Weight omega1 = w({1, 0});
  CHECK(m.stabilizer_membership(word(a2, "2"), omega1).member);
  CHECK_FALSE(m.stabilizer_membership(word(a2, "1"), omega1).member);
  std::size_t members = 0;
  for (const auto& x : all_words(a2, 4)) {
    const auto r = m.stabilizer_membership(x, omega1);
    CHECK(r.member == (act_by_letters(m, x, omega1) == omega1));
    if (!r.member) continue;
    ++members;
    REQUIRE(r.witness.has_value());
    CHECK(m.equal(*r.witness, x));
    CHECK(std::all_of(r.witness->letters.begin(), r.witness->letters.end(), [](int i) { return i == 1; }));
  }
  CHECK(members > 2);

  const auto& ex = fx::gkm2();
  const WeylMonoid mx(ex);
  CHECK(mx.stabilizer_membership(word(ex, "2"), w({1, 0})).member);
  CHECK_FALSE(mx.stabilizer_membership(word(ex, "2"), w({0, 1})).member);
}
