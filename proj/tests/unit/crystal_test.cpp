#include "doctest.h"
#include "fixtures.hpp"

#include "jlpath/crystal.hpp"
#include "jlpath/error.hpp"
#include "jlpath/lift_embed.hpp"

#include "../support/oracles.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace jlpath;
using fx::w;

namespace {

std::multiset<long> eval_multiset(const CartanDatum& d, const std::vector<Summand>& summands, int i) {
  std::multiset<long> out;
  for (const auto& s : summands) out.insert(to_long(s.shape.eval(d, i)));
  return out;
}

RationalPath pair_path(const RationalPath& a, const RationalPath& b) { return concatenate<Weight>({a, b}); }

}  // namespace

TEST_CASE("generate") {
  const CrystalEngine a1(fx::a1());
  CHECK(a1.generate(w({2}), 5).size() == 3);
  CHECK(a1.generate(w({2}), std::nullopt).size() == 3);
  CHECK(a1.generate(w({2}), 0).size() == 1);

  const auto& im = fx::rank1_imag();
  const CrystalEngine e(im);
  const auto g = e.generate(w({1}), 3);
  REQUIRE(g.size() == 4);
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    CHECK(g.successor(k, 0) == std::optional<std::size_t>(k + 1));
    CHECK(g.nodes[k].depth == static_cast<long>(k));
  }
  // H(1) grows with every step.
  for (std::size_t k = 1; k < g.size(); ++k)
    CHECK(g.nodes[k].path.endpoint().eval(im, 0) > g.nodes[k - 1].path.endpoint().eval(im, 0));
}

TEST_CASE("node order and determinism") {
  const CrystalEngine one(fx::gkm2(), CrystalOptions{500000, 1, {}});
  const CrystalEngine four(fx::gkm2(), CrystalOptions{500000, 4, {}});
  const auto a = one.generate(w({1, 1}), 5);
  const auto b = four.generate(w({1, 1}), 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.nodes[k].path == b.nodes[k].path);
  CHECK(a.edges == b.edges);
  for (std::size_t k = 1; k < a.size(); ++k) CHECK(a.nodes[k - 1].depth <= a.nodes[k].depth);
}

TEST_CASE("node cap") {
  const CrystalEngine e(fx::gkm2(), CrystalOptions{10, 1, {}});
  try {
    e.generate(w({1, 1}), 8);
    FAIL("cap ignored");
  } catch (const Error& err) {
    CHECK(is_bound_error(err.code()));
  }
}

TEST_CASE("concatenations") {
  const CrystalEngine a1(fx::a1());
  const auto single = a1.generate(w({2}), 4);
  CHECK(iso_check(single, a1.generate_concat({w({2})}, 4)));
  const auto pair = a1.generate_concat({w({1}), w({1})}, 4);
  CHECK(pair.size() == 3);
  CHECK(iso_check(single, pair));

  const CrystalEngine ex(fx::gkm2());
  for (long d = 0; d <= 4; ++d) CHECK(iso_check(ex.generate(w({2, 2}), d), ex.generate_concat({w({1, 1}), w({1, 1})}, d)));
}

TEST_CASE("isomorphism check") {
  const CrystalEngine a2(fx::a2());
  const auto g = a2.generate(w({1, 1}), std::nullopt);
  CHECK(iso_check(g, g));
  CHECK_FALSE(iso_check(a2.generate(w({1, 0}), std::nullopt), a2.generate(w({0, 1}), std::nullopt),
                        IsoOptions{{0, 1}, true}));
  CHECK(iso_check(a2.generate(w({1, 0}), std::nullopt), a2.generate(w({0, 1}), std::nullopt),
                  IsoOptions{{1, 0}, true}));
  try {
    iso_check(a2.generate(w({1, 0}), 1), a2.generate(w({1, 0}), 2));
    FAIL("depths compared");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationIncomparable);
  }
  CHECK_THROWS_AS(iso_check(a2.generate(w({1, 0}), 1), a2.generate(w({0, 1}), 1)), Error);
}

TEST_CASE("characters") {
  const CrystalEngine a1(fx::a1());
  const Character ch = character(a1.generate(w({2}), std::nullopt));
  Weight l1 = w({2});
  l1.add_root(0, -1);
  Weight l2 = w({2});
  l2.add_root(0, -2);
  CHECK(ch == Character{{w({2}), 1}, {l1, 1}, {l2, 1}});

  // sl3 multiplicities from Gelfand-Tsetlin patterns.
  const auto& d = fx::a2();
  const CrystalEngine a2(d);
  for (const auto& [m1, m2] : std::vector<std::pair<long, long>>{{1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
    std::map<std::array<long, 2>, long> got;
    for (const auto& [wt, mult] : character(a2.generate(w({m1, m2}), std::nullopt)))
      got[{to_long(wt.eval(d, 0)), to_long(wt.eval(d, 1))}] += mult;
    CHECK(got == oracle::sl3_weights(m1, m2));
  }
}

TEST_CASE("raising to the highest element") {
  const auto& d = fx::gkm2();
  const CrystalEngine e(d);
  const std::vector<Weight> shapes{w({1, 1}), w({0, 1})};
  const RationalPath top = highest_path(shapes);
  const auto r = e.raise_to_highest(shapes, top);
  CHECK(r.eword.empty());
  CHECK(r.terminal == top);
  CHECK(e.is_highest(shapes, top));
  for (const auto& node : e.generate_concat(shapes, 4).nodes) {
    const auto up = e.raise_to_highest(shapes, node.path);
    CHECK(up.terminal == top);
    CHECK(up.eword.size() == static_cast<std::size_t>(node.depth));
    CHECK(e.is_standard(shapes, node.path));
  }
}

TEST_CASE("highest pairs are the lifted-dominant ones") {
  for (const auto* d : {&fx::gkm2(), &fx::a2(), &fx::rank1_imag()}) {
    const CrystalEngine e(*d);
    const Weight mu = d->rank() == 1 ? w({1}) : w({1, 1});
    std::size_t highest = 0;
    std::size_t other = 0;
    for (const auto& lambda : d->rank() == 1 ? std::vector<Weight>{w({0}), w({1}), w({2})}
                                             : std::vector<Weight>{w({0, 0}), w({1, 0}), w({0, 1}), w({1, 1})}) {
      for (const auto& node : e.generate(mu, 3).nodes) {
        const RationalPath p = pair_path(RationalPath::straight(lambda), node.path);
        const auto lifted = *embed_path(*d, node.fword, {mu}).lifted;
        const bool dominant = is_lifted_dominant(*d, lifted, lift_weight(*d, lambda));
        CHECK(e.is_highest({lambda, mu}, p) == dominant);
        (dominant ? highest : other) += 1;
        if (node.path.size() == 1) {
          const bool fixed = e.raise_to_highest({lambda, mu}, p).terminal == p;
          CHECK(fixed == dominant);
        }
      }
    }
    CHECK(highest > 0);
    CHECK(other > 0);
  }
}

TEST_CASE("standard elements and defining chains") {
  const auto& d = fx::gkm2();
  const CrystalEngine e(d);
  const std::vector<Weight> shapes{w({1, 1}), w({1, 1})};
  CHECK(e.is_standard(shapes, highest_path(shapes)));
  const std::vector<MonoidWord> identity(2);
  CHECK(e.verify_defining_chain(shapes, highest_path(shapes), identity).ok());

  for (const auto& node : e.generate_concat(shapes, 3).nodes) {
    const auto chain = e.search_defining_chain(shapes, node.path, 6);
    REQUIRE(chain.has_value());
    CHECK(e.verify_defining_chain(shapes, node.path, *chain).ok());
  }

  // pi_lambda x pi with pi not lambda-dominant: highest, but off the
  // component of the highest path.
  const auto& a1 = fx::a1();
  const CrystalEngine ea(a1);
  const std::vector<Weight> pair{w({1}), w({1})};
  const RationalPath bad = pair_path(RationalPath::straight(w({1})), *f_op(a1, RationalPath::straight(w({1})), 0));
  CHECK(e.is_highest(shapes, highest_path(shapes)));
  CHECK(ea.is_highest(pair, bad));
  CHECK_FALSE(ea.is_standard(pair, bad));
  CHECK_FALSE(ea.search_defining_chain(pair, bad, 4).has_value());
  for (const auto& c : std::vector<std::vector<MonoidWord>>{{{}, {}}, {{}, {{0}}}, {{{0}}, {{0}}}, {{{0}}, {}}})
    CHECK_FALSE(ea.verify_defining_chain(pair, bad, c).ok());
}

TEST_CASE("tensor products") {
  const CrystalEngine a1(fx::a1());
  const auto zero = a1.tensor_decompose(w({1}), w({2}), 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].shape.eval(fx::a1(), 0) == 3);

  const auto cg = a1.tensor_decompose(w({1}), w({1}), 4);
  CHECK(eval_multiset(fx::a1(), cg, 0) == std::multiset<long>{2, 0});
  CHECK(a1.verify_tensor_decomposition(w({1}), w({1}), 4, cg).ok());

  const auto& d = fx::a2();
  const CrystalEngine a2(d);
  const auto s = a2.tensor_decompose(w({1, 0}), w({1, 1}), 8);
  std::map<std::array<long, 2>, long> got;
  for (const auto& x : s) ++got[{to_long(x.shape.eval(d, 0)), to_long(x.shape.eval(d, 1))}];
  CHECK(got == oracle::sl3_tensor({1, 0}, {1, 1}));

  const CrystalEngine ex(fx::gkm2());
  for (long depth = 1; depth <= 4; ++depth) {
    const auto parts = ex.tensor_decompose(w({1, 0}), w({0, 1}), depth);
    CHECK(ex.verify_tensor_decomposition(w({1, 0}), w({0, 1}), depth, parts).ok());
  }
}

TEST_CASE("branching") {
  const auto& d = fx::a2();
  const CrystalEngine a2(d);
  const Weight omega1 = w({1, 0});

  const auto all = a2.branch(omega1, {0, 1}, 4);
  REQUIRE(all.size() == 1);
  CHECK(all[0].path == RationalPath::straight(omega1));
  CHECK(a2.verify_branch(omega1, {0, 1}, 4, all).ok());

  const auto none = a2.branch(omega1, {}, 4);
  CHECK(none.size() == 3);
  CHECK(a2.verify_branch(omega1, {}, 4, none).ok());

  const auto s1 = a2.branch(omega1, {0}, 4);
  CHECK(a2.verify_branch(omega1, {0}, 4, s1).ok());
  const auto g = a2.generate(omega1, 4);
  std::multiset<std::size_t> sizes;
  for (const auto& c : oracle::components(g, {0})) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2});
  CHECK(s1.size() == 2);
}

TEST_CASE("graph invariants") {
  for (const auto* d : {&fx::a2(), &fx::gkm2(), &fx::rank1_imag()}) {
    const CrystalEngine e(*d);
    const Weight lambda = d->rank() == 1 ? w({2}) : w({1, 2});
    const auto g = e.generate(lambda, 4);
    for (int i = 0; i < static_cast<int>(d->rank()); ++i) CHECK_FALSE(e.e({lambda}, g.nodes[0].path, i).has_value());
    for (std::size_t u = 0; u < g.size(); ++u) {
      if (g.nodes[u].depth == 4) continue;
      for (int i = 0; i < static_cast<int>(d->rank()); ++i) {
        const auto f = f_op(*d, g.nodes[u].path, i);
        const auto v = g.successor(u, i);
        CHECK(f.has_value() == v.has_value());
        if (f && v) CHECK(g.nodes[*v].path == *f);
      }
    }
  }
}

TEST_CASE("characters are symmetric under real reflections") {
  const auto check = [](const CartanDatum& d, const CrystalGraph& g, int i) {
    const WeylMonoid m(d);
    std::map<std::vector<Rational>, long> before;
    std::map<std::vector<Rational>, long> after;
    for (const auto& [wt, mult] : character(g)) {
      before[wt.evals(d)] += mult;
      after[m.reflect(i, wt).evals(d)] += mult;
    }
    return before == after;
  };
  const auto b2 = CartanDatum::validate({{2, -1}, {-2, 2}});
  for (const auto* d : {&fx::a2(), &b2}) {
    const CrystalEngine e(*d);
    const auto g = e.generate(w({2, 1}), std::nullopt);
    for (int i : d->real_indices()) CHECK(check(*d, g, i));
  }
  const auto& ex = fx::gkm2();
  const CrystalEngine e(ex);
  auto g = e.generate(w({1, 1}), 4);
  e.close_strings(g, {0});
  CHECK(g.string_closed);
  CHECK(check(ex, g, 0));
}
