#include "jlpath/suites.hpp"

#include "jlpath/error.hpp"
#include "jlpath/lift_embed.hpp"
#include "jlpath/root_table.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace jlpath {

std::size_t SuiteReport::total_checks() const {
  std::size_t n = 0;
  for (const auto& [k, v] : checks) n += v;
  return n;
}

Json SuiteReport::to_json() const {
  Json c = Json::object();
  for (const auto& [k, v] : checks) c[k] = v;
  Json f = Json::object();
  for (const auto& [k, v] : failures) f[k] = v;
  return Json{{"suite", name},   {"seed", seed},         {"passed", passed()},
              {"checks", c},     {"failures", f},        {"counterexamples", counterexamples}};
}

namespace {

class Recorder {
 public:
  Recorder(SuiteReport& report, std::size_t max_failures) : report_(report), max_(max_failures) {}

  bool check(const std::string& property, bool ok, const std::function<Json()>& detail) {
    ++report_.checks[property];
    if (ok) return true;
    ++report_.failures[property];
    if (report_.counterexamples.size() < max_) {
      Json j = detail();
      j["property"] = property;
      report_.counterexamples.push_back(std::move(j));
    }
    return false;
  }

 private:
  SuiteReport& report_;
  std::size_t max_;
};

Weight unit_root(std::size_t rank, int i) {
  Weight w = Weight::zero(rank);
  w.add_root(i, Rational(1));
  return w;
}

Json path_detail(const CartanDatum& datum, const Weight& lambda, const RationalPath& path, int i) {
  return Json{{"shape", weight_to_json(lambda)}, {"index", datum.label(i)}, {"path", path_to_json(path)}};
}

// Smallest q with a_q >= t, over breaks a_1..a_k (1-based result).
std::size_t slot_of(const std::vector<Rational>& breaks, const Rational& t) {
  for (std::size_t q = 0; q < breaks.size(); ++q) {
    if (breaks[q] >= t) return q + 1;
  }
  return breaks.size();
}

// Index p with a_p = t (a_0 = 0), or nullopt.
std::optional<std::size_t> break_index(const std::vector<Rational>& breaks, const Rational& t) {
  if (t == 0) return 0;
  for (std::size_t p = 0; p < breaks.size(); ++p) {
    if (breaks[p] == t) return p + 1;
  }
  return std::nullopt;
}

GLSPath with_breaks(const Weight& shape, std::vector<Weight> weights, std::vector<Rational> breaks) {
  GLSPath out;
  out.shape = shape;
  out.weights = std::move(weights);
  out.breaks = std::move(breaks);
  return out.canonical();
}

// The predicted result of f_i for pi = (l_1..l_k; a), cut at f_-, with the
// first `from` weights kept and weights from+1..q reflected.
GLSPath predicted(const GLSPath& pi, std::size_t from, std::size_t q, const Rational& cut,
                  const std::function<Weight(const Weight&)>& reflect, bool reflected_last) {
  std::vector<Weight> weights;
  std::vector<Rational> breaks;
  const std::size_t k = pi.weights.size();
  for (std::size_t s = 1; s <= k; ++s) {
    const Weight& l = pi.weights[s - 1];
    const Rational& a = pi.breaks[s - 1];
    if (s <= from || s > q) {
      weights.push_back(l);
      breaks.push_back(a);
    } else if (s < q) {
      weights.push_back(reflect(l));
      breaks.push_back(a);
    } else if (reflected_last) {
      // [a_{q-1}, cut] reflected, [cut, a_q] original.
      weights.push_back(reflect(l));
      breaks.push_back(cut);
      weights.push_back(l);
      breaks.push_back(a);
    } else {
      // [a_{q-1}, cut] original, [cut, a_q] reflected.
      weights.push_back(l);
      breaks.push_back(cut);
      weights.push_back(reflect(l));
      breaks.push_back(a);
    }
  }
  return with_breaks(pi.shape, std::move(weights), std::move(breaks));
}

}  // namespace

Weight random_dominant(const CartanDatum& datum, long max_eval, SuiteRng& rng) {
  for (;;) {
    std::vector<long> evals;
    for (std::size_t i = 0; i < datum.rank(); ++i) evals.push_back(static_cast<long>(rng.below(max_eval + 1)));
    if (std::any_of(evals.begin(), evals.end(), [](long v) { return v != 0; })) return Weight::from_evals(evals);
  }
}

RationalPath random_crystal_path(const CrystalEngine& engine, const Weight& lambda, std::size_t max_steps,
                                 SuiteRng& rng, OperatorWord* fword) {
  RationalPath pi = RationalPath::straight(lambda);
  const std::size_t steps = rng.below(max_steps + 1);
  const std::size_t rank = engine.datum().rank();
  for (std::size_t s = 0; s < steps; ++s) {
    // Try a random index first, then the rest in order.
    const std::size_t start = rng.below(rank);
    bool moved = false;
    for (std::size_t t = 0; t < rank && !moved; ++t) {
      const int i = static_cast<int>((start + t) % rank);
      if (auto next = engine.f(pi, i)) {
        pi = std::move(*next);
        if (fword) fword->letters.insert(fword->letters.begin(), i);
        moved = true;
      }
    }
    if (!moved) break;
  }
  return pi;
}

SuiteReport run_operators_suite(const CartanDatum& datum, const SuiteOptions& options) {
  SuiteReport report;
  report.name = "operators";
  report.seed = options.seed;
  Recorder rec(report, options.max_failures);
  SuiteRng rng(options.seed);
  const CrystalEngine engine(datum, options.crystal);
  const GlsContext& gls = engine.gls();
  const std::size_t rank = datum.rank();

  for (std::size_t sample = 0; sample < options.samples; ++sample) {
    const Weight lambda = random_dominant(datum, 2, rng);
    const std::vector<Weight> shapes{lambda};
    const RationalPath pi = random_crystal_path(engine, lambda, static_cast<std::size_t>(options.depth), rng);
    const GLSPath g = GLSPath::from_path(pi, lambda).canonical();
    rec.check("generated path is GLS", gls.is_gls(g), [&] { return path_detail(datum, lambda, pi, 0); });

    const int i = static_cast<int>(rng.below(rank));
    const Weight alpha = unit_root(rank, i);
    const auto detail = [&] { return path_detail(datum, lambda, pi, i); };
    const WeylMonoid& monoid = gls.monoid();
    const Rational aii(datum.entry(i, i));

    if (auto fp = engine.f(pi, i)) {
      rec.check("f shifts weight by -alpha", wt(*fp) == wt(pi) - alpha, detail);
      rec.check("f result is GLS", gls.is_gls(GLSPath::from_path(*fp, lambda)), detail);
      auto back = engine.e(shapes, *fp, i);
      rec.check("e f = id", back && *back == pi, detail);
      const auto window = *f_window(GkmModel{&datum}, pi, i);
      const GLSPath got = GLSPath::from_path(*fp, lambda).canonical();
      if (datum.is_real(i)) {
        const auto p = break_index(g.breaks, window.lower);
        rec.check("f_+ is a breakpoint", p.has_value(), detail);
        if (p) {
          const std::size_t q = slot_of(g.breaks, window.upper);
          const GLSPath want = predicted(g, *p, q, window.upper,
                                         [&](const Weight& w) { return monoid.reflect(i, w); }, true);
          rec.check("real f shape", got == want, detail);
        }
      } else {
        rec.check("imaginary f_+ = 0", window.lower == 0, detail);
        const std::size_t q = slot_of(g.breaks, window.upper);
        const GLSPath want = predicted(g, 0, q, window.upper,
                                       [&](const Weight& w) { return monoid.reflect(i, w); }, true);
        bool evals_ok = true;
        for (std::size_t s = 0; s < q; ++s) evals_ok = evals_ok && g.weights[s].eval(datum, i) * window.upper == 1;
        rec.check("imaginary f shape", got == want && evals_ok, detail);
      }
    }

    if (auto ep = engine.e(shapes, pi, i)) {
      rec.check("e shifts weight by +alpha", wt(*ep) == wt(pi) + alpha, detail);
      rec.check("e result is GLS", gls.is_gls(GLSPath::from_path(*ep, lambda)), detail);
      auto forward = engine.f(*ep, i);
      rec.check("f e = id", forward && *forward == pi, detail);
      const GLSPath got = GLSPath::from_path(*ep, lambda).canonical();
      if (datum.is_real(i)) {
        const auto window = *e_window_real(GkmModel{&datum}, pi, i);
        const auto q = break_index(g.breaks, window.upper);
        rec.check("e_+ is a breakpoint", q.has_value(), detail);
        if (q) {
          const std::size_t p = slot_of(g.breaks, window.lower);
          // Weights p..q reflected, the p-th only on [e_-, a_p].
          std::vector<Weight> weights;
          std::vector<Rational> breaks;
          for (std::size_t s = 1; s <= g.weights.size(); ++s) {
            const Weight& l = g.weights[s - 1];
            if (s == p) {
              weights.push_back(l);
              breaks.push_back(window.lower);
              weights.push_back(monoid.reflect(i, l));
            } else {
              weights.push_back(s > p && s <= *q ? monoid.reflect(i, l) : l);
            }
            breaks.push_back(g.breaks[s - 1]);
          }
          rec.check("real e shape", got == with_breaks(lambda, weights, breaks), detail);
        }
      } else {
        const auto a = analyze_e_imag(GkmModel{&datum}, pi, i);
        const auto q = break_index(g.breaks, a.upper);
        bool ok = a.lower == 0 && q.has_value();
        if (ok) {
          std::vector<Weight> weights = g.weights;
          for (std::size_t s = 0; s < *q; ++s) weights[s] = monoid.act_inverse_imag(i, weights[s]);
          ok = got == with_breaks(lambda, weights, g.breaks);
          ok = ok && a.upper * g.weights[*q - 1].eval(datum, i) == 1 - aii;
          for (std::size_t s = 0; s < *q; ++s) ok = ok && g.weights[s].eval(datum, i) == (1 - aii) / a.upper;
        }
        rec.check("imaginary e shape", ok, detail);
      }
    }

    if (datum.is_real(i)) {
      long eps = 0;
      long ph = 0;
      for (auto x = engine.e(shapes, pi, i); x; x = engine.e(shapes, *x, i)) ++eps;
      for (auto x = engine.f(pi, i); x; x = engine.f(*x, i)) ++ph;
      rec.check("phi - epsilon = alpha^vee(wt)", Rational(ph - eps) == wt(pi).eval(datum, i), detail);
      rec.check("string lengths match epsilon/phi", eps == epsilon(datum, pi, i) && ph == phi(datum, pi, i),
                detail);
    } else {
      rec.check("phi - epsilon = alpha^vee(wt)",
                Rational(phi(datum, pi, i) - epsilon(datum, pi, i)) == wt(pi).eval(datum, i), detail);
    }
  }
  return report;
}

std::vector<MonoidWord> all_words(const CartanDatum& datum, std::size_t max_length) {
  std::vector<MonoidWord> out{MonoidWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t i = 0; i < datum.rank(); ++i) {
        MonoidWord w = out[k];
        w.letters.push_back(static_cast<int>(i));
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

namespace {

// Length of the shadow element of a lifted word, computed from its action on
// a regular weight: apply the word, then count descent steps back to the
// dominant chamber of the parabolic subgroup on the word's support.
std::size_t shadow_length(const CartanDatum& datum, const OrderedIndexWord& word) {
  const LiftedModel model{&datum};
  LiftedWeight x(std::vector<Rational>(datum.rank(), Rational(1)));
  for (std::size_t k = word.size(); k-- > 0;) x = reflect(model, x, word[k]);
  const std::set<LiftedIndex> support(word.begin(), word.end());
  std::size_t steps = 0;
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& p : support) {
      if (x.eval(datum, p) < 0) {
        x = reflect(model, x, p);
        ++steps;
        moved = true;
        break;
      }
    }
  }
  return steps;
}

std::vector<Weight> probe_weights(const CartanDatum& datum) {
  std::vector<Weight> out;
  std::vector<long> all(datum.rank(), 1);
  out.push_back(Weight::from_evals(all));
  for (std::size_t j = 0; j < datum.rank(); ++j) {
    std::vector<long> e(datum.rank(), 0);
    e[j] = 1;
    out.push_back(Weight::from_evals(e));
  }
  return out;
}

}  // namespace

SuiteReport run_monoid_suite(const CartanDatum& datum, const SuiteOptions& options) {
  SuiteReport report;
  report.name = "monoid";
  report.seed = options.seed;
  Recorder rec(report, options.max_failures);
  SuiteRng rng(options.seed);
  const WeylMonoid monoid(datum, options.monoid);
  const RootTable table = RootTable::build(datum, options.crystal.gls.height_bound);
  const auto probes = probe_weights(datum);
  const auto word_detail = [&](const MonoidWord& w) { return Json{{"word", format_word(datum, w)}}; };

  const auto words = all_words(datum, options.word_length);
  for (const auto& w : words) {
    const auto lifted = monoid.to_ordered_index(w);
    rec.check("ordered index round trip", monoid.pull_back(lifted) == w, [&] { return word_detail(w); });
    const MonoidWord nf = monoid.normal_form(w);
    rec.check("length agrees with the shadow group", nf.size() == shadow_length(datum, lifted),
              [&] { return word_detail(w); });
    bool same_action = true;
    for (const auto& mu : probes) same_action = same_action && monoid.act(w, mu) == monoid.act(nf, mu);
    rec.check("normal form acts like the word", same_action, [&] {
      Json j = word_detail(w);
      j["normal_form"] = format_word(datum, nf);
      return j;
    });
  }

  // Strong exchange for real roots on reduced words of length <= 4.
  const std::size_t small = std::min<std::size_t>(options.word_length, 4);
  std::set<MonoidWord> reduced;
  for (const auto& w : all_words(datum, small)) {
    if (monoid.is_reduced(w)) reduced.insert(w);
  }
  const auto roots = roots_by_witness_length(datum, small);
  for (const auto& w : reduced) {
    for (const auto& beta : roots) {
      if (beta.imaginary) continue;
      const MonoidWord rw = monoid.normal_form(monoid.left_multiply(beta, w));
      if (rw.size() >= w.size()) continue;
      const auto positions = monoid.exchange_positions_real(w, beta);
      const bool real_positions = std::all_of(positions.begin(), positions.end(), [&](std::size_t s) {
        return datum.is_real(w.letters[w.size() - s]);
      });
      rec.check("real strong exchange is unique", positions.size() == 1 && real_positions, [&] {
        Json j = word_detail(w);
        j["root"] = beta.root;
        j["positions"] = positions;
        return j;
      });
    }
  }

  // Imaginary exchange: v' -beta-> v, delete the leftmost occurrence.
  for (const auto& vp : reduced) {
    if (vp.size() + 1 > small) continue;
    for (const auto& beta : roots) {
      if (!beta.imaginary) continue;
      const MonoidWord v = monoid.normal_form(monoid.left_multiply(beta, vp));
      if (v.size() != vp.size() + 1) continue;
      for (const auto& expr : monoid.reduced_words(v)) {
        bool ok = false;
        try {
          ok = monoid.equal(monoid.exchange_check_imag(expr, beta), vp);
        } catch (const Error&) {
          ok = false;
        }
        rec.check("imaginary exchange deletes the leftmost occurrence", ok, [&] {
          Json j{{"v", format_word(datum, expr)}, {"v_prime", format_word(datum, vp)}, {"root", beta.root}};
          return j;
        });
      }
    }
  }

  // Stabilizers of the fundamental weights.
  for (std::size_t j = 0; j < datum.rank(); ++j) {
    std::vector<long> e(datum.rank(), 0);
    e[j] = 1;
    const Weight lambda = Weight::from_evals(e);
    for (const auto& w : reduced) {
      const auto result = monoid.stabilizer_membership(w, lambda);
      bool ok = result.member == (monoid.act(w, lambda) == lambda);
      if (result.member) {
        ok = ok && result.witness && monoid.equal(*result.witness, w);
        for (int letter : result.witness->letters) ok = ok && lambda.eval(datum, letter) == 0;
      }
      rec.check("stabilizer is generated by simple stabilizers", ok, [&] { return word_detail(w); });
    }
  }

  // Lifting property on random comparable pairs.
  const std::vector<MonoidWord> pool(reduced.begin(), reduced.end());
  if (!datum.real_indices().empty() && !pool.empty()) {
    const std::size_t pairs = std::min<std::size_t>(options.samples, 400);
    for (std::size_t n = 0; n < pairs; ++n) {
      const MonoidWord& w = pool[rng.below(pool.size())];
      const MonoidWord& u = pool[rng.below(pool.size())];
      const int i = datum.real_indices()[rng.below(datum.real_indices().size())];
      if (!monoid.bruhat_leq(u, w, table)) continue;
      MonoidWord iu = u;
      iu.letters.insert(iu.letters.begin(), i);
      MonoidWord iw = w;
      iw.letters.insert(iw.letters.begin(), i);
      const bool ok = monoid.bruhat_leq(iu, w, table) || monoid.bruhat_leq(iu, iw, table);
      rec.check("lifting property", ok, [&] {
        return Json{{"u", format_word(datum, u)}, {"w", format_word(datum, w)}, {"index", datum.label(i)}};
      });
    }
  }
  return report;
}

SuiteReport run_embedding_suite(const CartanDatum& datum, const SuiteOptions& options) {
  SuiteReport report;
  report.name = "embedding";
  report.seed = options.seed;
  Recorder rec(report, options.max_failures);
  SuiteRng rng(options.seed);
  const std::size_t max_length = std::max<std::size_t>(options.word_length, 1);

  for (std::size_t sample = 0; sample < options.samples; ++sample) {
    std::vector<Weight> shapes{random_dominant(datum, 2, rng)};
    if (rng.coin()) shapes.push_back(random_dominant(datum, 2, rng));
    OperatorWord fword;
    const std::size_t len = 1 + rng.below(max_length);
    for (std::size_t k = 0; k < len; ++k) fword.letters.push_back(static_cast<int>(rng.below(datum.rank())));
    const auto detail = [&] {
      Json s = Json::array();
      for (const auto& w : shapes) s.push_back(weight_to_json(w));
      return Json{{"shapes", s}, {"fword", format_word(datum, fword)}};
    };
    const HProbeReport probe = h_equality_probe(datum, fword, shapes);
    report.checks["prefix H evaluations"] += probe.prefixes_checked;
    rec.check("prefix H equality", probe.passed(), detail);
    bool together = true;
    try {
      const EmbeddedPair pair = embed_path(datum, fword, shapes);
      together = pair.gkm.has_value() == pair.lifted.has_value();
    } catch (const std::logic_error&) {
      together = false;
    }
    rec.check("Null together", together, detail);
  }

  // Injectivity on a truncated crystal.
  const CrystalEngine engine(datum, options.crystal);
  std::vector<long> ones(datum.rank(), 1);
  for (const Weight& lambda : {Weight::from_evals(ones), random_dominant(datum, 2, rng)}) {
    const CrystalGraph g = engine.generate(lambda, options.depth);
    std::set<std::string> images;
    bool defined = true;
    for (const auto& node : g.nodes) {
      const auto pair = embed_path(datum, node.fword, {lambda});
      if (!pair.lifted || !pair.gkm || !(*pair.gkm == node.path)) {
        defined = false;
        continue;
      }
      images.insert(pair.lifted->key());
    }
    rec.check("embedding defined on every node", defined, [&] { return Json{{"shape", weight_to_json(lambda)}}; });
    rec.check("embedding is injective", images.size() == g.size(),
              [&] { return Json{{"shape", weight_to_json(lambda)}, {"nodes", g.size()}, {"images", images.size()}}; });
  }
  return report;
}

bool is_dominant_shifted(const CartanDatum& datum, const RationalPath& path, const Weight& lambda) {
  for (std::size_t i = 0; i < datum.rank(); ++i) {
    const int index = static_cast<int>(i);
    const HFunction h = h_function(datum, path, index);
    const Rational shift = lambda.eval(datum, index);
    for (const auto& v : h.values) {
      if (v + shift < 0) return false;
    }
  }
  return true;
}

SuiteReport run_decomposition_suite(const CartanDatum& datum, const SuiteOptions& options) {
  SuiteReport report;
  report.name = "decomposition";
  report.seed = options.seed;
  Recorder rec(report, options.max_failures);
  SuiteRng rng(options.seed);
  const CrystalEngine engine(datum, options.crystal);
  const long depth = options.depth;
  const std::size_t pairs = std::max<std::size_t>(1, std::min<std::size_t>(options.samples, 3));

  for (std::size_t n = 0; n < pairs; ++n) {
    const Weight lambda = random_dominant(datum, 2, rng);
    const Weight mu = random_dominant(datum, 2, rng);
    const auto detail = [&] { return Json{{"lambda", weight_to_json(lambda)}, {"mu", weight_to_json(mu)}}; };
    const auto summands = engine.tensor_decompose(lambda, mu, depth);
    const auto check = engine.verify_tensor_decomposition(lambda, mu, depth, summands);
    rec.check("tensor: highest elements match", check.highest_match, detail);
    rec.check("tensor: components partition", check.partition, detail);
    rec.check("tensor: components are isomorphic", check.isomorphic, detail);
    rec.check("tensor: character additivity", check.character, detail);

    // Highest elements of the tensor product, two ways.
    const std::vector<Weight> shapes{lambda, mu};
    const RationalPath top = RationalPath::straight(lambda);
    const LiftedWeight shift = lift_weight(datum, lambda);
    const CrystalGraph bmu = engine.generate(mu, depth);
    for (const auto& node : bmu.nodes) {
      const bool killed = engine.is_highest(shapes, concatenate(std::vector<RationalPath>{top, node.path}));
      const auto lifted = embed_path(datum, node.fword, {mu}).lifted;
      rec.check("highest iff lifted dominant", killed == is_lifted_dominant(datum, *lifted, shift), [&] {
        Json j = detail();
        j["fword"] = format_word(datum, node.fword);
        return j;
      });
    }
    const CrystalGraph t = engine.tensor_graph(lambda, mu, depth);
    for (const auto& node : t.nodes) {
      if (!engine.is_highest(shapes, node.path)) continue;
      const auto parts = split(node.path, 2);
      rec.check("highest tensor elements start with pi_lambda",
                parts[0] == top && is_dominant_shifted(datum, parts[1], lambda), detail);
    }
  }

  // Branching to every proper nonempty subset.
  const Weight lambda = random_dominant(datum, 2, rng);
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << datum.rank()); ++mask) {
    std::vector<int> subset;
    for (std::size_t i = 0; i < datum.rank(); ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(static_cast<int>(i));
    }
    const auto summands = engine.branch(lambda, subset, depth);
    const auto check = engine.verify_branch(lambda, subset, depth, summands);
    rec.check("branch decomposition", check.ok(), [&] {
      Json j{{"lambda", weight_to_json(lambda)}, {"subset", subset}};
      j["problems"] = check.problems;
      return j;
    });
  }
  return report;
}

SuiteReport run_suite(const std::string& name, const CartanDatum& datum, const SuiteOptions& options) {
  if (name == "operators") return run_operators_suite(datum, options);
  if (name == "monoid") return run_monoid_suite(datum, options);
  if (name == "embedding") return run_embedding_suite(datum, options);
  if (name == "decomposition") return run_decomposition_suite(datum, options);
  throw Error(ErrorCode::Usage, "unknown suite '" + name + "'");
}

}  // namespace jlpath
