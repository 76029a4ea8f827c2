#include "jlpath/gls.hpp"

#include "jlpath/error.hpp"

#include <algorithm>

namespace jlpath {

GLSPath GLSPath::canonical() const {
  GLSPath out;
  out.shape = shape;
  Rational previous = 0;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    if (breaks[s] == previous) continue;
    if (!out.weights.empty() && out.weights.back() == weights[s]) {
      out.breaks.back() = breaks[s];
    } else {
      out.weights.push_back(weights[s]);
      out.breaks.push_back(breaks[s]);
    }
    previous = breaks[s];
  }
  return out;
}

RationalPath GLSPath::to_path() const {
  std::vector<Segment<Weight>> segments;
  Rational previous = 0;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    segments.push_back(Segment<Weight>{weights[s], breaks[s] - previous});
    previous = breaks[s];
  }
  return RationalPath(std::move(segments));
}

GLSPath GLSPath::from_path(const RationalPath& path, const Weight& shape) {
  GLSPath out;
  out.shape = shape;
  Rational t = 0;
  for (const auto& s : path.segments()) {
    t += s.duration;
    out.weights.push_back(s.slope);
    out.breaks.push_back(t);
  }
  return out;
}

GlsContext::GlsContext(const CartanDatum& datum, GlsOptions options)
    : datum_(&datum),
      options_(options),
      table_(RootTable::build(datum, options.height_bound)),
      monoid_(datum) {}

bool GlsContext::in_box(const Weight& x, const Weight& ceiling) const {
  if (x.base_evals() != ceiling.base_evals()) return false;
  for (std::size_t j = 0; j < x.rank(); ++j) {
    if (x.offset()[j] > ceiling.offset()[j]) return false;
  }
  return true;
}

void GlsContext::require_table(const Weight& mu, const Weight& nu, const char* context) const {
  table_.require_height(ceil_long((mu - nu).height()), context);
}

std::vector<std::pair<RootEntry, Weight>> GlsContext::steps_below(const Weight& x, const Weight& ceiling) const {
  std::vector<std::pair<RootEntry, Weight>> out;
  for (const auto& beta : table_.entries()) {
    const Rational c = beta.coroot_eval(*datum_, x);
    if (c <= 0) continue;
    Weight y = x;
    for (std::size_t j = 0; j < beta.root.size(); ++j) {
      if (beta.root[j] != 0) y.add_root(static_cast<int>(j), -c * beta.root[j]);
    }
    if (in_box(y, ceiling)) out.emplace_back(beta, std::move(y));
  }
  return out;
}

bool GlsContext::geq(const Weight& mu, const Weight& nu) const {
  if (mu == nu) return true;
  if (!in_box(nu, mu)) return false;
  const auto key = std::make_pair(mu.key(), nu.key());
  {
    std::lock_guard lock(mutex_);
    auto it = geq_cache_.find(key);
    if (it != geq_cache_.end()) return it->second;
  }
  require_table(mu, nu, "orbit order");
  bool found = false;
  std::set<std::string> seen{nu.key()};
  std::vector<Weight> stack{nu};
  while (!stack.empty() && !found) {
    const Weight x = std::move(stack.back());
    stack.pop_back();
    for (auto& [beta, y] : steps_below(x, mu)) {
      if (y == mu) {
        found = true;
        break;
      }
      if (seen.insert(y.key()).second) stack.push_back(std::move(y));
    }
  }
  std::lock_guard lock(mutex_);
  geq_cache_[key] = found;
  return found;
}

std::optional<RootEntry> GlsContext::cover_root(const Weight& mu, const Weight& nu) const {
  if (mu == nu || !in_box(nu, mu)) return std::nullopt;
  const auto key = std::make_pair(mu.key(), nu.key());
  {
    std::lock_guard lock(mutex_);
    auto it = cover_cache_.find(key);
    if (it != cover_cache_.end()) return it->second;
  }
  require_table(mu, nu, "cover test");
  std::optional<RootEntry> direct;
  bool intermediate = false;
  for (auto& [beta, y] : steps_below(nu, mu)) {
    if (y == mu) {
      direct = beta;
    } else if (geq(mu, y)) {
      intermediate = true;
    }
  }
  std::optional<RootEntry> result = intermediate ? std::nullopt : direct;
  std::lock_guard lock(mutex_);
  cover_cache_[key] = result;
  return result;
}

bool GlsContext::search_chain(const Weight& x, const Weight& target, const Rational& a, AChain& out,
                              std::set<std::string>& dead) const {
  if (x == target) return true;
  if (dead.count(x.key())) return false;
  for (auto& [beta, y] : steps_below(x, target)) {
    const Rational c = a * beta.coroot_eval(*datum_, x);
    const bool admissible = beta.imaginary ? c == 1 : is_integer(c) && c > 0;
    if (!admissible || !geq(target, y)) continue;
    const auto cover = cover_root(y, x);
    if (!cover) continue;
    out.nodes.push_back(y);
    out.roots.push_back(beta);
    if (search_chain(y, target, a, out, dead)) return true;
    out.nodes.pop_back();
    out.roots.pop_back();
  }
  dead.insert(x.key());
  return false;
}

std::optional<AChain> GlsContext::find_a_chain(const Weight& mu, const Weight& nu, const Rational& a) const {
  if (a <= 0 || a > 1) throw Error(ErrorCode::OutOfRange, "chain parameter outside (0,1]");
  AChain chain;
  chain.a = a;
  if (mu == nu) {
    chain.nodes.push_back(mu);
    return chain;
  }
  if (!in_box(nu, mu)) return std::nullopt;
  require_table(mu, nu, "a-chain search");
  // Built upward from nu, then reversed so that nodes[0] = mu.
  chain.nodes.push_back(nu);
  std::set<std::string> dead;
  if (!search_chain(nu, mu, a, chain, dead)) return std::nullopt;
  std::reverse(chain.nodes.begin(), chain.nodes.end());
  std::reverse(chain.roots.begin(), chain.roots.end());
  return chain;
}

GlsCertificate GlsContext::certify(const GLSPath& candidate) const {
  GlsCertificate cert;
  const GLSPath path = candidate.canonical();
  const auto fail = [&](std::string reason) {
    cert.valid = false;
    cert.reason = std::move(reason);
    cert.chains.clear();
    cert.orbit_words.clear();
    return cert;
  };
  if (!path.shape.is_dominant(*datum_)) return fail("shape is not dominant");
  if (path.weights.empty() || path.breaks.size() != path.weights.size()) return fail("malformed");
  if (path.breaks.back() != 1) return fail("last break is not 1");
  for (std::size_t s = 0; s < path.breaks.size(); ++s) {
    if (path.breaks[s] <= (s ? path.breaks[s - 1] : Rational(0))) return fail("breaks not increasing");
    if (path.weights[s].base_evals() != path.shape.base_evals()) return fail("weight of another shape");
  }
  const std::size_t k = path.weights.size();
  for (std::size_t s = 0; s + 1 < k; ++s) {
    auto chain = find_a_chain(path.weights[s], path.weights[s + 1], path.breaks[s]);
    if (!chain || path.weights[s] == path.weights[s + 1]) {
      return fail("no " + format_rational(path.breaks[s]) + "-chain at position " + std::to_string(s + 1));
    }
    cert.chains.push_back(std::move(*chain));
  }
  auto last = find_a_chain(path.weights[k - 1], path.shape, Rational(1));
  if (!last) return fail("no 1-chain to the shape");
  cert.chains.push_back(std::move(*last));
  cert.orbit_words.assign(k, MonoidWord{});
  MonoidWord below;
  for (std::size_t s = k; s-- > 0;) {
    MonoidWord word;
    for (const auto& beta : cert.chains[s].roots) {
      const MonoidWord r = monoid_.reflection_word(beta);
      word.letters.insert(word.letters.end(), r.letters.begin(), r.letters.end());
    }
    word.letters.insert(word.letters.end(), below.letters.begin(), below.letters.end());
    below = monoid_.normal_form(word);
    cert.orbit_words[s] = below;
  }
  cert.valid = true;
  return cert;
}

AChain GlsContext::rewrite_chain_imaginary(const AChain& chain, int i) const {
  if (datum_->is_real(i)) throw Error(ErrorCode::RealIndex, "index " + datum_->label(i) + " is real");
  const Weight& mu = chain.top();
  const Weight& nu = chain.bottom();
  if (mu.offset()[i] - nu.offset()[i] <= 0) {
    throw Error(ErrorCode::PreconditionFalsified, "depth_i(mu - nu) = 0");
  }
  const Rational value = chain.a * mu.eval(*datum_, i);
  const Rational bound(1 - datum_->entry(i, i));
  if (value > bound) {
    throw Error(ErrorCode::PreconditionFalsified, "a alpha_i^vee(mu) exceeds 1 - a_ii");
  }
  if (value != bound) {
    throw Error(ErrorCode::PreconditionFalsified,
                "a alpha_i^vee(mu) = " + format_rational(value) + " but 1 - a_ii = " + format_rational(bound));
  }
  auto rewritten = find_a_chain(monoid_.act_inverse_imag(i, mu), nu, chain.a);
  if (!rewritten) throw Error(ErrorCode::PreconditionFalsified, "no chain for (r_i^{-1} mu, nu)");
  return *rewritten;
}

std::optional<GLSPath> GlsContext::cutoff_e_imag(const GLSPath& path, int i) const {
  const RationalPath pi = path.to_path();
  const auto raw = e_op_imag_raw(*datum_, pi, i);
  if (!raw) return std::nullopt;
  const auto analysis = analyze_e_imag(GkmModel{datum_}, pi, i);
  if (analysis.lower != 0) return std::nullopt;
  const auto breaks = pi.breakpoints();
  if (std::find(breaks.begin(), breaks.end(), analysis.upper) == breaks.end()) return std::nullopt;
  GLSPath candidate = GLSPath::from_path(*raw, path.shape);
  if (!is_gls(candidate)) return std::nullopt;
  return candidate;
}

bool chain_condition_holds(const AChain& chain, const CartanDatum& datum) {
  if (chain.nodes.size() != chain.roots.size() + 1) return false;
  for (std::size_t s = 0; s < chain.roots.size(); ++s) {
    const RootEntry& beta = chain.roots[s];
    const Weight& lower = chain.nodes[s + 1];
    const Rational c = beta.coroot_eval(datum, lower);
    if (c <= 0) return false;
    Weight image = lower;
    for (std::size_t j = 0; j < beta.root.size(); ++j) {
      if (beta.root[j] != 0) image.add_root(static_cast<int>(j), -c * beta.root[j]);
    }
    if (!(image == chain.nodes[s])) return false;
    const Rational ac = chain.a * c;
    if (beta.imaginary ? ac != 1 : !(is_integer(ac) && ac > 0)) return false;
  }
  // a (mu - nu) lies in -Q^+.
  const Weight diff = chain.top() - chain.bottom();
  for (const auto& c : diff.offset()) {
    const Rational scaled = chain.a * c;
    if (scaled < 0 || !is_integer(scaled)) return false;
  }
  return true;
}

}  // namespace jlpath
