#include "jlpath/crystal.hpp"

#include "jlpath/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

namespace jlpath {

std::optional<std::size_t> CrystalGraph::find(const RationalPath& path) const {
  auto it = index_.find(path.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CrystalGraph::successor(std::size_t node, int label) const {
  auto it = successor_.find({node, label});
  if (it == successor_.end()) return std::nullopt;
  return it->second;
}

void CrystalGraph::reindex() {
  index_.clear();
  successor_.clear();
  for (std::size_t k = 0; k < nodes.size(); ++k) index_[nodes[k].path.key()] = k;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) successor_[{e.source, e.label}] = e.target;
}

Character character(const CrystalGraph& g) {
  Character out;
  for (const auto& node : g.nodes) ++out[node.weight];
  return out;
}

RationalPath highest_path(const std::vector<Weight>& shapes) {
  std::vector<RationalPath> factors;
  for (const auto& s : shapes) factors.push_back(RationalPath::straight(s));
  return concatenate(factors);
}

long path_height(const std::vector<Weight>& shapes, const RationalPath& path) {
  Rational h = path.endpoint().height();
  for (const auto& s : shapes) h -= s.height();
  return is_integer(h) ? to_long(h) : -1;
}

CrystalEngine::CrystalEngine(const CartanDatum& datum, CrystalOptions options)
    : datum_(&datum), options_(options), gls_(std::make_unique<GlsContext>(datum, options.gls)) {}

std::optional<RationalPath> CrystalEngine::f(const RationalPath& path, int i) const {
  return f_op(*datum_, path, i);
}

std::optional<RationalPath> CrystalEngine::e(const std::vector<Weight>& shapes, const RationalPath& path,
                                             int i) const {
  if (datum_->is_real(i)) return e_op_real(*datum_, path, i);
  auto raw = e_op_imag_raw(*datum_, path, i);
  if (!raw || !in_tensor(shapes, *raw)) return std::nullopt;
  return raw;
}

namespace {

struct Child {
  std::size_t parent;
  int label;
  RationalPath path;
};

}  // namespace

CrystalGraph CrystalEngine::expand(std::vector<Weight> shapes, RationalPath root, std::optional<long> depth) const {
  CrystalGraph g;
  g.datum = datum_;
  g.shapes = std::move(shapes);
  g.depth = depth;
  g.nodes.push_back(CrystalNode{root, root.endpoint(), 0, OperatorWord{}});
  std::vector<std::size_t> frontier{0};
  const int rank = static_cast<int>(datum_->rank());
  for (long level = 0; !frontier.empty() && (!depth || level < *depth); ++level) {
    std::vector<std::vector<Child>> produced(frontier.size());
    const auto work = [&](std::size_t from, std::size_t to) {
      for (std::size_t k = from; k < to; ++k) {
        const std::size_t u = frontier[k];
        for (int i = 0; i < rank; ++i) {
          if (auto next = f(g.nodes[u].path, i)) produced[k].push_back(Child{u, i, std::move(*next)});
        }
      }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options_.threads, frontier.size()));
    if (threads == 1) {
      work(0, frontier.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t from = t * chunk;
        const std::size_t to = std::min(frontier.size(), from + chunk);
        if (from < to) pool.emplace_back(work, from, to);
      }
      for (auto& th : pool) th.join();
    }
    // Deterministic merge: new nodes sorted by encoding, each reached first
    // from the smallest (parent, label).
    std::map<std::string, const Child*> fresh;
    for (const auto& list : produced) {
      for (const auto& c : list) fresh.emplace(c.path.key(), &c);
    }
    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> next_frontier;
    for (const auto& [key, c] : fresh) {
      ids[key] = g.nodes.size();
      next_frontier.push_back(g.nodes.size());
      OperatorWord word;
      word.letters.push_back(c->label);
      const auto& parent = g.nodes[c->parent].fword.letters;
      word.letters.insert(word.letters.end(), parent.begin(), parent.end());
      g.nodes.push_back(CrystalNode{c->path, c->path.endpoint(), level + 1, std::move(word)});
      if (g.nodes.size() > options_.node_cap) {
        throw Error(ErrorCode::EnumerationBound,
                    "crystal exceeds node cap " + std::to_string(options_.node_cap));
      }
    }
    for (const auto& list : produced) {
      for (const auto& c : list) g.edges.push_back(CrystalEdge{c.parent, c.label, ids.at(c.path.key())});
    }
    frontier = std::move(next_frontier);
  }
  g.reindex();
  return g;
}

CrystalGraph CrystalEngine::generate(const Weight& shape, std::optional<long> depth) const {
  if (!shape.is_dominant(*datum_)) throw Error(ErrorCode::PreconditionFalsified, "shape is not dominant");
  return expand({shape}, RationalPath::straight(shape), depth);
}

CrystalGraph CrystalEngine::generate_concat(const std::vector<Weight>& shapes, std::optional<long> depth) const {
  if (shapes.empty()) throw Error(ErrorCode::Usage, "empty shape list");
  for (const auto& s : shapes) {
    if (!s.is_dominant(*datum_)) throw Error(ErrorCode::PreconditionFalsified, "shape is not dominant");
  }
  return expand(shapes, highest_path(shapes), depth);
}

void CrystalEngine::close_strings(CrystalGraph& g, const std::vector<int>& indices) const {
  for (int i : indices) {
    if (datum_->is_imaginary(i)) throw Error(ErrorCode::ImaginaryIndex, "imaginary strings do not close");
  }
  const std::size_t original = g.nodes.size();
  for (std::size_t u = 0; u < original; ++u) {
    for (int i : indices) {
      std::size_t at = u;
      while (!g.successor(at, i)) {
        auto next = f(g.nodes[at].path, i);
        if (!next) break;
        std::size_t target;
        if (auto found = g.find(*next)) {
          target = *found;
        } else {
          target = g.nodes.size();
          OperatorWord word;
          word.letters.push_back(i);
          const auto& parent = g.nodes[at].fword.letters;
          word.letters.insert(word.letters.end(), parent.begin(), parent.end());
          g.nodes.push_back(CrystalNode{*next, next->endpoint(), g.nodes[at].depth + 1, std::move(word)});
        }
        g.edges.push_back(CrystalEdge{at, i, target});
        g.reindex();
        at = target;
      }
      while (auto next = g.successor(at, i)) at = *next;
    }
  }
  g.string_closed = true;
  g.reindex();
}

std::shared_ptr<const CrystalGraph> CrystalEngine::catalog(const Weight& shape, long depth) const {
  const std::string key = shape.key();
  {
    std::lock_guard lock(mutex_);
    auto it = catalog_.find(key);
    if (it != catalog_.end() && (!it->second->depth || *it->second->depth >= depth)) return it->second;
  }
  long target = depth;
  {
    std::lock_guard lock(mutex_);
    auto it = catalog_.find(key);
    if (it != catalog_.end() && it->second->depth) target = std::max(depth, 2 * *it->second->depth);
  }
  auto g = std::make_shared<const CrystalGraph>(generate(shape, target));
  std::lock_guard lock(mutex_);
  auto& slot = catalog_[key];
  if (!slot || (slot->depth && *slot->depth < target)) slot = g;
  return slot;
}

bool CrystalEngine::in_crystal(const Weight& shape, const RationalPath& path) const {
  if (path.endpoint().base_evals() != shape.base_evals()) return false;
  const long h = path_height({shape}, path);
  if (h < 0) return false;
  return catalog(shape, h)->find(path).has_value();
}

bool CrystalEngine::in_tensor(const std::vector<Weight>& shapes, const RationalPath& path) const {
  const auto parts = split(path, shapes.size());
  for (std::size_t m = 0; m < shapes.size(); ++m) {
    if (!in_crystal(shapes[m], parts[m])) return false;
  }
  return true;
}

std::vector<GLSPath> CrystalEngine::factors(const std::vector<Weight>& shapes, const RationalPath& path) const {
  std::vector<GLSPath> out;
  const auto parts = split(path, shapes.size());
  for (std::size_t m = 0; m < shapes.size(); ++m) out.push_back(GLSPath::from_path(parts[m], shapes[m]));
  return out;
}

bool CrystalEngine::is_highest(const std::vector<Weight>& shapes, const RationalPath& path) const {
  for (std::size_t i = 0; i < datum_->rank(); ++i) {
    if (e(shapes, path, static_cast<int>(i))) return false;
  }
  return true;
}

RaiseResult CrystalEngine::raise_to_highest(const std::vector<Weight>& shapes, const RationalPath& path) const {
  std::vector<int> order = datum_->real_indices();
  order.insert(order.end(), datum_->imaginary_indices().begin(), datum_->imaginary_indices().end());
  RaiseResult result{OperatorWord{}, path};
  long height = path_height(shapes, path);
  for (;;) {
    bool raised = false;
    for (int i : order) {
      if (auto next = e(shapes, result.terminal, i)) {
        const long h = path_height(shapes, *next);
        if (h >= height) throw std::logic_error("raising operator did not lower the height");
        height = h;
        result.terminal = std::move(*next);
        result.eword.letters.insert(result.eword.letters.begin(), i);
        raised = true;
        break;
      }
    }
    if (!raised) return result;
  }
}

bool CrystalEngine::is_standard(const std::vector<Weight>& shapes, const RationalPath& path) const {
  return raise_to_highest(shapes, path).terminal == highest_path(shapes);
}

namespace {

// [x] for x in W_re P^+, or nullopt.
std::optional<Weight> real_dominant(const CartanDatum& datum, const WeylMonoid& monoid, const Weight& x) {
  auto word = real_orbit_witness(datum, x);
  if (!word) return std::nullopt;
  MonoidWord inverse;
  inverse.letters.assign(word->letters.rbegin(), word->letters.rend());
  return monoid.act(inverse, x);
}

struct ChainLayout {
  std::vector<std::vector<Weight>> weights;  // lambda_(m,l)
  std::size_t total = 0;
};

ChainLayout layout(const std::vector<GLSPath>& factors) {
  ChainLayout out;
  for (const auto& f : factors) {
    out.weights.push_back(f.canonical().weights);
    out.total += out.weights.back().size();
  }
  return out;
}

}  // namespace

ChainReport CrystalEngine::verify_defining_chain(const std::vector<Weight>& shapes, const RationalPath& path,
                                                 const std::vector<MonoidWord>& chain) const {
  ChainReport report;
  const ChainLayout lay = layout(factors(shapes, path));
  if (chain.size() != lay.total) {
    report.notes.push_back("chain has " + std::to_string(chain.size()) + " entries, expected " +
                           std::to_string(lay.total));
    return report;
  }
  const WeylMonoid& monoid = gls_->monoid();
  const std::size_t n = shapes.size();
  std::vector<std::size_t> first(n);
  bool c1 = true;
  std::size_t at = 0;
  for (std::size_t m = 0; m < n; ++m) {
    first[m] = at;
    for (const auto& target : lay.weights[m]) {
      if (!(monoid.act(chain[at], shapes[m]) == target)) {
        c1 = false;
        report.notes.push_back("condition 1 fails at entry " + std::to_string(at));
      }
      ++at;
    }
  }
  report.condition[0] = c1;
  bool c2 = true;
  try {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (!monoid.bruhat_leq(chain[k + 1], chain[k], gls_->table())) {
        c2 = false;
        report.notes.push_back("condition 2 fails between entries " + std::to_string(k) + " and " +
                               std::to_string(k + 1));
      }
    }
  } catch (const Error& err) {
    if (!is_bound_error(err.code())) throw;
    c2 = false;
    report.notes.push_back(std::string("condition 2 undecided: ") + err.what());
  }
  report.condition[1] = c2;
  bool c3 = true;
  bool c4 = true;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const Weight x = monoid.act(chain[first[m + 1]], shapes[m]);
    const auto rep = real_dominant(*datum_, monoid, x);
    if (!rep || !(*rep == shapes[m])) {
      c3 = false;
      report.notes.push_back("condition 3 fails for factor " + std::to_string(m + 1));
    }
    try {
      if (!gls_->find_a_chain(lay.weights[m].back(), x, Rational(1))) {
        c4 = false;
        report.notes.push_back("condition 4 fails for factor " + std::to_string(m + 1));
      }
    } catch (const Error& err) {
      if (!is_bound_error(err.code())) throw;
      c4 = false;
      report.notes.push_back(std::string("condition 4 undecided: ") + err.what());
    }
  }
  report.condition[2] = c3;
  report.condition[3] = c4;
  return report;
}

ChainReport CrystalEngine::verify_connecting_condition(const std::vector<Weight>& shapes,
                                                       const RationalPath& path,
                                                       const std::vector<MonoidWord>& chain) const {
  ChainReport report;
  const ChainLayout lay = layout(factors(shapes, path));
  if (chain.size() != lay.total) {
    report.notes.push_back("chain has the wrong number of entries");
    return report;
  }
  const WeylMonoid& monoid = gls_->monoid();
  const std::size_t n = shapes.size();
  // Flattened positions of the entries the condition uses: (m,l) for
  // 2 <= m <= n-1 and (n,1).
  std::vector<std::pair<std::size_t, std::size_t>> used;  // (m, flat index)
  std::size_t at = 0;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t l = 0; l < lay.weights[m].size(); ++l, ++at) {
      if ((m > 0 && m + 1 < n) || (m + 1 == n && l == 0)) used.emplace_back(m, at);
    }
  }
  bool c1 = true;
  at = 0;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t l = 0; l < lay.weights[m].size(); ++l, ++at) {
      const bool needed = (m > 0 && m + 1 < n) || (m + 1 == n && l == 0);
      if (needed && !(monoid.act(chain[at], shapes[m]) == lay.weights[m][l])) c1 = false;
    }
  }
  report.condition[0] = c1;
  bool c2 = true;
  bool c3 = true;
  bool c4 = true;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    std::vector<Weight> sequence{lay.weights[m].back()};
    for (const auto& [owner, flat] : used) {
      if (owner > m) sequence.push_back(monoid.act(chain[flat], shapes[m]));
    }
    try {
      for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
        if (!gls_->geq(sequence[k], sequence[k + 1])) c2 = false;
      }
      if (sequence.size() > 1 && !gls_->find_a_chain(sequence[0], sequence[1], Rational(1))) c4 = false;
    } catch (const Error& err) {
      if (!is_bound_error(err.code())) throw;
      c2 = false;
      report.notes.push_back(std::string("undecided: ") + err.what());
    }
    if (sequence.size() > 1) {
      const auto rep = real_dominant(*datum_, monoid, sequence[1]);
      if (!rep || !(*rep == shapes[m])) c3 = false;
    }
  }
  report.condition[1] = c2;
  report.condition[2] = c3;
  report.condition[3] = c4;
  return report;
}

std::optional<std::vector<MonoidWord>> CrystalEngine::search_defining_chain(const std::vector<Weight>& shapes,
                                                                           const RationalPath& path,
                                                                           std::size_t max_length) const {
  const ChainLayout lay = layout(factors(shapes, path));
  const WeylMonoid& monoid = gls_->monoid();
  // All elements of length <= max_length, by normal form.
  std::set<MonoidWord> elements{MonoidWord{}};
  std::vector<MonoidWord> layer{MonoidWord{}};
  for (std::size_t len = 0; len < max_length; ++len) {
    std::vector<MonoidWord> next;
    for (const auto& w : layer) {
      for (std::size_t i = 0; i < datum_->rank(); ++i) {
        MonoidWord longer = w;
        longer.letters.insert(longer.letters.begin(), static_cast<int>(i));
        MonoidWord nf = monoid.normal_form(longer);
        if (nf.size() == len + 1 && elements.insert(nf).second) next.push_back(std::move(nf));
      }
    }
    layer = std::move(next);
  }
  std::vector<std::vector<MonoidWord>> candidates;
  std::vector<std::size_t> owner;
  for (std::size_t m = 0; m < shapes.size(); ++m) {
    for (const auto& target : lay.weights[m]) {
      std::vector<MonoidWord> list;
      for (const auto& w : elements) {
        if (monoid.act(w, shapes[m]) == target) list.push_back(w);
      }
      candidates.push_back(std::move(list));
      owner.push_back(m);
    }
  }
  std::vector<MonoidWord> chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
    if (k == candidates.size()) return verify_defining_chain(shapes, path, chosen).ok();
    for (const auto& w : candidates[k]) {
      if (k > 0 && !monoid.bruhat_leq(w, chosen.back(), gls_->table())) continue;
      chosen.push_back(w);
      if (dfs(k + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs(0)) return chosen;
  return std::nullopt;
}

std::vector<Summand> CrystalEngine::tensor_decompose(const Weight& lambda, const Weight& mu, long depth) const {
  const auto g = catalog(mu, depth);
  const LiftedWeight shift = lift_weight(*datum_, lambda);
  std::vector<Summand> out;
  for (const auto& node : g->nodes) {
    if (node.depth > depth) continue;
    const auto lifted = embed_path(*datum_, node.fword, {mu}).lifted;
    if (is_lifted_dominant(*datum_, *lifted, shift)) {
      out.push_back(Summand{node.path, node.fword, lambda + node.weight, depth - node.depth});
    }
  }
  return out;
}

CrystalGraph CrystalEngine::tensor_graph(const Weight& lambda, const Weight& mu, long depth) const {
  const auto gl = catalog(lambda, depth);
  const auto gm = catalog(mu, depth);
  CrystalGraph t;
  t.datum = datum_;
  t.shapes = {lambda, mu};
  t.depth = depth;
  std::vector<std::pair<long, std::string>> order;
  std::map<std::string, CrystalNode> pending;
  for (const auto& a : gl->nodes) {
    for (const auto& b : gm->nodes) {
      if (a.depth + b.depth > depth) continue;
      RationalPath p = concatenate(std::vector<RationalPath>{a.path, b.path});
      const std::string key = p.key();
      order.emplace_back(a.depth + b.depth, key);
      pending.emplace(key, CrystalNode{p, p.endpoint(), a.depth + b.depth, OperatorWord{}});
    }
  }
  std::sort(order.begin(), order.end());
  for (const auto& [d, key] : order) t.nodes.push_back(pending.at(key));
  t.reindex();
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    if (t.nodes[u].depth >= depth) continue;
    for (std::size_t i = 0; i < datum_->rank(); ++i) {
      auto next = f(t.nodes[u].path, static_cast<int>(i));
      if (!next) continue;
      auto v = t.find(*next);
      if (!v) throw std::logic_error("tensor product is not stable under f");
      t.edges.push_back(CrystalEdge{u, static_cast<int>(i), *v});
    }
  }
  t.reindex();
  return t;
}

CrystalGraph restrict_component(const CrystalGraph& g, std::size_t root, const std::vector<int>& labels,
                                std::optional<long> depth) {
  const std::set<int> allowed(labels.begin(), labels.end());
  std::set<std::size_t> members{root};
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (int l : allowed) {
      if (auto v = g.successor(u, l); v && members.insert(*v).second) queue.push_back(*v);
    }
  }
  CrystalGraph out;
  out.datum = g.datum;
  out.shapes = g.shapes;
  out.depth = depth;
  out.string_closed = g.string_closed;
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t u : members) {
    renumber[u] = out.nodes.size();
    CrystalNode node = g.nodes[u];
    node.depth -= g.nodes[root].depth;
    out.nodes.push_back(std::move(node));
  }
  for (const auto& e : g.edges) {
    if (allowed.count(e.label) && members.count(e.source) && members.count(e.target)) {
      out.edges.push_back(CrystalEdge{renumber[e.source], e.label, renumber[e.target]});
    }
  }
  out.reindex();
  return out;
}

namespace {

std::vector<Rational> relative_offset(const CrystalGraph& g, std::size_t u) {
  std::vector<Rational> out = g.nodes[u].weight.offset();
  const auto& root = g.nodes[0].weight.offset();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= root[j];
  return out;
}

}  // namespace

bool iso_check(const CrystalGraph& g1, const CrystalGraph& g2, const IsoOptions& options) {
  if (g1.depth != g2.depth) {
    throw Error(ErrorCode::TruncationIncomparable, "truncation depths differ");
  }
  if (g1.nodes.empty() || g2.nodes.empty()) return g1.nodes.empty() && g2.nodes.empty();
  if (!options.relative_weights && !(g1.nodes[0].weight == g2.nodes[0].weight)) {
    throw Error(ErrorCode::RootMismatch, "root weights differ");
  }
  if (g1.size() != g2.size() || g1.edges.size() != g2.edges.size()) return false;
  const std::size_t rank1 = g1.datum->rank();
  std::vector<int> label_map = options.label_map;
  if (label_map.empty()) {
    for (std::size_t l = 0; l < rank1; ++l) label_map.push_back(static_cast<int>(l));
  }
  const auto same_weight = [&](std::size_t u, std::size_t v) {
    if (!options.relative_weights) return g1.nodes[u].weight == g2.nodes[v].weight;
    const auto r1 = relative_offset(g1, u);
    auto r2 = relative_offset(g2, v);
    for (std::size_t l = 0; l < r1.size(); ++l) {
      if (r1[l] != r2[label_map[l]]) return false;
      r2[label_map[l]] = 0;
    }
    return std::all_of(r2.begin(), r2.end(), [](const Rational& c) { return c == 0; });
  };
  std::vector<std::optional<std::size_t>> forward(g1.size());
  std::vector<bool> taken(g2.size(), false);
  forward[0] = 0;
  taken[0] = true;
  if (!same_weight(0, 0)) return false;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    const std::size_t v = *forward[u];
    for (std::size_t l = 0; l < rank1; ++l) {
      const auto a = g1.successor(u, static_cast<int>(l));
      const auto b = g2.successor(v, label_map[l]);
      if (a.has_value() != b.has_value()) return false;
      if (!a) continue;
      if (forward[*a]) {
        if (*forward[*a] != *b) return false;
        continue;
      }
      if (taken[*b] || !same_weight(*a, *b)) return false;
      forward[*a] = *b;
      taken[*b] = true;
      queue.push_back(*a);
    }
  }
  return std::all_of(forward.begin(), forward.end(), [](const auto& x) { return x.has_value(); });
}

DecompositionCheck CrystalEngine::verify_tensor_decomposition(const Weight& lambda, const Weight& mu, long depth,
                                                              const std::vector<Summand>& summands) const {
  DecompositionCheck check;
  const std::vector<Weight> shapes{lambda, mu};
  const CrystalGraph t = tensor_graph(lambda, mu, depth);
  check.ambient_nodes = t.size();
  std::set<std::string> highest;
  for (const auto& node : t.nodes) {
    if (is_highest(shapes, node.path)) highest.insert(node.path.key());
  }
  check.highest_elements = highest.size();
  std::set<std::string> expected;
  const RationalPath top = RationalPath::straight(lambda);
  for (const auto& s : summands) expected.insert(concatenate(std::vector<RationalPath>{top, s.path}).key());
  check.highest_match = highest == expected;
  if (!check.highest_match) check.problems.push_back("highest elements differ from the emitted summands");

  std::vector<int> labels;
  for (std::size_t i = 0; i < datum_->rank(); ++i) labels.push_back(static_cast<int>(i));
  std::vector<int> owner(t.size(), -1);
  bool partition = true;
  bool isomorphic = true;
  Character sum;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const auto& s = summands[k];
    const auto root = t.find(concatenate(std::vector<RationalPath>{top, s.path}));
    if (!root) {
      isomorphic = false;
      check.problems.push_back("summand root missing from the tensor graph");
      continue;
    }
    const CrystalGraph component = restrict_component(t, *root, labels, depth - t.nodes[*root].depth);
    for (const auto& node : component.nodes) {
      const std::size_t u = *t.find(node.path);
      if (owner[u] >= 0) partition = false;
      owner[u] = static_cast<int>(k);
    }
    const CrystalGraph model = generate(s.shape, s.horizon);
    if (!iso_check(model, component)) {
      isomorphic = false;
      check.problems.push_back("component of summand " + s.shape.key() + " is not isomorphic");
    }
    for (const auto& [w, c] : character(model)) sum[w] += c;
  }
  if (std::any_of(owner.begin(), owner.end(), [](int o) { return o < 0; })) partition = false;
  check.partition = partition;
  check.isomorphic = isomorphic && !summands.empty();
  check.character = sum == character(t);
  if (!check.partition) check.problems.push_back("components do not partition the tensor graph");
  if (!check.character) check.problems.push_back("characters are not additive");
  return check;
}

std::vector<Summand> CrystalEngine::branch(const Weight& lambda, const std::vector<int>& subset, long depth) const {
  const auto g = catalog(lambda, depth);
  std::vector<Summand> out;
  for (const auto& node : g->nodes) {
    if (node.depth > depth) continue;
    const auto lifted = embed_path(*datum_, node.fword, {lambda}).lifted;
    if (is_levi_dominant(*datum_, *lifted, subset)) {
      out.push_back(Summand{node.path, node.fword, node.weight, depth - node.depth});
    }
  }
  return out;
}

DecompositionCheck CrystalEngine::verify_branch(const Weight& lambda, const std::vector<int>& subset, long depth,
                                                const std::vector<Summand>& summands) const {
  DecompositionCheck check;
  const std::vector<Weight> shapes{lambda};
  const CrystalGraph g = generate(lambda, depth);
  check.ambient_nodes = g.size();
  std::set<std::string> highest;
  for (const auto& node : g.nodes) {
    bool killed = true;
    for (int i : subset) killed = killed && !e(shapes, node.path, i);
    if (killed) highest.insert(node.path.key());
  }
  check.highest_elements = highest.size();
  std::set<std::string> expected;
  for (const auto& s : summands) expected.insert(s.path.key());
  check.highest_match = highest == expected;
  if (!check.highest_match) check.problems.push_back("S-highest elements differ from the emitted summands");

  // With no operators left every node is its own component; there is no
  // sub-datum to compare against.
  std::unique_ptr<CartanDatum> sub;
  std::unique_ptr<CrystalEngine> sub_engine;
  if (!subset.empty()) {
    sub = std::make_unique<CartanDatum>(datum_->restrict_to(subset));
    sub_engine = std::make_unique<CrystalEngine>(*sub, options_);
  }
  std::vector<int> owner(g.size(), -1);
  bool partition = true;
  bool isomorphic = true;
  Character sum;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const auto& s = summands[k];
    const auto root = g.find(s.path);
    if (!root) {
      isomorphic = false;
      continue;
    }
    const CrystalGraph component = restrict_component(g, *root, subset, depth - g.nodes[*root].depth);
    for (const auto& node : component.nodes) {
      const std::size_t u = *g.find(node.path);
      if (owner[u] >= 0) partition = false;
      owner[u] = static_cast<int>(k);
    }
    if (!sub_engine) {
      if (component.size() != 1) isomorphic = false;
      ++sum[s.shape];
      continue;
    }
    std::vector<long> evals;
    for (int i : subset) evals.push_back(to_long(s.shape.eval(*datum_, i)));
    const CrystalGraph model = sub_engine->generate(Weight::from_evals(evals), s.horizon);
    if (!iso_check(model, component, IsoOptions{subset, true})) {
      isomorphic = false;
      check.problems.push_back("S-component at " + s.shape.key() + " is not isomorphic");
    }
    for (const auto& node : model.nodes) {
      Weight w = s.shape;
      for (std::size_t l = 0; l < subset.size(); ++l) w.add_root(subset[l], -node.weight.offset()[l]);
      ++sum[w];
    }
  }
  if (std::any_of(owner.begin(), owner.end(), [](int o) { return o < 0; })) partition = false;
  check.partition = partition;
  check.isomorphic = isomorphic;
  check.character = sum == character(g);
  if (!check.partition) check.problems.push_back("S-components do not partition the crystal");
  if (!check.character) check.problems.push_back("characters are not additive");
  return check;
}

}  // namespace jlpath
