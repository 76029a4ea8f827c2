#include "jlpath/weyl_monoid.hpp"

#include "jlpath/error.hpp"
#include "jlpath/root_table.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jlpath {

WeylMonoid::WeylMonoid(const CartanDatum& datum, MonoidOptions options)
    : datum_(&datum), options_(options) {}

OrderedIndexWord WeylMonoid::to_ordered_index(const MonoidWord& w) const {
  OrderedIndexWord out(w.size());
  std::vector<int> seen(datum_->rank(), 0);
  for (std::size_t k = w.size(); k-- > 0;) {
    const int i = w.letters[k];
    int level = 1;
    if (datum_->is_imaginary(i) && !options_.fault_imaginary_involution) level = ++seen[i];
    out[k] = LiftedIndex{i, level};
  }
  return out;
}

MonoidWord WeylMonoid::pull_back(const OrderedIndexWord& w) const {
  MonoidWord out;
  for (const auto& p : w) out.letters.push_back(p.base);
  return out;
}

long WeylMonoid::coxeter_order(const LiftedIndex& p, const LiftedIndex& q) const {
  if (p == q) return 1;
  const int i = p.base;
  const int j = q.base;
  if (datum_->is_real(i) && datum_->is_real(j)) {
    switch (datum_->entry(i, j) * datum_->entry(j, i)) {
      case 0: return 2;
      case 1: return 3;
      case 2: return 4;
      case 3: return 6;
      default: return 0;
    }
  }
  return datum_->entry(i, j) == 0 ? 2 : 0;
}

std::vector<std::vector<LiftedIndex>> WeylMonoid::braid_class(const std::vector<LiftedIndex>& word) const {
  std::set<std::vector<LiftedIndex>> seen{word};
  std::deque<std::vector<LiftedIndex>> queue{word};
  while (!queue.empty()) {
    const auto current = queue.front();
    queue.pop_front();
    for (std::size_t p = 0; p + 1 < current.size(); ++p) {
      const LiftedIndex s = current[p];
      const LiftedIndex t = current[p + 1];
      if (s == t) continue;
      const long m = coxeter_order(s, t);
      if (m < 2 || p + m > current.size()) continue;
      bool alternating = true;
      for (long k = 0; k < m && alternating; ++k) alternating = current[p + k] == (k % 2 == 0 ? s : t);
      if (!alternating) continue;
      auto next = current;
      for (long k = 0; k < m; ++k) next[p + k] = (k % 2 == 0 ? t : s);
      if (seen.insert(next).second) {
        if (seen.size() > options_.enumeration_cap) {
          throw Error(ErrorCode::EnumerationBound, "braid class exceeds cap " +
                                                       std::to_string(options_.enumeration_cap));
        }
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<LiftedIndex> WeylMonoid::reduce_lifted(std::vector<LiftedIndex> word) const {
  const auto deletable = [&](const LiftedIndex& p) {
    return datum_->is_real(p.base) || options_.fault_imaginary_involution;
  };
  // Tits: a word is reduced iff no word in its braid class has a deletable
  // square.
  for (;;) {
    bool changed = false;
    for (std::size_t p = 0; p + 1 < word.size();) {
      if (word[p] == word[p + 1] && deletable(word[p])) {
        word.erase(word.begin() + p, word.begin() + p + 2);
        changed = true;
        p = p > 0 ? p - 1 : 0;
      } else {
        ++p;
      }
    }
    bool found = false;
    for (const auto& candidate : braid_class(word)) {
      for (std::size_t p = 0; p + 1 < candidate.size(); ++p) {
        if (candidate[p] == candidate[p + 1] && deletable(candidate[p])) {
          word = candidate;
          word.erase(word.begin() + p, word.begin() + p + 2);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found && !changed) return word;
    if (!found) {
      // A pass of direct deletions changed the word; rescan its class.
      bool again = false;
      for (std::size_t p = 0; p + 1 < word.size(); ++p) {
        if (word[p] == word[p + 1] && deletable(word[p])) again = true;
      }
      if (!again) return word;
    }
  }
}

MonoidWord WeylMonoid::normal_form(const MonoidWord& w) const {
  {
    std::lock_guard lock(mutex_);
    auto it = normal_cache_.find(w.letters);
    if (it != normal_cache_.end()) return it->second;
  }
  const auto reduced = reduce_lifted(to_ordered_index(w));
  MonoidWord best;
  bool first = true;
  for (const auto& word : braid_class(reduced)) {
    MonoidWord candidate = pull_back(word);
    if (first || candidate < best) {
      best = std::move(candidate);
      first = false;
    }
  }
  std::lock_guard lock(mutex_);
  normal_cache_.emplace(w.letters, best);
  return best;
}

std::vector<MonoidWord> WeylMonoid::reduced_words(const MonoidWord& w) const {
  const MonoidWord nf = normal_form(w);
  std::set<MonoidWord> out;
  for (const auto& word : braid_class(to_ordered_index(nf))) out.insert(pull_back(word));
  return {out.begin(), out.end()};
}

Weight WeylMonoid::reflect(int i, const Weight& mu) const {
  Weight out = mu;
  out.add_root(i, -mu.eval(*datum_, i));
  return out;
}

Weight WeylMonoid::act(const MonoidWord& w, const Weight& mu) const {
  Weight out = mu;
  for (std::size_t k = w.size(); k-- > 0;) out = reflect(w.letters[k], out);
  return out;
}

Weight WeylMonoid::act_inverse_imag(int i, const Weight& mu) const {
  if (datum_->is_real(i)) return reflect(i, mu);
  Weight out = mu;
  out.add_root(i, mu.eval(*datum_, i) / Rational(1 - datum_->entry(i, i)));
  return out;
}

MonoidWord WeylMonoid::reflection_word(const RootEntry& beta) const {
  MonoidWord out = beta.witness;
  out.letters.push_back(beta.simple);
  out.letters.insert(out.letters.end(), beta.witness.letters.rbegin(), beta.witness.letters.rend());
  return out;
}

MonoidWord WeylMonoid::left_multiply(const RootEntry& beta, const MonoidWord& w) const {
  MonoidWord out = reflection_word(beta);
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

bool WeylMonoid::bruhat_leq(const MonoidWord& u, const MonoidWord& w, const RootTable& table) const {
  const MonoidWord nu = normal_form(u);
  const MonoidWord nw = normal_form(w);
  if (nu == nw) return true;
  const std::size_t bound = nw.size();
  if (nu.size() >= bound) return false;
  const auto reflections = roots_by_witness_length(*datum_, bound);
  for (const auto& beta : reflections) {
    if (!table.find(beta.root)) {
      throw Error(ErrorCode::TableTooSmall, "Bruhat search needs a root of height " +
                                                std::to_string(beta.height) + " beyond the table bound");
    }
  }
  std::set<MonoidWord> visited{nu};
  std::deque<MonoidWord> queue{nu};
  while (!queue.empty()) {
    const MonoidWord x = queue.front();
    queue.pop_front();
    for (const auto& beta : reflections) {
      MonoidWord y = normal_form(left_multiply(beta, x));
      if (y.size() <= x.size() || y.size() > bound) continue;
      if (y == nw) return true;
      if (y.size() < bound && visited.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return false;
}

std::vector<std::size_t> WeylMonoid::exchange_positions_real(const MonoidWord& w, const RootEntry& beta) const {
  if (beta.imaginary) throw Error(ErrorCode::PreconditionFalsified, "root is imaginary");
  if (!is_reduced(w)) throw Error(ErrorCode::PreconditionFalsified, "word is not reduced");
  const MonoidWord target = normal_form(left_multiply(beta, w));
  if (target.size() >= w.size()) throw Error(ErrorCode::NotShortening, "l(r_beta w) >= l(w)");
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (datum_->is_imaginary(w.letters[p])) continue;
    MonoidWord deleted = w;
    deleted.letters.erase(deleted.letters.begin() + p);
    if (normal_form(deleted) == target) out.push_back(w.size() - p);
  }
  return out;
}

std::size_t WeylMonoid::exchange_check_real(const MonoidWord& w, const RootEntry& beta) const {
  const auto positions = exchange_positions_real(w, beta);
  if (positions.size() != 1) {
    throw Error(ErrorCode::PreconditionFalsified,
                "expected a unique exchange position, found " + std::to_string(positions.size()));
  }
  return positions.front();
}

MonoidWord WeylMonoid::exchange_check_imag(const MonoidWord& v, const RootEntry& beta) const {
  if (!beta.imaginary) throw Error(ErrorCode::PreconditionFalsified, "root is real");
  const auto it = std::find(v.letters.begin(), v.letters.end(), beta.simple);
  if (it == v.letters.end()) {
    throw Error(ErrorCode::NoOccurrence, "index " + datum_->label(beta.simple) + " does not occur");
  }
  MonoidWord predecessor = v;
  predecessor.letters.erase(predecessor.letters.begin() + (it - v.letters.begin()));
  if (!equal(left_multiply(beta, predecessor), v)) {
    throw Error(ErrorCode::PreconditionFalsified, "r_beta v' != v for the leftmost deletion");
  }
  return predecessor;
}

DominantExpression WeylMonoid::dominant_reduced_expression(const MonoidWord& w) const {
  std::optional<DominantExpression> best;
  for (const auto& word : reduced_words(w)) {
    DominantExpression candidate;
    candidate.word = word;
    std::size_t block = 0;
    for (std::size_t k = word.size(); k-- > 0;) {
      const int i = word.letters[k];
      if (datum_->is_imaginary(i)) {
        candidate.block_lengths.push_back(block);
        candidate.imaginary_letters.push_back(i);
        block = 0;
      } else {
        ++block;
      }
    }
    candidate.block_lengths.push_back(block);
    if (!best || std::tie(candidate.block_lengths, candidate.word) <
                     std::tie(best->block_lengths, best->word)) {
      best = std::move(candidate);
    }
  }
  DominantExpression& out = *best;
  out.dominant = true;
  std::size_t seen_imaginary = 0;
  for (std::size_t k = out.word.size(); k-- > 0 && out.dominant;) {
    if (datum_->is_real(out.word.letters[k])) continue;
    ++seen_imaginary;
    MonoidWord prefix;
    prefix.letters.assign(out.word.letters.begin() + k, out.word.letters.end());
    for (std::size_t j = 0; j < datum_->rank() && out.dominant; ++j) {
      std::vector<long> evals(datum_->rank(), 0);
      evals[j] = 1;
      if (!act(prefix, Weight::from_evals(evals)).is_dominant(*datum_)) out.dominant = false;
    }
  }
  return out;
}

StabilizerResult WeylMonoid::stabilizer_membership(const MonoidWord& w, const Weight& lambda) const {
  StabilizerResult result;
  result.member = act(w, lambda) == lambda;
  if (!result.member) return result;
  for (const auto& word : reduced_words(w)) {
    const bool in_parabolic = std::all_of(word.letters.begin(), word.letters.end(),
                                          [&](int i) { return lambda.eval(*datum_, i) == 0; });
    if (in_parabolic) {
      result.witness = word;
      return result;
    }
  }
  throw std::logic_error("stabilizer element without a reduced expression in the parabolic generators");
}

std::string format_word(const CartanDatum& datum, const MonoidWord& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += " ";
    out += datum.label(w.letters[k]);
  }
  return out;
}

MonoidWord parse_word(const CartanDatum& datum, const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  MonoidWord out;
  std::string token;
  while (in >> token) {
    if (token == "e") continue;
    out.letters.push_back(datum.index_of(token));
  }
  return out;
}

}  // namespace jlpath
