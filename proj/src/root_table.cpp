#include "jlpath/root_table.hpp"

#include "jlpath/error.hpp"

#include <deque>
#include <numeric>
#include <set>

namespace jlpath {

Rational RootEntry::coroot_eval(const CartanDatum& datum, const Weight& mu) const {
  Rational value = 0;
  for (std::size_t j = 0; j < coroot.size(); ++j) {
    if (coroot[j] != 0) value += Rational(coroot[j]) * mu.eval(datum, static_cast<int>(j));
  }
  return value;
}

namespace {

RootEntry simple_entry(const CartanDatum& datum, int i) {
  RootEntry e;
  e.root.assign(datum.rank(), 0);
  e.coroot.assign(datum.rank(), 0);
  e.root[i] = 1;
  e.coroot[i] = 1;
  e.simple = i;
  e.imaginary = datum.is_imaginary(i);
  e.height = 1;
  return e;
}

// r_j applied to a root and its coroot; nullopt if the image is not positive
// or is unchanged.
std::optional<RootEntry> reflect_entry(const CartanDatum& datum, const RootEntry& e, int j) {
  const std::size_t n = datum.rank();
  long pairing = 0;  // alpha_j^vee(beta)
  long copairing = 0;  // alpha_j(beta^vee)
  for (std::size_t k = 0; k < n; ++k) {
    pairing += e.root[k] * datum.entry(j, static_cast<int>(k));
    copairing += e.coroot[k] * datum.entry(static_cast<int>(k), j);
  }
  if (pairing == 0 && copairing == 0) return std::nullopt;
  RootEntry out = e;
  out.root[j] -= pairing;
  out.coroot[j] -= copairing;
  for (std::size_t k = 0; k < n; ++k) {
    if (out.root[k] < 0) return std::nullopt;
  }
  out.height = std::accumulate(out.root.begin(), out.root.end(), 0L);
  out.witness.letters.insert(out.witness.letters.begin(), j);
  return out;
}

}  // namespace

RootTable RootTable::build(const CartanDatum& datum, long height_bound) {
  if (height_bound < 1) throw Error(ErrorCode::Usage, "root table height bound must be positive");
  RootTable table;
  table.datum_ = &datum;
  table.height_bound_ = height_bound;
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < datum.rank(); ++i) {
    RootEntry e = simple_entry(datum, static_cast<int>(i));
    table.index_[e.root] = table.entries_.size();
    table.simple_.push_back(table.entries_.size());
    queue.push_back(table.entries_.size());
    table.entries_.push_back(std::move(e));
  }
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    for (int j : datum.real_indices()) {
      auto next = reflect_entry(datum, table.entries_[at], j);
      if (!next || table.index_.count(next->root)) continue;
      if (next->height > height_bound) {
        table.complete_ = false;
        continue;
      }
      table.index_[next->root] = table.entries_.size();
      queue.push_back(table.entries_.size());
      table.entries_.push_back(std::move(*next));
    }
  }
  return table;
}

std::vector<const RootEntry*> RootTable::real_roots() const {
  std::vector<const RootEntry*> out;
  for (const auto& e : entries_) {
    if (!e.imaginary) out.push_back(&e);
  }
  return out;
}

std::vector<const RootEntry*> RootTable::imag_roots() const {
  std::vector<const RootEntry*> out;
  for (const auto& e : entries_) {
    if (e.imaginary) out.push_back(&e);
  }
  return out;
}

const RootEntry* RootTable::find(const std::vector<long>& root) const {
  auto it = index_.find(root);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

void RootTable::require_height(long height, const char* context) const {
  if (!complete_ && height > height_bound_) {
    throw Error(ErrorCode::TableTooSmall, std::string(context) + " needs roots of height " +
                                              std::to_string(height) + " > bound " +
                                              std::to_string(height_bound_));
  }
}

std::vector<RootEntry> roots_by_witness_length(const CartanDatum& datum, std::size_t max_length) {
  std::vector<RootEntry> out;
  std::set<std::vector<long>> seen;
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < datum.rank(); ++i) {
    out.push_back(simple_entry(datum, static_cast<int>(i)));
    seen.insert(out.back().root);
    frontier.push_back(out.size() - 1);
  }
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<std::size_t> next;
    for (std::size_t at : frontier) {
      for (int j : datum.real_indices()) {
        auto r = reflect_entry(datum, out[at], j);
        if (!r || seen.count(r->root)) continue;
        seen.insert(r->root);
        out.push_back(std::move(*r));
        next.push_back(out.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace jlpath
