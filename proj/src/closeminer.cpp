#include "bji/closeminer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "bji/kernels.hpp"

namespace bji {

namespace {

Bitset tidset_of(const Itemset& items, const QueryAttributeMatrix& m) {
  Bitset tids(m.row_count());
  tids.set();
  for (const auto c : items) tids &= m.tidset(c);
  return tids;
}

Itemset to_itemset(const Bitset& columns) {
  Itemset out;
  for (auto c = columns.find_first(); c != Bitset::npos; c = columns.find_next(c)) out.push_back(c);
  return out;
}

// A frequent minimal generator with its row set and closure.
struct Generator {
  Itemset items;
  Bitset tids;
  Bitset closure;
};

}  // namespace

Support support(const Itemset& items, const QueryAttributeMatrix& m) {
  if (items.empty()) return {m.row_count(), m.row_count()};
  return {tidset_of(items, m).count(), m.row_count()};
}

Itemset closure(const Itemset& items, const QueryAttributeMatrix& m) {
  const auto tids = tidset_of(items, m);
  if (tids.none()) throw std::domain_error("closure: itemset has zero support");
  Bitset closed(m.column_count());
  for (std::size_t c = 0; c < m.column_count(); ++c)
    if (tids.is_subset_of(m.tidset(c))) closed.set(c);
  return to_itemset(closed);
}

std::size_t min_support_count(double minsup, std::size_t rows) {
  const auto need = std::ceil(minsup * static_cast<double>(rows) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, need)));
}

std::vector<FrequentClosedItemset> mine_closed(const QueryAttributeMatrix& m, double minsup,
                                               Exec exec) {
  if (!(minsup > 0.0 && minsup <= 1.0))
    throw std::invalid_argument("minsup must be in (0, 1], got " + std::to_string(minsup));
  if (m.row_count() == 0 || m.column_count() == 0) return {};
  const auto min_count = min_support_count(minsup, m.row_count());

  // Level 1: every frequent single column is a generator.
  std::vector<Generator> level;
  std::vector<Bitset> tids;
  for (std::size_t c = 0; c < m.column_count(); ++c) {
    if (m.tidset(c).count() >= min_count) {
      level.push_back({{c}, m.tidset(c), {}});
      tids.push_back(m.tidset(c));
    }
  }
  auto closed = closure_batch(m, tids, exec);
  for (std::size_t k = 0; k < level.size(); ++k) level[k].closure = std::move(closed[k]);

  std::map<Itemset, std::size_t> found;  // closure -> support count
  while (!level.empty()) {
    for (const auto& g : level) found.emplace(to_itemset(g.closure), g.tids.count());

    // Generators of the next level: join generators sharing all but their
    // last item. A candidate survives only if every one-smaller subset is a
    // generator and none of those subsets' closures already contains it.
    std::map<Itemset, std::size_t> index;
    for (std::size_t k = 0; k < level.size(); ++k) index.emplace(level[k].items, k);

    std::vector<Generator> next;
    tids.clear();
    for (auto a = index.begin(); a != index.end(); ++a) {
      const auto& left = a->first;
      for (auto b = std::next(a); b != index.end(); ++b) {
        const auto& right = b->first;
        if (!std::equal(left.begin(), left.end() - 1, right.begin())) break;
        Itemset candidate = left;
        candidate.push_back(right.back());

        bool keep = true;
        for (std::size_t drop = 0; drop < candidate.size() && keep; ++drop) {
          Itemset subset;
          for (std::size_t k = 0; k < candidate.size(); ++k)
            if (k != drop) subset.push_back(candidate[k]);
          const auto it = index.find(subset);
          if (it == index.end() || level[it->second].closure.test(candidate[drop])) keep = false;
        }
        if (!keep) continue;

        Bitset t = level[a->second].tids & level[b->second].tids;
        if (t.count() < min_count) continue;
        tids.push_back(t);
        next.push_back({std::move(candidate), std::move(t), {}});
      }
    }
    closed = closure_batch(m, tids, exec);
    for (std::size_t k = 0; k < next.size(); ++k) next[k].closure = std::move(closed[k]);
    level = std::move(next);
  }

  std::vector<FrequentClosedItemset> out;
  out.reserve(found.size());
  for (auto& [items, count] : found) out.push_back({items, {count, m.row_count()}});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.support.count != y.support.count) return x.support.count > y.support.count;
    if (x.items.size() != y.items.size()) return x.items.size() < y.items.size();
    return x.items < y.items;
  });
  return out;
}

std::vector<QualifiedAttribute> item_names(const Itemset& items, const QueryAttributeMatrix& m) {
  std::vector<QualifiedAttribute> out;
  out.reserve(items.size());
  for (const auto c : items) out.push_back(m.columns().at(c));
  return out;
}

}  // namespace bji
