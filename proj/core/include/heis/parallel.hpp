#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace heis {

/// Worker threads used by data-parallel loops. Results never depend on it:
/// work is cut into fixed blocks and partial sums are combined by a
/// pairwise tree whose shape depends only on the problem size.
int worker_count();
void set_worker_count(int workers);

/// Calls body(i) for every i in [0, count); blocks are handed out to workers
/// in arbitrary order, so body must only write to slots owned by i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise reduction in place; fixed association order.
template <class T>
T tree_reduce(std::vector<T> parts) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::size_t half = (parts.size() + 1) / 2;
    for (std::size_t i = 0; i + half < parts.size(); ++i) parts[i] += parts[i + half];
    parts.resize(half);
  }
  return parts[0];
}

/// Sum of term(i) over [0, count) with a reduction order independent of the
/// number of workers.
template <class T, class Term>
T deterministic_sum(std::size_t count, Term&& term, std::size_t block = 512) {
  if (count == 0) return T{};
  const std::size_t nblocks = (count + block - 1) / block;
  std::vector<T> partial(nblocks, T{});
  parallel_for(nblocks, [&](std::size_t b) {
    T s{};
    const std::size_t end = std::min(count, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) s += term(i);
    partial[b] = s;
  });
  return tree_reduce(std::move(partial));
}

}  // namespace heis
