#include "latinhc/count.h"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>
#include <thread>

namespace latinhc {
namespace {

std::uint64_t CheckedMul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("count exceeds 64 bits");
  }
  return r;
}

std::uint64_t CheckedAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("count exceeds 64 bits");
  }
  return r;
}

int BitWidth(int order) {
  int bits = 1;
  while ((1 << bits) < order) ++bits;
  return bits;
}

// Enumerates the submatrices of one direction whose corner holds
// `corner_symbol`, handing each pattern (2^k symbols) to `sink`.
template <typename Sink>
void ForEachPattern(const LatinHypercube& q, DirectionSet direction,
                    Symbol corner_symbol, Sink&& sink) {
  const int n = q.order();
  const std::vector<int> axes = direction.axes();
  const int k = static_cast<int>(axes.size());
  const std::size_t corners = std::size_t{1} << k;
  std::vector<Symbol> pattern(corners);
  std::vector<long> delta(k);
  std::vector<int> offset(k);
  std::vector<int> coord(k);
  if (k > 0 && n < 2) return;

  for (std::size_t base = 0; base < q.size(); ++base) {
    if (q.at(base) != corner_symbol) continue;
    for (int j = 0; j < k; ++j) {
      coord[j] = static_cast<int>((base / q.stride(axes[j])) % n);
      offset[j] = 1;
    }
    while (true) {
      for (int j = 0; j < k; ++j) {
        const int second = (coord[j] + offset[j]) % n;
        delta[j] = (static_cast<long>(second) - coord[j]) *
                   static_cast<long>(q.stride(axes[j]));
      }
      // Selector bit (k-1-j) picks the second coordinate on axes[j].
      for (std::size_t sel = 0; sel < corners; ++sel) {
        long shift = 0;
        for (int j = 0; j < k; ++j) {
          if ((sel >> (k - 1 - j)) & 1u) shift += delta[j];
        }
        pattern[sel] = q.at(static_cast<std::size_t>(base + shift));
      }
      sink(pattern);
      int j = k - 1;
      while (j >= 0 && ++offset[j] == n) offset[j--] = 1;
      if (j < 0) break;
    }
  }
}

struct TaskResult {
  std::uint64_t sum_of_squares = 0;
  std::uint64_t submatrices = 0;
};

template <typename Key>
TaskResult TallySorted(std::vector<Key>& keys) {
  std::sort(keys.begin(), keys.end());
  TaskResult result{0, keys.size()};
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const std::uint64_t m = j - i;
    result.sum_of_squares = CheckedAdd(result.sum_of_squares, CheckedMul(m, m));
    i = j;
  }
  return result;
}

TaskResult CountTask(const LatinHypercube& q, DirectionSet direction,
                     Symbol corner_symbol, bool packed_keys) {
  const int k = direction.size();
  const int bits = BitWidth(q.order());
  const std::size_t width = std::size_t{1} << k;
  if (packed_keys && width * bits <= 64) {
    std::vector<std::uint64_t> keys;
    ForEachPattern(q, direction, corner_symbol,
                   [&](const std::vector<Symbol>& pattern) {
                     std::uint64_t key = 0;
                     for (Symbol s : pattern) key = (key << bits) | s;
                     keys.push_back(key);
                   });
    return TallySorted(keys);
  }
  // Patterns compared by value as whole symbol vectors.
  std::vector<std::vector<Symbol>> keys;
  ForEachPattern(q, direction, corner_symbol,
                 [&](const std::vector<Symbol>& pattern) {
                   keys.push_back(pattern);
                 });
  return TallySorted(keys);
}

}  // namespace

std::vector<int> DirectionSet::axes() const {
  std::vector<int> out;
  for (int axis = 0; axis < 32; ++axis) {
    if (contains(axis)) out.push_back(axis);
  }
  return out;
}

std::vector<DirectionSet> DirectionsOfSize(int dimension, int k) {
  std::vector<DirectionSet> out;
  for (std::uint32_t mask = 0; mask < (1u << dimension); ++mask) {
    if (__builtin_popcount(mask) == k) out.emplace_back(mask);
  }
  return out;
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i.
    result = CheckedMul(result, static_cast<std::uint64_t>(n - k + i)) / i;
  }
  return result;
}

std::uint64_t CheckedPow(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) result = CheckedMul(result, base);
  return result;
}

ClosedFormCounts ComputeClosedFormCounts(int order, int dimension) {
  if (order < 1 || dimension < 1) {
    throw std::invalid_argument("order and dimension must be positive");
  }
  const std::uint64_t n = order;
  const int d = dimension;
  ClosedFormCounts out;
  const std::uint64_t n_2d_1 = CheckedPow(n, 2 * d - 1);
  out.c0 = n_2d_1;
  out.c1 = CheckedMul(CheckedMul(d, n_2d_1), n - 1);
  std::uint64_t sum = 0;
  for (int k = 0; k <= d; ++k) {
    const std::uint64_t lines = CheckedPow(n - 1, k);
    out.degenerate.push_back(
        CheckedMul(CheckedMul(Binomial(d, k), CheckedPow(n, d)), lines));
    out.upper.push_back(CheckedMul(CheckedMul(Binomial(d, k), n_2d_1), lines));
    sum = CheckedAdd(sum, out.upper.back());
  }
  out.max_total = CheckedPow(n, 3 * d - 1);
  if (sum != out.max_total) {
    throw CountInvariantError("sum of per-k upper bounds is not n^{3d-1}");
  }
  return out;
}

CountReport MakeCountReport(int dimension, int order,
                            std::vector<std::uint64_t> per_dim_counts,
                            const std::vector<std::uint64_t>& submatrices) {
  const ClosedFormCounts closed = ComputeClosedFormCounts(order, dimension);
  const auto d = static_cast<std::size_t>(dimension);
  if (per_dim_counts.size() != d + 1 || submatrices.size() != d + 1) {
    throw CountInvariantError("need one count per dimension 0..d");
  }
  auto fail = [](const std::string& what) {
    throw CountInvariantError("count invariant violated: " + what);
  };
  if (per_dim_counts[0] != closed.c0) fail("c_0 != n^{2d-1}");
  if (per_dim_counts[1] != closed.c1) fail("c_1 != d n^{2d-1} (n-1)");
  CountReport report;
  report.dimension = dimension;
  report.order = order;
  for (std::size_t k = 0; k <= d; ++k) {
    const std::string tag = "k=" + std::to_string(k);
    if (submatrices[k] != closed.degenerate[k]) {
      fail(tag + ": submatrix count != C(d,k) n^d (n-1)^k");
    }
    if (per_dim_counts[k] < closed.degenerate[k]) fail(tag + ": c_k < delta_k");
    if (per_dim_counts[k] > closed.upper[k]) fail(tag + ": c_k above upper bound");
    report.total = CheckedAdd(report.total, per_dim_counts[k]);
  }
  if (report.total > closed.max_total) fail("total above n^{3d-1}");
  report.per_dim_counts = std::move(per_dim_counts);
  report.degenerate = closed.degenerate;
  report.per_dim_upper = closed.upper;
  report.max_total = closed.max_total;
  report.is_max = report.total == report.max_total;
  return report;
}

CountReport CountCuboctahedra(const LatinHypercube& q,
                              const CountOptions& options) {
  const int d = q.dimension();
  const int n = q.order();
  struct Task {
    DirectionSet direction;
    Symbol corner;
  };
  std::vector<Task> tasks;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    for (int s = 0; s < n; ++s) {
      tasks.push_back(Task{DirectionSet(mask), static_cast<Symbol>(s)});
    }
  }
  std::vector<TaskResult> results(tasks.size());

  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] =
          CountTask(q, tasks[i].direction, tasks[i].corner, options.packed_keys);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<std::uint64_t> counts(d + 1, 0);
  std::vector<std::uint64_t> submatrices(d + 1, 0);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const int k = tasks[i].direction.size();
    counts[k] = CheckedAdd(counts[k], results[i].sum_of_squares);
    submatrices[k] = CheckedAdd(submatrices[k], results[i].submatrices);
  }
  return MakeCountReport(d, n, std::move(counts), submatrices);
}

std::map<std::vector<Symbol>, std::uint64_t> PatternMultiplicities(
    const LatinHypercube& q, DirectionSet direction) {
  std::map<std::vector<Symbol>, std::uint64_t> tally;
  for (int s = 0; s < q.order(); ++s) {
    ForEachPattern(q, direction, static_cast<Symbol>(s),
                   [&](const std::vector<Symbol>& pattern) { ++tally[pattern]; });
  }
  return tally;
}

}  // namespace latinhc
