#include "latinhc/search.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "latinhc/io.h"
#include "latinhc/quadrangle.h"

namespace latinhc {
namespace {

void CheckOrder(int order) {
  if (order < 1 || order > kMaxSearchOrder) {
    throw std::invalid_argument("reduced-square search needs order in [1, " +
                                std::to_string(kMaxSearchOrder) + "]");
  }
}

// Backtracking state: row 0 and column 0 are preset, other cells filled in
// storage order.
class Filler {
 public:
  explicit Filler(int n)
      : n_(n), full_((1u << n) - 1), cells_(n * n, 0), row_used_(n, 0), col_used_(n, 0) {
    for (int i = 0; i < n; ++i) {
      Place(0, i, static_cast<Symbol>(i));
      if (i > 0) Place(i, 0, static_cast<Symbol>(i));
    }
  }

  void Place(int r, int c, Symbol s) {
    cells_[r * n_ + c] = s;
    row_used_[r] |= 1u << s;
    col_used_[c] |= 1u << s;
  }

  void Unplace(int r, int c, Symbol s) {
    row_used_[r] &= ~(1u << s);
    col_used_[c] &= ~(1u << s);
  }

  // Fills positions [pos, end) and calls `done` for every completion.
  template <typename Done>
  void Fill(int pos, int end, Done&& done) {
    while (pos < end && pos % n_ == 0) ++pos;
    if (pos >= end) {
      done();
      return;
    }
    const int r = pos / n_;
    const int c = pos % n_;
    std::uint32_t options = full_ & ~(row_used_[r] | col_used_[c]);
    while (options != 0) {
      const Symbol s = static_cast<Symbol>(__builtin_ctz(options));
      options &= options - 1;
      Place(r, c, s);
      if (StillFeasible(r, c)) Fill(pos + 1, end, done);
      Unplace(r, c, s);
    }
  }

  std::span<const Symbol> cells() const { return cells_; }
  std::span<const Symbol> row(int r) const {
    return std::span<const Symbol>(cells_).subspan(r * n_, n_);
  }

 private:
  // Every later cell in row r and column c still has an available symbol.
  bool StillFeasible(int r, int c) const {
    for (int j = c + 1; j < n_; ++j) {
      if ((full_ & ~(row_used_[r] | col_used_[j])) == 0) return false;
    }
    for (int i = r + 1; i < n_; ++i) {
      if ((full_ & ~(row_used_[i] | col_used_[c])) == 0) return false;
    }
    return true;
  }

  int n_;
  std::uint32_t full_;
  std::vector<Symbol> cells_;
  std::vector<std::uint32_t> row_used_;
  std::vector<std::uint32_t> col_used_;
};

// Per-shard or merged extremes; witnesses kept as raw cells.
struct Partial {
  std::uint64_t examined = 0;
  std::uint64_t min_total = UINT64_MAX;
  std::uint64_t max_total = 0;
  std::vector<Symbol> min_witness;
  std::vector<Symbol> max_witness;
  std::vector<std::uint64_t> per_k_min;
  std::vector<std::uint64_t> per_k_max;
  std::uint64_t max_attainers = 0;
  std::uint64_t group_isotopic = 0;
  std::uint64_t mismatches = 0;

  void Offer(std::uint64_t total, std::span<const Symbol> cells) {
    const std::vector<Symbol> candidate(cells.begin(), cells.end());
    if (min_witness.empty() || total < min_total ||
        (total == min_total && candidate < min_witness)) {
      min_total = total;
      min_witness = candidate;
    }
    if (max_witness.empty() || total > max_total ||
        (total == max_total && candidate < max_witness)) {
      max_total = total;
      max_witness = candidate;
    }
  }

  void Merge(const Partial& other) {
    if (other.examined == 0) return;
    examined += other.examined;
    Offer(other.min_total, other.min_witness);
    Offer(other.max_total, other.max_witness);
    if (per_k_min.empty()) {
      per_k_min = other.per_k_min;
      per_k_max = other.per_k_max;
    } else {
      for (std::size_t k = 0; k < per_k_min.size(); ++k) {
        per_k_min[k] = std::min(per_k_min[k], other.per_k_min[k]);
        per_k_max[k] = std::max(per_k_max[k], other.per_k_max[k]);
      }
    }
    max_attainers += other.max_attainers;
    group_isotopic += other.group_isotopic;
    mismatches += other.mismatches;
  }
};

}  // namespace

std::optional<std::uint64_t> KnownReducedSquareCount(int order) {
  if (order >= 1 && order < static_cast<int>(kReducedSquareCounts.size())) {
    return kReducedSquareCounts[order];
  }
  return std::nullopt;
}

std::vector<std::vector<Symbol>> ReducedSquareShards(int order) {
  CheckOrder(order);
  if (order == 1) return {{}};
  Filler filler(order);
  std::vector<std::vector<Symbol>> shards;
  filler.Fill(order + 1, 2 * order, [&] {
    const auto row = filler.row(1);
    shards.emplace_back(row.begin(), row.end());
  });
  return shards;
}

void ForEachReducedSquareInShard(int order, std::span<const Symbol> second_row,
                                 const SquareVisitor& visit) {
  CheckOrder(order);
  if (order == 1) {
    const Symbol only = 0;
    visit(std::span<const Symbol>(&only, 1));
    return;
  }
  if (second_row.size() != static_cast<std::size_t>(order) || second_row[0] != 1) {
    throw std::invalid_argument("shard must be a full second row starting with 1");
  }
  Filler filler(order);
  std::uint32_t seen = 0;
  for (int c = 1; c < order; ++c) {
    const Symbol s = second_row[c];
    if (s >= order || s == c || (seen >> s & 1u) || s == 1) {
      throw std::invalid_argument("shard is not a valid second row");
    }
    seen |= 1u << s;
    filler.Place(1, c, s);
  }
  filler.Fill(2 * order, order * order, [&] { visit(filler.cells()); });
}

void ForEachReducedSquare(int order, const SquareVisitor& visit) {
  for (const auto& shard : ReducedSquareShards(order)) {
    ForEachReducedSquareInShard(order, shard, visit);
  }
}

std::vector<LatinHypercube> GenerateReducedSquares(int order, std::uint64_t limit) {
  if (auto known = KnownReducedSquareCount(order); known && *known > limit) {
    throw BudgetExceeded("order " + std::to_string(order) + " has " +
                         std::to_string(*known) + " reduced squares, limit is " +
                         std::to_string(limit));
  }
  std::vector<LatinHypercube> out;
  ForEachReducedSquare(order, [&](std::span<const Symbol> cells) {
    if (out.size() == limit) throw BudgetExceeded("reduced-square limit reached");
    out.emplace_back(2, order, std::vector<Symbol>(cells.begin(), cells.end()));
  });
  return out;
}

ScanResult ScanExtremes(int order, const ScanOptions& options) {
  CheckOrder(order);
  if (auto known = KnownReducedSquareCount(order); known && *known > options.budget) {
    throw BudgetExceeded("order " + std::to_string(order) + " has " +
                         std::to_string(*known) + " reduced squares, budget is " +
                         std::to_string(options.budget) +
                         "; raise the budget explicitly");
  }
  const std::vector<std::vector<Symbol>> shards = ReducedSquareShards(order);
  std::uint64_t maximum = 1;
  for (int i = 0; i < 5; ++i) maximum *= order;

  std::vector<Partial> partials(shards.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> finished{0};
  std::atomic<std::uint64_t> examined{0};
  std::atomic<bool> over_budget{false};
  std::mutex progress_mutex;
  CountOptions count_options;
  count_options.threads = 1;

  auto work = [&] {
    while (!over_budget) {
      const std::size_t index = next.fetch_add(1);
      if (index >= shards.size()) return;
      Partial& part = partials[index];
      ForEachReducedSquareInShard(order, shards[index], [&](std::span<const Symbol> cells) {
        if (over_budget) return;
        if (examined.fetch_add(1) >= options.budget) {
          over_budget = true;
          return;
        }
        const LatinHypercube square(2, order, std::vector<Symbol>(cells.begin(), cells.end()));
        const CountReport r = CountCuboctahedra(square, count_options);
        ++part.examined;
        part.Offer(r.total, cells);
        if (part.per_k_min.empty()) {
          part.per_k_min = part.per_k_max = r.per_dim_counts;
        } else {
          for (std::size_t k = 0; k < r.per_dim_counts.size(); ++k) {
            part.per_k_min[k] = std::min(part.per_k_min[k], r.per_dim_counts[k]);
            part.per_k_max[k] = std::max(part.per_k_max[k], r.per_dim_counts[k]);
          }
        }
        part.max_attainers += r.total == maximum;
        if (options.check_group_isotopy) {
          const bool group = IsGroupIsotopic(square);
          part.group_isotopic += group;
          part.mismatches += group != (r.total == maximum);
        }
      });
      const std::size_t done = finished.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(done, shards.size());
      }
    }
  };

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(shards.size()));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  if (over_budget) {
    throw BudgetExceeded("scan of order " + std::to_string(order) +
                         " exceeded the budget of " + std::to_string(options.budget) +
                         " squares");
  }

  Partial merged;
  for (const Partial& p : partials) merged.Merge(p);
  ScanResult result{
      .order = order,
      .squares_examined = merged.examined,
      .min_total = {merged.min_total, LatinHypercube(2, order, merged.min_witness)},
      .max_total = {merged.max_total, LatinHypercube(2, order, merged.max_witness)},
      .per_k_min = merged.per_k_min,
      .per_k_max = merged.per_k_max,
      .max_attainers = merged.max_attainers,
      .group_isotopic = std::nullopt,
      .criterion_mismatches = std::nullopt,
  };
  if (options.check_group_isotopy) {
    result.group_isotopic = merged.group_isotopic;
    result.criterion_mismatches = merged.mismatches;
  }
  return result;
}

FixtureCheck VerifyFixture(const std::string& path, const ExpectedCounts& expected,
                           const CountOptions& options) {
  const LatinHypercube q = ReadHypercubeFile(path);
  FixtureCheck check{.pass = false, .measured = CountCuboctahedra(q, options), .detail = {}};
  const CountReport& m = check.measured;
  if (m.per_dim_counts.size() != expected.per_dim_counts.size()) {
    check.detail = "expected " + std::to_string(expected.per_dim_counts.size()) +
                   " per-k counts, hypercube has dimension " + std::to_string(m.dimension);
    return check;
  }
  for (std::size_t k = 0; k < m.per_dim_counts.size(); ++k) {
    if (m.per_dim_counts[k] != expected.per_dim_counts[k]) {
      check.detail = "c_" + std::to_string(k) + ": expected " +
                     std::to_string(expected.per_dim_counts[k]) + ", measured " +
                     std::to_string(m.per_dim_counts[k]);
      return check;
    }
  }
  if (m.total != expected.total) {
    check.detail = "total: expected " + std::to_string(expected.total) + ", measured " +
                   std::to_string(m.total);
    return check;
  }
  check.pass = true;
  return check;
}

}  // namespace latinhc
