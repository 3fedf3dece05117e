#ifndef LATINHC_SEARCH_H_
#define LATINHC_SEARCH_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latinhc/count.h"
#include "latinhc/hypercube.h"

namespace latinhc {

// Exhaustive scans over reduced latin squares (first row and first column
// both 0..n-1). Counts are isotopy invariant and every square is isotopic to
// a reduced one, so extremes over reduced squares are extremes over all.

inline constexpr int kMaxSearchOrder = 16;

// Number of reduced squares of order n, where known; index n.
inline constexpr std::array<std::uint64_t, 8> kReducedSquareCounts = {
    0, 1, 1, 1, 4, 56, 9408, 16942080};

std::optional<std::uint64_t> KnownReducedSquareCount(int order);

// Calls `visit` with the cells of every reduced square, in lexicographic cell
// order. Backtracking over cells in storage order with row/column bitmasks;
// a placement is undone early when it leaves a cell later in its row or
// column with no symbol.
using SquareVisitor = std::function<void(std::span<const Symbol>)>;

void ForEachReducedSquare(int order, const SquareVisitor& visit);

// Possible second rows, in lexicographic order. Each is a shard: the shards'
// streams, concatenated in order, are the full stream. Order 1 has a single
// empty shard.
std::vector<std::vector<Symbol>> ReducedSquareShards(int order);

void ForEachReducedSquareInShard(int order, std::span<const Symbol> second_row,
                                 const SquareVisitor& visit);

// Materialized stream; throws BudgetExceeded past `limit` squares.
std::vector<LatinHypercube> GenerateReducedSquares(int order,
                                                   std::uint64_t limit = 1u << 20);

inline constexpr std::uint64_t kDefaultScanBudget = 1'000'000;

struct ScanOptions {
  int threads = 0;  // 0 picks the hardware concurrency
  std::uint64_t budget = kDefaultScanBudget;
  // Also run the quadrangle criterion on every square.
  bool check_group_isotopy = false;
  // Called after each finished shard with (finished, total); may be called
  // from worker threads, one call at a time.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct Extreme {
  std::uint64_t value = 0;
  LatinHypercube witness;  // lexicographically smallest square attaining it
};

struct ScanResult {
  int order = 0;
  std::uint64_t squares_examined = 0;
  Extreme min_total;
  Extreme max_total;
  std::vector<std::uint64_t> per_k_min;
  std::vector<std::uint64_t> per_k_max;
  std::uint64_t max_attainers = 0;  // squares with total n^5
  // With check_group_isotopy: squares passing the quadrangle criterion, and
  // squares where that verdict disagrees with attaining n^5.
  std::optional<std::uint64_t> group_isotopic;
  std::optional<std::uint64_t> criterion_mismatches;
};

// Counts every reduced square of order n. Throws BudgetExceeded (no partial
// result) when the number of squares exceeds options.budget; for known
// orders this is decided before any work.
ScanResult ScanExtremes(int order, const ScanOptions& options = {});

struct ExpectedCounts {
  std::vector<std::uint64_t> per_dim_counts;
  std::uint64_t total = 0;
};

struct FixtureCheck {
  bool pass = false;
  CountReport measured;
  std::string detail;  // first mismatch, empty on pass
};

// Regression check of a hypercube file against exact expected counts. Parse
// errors propagate.
FixtureCheck VerifyFixture(const std::string& path, const ExpectedCounts& expected,
                           const CountOptions& options = {});

}  // namespace latinhc

#endif  // LATINHC_SEARCH_H_
