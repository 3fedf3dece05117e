#ifndef LATINHC_COUNT_H_
#define LATINHC_COUNT_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "latinhc/hypercube.h"

namespace latinhc {

// Cuboctahedron counting.
//
// A submatrix of order 2 picks an ordered coordinate pair (a1, a2) on every
// axis; its direction is the set of axes with a1 != a2 and its dimension k is
// the size of that set. Its pattern is the 2^k symbols read with the
// selectors in lexicographic order over the direction axes (a1 before a2,
// first axis most significant), so the corner q[a1, ..., a1] comes first.
//
// A cuboctahedron is an ordered pair of submatrices with equal patterns. The
// pair (A, A) counts, which is the convention under which c_0 = n^{2d-1} and
// the degenerate count delta_k is the number of k-dimensional submatrices.
// Two matching submatrices always share their direction, since a latin
// hypercube never repeats a symbol along a line, so c_k is the sum over
// directions and patterns of the squared pattern multiplicities.

// Subset of axes, bit i set for axis i.
class DirectionSet {
 public:
  constexpr DirectionSet() = default;
  constexpr explicit DirectionSet(std::uint32_t mask) : mask_(mask) {}

  std::uint32_t mask() const { return mask_; }
  int size() const { return __builtin_popcount(mask_); }
  bool contains(int axis) const { return (mask_ >> axis) & 1u; }
  std::vector<int> axes() const;

  friend auto operator<=>(DirectionSet, DirectionSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

// All directions of size k among `dimension` axes, in increasing mask order.
std::vector<DirectionSet> DirectionsOfSize(int dimension, int k);

struct CountReport {
  int dimension = 0;
  int order = 0;
  std::vector<std::uint64_t> per_dim_counts;  // c_k, k = 0..d
  std::vector<std::uint64_t> degenerate;      // delta_k
  std::vector<std::uint64_t> per_dim_upper;   // C(d,k) n^{2d-1} (n-1)^k
  std::uint64_t total = 0;
  std::uint64_t max_total = 0;                // n^{3d-1}
  bool is_max = false;

  friend bool operator==(const CountReport&, const CountReport&) = default;
};

// Counts that hold for every latin hypercube of the given shape.
struct ClosedFormCounts {
  std::uint64_t c0 = 0;                      // n^{2d-1}
  std::uint64_t c1 = 0;                      // d n^{2d-1} (n-1)
  std::vector<std::uint64_t> degenerate;     // C(d,k) n^d (n-1)^k
  std::vector<std::uint64_t> upper;          // C(d,k) n^{2d-1} (n-1)^k
  std::uint64_t max_total = 0;               // n^{3d-1} = sum of upper
};

// Throws std::overflow_error if a value exceeds 64 bits.
ClosedFormCounts ComputeClosedFormCounts(int order, int dimension);

// Raised when a measured count contradicts a count that holds for every
// latin hypercube. Always an implementation bug.
class CountInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Assembles a report from measured c_k and the measured number of
// k-dimensional submatrices, checking c_0, c_1, delta_k and the per-k and
// total upper bounds.
CountReport MakeCountReport(int dimension, int order,
                            std::vector<std::uint64_t> per_dim_counts,
                            const std::vector<std::uint64_t>& submatrices);

struct CountOptions {
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
  // Pack patterns into 64-bit keys when they fit; false forces the
  // vector-keyed tally.
  bool packed_keys = true;
};

// Exact counts by pattern-multiplicity aggregation. Work is split by
// (direction, corner symbol); the result does not depend on the schedule.
CountReport CountCuboctahedra(const LatinHypercube& q,
                              const CountOptions& options = {});

// Multiplicity of every pattern among the submatrices of one direction.
std::map<std::vector<Symbol>, std::uint64_t> PatternMultiplicities(
    const LatinHypercube& q, DirectionSet direction);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pairs of submatrices the oracle may compare by default.
inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 28;

// Testing oracle: compares every ordered pair of submatrices entry by entry.
// Work is n^{4d} pairs; throws BudgetExceeded above `budget`. Single-threaded.
CountReport BruteForceCount(const LatinHypercube& q,
                            std::uint64_t budget = kDefaultOracleBudget);

// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t Binomial(int n, int k);

// Checked power; throws std::overflow_error past 64 bits.
std::uint64_t CheckedPow(std::uint64_t base, int exponent);

}  // namespace latinhc

#endif  // LATINHC_COUNT_H_
