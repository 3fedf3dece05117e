#ifndef LATINHC_BOUNDS_H_
#define LATINHC_BOUNDS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latinhc/count.h"
#include "latinhc/hypercube.h"

namespace latinhc {

// Lower bounds on cuboctahedron counts. Every count is c_0 + c_1 (fixed by
// n and d) plus, for k >= 2, the degenerate pairs delta_k plus the
// non-degenerate pairs; the bounds below differ only in how they bound the
// non-degenerate part. Formula values can exceed 64 bits (n = 1000, d = 4),
// hence the arbitrary-precision integers.

using BigInt = boost::multiprecision::cpp_int;

// Pieces of the square bound 3n^4 + n^3 - 9n^2 + 6n.
struct SquareBoundParts {
  BigInt low_dimensional;   // c_0 + c_1 = 2n^4 - n^3
  BigInt degenerate;        // delta_2 = n^4 - 2n^3 + n^2
  BigInt distinct_corners;  // subsquares x y / z * with y != z: 4n^3 - 12n^2 + 8n
  BigInt repeated_corner;   // subsquares x y / y * (x in the corner): 2n^2 - 2n

  BigInt two_dimensional() const {
    return degenerate + distinct_corners + repeated_corner;
  }
  BigInt total() const { return low_dimensional + two_dimensional(); }
};

SquareBoundParts ComputeSquareBoundParts(int order);
BigInt SquareLowerBound(int order);

// r_k = floor(n^{d-1} (n-1)^{k+1-2^k}), the least number of times some
// k-dimensional pattern with a given corner symbol must repeat. Returns 0
// when n = 1 and the exponent is negative.
BigInt RepetitionFloor(int order, int dimension, int k);

// d >= 3, n > d and 2 <= k <= d: where the generic term is proven.
bool GenericTermApplies(int order, int dimension, int k);

// C(d,k) n (n-d)^{2^k-1} r_k (r_k - 1), or 0 outside its validity window or
// when r_k < 2.
BigInt GenericNondegenerateTerm(int order, int dimension, int k);

struct BoundReport {
  int order = 0;
  int dimension = 0;
  BigInt base;                               // c_0 + c_1
  BigInt degenerate_total;                   // sum_{k>=2} delta_k
  std::vector<BigInt> per_k_nondegenerate;   // generic term, index k
  // (d+1) n^{2d} - (d-1)(n^{2d-1} + n^d) - d n^{d+1} + sum of terms, as
  // usually displayed.
  BigInt closed_form_total;
  BigInt component_sum_total;                // base + degenerate + terms
  std::vector<std::string> notes;
};

BoundReport GenericLowerBound(int order, int dimension);

// A class of bundle patterns (corner symbol 0, k neighbor symbols each != 0)
// sharing the same equality structure among the neighbors, up to axis
// permutation.
struct PatternTypeStat {
  int k = 0;
  std::vector<int> block_sizes;             // classes of equal neighbors, largest first
  std::vector<Symbol> representative;       // corner, then neighbors by axis
  std::uint64_t count = 0;                  // N: concrete patterns of this type
  std::optional<std::uint64_t> completions;       // P
  std::optional<std::uint64_t> repetition_floor;  // R = floor(n^{d-1} / P)
};

// Types in order of increasing number of classes; N filled, P and R unset.
std::vector<PatternTypeStat> EnumerateBundlePatternTypes(int order, int k);

// Largest k for which completions are enumerated. Beyond it the refined
// bound is skipped.
inline constexpr int kMaxCompletionDimension = 4;

// Number of ways to fill the 2^k - k - 1 free cells of an order-2 k-box
// whose corner and k corner-neighbors are given by `bundle`, such that any
// two cells differing in one selector hold distinct symbols. `bundle` is the
// corner followed by the neighbor along each box axis. Throws
// std::invalid_argument for k > kMaxCompletionDimension and
// std::overflow_error past 64 bits.
std::uint64_t CompletionCount(int order, int k, std::span<const Symbol> bundle);

// Types with N, P and R = floor(n^{d-1} / P) filled in.
std::vector<PatternTypeStat> PatternTypeTable(int order, int dimension, int k);

struct RefinedBound {
  BigInt value;  // n C(d,k) sum N P R (R-1)
  std::vector<PatternTypeStat> types;
};

RefinedBound RefinedLowerBoundK(int order, int dimension, int k);

// One row per k of the assembled lower-bound table.
struct LowerBoundRow {
  int k = 0;
  BigInt degenerate;                   // delta_k
  BigInt refined;                      // refined non-degenerate bound, k >= 2
  BigInt generic;                      // generic non-degenerate term, k >= 2
  std::optional<BigInt> plane_based;   // k = 2, n <= 4: planes x n^5
  std::optional<BigInt> within_plane;  // k = 2: 2-dim pairs inside one plane
  BigInt recipe;
  BigInt non_overlapping;
  std::optional<BigInt> reference;     // tabulated value, where one exists
  bool discrepancy = false;            // reference differs from the formulas
};

// Per-k lower bounds assembled two ways.
//
// `recipe` follows the tabulated construction: for squares the parts of the
// square bound; for d >= 3 delta_k plus the refined bound, except that for
// k = 2 and n <= 4 the plane-based count (every plane is a group square and
// holds n^5 cuboctahedra of all dimensions) is used when larger. That
// plane-based figure double counts pairs already in c_0 and c_1. Where a
// tabulated value exists and disagrees with the formulas, the tabulated value
// is used and the row is flagged.
//
// `non_overlapping` never uses tabulated values and for k = 2 only takes the
// 2-dimensional pairs inside each plane, so it is a true lower bound.
struct LowerBoundTable {
  int order = 0;
  int dimension = 0;
  std::vector<LowerBoundRow> rows;
  BigInt recipe_total;
  BigInt non_overlapping_total;
  std::optional<BigInt> reference_total;
  std::vector<std::string> notes;
};

LowerBoundTable AssembleLowerBoundTable(int order, int dimension);

// Raised when a measured count falls below a lower bound or above an upper
// bound; always an implementation bug.
class BoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BoundCheckRow {
  int k = 0;
  std::uint64_t measured = 0;
  BigInt degenerate;
  BigInt refined_with_degenerate;  // delta_k + refined bound
  BigInt non_overlapping;
  BigInt upper;
};

struct BoundComparison {
  int order = 0;
  int dimension = 0;
  std::vector<BoundCheckRow> rows;
  std::uint64_t measured_total = 0;
  BigInt non_overlapping_total;
  BigInt max_total;
  std::optional<BigInt> generic_total;  // component sum, when d >= 3 and n > d
};

// Tabulates measured counts against every applicable bound; throws
// BoundViolation if any bound fails.
BoundComparison CompareWithBounds(const CountReport& counts);

std::string ToString(const BigInt& value);

}  // namespace latinhc

#endif  // LATINHC_BOUNDS_H_
