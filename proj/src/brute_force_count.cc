// Direct evaluation of the cuboctahedron definition: for every ordered pair
// of order-2 submatrices A, B compare q[a_{j_1}^1, ..., a_{j_d}^d] with
// q[b_{j_1}^1, ..., b_{j_d}^d] for all selectors. Shares nothing with the
// pattern-tally engine beyond report assembly.

#include <string>

#include "latinhc/count.h"

namespace latinhc {
namespace {

struct Submatrix {
  std::vector<std::size_t> cells;  // 2^d offsets, selectors in lexicographic order
  int dimension = 0;               // axes with a1 != a2
};

std::vector<Submatrix> AllSubmatrices(const LatinHypercube& q) {
  const int d = q.dimension();
  const int n = q.order();
  const std::size_t corners = std::size_t{1} << d;
  std::vector<Submatrix> out;
  // pair[i] = (a1, a2) on axis i, advanced as an odometer over n^2 values.
  std::vector<int> first(d, 0), second(d, 0);
  while (true) {
    Submatrix m;
    m.cells.resize(corners);
    for (std::size_t sel = 0; sel < corners; ++sel) {
      Index index(d);
      for (int i = 0; i < d; ++i) {
        const bool use_second = (sel >> (d - 1 - i)) & 1u;
        index[i] = use_second ? second[i] : first[i];
      }
      m.cells[sel] = q.OffsetOf(index);
    }
    for (int i = 0; i < d; ++i) m.dimension += first[i] != second[i];
    out.push_back(std::move(m));

    int i = d - 1;
    for (; i >= 0; --i) {
      if (++second[i] < n) break;
      second[i] = 0;
      if (++first[i] < n) break;
      first[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace

CountReport BruteForceCount(const LatinHypercube& q, std::uint64_t budget) {
  const int d = q.dimension();
  const std::uint64_t specs = CheckedPow(q.order(), 2 * d);
  std::uint64_t pairs = 0;
  if (__builtin_mul_overflow(specs, specs, &pairs) || pairs > budget) {
    throw BudgetExceeded("brute-force count needs " + std::to_string(specs) +
                         "^2 submatrix pairs, budget is " +
                         std::to_string(budget));
  }
  const std::vector<Submatrix> all = AllSubmatrices(q);
  const auto cells = q.cells();
  std::vector<std::uint64_t> counts(d + 1, 0);
  std::vector<std::uint64_t> submatrices(d + 1, 0);
  for (const Submatrix& a : all) {
    ++submatrices[a.dimension];
    for (const Submatrix& b : all) {
      bool same = true;
      for (std::size_t sel = 0; sel < a.cells.size() && same; ++sel) {
        same = cells[a.cells[sel]] == cells[b.cells[sel]];
      }
      if (!same) continue;
      if (a.dimension != b.dimension) {
        throw CountInvariantError(
            "matching submatrices of different dimension in a latin hypercube");
      }
      ++counts[a.dimension];
    }
  }
  return MakeCountReport(d, q.order(), std::move(counts), submatrices);
}

}  // namespace latinhc
