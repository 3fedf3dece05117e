#include "latinhc/bounds.h"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

namespace latinhc {
namespace {

BigInt Pow(int base, int exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

BigInt Choose(int n, int k) { return BigInt(Binomial(n, k)); }

BigInt Degenerate(int n, int d, int k) {
  return Choose(d, k) * Pow(n, d) * Pow(n - 1, k);
}

// Closed forms take any order; anything that builds patterns is limited to
// the symbol range.
void CheckFormulaShape(int order, int dimension) {
  if (order < 1 || dimension < 1) {
    throw std::invalid_argument("bounds need order >= 1 and dimension >= 1");
  }
}

void CheckShape(int order, int dimension) {
  if (order < 1 || order > kMaxOrder || dimension < 1) {
    throw std::invalid_argument("bounds need order in [1, " +
                                std::to_string(kMaxOrder) +
                                "] and dimension >= 1");
  }
}

// Tabulated per-k lower bounds and their totals, by (order, dimension).
struct Reference {
  int order;
  int dimension;
  std::vector<std::uint64_t> per_k;
  std::uint64_t total;
};

const std::vector<Reference>& References() {
  static const std::vector<Reference> table = {
      {5, 2, {125, 1000, 680}, 1805},
      {6, 2, {216, 2160, 1440}, 3816},
      {7, 2, {343, 4116, 2688}, 7147},
      {4, 3, {1024, 9216, 12288, 1728}, 24256},
      {5, 3, {3125, 37500, 43440, 3375}, 87440},
      {4, 4, {16384, 196608, 390240, 56448, 20736}, 680416},
      {5, 4, {78125, 1250000, 2277600, 160000, 160000}, 3925725},
  };
  return table;
}

const Reference* FindReference(int order, int dimension) {
  for (const Reference& r : References()) {
    if (r.order == order && r.dimension == dimension) return &r;
  }
  return nullptr;
}

std::uint64_t MulChecked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("completion count exceeds 64 bits");
  }
  return out;
}

std::uint64_t AddChecked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("completion count exceeds 64 bits");
  }
  return out;
}

// Counts proper fillings of the free cells in selector order. Symbols that
// appear nowhere yet are interchangeable, so they are tried once and the
// branch is weighted by how many of them remain; the search tree then
// depends on the bundle's structure only, not on n.
class CompletionCounter {
 public:
  CompletionCounter(int order, int k, std::span<const Symbol> bundle)
      : order_(order), k_(k), cells_(std::size_t{1} << k, kUnset) {
    cells_[0] = bundle[0];
    for (int j = 0; j < k; ++j) cells_[std::size_t{1} << (k - 1 - j)] = bundle[j + 1];
    for (int v : cells_) {
      if (v != kUnset && std::find(seen_.begin(), seen_.end(), v) == seen_.end()) {
        seen_.push_back(v);
      }
    }
  }

  std::uint64_t Count() {
    for (std::size_t s = 0; s < cells_.size(); ++s) {
      if (cells_[s] == kUnset) continue;
      for (int b = 0; b < k_; ++b) {
        const std::size_t t = s ^ (std::size_t{1} << b);
        if (cells_[t] != kUnset && cells_[t] == cells_[s]) return 0;
      }
    }
    return Fill(0);
  }

 private:
  static constexpr int kUnset = -1;

  bool Clashes(std::size_t s, int value) const {
    for (int b = 0; b < k_; ++b) {
      if (cells_[s ^ (std::size_t{1} << b)] == value) return true;
    }
    return false;
  }

  std::uint64_t Fill(std::size_t s) {
    while (s < cells_.size() && cells_[s] != kUnset) ++s;
    if (s == cells_.size()) return 1;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < seen_.size(); ++i) {
      const int value = seen_[i];
      if (Clashes(s, value)) continue;
      cells_[s] = value;
      total = AddChecked(total, Fill(s + 1));
    }
    const int fresh = order_ - static_cast<int>(seen_.size());
    if (fresh > 0) {
      const int label = order_ + static_cast<int>(seen_.size());
      cells_[s] = label;
      seen_.push_back(label);
      total = AddChecked(total, MulChecked(static_cast<std::uint64_t>(fresh),
                                           Fill(s + 1)));
      seen_.pop_back();
    }
    cells_[s] = kUnset;
    return total;
  }

  int order_;
  int k_;
  std::vector<int> cells_;
  std::vector<int> seen_;
};

// Block sizes of the equality classes of `values`, largest first.
std::vector<int> BlockSizes(std::span<const Symbol> values) {
  std::map<Symbol, int> classes;
  for (Symbol v : values) ++classes[v];
  std::vector<int> sizes;
  for (const auto& [symbol, size] : classes) sizes.push_back(size);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace

std::string ToString(const BigInt& value) { return value.str(); }

SquareBoundParts ComputeSquareBoundParts(int order) {
  CheckFormulaShape(order, 2);
  const BigInt n = order;
  SquareBoundParts p;
  p.low_dimensional = 2 * n * n * n * n - n * n * n;
  p.degenerate = n * n * n * n - 2 * n * n * n + n * n;
  p.distinct_corners = 4 * n * n * n - 12 * n * n + 8 * n;
  p.repeated_corner = 2 * n * n - 2 * n;
  return p;
}

BigInt SquareLowerBound(int order) {
  return ComputeSquareBoundParts(order).total();
}

BigInt RepetitionFloor(int order, int dimension, int k) {
  CheckFormulaShape(order, dimension);
  if (k < 0 || k > dimension) throw std::invalid_argument("k out of range");
  const int exponent = (1 << k) - k - 1;
  if (order == 1) return exponent == 0 ? BigInt(1) : BigInt(0);
  return Pow(order, dimension - 1) / Pow(order - 1, exponent);
}

bool GenericTermApplies(int order, int dimension, int k) {
  return dimension >= 3 && order > dimension && k >= 2 && k <= dimension;
}

BigInt GenericNondegenerateTerm(int order, int dimension, int k) {
  if (!GenericTermApplies(order, dimension, k)) return 0;
  const BigInt r = RepetitionFloor(order, dimension, k);
  if (r < 2) return 0;
  return Choose(dimension, k) * order * Pow(order - dimension, (1 << k) - 1) *
         r * (r - 1);
}

BoundReport GenericLowerBound(int order, int dimension) {
  CheckFormulaShape(order, dimension);
  const int n = order;
  const int d = dimension;
  BoundReport r;
  r.order = n;
  r.dimension = d;
  r.base = Pow(n, 2 * d - 1) + d * Pow(n, 2 * d - 1) * (n - 1);
  r.per_k_nondegenerate.assign(d + 1, 0);
  BigInt terms = 0;
  for (int k = 2; k <= d; ++k) {
    r.degenerate_total += Degenerate(n, d, k);
    r.per_k_nondegenerate[k] = GenericNondegenerateTerm(n, d, k);
    terms += r.per_k_nondegenerate[k];
  }
  r.component_sum_total = r.base + r.degenerate_total + terms;
  r.closed_form_total = (d + 1) * Pow(n, 2 * d) -
                        (d - 1) * (Pow(n, 2 * d - 1) + Pow(n, d)) -
                        d * Pow(n, d + 1) + terms;
  if (d < 3 || n <= d) {
    r.notes.push_back("non-degenerate terms need d >= 3 and n > d; all zero here");
  }
  if (r.closed_form_total != r.component_sum_total) {
    r.notes.push_back(
        "closed form carries -(d-1) n^d where c_0 + c_1 + sum delta_k gives "
        "+(d-1) n^d; the two totals differ by " +
        ToString(r.component_sum_total - r.closed_form_total));
  }
  return r;
}

std::vector<PatternTypeStat> EnumerateBundlePatternTypes(int order, int k) {
  CheckShape(order, 1);
  if (k < 1) throw std::invalid_argument("pattern types need k >= 1");
  std::vector<PatternTypeStat> types;
  if (order < 2) return types;
  std::map<std::vector<int>, std::size_t> position;
  std::vector<Symbol> neighbors(k, 1);
  // Odometer over {1..n-1}^k in lexicographic order, so the first pattern
  // seen of each type is its representative.
  while (true) {
    std::vector<int> sizes = BlockSizes(neighbors);
    auto [it, inserted] = position.emplace(sizes, types.size());
    if (inserted) {
      PatternTypeStat t;
      t.k = k;
      t.block_sizes = std::move(sizes);
      t.representative.push_back(0);
      t.representative.insert(t.representative.end(), neighbors.begin(),
                              neighbors.end());
      types.push_back(std::move(t));
    }
    ++types[it->second].count;

    int i = k - 1;
    for (; i >= 0; --i) {
      if (++neighbors[i] < order) break;
      neighbors[i] = 1;
    }
    if (i < 0) break;
  }
  std::stable_sort(types.begin(), types.end(), [](const auto& a, const auto& b) {
    if (a.block_sizes.size() != b.block_sizes.size()) {
      return a.block_sizes.size() < b.block_sizes.size();
    }
    return a.block_sizes > b.block_sizes;
  });
  return types;
}

std::uint64_t CompletionCount(int order, int k, std::span<const Symbol> bundle) {
  CheckShape(order, 1);
  if (k < 0 || k > kMaxCompletionDimension) {
    throw std::invalid_argument("completion counts support 0 <= k <= " +
                                std::to_string(kMaxCompletionDimension));
  }
  if (bundle.size() != static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("bundle needs k + 1 symbols");
  }
  for (Symbol s : bundle) {
    if (s >= order) throw std::invalid_argument("bundle symbol out of range");
  }
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::vector<Symbol>>, std::uint64_t> memo;
  auto key = std::make_tuple(order, k, std::vector<Symbol>(bundle.begin(), bundle.end()));
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const std::uint64_t value = CompletionCounter(order, k, bundle).Count();
  std::lock_guard lock(mutex);
  memo.emplace(std::move(key), value);
  return value;
}

std::vector<PatternTypeStat> PatternTypeTable(int order, int dimension, int k) {
  CheckShape(order, dimension);
  std::vector<PatternTypeStat> types = EnumerateBundlePatternTypes(order, k);
  const BigInt cells = Pow(order, dimension - 1);
  for (PatternTypeStat& t : types) {
    const std::uint64_t p = CompletionCount(order, k, t.representative);
    t.completions = p;
    if (p == 0) {
      t.repetition_floor = 0;
    } else {
      const BigInt r = cells / p;
      t.repetition_floor = r > BigInt(UINT64_MAX)
                               ? UINT64_MAX
                               : static_cast<std::uint64_t>(r);
    }
  }
  return types;
}

RefinedBound RefinedLowerBoundK(int order, int dimension, int k) {
  CheckShape(order, dimension);
  if (k < 2 || k > dimension) {
    throw std::invalid_argument("refined bound needs 2 <= k <= d");
  }
  RefinedBound out;
  out.types = PatternTypeTable(order, dimension, k);
  BigInt sum = 0;
  for (const PatternTypeStat& t : out.types) {
    const BigInt r = *t.repetition_floor;
    if (r < 2) continue;
    sum += BigInt(t.count) * BigInt(*t.completions) * r * (r - 1);
  }
  out.value = BigInt(order) * Choose(dimension, k) * sum;
  return out;
}

LowerBoundTable AssembleLowerBoundTable(int order, int dimension) {
  CheckShape(order, dimension);
  const int n = order;
  const int d = dimension;
  LowerBoundTable table;
  table.order = n;
  table.dimension = d;
  const Reference* reference = FindReference(n, d);
  const SquareBoundParts square = ComputeSquareBoundParts(n);

  for (int k = 0; k <= d; ++k) {
    LowerBoundRow row;
    row.k = k;
    if (k == 0) {
      row.recipe = row.non_overlapping = Pow(n, 2 * d - 1);
    } else if (k == 1) {
      row.recipe = row.non_overlapping = d * Pow(n, 2 * d - 1) * (n - 1);
    } else {
      row.degenerate = Degenerate(n, d, k);
      if (k <= kMaxCompletionDimension) {
        row.refined = RefinedLowerBoundK(n, d, k).value;
      } else if (k == kMaxCompletionDimension + 1) {
        table.notes.push_back("refined bound skipped for k > " +
                              std::to_string(kMaxCompletionDimension));
      }
      row.generic = GenericNondegenerateTerm(n, d, k);
      const BigInt pigeonhole = row.degenerate + row.refined;
      if (d == 2) {
        row.recipe = row.non_overlapping = square.two_dimensional();
      } else if (k == 2) {
        const BigInt planes = Choose(d, 2) * Pow(n, d - 2);
        row.within_plane =
            planes * (n <= 4 ? Pow(n, 3) * Pow(n - 1, 2) : square.two_dimensional());
        row.recipe = pigeonhole;
        if (n <= 4) {
          row.plane_based = planes * Pow(n, 5);
          row.recipe = std::max(row.recipe, *row.plane_based);
        }
        row.non_overlapping = std::max(pigeonhole, *row.within_plane);
      } else {
        row.recipe = row.non_overlapping = pigeonhole;
      }
    }
    if (reference != nullptr) {
      row.reference = BigInt(reference->per_k[k]);
      if (*row.reference != row.recipe) {
        row.discrepancy = true;
        table.notes.push_back("k=" + std::to_string(k) + ": tabulated " +
                              ToString(*row.reference) + " differs from " +
                              ToString(row.recipe) +
                              " derived here; the tabulated value is used");
        row.recipe = *row.reference;
      }
    }
    table.recipe_total += row.recipe;
    table.non_overlapping_total += row.non_overlapping;
    table.rows.push_back(std::move(row));
  }
  if (reference != nullptr) {
    table.reference_total = BigInt(reference->total);
    if (*table.reference_total != table.recipe_total) {
      table.notes.push_back("tabulated total " + ToString(*table.reference_total) +
                            " differs from the row sum " +
                            ToString(table.recipe_total));
    }
  }
  if (d >= 3 && n <= 4) {
    table.notes.push_back(
        "k=2 plane-based figure counts all cuboctahedra inside planes, "
        "including those already in c_0 and c_1");
  }
  return table;
}

BoundComparison CompareWithBounds(const CountReport& counts) {
  const int n = counts.order;
  const int d = counts.dimension;
  const LowerBoundTable table = AssembleLowerBoundTable(n, d);
  BoundComparison out;
  out.order = n;
  out.dimension = d;
  out.measured_total = counts.total;
  out.non_overlapping_total = table.non_overlapping_total;
  out.max_total = counts.max_total;
  auto fail = [&](const std::string& what) {
    throw BoundViolation("order " + std::to_string(n) + " dimension " +
                         std::to_string(d) + ": " + what);
  };
  for (int k = 0; k <= d; ++k) {
    const LowerBoundRow& t = table.rows[k];
    BoundCheckRow row;
    row.k = k;
    row.measured = counts.per_dim_counts[k];
    row.degenerate = t.degenerate;
    row.refined_with_degenerate = k >= 2 ? t.degenerate + t.refined : t.non_overlapping;
    row.non_overlapping = t.non_overlapping;
    row.upper = counts.per_dim_upper[k];
    const BigInt measured = row.measured;
    if (measured < row.refined_with_degenerate || measured < row.non_overlapping) {
      fail("c_" + std::to_string(k) + " = " + ToString(measured) +
           " is below its lower bound");
    }
    if (measured > row.upper) {
      fail("c_" + std::to_string(k) + " exceeds its upper bound");
    }
    out.rows.push_back(std::move(row));
  }
  const BigInt total = counts.total;
  if (total < out.non_overlapping_total) fail("total is below the lower bound");
  if (total > out.max_total) fail("total exceeds n^{3d-1}");
  if (d == 2 && total < SquareLowerBound(n)) fail("total is below the square bound");
  if (d >= 3 && n > d) {
    out.generic_total = GenericLowerBound(n, d).component_sum_total;
    if (total < *out.generic_total) fail("total is below the generic bound");
  }
  return out;
}

}  // namespace latinhc
