#include "latinhc/hypercube.h"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <sstream>
#include <utility>

namespace latinhc {
namespace {

std::vector<std::size_t> MakeStrides(int dimension, int order) {
  std::vector<std::size_t> strides(dimension);
  std::size_t stride = 1;
  for (int axis = dimension - 1; axis >= 0; --axis) {
    strides[axis] = stride;
    stride *= static_cast<std::size_t>(order);
  }
  return strides;
}

void CheckShape(int dimension, int order) {
  if (dimension < 1) {
    throw std::invalid_argument("dimension must be at least 1");
  }
  if (order < 1 || order > kMaxOrder) {
    throw std::invalid_argument("order must be in 1.." +
                                std::to_string(kMaxOrder));
  }
}

// Advances `index` to the next tuple in lexicographic order, last coordinate
// fastest, skipping `frozen_axis` (-1 for none). Returns false on wrap.
bool Advance(Index& index, int order, int frozen_axis = -1) {
  for (int axis = static_cast<int>(index.size()) - 1; axis >= 0; --axis) {
    if (axis == frozen_axis) continue;
    if (++index[axis] < order) return true;
    index[axis] = 0;
  }
  return false;
}

std::string FormatIndex(const Index& index, int wildcard_axis) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i > 0) out << ", ";
    if (static_cast<int>(i) == wildcard_axis) {
      out << '*';
    } else {
      out << index[i];
    }
  }
  out << ')';
  return out.str();
}

}  // namespace

std::string LineViolation::Describe() const {
  std::ostringstream out;
  out << "line along axis " << axis << " through "
      << FormatIndex(through, axis);
  if (through.size() == 2) {
    if (axis == 0) {
      out << " (column " << through[1] << ")";
    } else {
      out << " (row " << through[0] << ")";
    }
  }
  out << " repeats symbol " << static_cast<int>(repeated);
  return out.str();
}

NotLatinError::NotLatinError(LineViolation violation)
    : std::invalid_argument("not a latin hypercube: " + violation.Describe()),
      violation_(std::move(violation)) {}

std::size_t CellCount(int dimension, int order) {
  std::size_t count = 1;
  for (int i = 0; i < dimension; ++i) {
    if (__builtin_mul_overflow(count, static_cast<std::size_t>(order),
                               &count)) {
      throw std::overflow_error("n^d does not fit in memory");
    }
  }
  return count;
}

std::optional<LineViolation> FindLineViolation(int dimension, int order,
                                               std::span<const Symbol> cells) {
  CheckShape(dimension, order);
  if (cells.size() != CellCount(dimension, order)) {
    throw std::invalid_argument(
        "expected " + std::to_string(CellCount(dimension, order)) +
        " cells, got " + std::to_string(cells.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] >= order) {
      throw std::invalid_argument("symbol " + std::to_string(cells[i]) +
                                  " at cell " + std::to_string(i) +
                                  " is out of range 0.." +
                                  std::to_string(order - 1));
    }
  }
  const std::vector<std::size_t> strides = MakeStrides(dimension, order);
  for (int axis = 0; axis < dimension; ++axis) {
    Index start(dimension, 0);
    do {
      std::size_t offset = 0;
      for (int i = 0; i < dimension; ++i) offset += start[i] * strides[i];
      std::bitset<kMaxOrder + 1> seen;
      for (int step = 0; step < order; ++step) {
        const Symbol s = cells[offset + step * strides[axis]];
        if (seen.test(s)) return LineViolation{axis, start, s};
        seen.set(s);
      }
    } while (Advance(start, order, axis));
  }
  return std::nullopt;
}

LatinHypercube::LatinHypercube(int dimension, int order,
                               std::vector<Symbol> cells)
    : dimension_(dimension), order_(order), cells_(std::move(cells)) {
  if (auto violation = FindLineViolation(dimension_, order_, cells_)) {
    throw NotLatinError(*std::move(violation));
  }
  strides_ = MakeStrides(dimension_, order_);
}

std::size_t LatinHypercube::OffsetOf(const Index& index) const {
  if (static_cast<int>(index.size()) != dimension_) {
    throw std::invalid_argument("index arity does not match dimension");
  }
  std::size_t offset = 0;
  for (int axis = 0; axis < dimension_; ++axis) {
    if (index[axis] < 0 || index[axis] >= order_) {
      throw std::out_of_range("coordinate out of range");
    }
    offset += index[axis] * strides_[axis];
  }
  return offset;
}

Index LatinHypercube::IndexOf(std::size_t offset) const {
  Index index(dimension_);
  for (int axis = 0; axis < dimension_; ++axis) {
    index[axis] = static_cast<int>(offset / strides_[axis]);
    offset %= strides_[axis];
  }
  return index;
}

std::strong_ordering operator<=>(const LatinHypercube& a,
                                 const LatinHypercube& b) {
  if (auto c = a.dimension_ <=> b.dimension_; c != 0) return c;
  if (auto c = a.order_ <=> b.order_; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end());
}

std::optional<LineViolation> Validate(const LatinHypercube& q) {
  return FindLineViolation(q.dimension(), q.order(), q.cells());
}

bool IsPermutation(std::span<const int> perm, int size) {
  if (static_cast<int>(perm.size()) != size) return false;
  std::vector<bool> seen(size, false);
  for (int v : perm) {
    if (v < 0 || v >= size || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

LatinHypercube ExtractPlane(const LatinHypercube& q, const PlaneSelector& sel) {
  const int d = q.dimension();
  const int n = q.order();
  if (d < 2) throw std::invalid_argument("planes need dimension >= 2");
  if (sel.row_axis < 0 || sel.col_axis < 0 || sel.row_axis >= d ||
      sel.col_axis >= d || sel.row_axis == sel.col_axis) {
    throw std::invalid_argument("plane selector axis out of range");
  }
  if (static_cast<int>(sel.fixed.size()) != d - 2) {
    throw std::invalid_argument("plane selector needs " +
                                std::to_string(d - 2) + " fixed values");
  }
  Index base(d, 0);
  for (int axis = 0, k = 0; axis < d; ++axis) {
    if (axis == sel.row_axis || axis == sel.col_axis) continue;
    if (sel.fixed[k] < 0 || sel.fixed[k] >= n) {
      throw std::invalid_argument("fixed coordinate out of range");
    }
    base[axis] = sel.fixed[k++];
  }
  const std::size_t origin = q.OffsetOf(base);
  std::vector<Symbol> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      cells.push_back(
          q.at(origin + r * q.stride(sel.row_axis) + c * q.stride(sel.col_axis)));
    }
  }
  return LatinHypercube(2, n, std::move(cells));
}

std::vector<PlaneSelector> PlanesOfDirection(const LatinHypercube& q,
                                             int row_axis, int col_axis) {
  const int d = q.dimension();
  std::vector<PlaneSelector> planes;
  std::vector<int> fixed(d - 2, 0);
  do {
    planes.push_back(PlaneSelector{row_axis, col_axis, fixed});
  } while (!fixed.empty() && Advance(fixed, q.order()));
  return planes;
}

Isotopy Isotopy::Identity(int dimension, int order) {
  std::vector<int> id(order);
  std::iota(id.begin(), id.end(), 0);
  return Isotopy{std::vector<std::vector<int>>(dimension, id), id};
}

Isotopy Isotopy::Inverse() const {
  auto invert = [](const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
  };
  Isotopy inv;
  for (const auto& p : axis_perms) inv.axis_perms.push_back(invert(p));
  inv.symbol_perm = invert(symbol_perm);
  return inv;
}

LatinHypercube ApplyIsotopy(const LatinHypercube& q, const Isotopy& iso) {
  const int d = q.dimension();
  const int n = q.order();
  if (static_cast<int>(iso.axis_perms.size()) != d) {
    throw std::invalid_argument("isotopy has wrong number of axis permutations");
  }
  for (const auto& p : iso.axis_perms) {
    if (!IsPermutation(p, n)) {
      throw std::invalid_argument("isotopy axis map is not a permutation");
    }
  }
  if (!IsPermutation(iso.symbol_perm, n)) {
    throw std::invalid_argument("isotopy symbol map is not a permutation");
  }
  std::vector<Symbol> cells(q.size());
  for (std::size_t offset = 0; offset < q.size(); ++offset) {
    std::size_t rest = offset;
    std::size_t target = 0;
    for (int axis = 0; axis < d; ++axis) {
      const auto coord = rest / q.stride(axis);
      rest %= q.stride(axis);
      target += iso.axis_perms[axis][coord] * q.stride(axis);
    }
    cells[target] = static_cast<Symbol>(iso.symbol_perm[q.at(offset)]);
  }
  return LatinHypercube(d, n, std::move(cells));
}

Conjugation Conjugation::Identity(int dimension) {
  Conjugation c;
  c.pi.resize(dimension + 1);
  std::iota(c.pi.begin(), c.pi.end(), 0);
  return c;
}

Conjugation Compose(const Conjugation& first, const Conjugation& second) {
  if (first.pi.size() != second.pi.size()) {
    throw std::invalid_argument("conjugations of different arity");
  }
  Conjugation result;
  result.pi.resize(first.pi.size());
  for (std::size_t r = 0; r < first.pi.size(); ++r) {
    result.pi[r] = first.pi[second.pi[r]];
  }
  return result;
}

LatinHypercube Conjugate(const LatinHypercube& q, const Conjugation& c) {
  const int d = q.dimension();
  if (!IsPermutation(c.pi, d + 1)) {
    throw std::invalid_argument("conjugation must permute " +
                                std::to_string(d + 1) + " roles");
  }
  std::vector<Symbol> cells(q.size());
  std::vector<int> roles(d + 1);
  for (std::size_t offset = 0; offset < q.size(); ++offset) {
    roles[0] = q.at(offset);
    std::size_t rest = offset;
    for (int axis = 0; axis < d; ++axis) {
      roles[axis + 1] = static_cast<int>(rest / q.stride(axis));
      rest %= q.stride(axis);
    }
    std::size_t target = 0;
    for (int axis = 0; axis < d; ++axis) {
      target += roles[c.pi[axis + 1]] * q.stride(axis);
    }
    cells[target] = static_cast<Symbol>(roles[c.pi[0]]);
  }
  return LatinHypercube(d, q.order(), std::move(cells));
}

LatinHypercube CyclicGroupSquare(int order) {
  CheckShape(2, order);
  std::vector<Symbol> cells;
  cells.reserve(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      cells.push_back(static_cast<Symbol>((a + b) % order));
    }
  }
  return LatinHypercube(2, order, std::move(cells));
}

LatinHypercube IterateQuasigroup(const LatinHypercube& f, int iterations) {
  if (f.dimension() != 2) {
    throw std::invalid_argument("iteration needs a latin square");
  }
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  const int n = f.order();
  const int d = iterations + 1;
  std::vector<Symbol> cells(CellCount(d, n));
  Index x(d, 0);
  std::size_t offset = 0;
  do {
    int value = x[0];
    for (int i = 1; i < d; ++i) value = f.at(value * n + x[i]);
    cells[offset++] = static_cast<Symbol>(value);
  } while (Advance(x, n));
  return LatinHypercube(d, n, std::move(cells));
}

LatinHypercube IteratedCyclicGroup(int order, int dimension) {
  if (dimension == 1) {
    CheckShape(1, order);
    std::vector<Symbol> cells(order);
    std::iota(cells.begin(), cells.end(), Symbol{0});
    return LatinHypercube(1, order, std::move(cells));
  }
  return IterateQuasigroup(CyclicGroupSquare(order), dimension - 1);
}

LatinHypercube ComposeQuasigroups(const LatinHypercube& f,
                                  const LatinHypercube& g,
                                  std::span<const int> sigma) {
  if (f.order() != g.order()) {
    throw std::invalid_argument("composed quasigroups must have equal order");
  }
  const int n = f.order();
  const int df = f.dimension();
  const int dg = g.dimension();
  const int m = df + dg;
  if (!IsPermutation(sigma, m)) {
    throw std::invalid_argument("sigma must permute " + std::to_string(m) +
                                " argument slots");
  }
  const int d = m - 1;
  const int output_slot = static_cast<int>(
      std::find(sigma.begin(), sigma.end(), m - 1) - sigma.begin());
  const bool output_in_g = output_slot < dg;

  // Storage offset of the argument tuple of f (first = dg) or g (first = 0).
  auto offset_of = [&](const LatinHypercube& q, int first,
                       const std::vector<int>& vars) {
    std::size_t offset = 0;
    for (int a = 0; a < q.dimension(); ++a) {
      offset += vars[sigma[first + a]] * q.stride(a);
    }
    return offset;
  };

  std::vector<Symbol> cells(CellCount(d, n));
  std::vector<int> vars(m, 0);
  Index x(d, 0);
  std::size_t offset = 0;
  do {
    std::copy(x.begin(), x.end(), vars.begin());
    const LatinHypercube& known = output_in_g ? f : g;
    const LatinHypercube& solved = output_in_g ? g : f;
    const int known_first = output_in_g ? dg : 0;
    const int solved_first = output_in_g ? 0 : dg;
    vars[m - 1] = 0;
    const Symbol target = known.at(offset_of(known, known_first, vars));
    int solution = -1;
    for (int t = 0; t < n; ++t) {
      vars[m - 1] = t;
      if (solved.at(offset_of(solved, solved_first, vars)) == target) {
        solution = t;
        break;
      }
    }
    cells[offset++] = static_cast<Symbol>(solution);
  } while (Advance(x, n));
  return LatinHypercube(d, n, std::move(cells));
}

}  // namespace latinhc
