#ifndef LATINHC_HYPERCUBE_H_
#define LATINHC_HYPERCUBE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latinhc {

using Symbol = std::uint8_t;

// Largest order whose symbols fit in a Symbol.
inline constexpr int kMaxOrder = 255;

// Coordinates of a cell, one per axis, axis 0 first.
using Index = std::vector<int>;

// A line whose n cells do not hold n distinct symbols.
struct LineViolation {
  int axis = 0;         // the coordinate that varies along the line
  Index through;        // the line's cell with coordinate 0 on `axis`
  Symbol repeated = 0;  // a symbol seen twice on the line

  std::string Describe() const;
};

class NotLatinError : public std::invalid_argument {
 public:
  explicit NotLatinError(LineViolation violation);
  const LineViolation& violation() const { return violation_; }

 private:
  LineViolation violation_;
};

// Checks the shape and the latin property of a raw cell array in storage
// order (row-major, last coordinate fastest). Shape problems (length, symbol
// range) throw std::invalid_argument; a repeated symbol on a line is
// returned, the first one in (axis, storage order).
std::optional<LineViolation> FindLineViolation(int dimension, int order,
                                               std::span<const Symbol> cells);

// A d-dimensional latin hypercube of order n over the symbols 0..n-1.
//
// Cells are stored row-major with the last coordinate varying fastest. The
// latin property is checked on construction, so every instance is valid.
class LatinHypercube {
 public:
  // Throws std::invalid_argument on bad shape, NotLatinError on a repeated
  // symbol in some line.
  LatinHypercube(int dimension, int order, std::vector<Symbol> cells);

  int dimension() const { return dimension_; }
  int order() const { return order_; }
  std::size_t size() const { return cells_.size(); }
  std::span<const Symbol> cells() const { return cells_; }

  // Distance in storage between cells that differ by one on `axis`.
  std::size_t stride(int axis) const { return strides_[axis]; }

  Symbol at(std::size_t offset) const { return cells_[offset]; }
  Symbol at(const Index& index) const { return cells_[OffsetOf(index)]; }

  std::size_t OffsetOf(const Index& index) const;
  Index IndexOf(std::size_t offset) const;

  friend bool operator==(const LatinHypercube& a, const LatinHypercube& b) {
    return a.dimension_ == b.dimension_ && a.order_ == b.order_ &&
           a.cells_ == b.cells_;
  }
  // Orders by shape, then lexicographically by cell sequence.
  friend std::strong_ordering operator<=>(const LatinHypercube& a,
                                          const LatinHypercube& b);

 private:
  int dimension_;
  int order_;
  std::vector<Symbol> cells_;
  std::vector<std::size_t> strides_;
};

// Always empty for a constructed hypercube; kept for callers that hold a
// hypercube from an untrusted path and want the check spelled out.
std::optional<LineViolation> Validate(const LatinHypercube& q);

// n^d, throwing std::overflow_error when it does not fit in size_t.
std::size_t CellCount(int dimension, int order);

// A 2-dimensional plane: axes (row_axis, col_axis) vary, every other axis is
// pinned to the matching entry of `fixed` (listed in increasing axis order).
struct PlaneSelector {
  int row_axis = 0;
  int col_axis = 1;
  std::vector<int> fixed;
};

// The n x n square whose (r, c) entry is the cell with coordinate r on
// row_axis and c on col_axis.
LatinHypercube ExtractPlane(const LatinHypercube& q, const PlaneSelector& sel);

// All n^{d-2} selectors of direction (row_axis, col_axis), with the fixed
// coordinates in lexicographic order.
std::vector<PlaneSelector> PlanesOfDirection(const LatinHypercube& q,
                                             int row_axis, int col_axis);

// Permutations of parallel hyperplanes (one per axis) and of symbols.
// Each permutation maps an old value to its new value.
struct Isotopy {
  std::vector<std::vector<int>> axis_perms;
  std::vector<int> symbol_perm;

  static Isotopy Identity(int dimension, int order);
  Isotopy Inverse() const;
};

// Cell alpha of q with symbol s lands at (axis_perms[i][alpha_i])_i holding
// symbol_perm[s].
LatinHypercube ApplyIsotopy(const LatinHypercube& q, const Isotopy& iso);

// Permutation of the d+1 roles of the relation x_0 = q(x_1, ..., x_d); role 0
// is the symbol. Role r of the result carries role pi[r] of the source.
struct Conjugation {
  std::vector<int> pi;

  static Conjugation Identity(int dimension);
};

LatinHypercube Conjugate(const LatinHypercube& q, const Conjugation& c);

// Applying `first` and then `second` equals applying Compose(first, second):
// result[r] = first.pi[second.pi[r]].
Conjugation Compose(const Conjugation& first, const Conjugation& second);

// Cayley table of Z_n: q(a, b) = (a + b) mod n.
LatinHypercube CyclicGroupSquare(int order);

// The (k+1)-ary operation x_0 = f(...f(f(x_1, x_2), x_3)..., x_{k+1}).
LatinHypercube IterateQuasigroup(const LatinHypercube& f, int iterations);

// Iterated Z_n of the given dimension (x_0 = x_1 + ... + x_d mod n).
LatinHypercube IteratedCyclicGroup(int order, int dimension);

// Composition h of f (d_f-ary) and g (d_g-ary) of equal order, of arity
// d_f + d_g - 1, defined by
//
//   h(x_0, ..., x_{m-2}) = x_{m-1}  <=>
//   g(x_{sigma[0]}, ..., x_{sigma[d_g-1]}) = f(x_{sigma[d_g]}, ..., x_{sigma[m-1]})
//
// where m = d_f + d_g and sigma is a permutation of 0..m-1 (argument slot ->
// variable). The output variable x_{m-1} is solved for on whichever side it
// appears; with it among f's arguments, g is evaluated and f is inverted.
LatinHypercube ComposeQuasigroups(const LatinHypercube& f,
                                  const LatinHypercube& g,
                                  std::span<const int> sigma);

// True iff `perm` is a permutation of 0..size-1.
bool IsPermutation(std::span<const int> perm, int size);

}  // namespace latinhc

#endif  // LATINHC_HYPERCUBE_H_
