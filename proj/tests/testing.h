#ifndef LATINHC_TESTS_TESTING_H_
#define LATINHC_TESTS_TESTING_H_

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "latinhc/hypercube.h"
#include "latinhc/io.h"

namespace latinhc::testing {

inline LatinHypercube LoadFixture(const std::string& name) {
  return ReadHypercubeFile(std::string(LATINHC_FIXTURE_DIR) + "/" + name);
}

inline std::vector<int> RandomPermutation(std::mt19937_64& rng, int size) {
  std::vector<int> p(size);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Isotopy RandomIsotopy(std::mt19937_64& rng, int dimension, int order) {
  Isotopy iso;
  for (int i = 0; i < dimension; ++i) {
    iso.axis_perms.push_back(RandomPermutation(rng, order));
  }
  iso.symbol_perm = RandomPermutation(rng, order);
  return iso;
}

// Cayley table of S_3 with the permutations of {0,1,2} numbered in
// lexicographic order and (a*b)(x) = a(b(x)).
inline LatinHypercube SymmetricGroupS3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
  std::vector<Symbol> cells;
  for (const auto& a : perms) {
    for (const auto& b : perms) {
      std::array<int, 3> ab{a[b[0]], a[b[1]], a[b[2]]};
      cells.push_back(static_cast<Symbol>(
          std::find(perms.begin(), perms.end(), ab) - perms.begin()));
    }
  }
  return LatinHypercube(2, 6, std::move(cells));
}

// Every latin square of order n, by filling cells in storage order with
// every symbol and rejecting row/column repeats. Independent of the
// reduced-square generator; fine up to n = 4 (576 squares).
inline std::vector<std::vector<Symbol>> AllLatinSquares(int n) {
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> cells(n * n, 0);
  auto ok = [&](int pos) {
    const int r = pos / n, c = pos % n;
    for (int i = 0; i < c; ++i) if (cells[r * n + i] == cells[pos]) return false;
    for (int i = 0; i < r; ++i) if (cells[i * n + c] == cells[pos]) return false;
    return true;
  };
  auto fill = [&](auto&& self, int pos) -> void {
    if (pos == n * n) {
      out.push_back(cells);
      return;
    }
    for (int s = 0; s < n; ++s) {
      cells[pos] = static_cast<Symbol>(s);
      if (ok(pos)) self(self, pos + 1);
    }
  };
  fill(fill, 0);
  return out;
}

// Reduced form of a square: permute columns so row 0 reads 0..n-1, then
// rows so column 0 reads 0..n-1. Well defined only once the symbols are the
// standard alphabet; used to reduce the brute-force enumeration above.
inline std::vector<Symbol> NormalizeFirstRowAndColumn(std::vector<Symbol> cells,
                                                      int n) {
  std::vector<Symbol> by_col(n * n);
  for (int c = 0; c < n; ++c) {
    const int target = cells[c];
    for (int r = 0; r < n; ++r) by_col[r * n + target] = cells[r * n + c];
  }
  std::vector<Symbol> out(n * n);
  for (int r = 0; r < n; ++r) {
    const int target = by_col[r * n];
    for (int c = 0; c < n; ++c) out[target * n + c] = by_col[r * n + c];
  }
  return out;
}

}  // namespace latinhc::testing

#endif  // LATINHC_TESTS_TESTING_H_
