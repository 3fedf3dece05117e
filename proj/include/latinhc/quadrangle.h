#ifndef LATINHC_QUADRANGLE_H_
#define LATINHC_QUADRANGLE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "latinhc/hypercube.h"

namespace latinhc {

// Three equivalent tests for a hypercube with the maximum number of
// cuboctahedra: every bundle filling determines its subcube, every 2-plane
// direction is a single principal-isotopy class of a group-isotopic square,
// and the count equals n^{3d-1}.

// Order-2 subsquare at rows (r1, r2), columns (c1, c2); symbols read
// (r1,c1), (r1,c2), (r2,c1), (r2,c2).
struct Subsquare {
  std::array<int, 2> rows{};
  std::array<int, 2> cols{};
  std::array<Symbol, 4> symbols{};
};

struct QuadrangleResult {
  bool group_isotopic = false;
  // Two subsquares agreeing in three symbols and differing in the fourth.
  std::optional<std::array<Subsquare, 2>> conflict;
};

// Quadrangle criterion: every (a, b, c) spanning a subsquare a b / c * fixes
// the fourth symbol. Equivalent to c_2 reaching n^3 (n-1)^2.
QuadrangleResult CheckQuadrangleCriterion(const LatinHypercube& square);

inline bool IsGroupIsotopic(const LatinHypercube& square) {
  return CheckQuadrangleCriterion(square).group_isotopic;
}

// For each row r: columns permuted so row r reads 0..n-1, then rows
// permuted so column 0 reads 0..n-1. Two squares are principally isotopic
// iff their sets coincide (and iff they intersect).
using ReducedFormSet = std::set<LatinHypercube>;

ReducedFormSet ReducedForms(const LatinHypercube& square);

// Throws std::invalid_argument on order or dimension mismatch.
bool PrincipallyIsotopic(const LatinHypercube& a, const LatinHypercube& b);

struct Bundle {
  Index base;
  std::vector<int> neighbors;  // coordinate of alpha^i on axis i, != base[i]
};

struct BundleConflict {
  Bundle first;
  Bundle second;
  std::vector<Symbol> bundle_filling;    // q at base, then at each neighbor
  std::vector<Symbol> first_subcube;     // 2^d symbols, selectors lexicographic
  std::vector<Symbol> second_subcube;
};

struct BundleCheckResult {
  bool determines_subcube = false;
  std::uint64_t bundles_checked = 0;
  std::optional<BundleConflict> conflict;  // first in lexicographic bundle order
};

// Visits every non-degenerate bundle (base, then neighbors, lexicographic)
// and checks that equal fillings span equally filled subcubes.
BundleCheckResult CheckBundlesDetermineSubcubes(const LatinHypercube& q);

struct PlaneMismatch {
  PlaneSelector first;
  PlaneSelector second;
};

struct DirectionVerdict {
  int row_axis = 0;
  int col_axis = 1;
  std::size_t planes = 0;
  bool shared_forms = false;
  bool group_isotopic = false;
  ReducedFormSet forms;                     // of the first plane
  std::optional<PlaneMismatch> mismatch;    // first plane vs. first differing
  std::optional<std::array<Subsquare, 2>> quadrangle_conflict;

  bool passes() const { return shared_forms && group_isotopic; }
};

struct PlaneCriterionReport {
  std::vector<DirectionVerdict> directions;
  bool overall = false;
};

// Every plane of each direction must share one reduced-form set whose
// members satisfy the quadrangle criterion. A 1-dimensional hypercube has no
// planes and passes.
PlaneCriterionReport CheckPlaneCriterion(const LatinHypercube& q);

}  // namespace latinhc

#endif  // LATINHC_QUADRANGLE_H_
