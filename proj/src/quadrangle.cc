#include "latinhc/quadrangle.h"

#include <map>
#include <utility>

namespace latinhc {
namespace {

void RequireSquare(const LatinHypercube& q) {
  if (q.dimension() != 2) {
    throw std::invalid_argument("expected a latin square (dimension 2)");
  }
}

}  // namespace

QuadrangleResult CheckQuadrangleCriterion(const LatinHypercube& square) {
  RequireSquare(square);
  const int n = square.order();
  auto at = [&](int r, int c) { return square.at(static_cast<std::size_t>(r) * n + c); };
  // First subsquare seen for each (a, b, c), indexed a*n*n + b*n + c.
  std::vector<std::optional<Subsquare>> seen(static_cast<std::size_t>(n) * n * n);
  for (int r1 = 0; r1 < n; ++r1) {
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == r1) continue;
      for (int c1 = 0; c1 < n; ++c1) {
        for (int c2 = 0; c2 < n; ++c2) {
          if (c2 == c1) continue;
          const Subsquare s{{r1, r2}, {c1, c2},
                            {at(r1, c1), at(r1, c2), at(r2, c1), at(r2, c2)}};
          auto& slot = seen[(static_cast<std::size_t>(s.symbols[0]) * n +
                             s.symbols[1]) * n + s.symbols[2]];
          if (!slot) {
            slot = s;
          } else if (slot->symbols[3] != s.symbols[3]) {
            return QuadrangleResult{false, std::array<Subsquare, 2>{*slot, s}};
          }
        }
      }
    }
  }
  return QuadrangleResult{true, std::nullopt};
}

ReducedFormSet ReducedForms(const LatinHypercube& square) {
  RequireSquare(square);
  const int n = square.order();
  const auto cells = square.cells();
  ReducedFormSet forms;
  std::vector<int> col_of(n);
  std::vector<Symbol> by_col(cells.size());
  std::vector<Symbol> reduced(cells.size());
  for (int lead = 0; lead < n; ++lead) {
    for (int c = 0; c < n; ++c) col_of[cells[lead * n + c]] = c;
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < n; ++j) by_col[r * n + j] = cells[r * n + col_of[j]];
    }
    for (int r = 0; r < n; ++r) {
      const int target = by_col[r * n];
      std::copy_n(by_col.begin() + r * n, n, reduced.begin() + target * n);
    }
    forms.emplace(2, n, reduced);
  }
  return forms;
}

bool PrincipallyIsotopic(const LatinHypercube& a, const LatinHypercube& b) {
  RequireSquare(a);
  RequireSquare(b);
  if (a.order() != b.order()) {
    throw std::invalid_argument("principal isotopy needs equal orders");
  }
  return ReducedForms(a) == ReducedForms(b);
}

BundleCheckResult CheckBundlesDetermineSubcubes(const LatinHypercube& q) {
  const int d = q.dimension();
  const int n = q.order();
  const std::size_t corners = std::size_t{1} << d;
  struct Seen {
    std::vector<Symbol> subcube;
    Bundle bundle;
  };
  std::map<std::vector<Symbol>, Seen> by_filling;
  BundleCheckResult result;
  if (n < 2) {
    result.determines_subcube = true;
    return result;
  }

  std::vector<Symbol> filling(d + 1);
  std::vector<Symbol> subcube(corners);
  std::vector<int> offset(d);
  for (std::size_t base = 0; base < q.size(); ++base) {
    const Index index = q.IndexOf(base);
    std::fill(offset.begin(), offset.end(), 1);
    while (true) {
      // Neighbor coordinate on axis i, enumerated in increasing value order.
      std::vector<int> neighbors(d);
      std::vector<long> delta(d);
      for (int i = 0; i < d; ++i) {
        neighbors[i] = offset[i] - 1 < index[i] ? offset[i] - 1 : offset[i];
        delta[i] = (static_cast<long>(neighbors[i]) - index[i]) *
                   static_cast<long>(q.stride(i));
      }
      filling[0] = q.at(base);
      for (int i = 0; i < d; ++i) filling[i + 1] = q.at(base + delta[i]);
      for (std::size_t sel = 0; sel < corners; ++sel) {
        long shift = 0;
        for (int i = 0; i < d; ++i) {
          if ((sel >> (d - 1 - i)) & 1u) shift += delta[i];
        }
        subcube[sel] = q.at(base + shift);
      }
      ++result.bundles_checked;
      auto [it, inserted] =
          by_filling.try_emplace(filling, Seen{subcube, Bundle{index, neighbors}});
      if (!inserted && it->second.subcube != subcube) {
        result.conflict = BundleConflict{it->second.bundle,
                                         Bundle{index, neighbors}, filling,
                                         it->second.subcube, subcube};
        return result;
      }
      int i = d - 1;
      while (i >= 0 && ++offset[i] == n) offset[i--] = 1;
      if (i < 0) break;
    }
  }
  result.determines_subcube = true;
  return result;
}

PlaneCriterionReport CheckPlaneCriterion(const LatinHypercube& q) {
  PlaneCriterionReport report;
  const int d = q.dimension();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      DirectionVerdict verdict;
      verdict.row_axis = i;
      verdict.col_axis = j;
      const std::vector<PlaneSelector> planes = PlanesOfDirection(q, i, j);
      verdict.planes = planes.size();
      const LatinHypercube first = ExtractPlane(q, planes.front());
      verdict.forms = ReducedForms(first);
      verdict.shared_forms = true;
      for (std::size_t p = 1; p < planes.size(); ++p) {
        if (ReducedForms(ExtractPlane(q, planes[p])) != verdict.forms) {
          verdict.shared_forms = false;
          verdict.mismatch = PlaneMismatch{planes.front(), planes[p]};
          break;
        }
      }
      QuadrangleResult quad = CheckQuadrangleCriterion(first);
      verdict.group_isotopic = quad.group_isotopic;
      verdict.quadrangle_conflict = std::move(quad.conflict);
      report.directions.push_back(std::move(verdict));
    }
  }
  report.overall = true;
  for (const auto& v : report.directions) report.overall &= v.passes();
  return report;
}

}  // namespace latinhc
