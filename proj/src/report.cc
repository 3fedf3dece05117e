#include "latinhc/report.h"

#include <chrono>

#include "latinhc/io.h"

namespace latinhc {
namespace {

Json Symbols(std::span<const Symbol> symbols) {
  Json out = Json::array();
  for (Symbol s : symbols) out.push_back(static_cast<int>(s));
  return out;
}

Json SubsquareJson(const Subsquare& s) {
  return Json{{"rows", s.rows}, {"cols", s.cols}, {"symbols", Symbols(s.symbols)}};
}

Json BundleJson(const Bundle& b) {
  return Json{{"base", b.base}, {"neighbors", b.neighbors}};
}

Json SelectorJson(const PlaneSelector& p) {
  return Json{{"row_axis", p.row_axis}, {"col_axis", p.col_axis}, {"fixed", p.fixed}};
}

Json Verdict(bool pass) { return pass ? "pass" : "fail"; }

template <typename T>
Json BigArray(const std::vector<T>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(ToJson(BigInt(v)));
  return out;
}

}  // namespace

Json ToJson(const BigInt& value) {
  if (value >= 0 && value <= BigInt(UINT64_MAX)) {
    return static_cast<std::uint64_t>(value);
  }
  return value.str();
}

Json ToJson(const CountReport& r) {
  return Json{{"dimension", r.dimension},
              {"order", r.order},
              {"per_dim_counts", r.per_dim_counts},
              {"degenerate", r.degenerate},
              {"per_dim_upper", r.per_dim_upper},
              {"total", r.total},
              {"max_total", r.max_total},
              {"is_max", r.is_max}};
}

Json ToJson(const LineViolation& v) {
  return Json{{"axis", v.axis},
              {"through", v.through},
              {"repeated", static_cast<int>(v.repeated)},
              {"message", v.Describe()}};
}

Json ToJson(const QuadrangleResult& r) {
  Json out{{"verdict", Verdict(r.group_isotopic)}};
  if (r.conflict) {
    out["witness"] = Json::array({SubsquareJson((*r.conflict)[0]), SubsquareJson((*r.conflict)[1])});
  }
  return out;
}

Json ToJson(const BundleCheckResult& r) {
  Json out{{"verdict", Verdict(r.determines_subcube)},
           {"bundles_checked", r.bundles_checked}};
  if (r.conflict) {
    const BundleConflict& c = *r.conflict;
    out["witness"] = Json{{"first", BundleJson(c.first)},
                          {"second", BundleJson(c.second)},
                          {"bundle_filling", Symbols(c.bundle_filling)},
                          {"first_subcube", Symbols(c.first_subcube)},
                          {"second_subcube", Symbols(c.second_subcube)}};
  }
  return out;
}

Json ToJson(const PlaneCriterionReport& r) {
  Json directions = Json::array();
  for (const DirectionVerdict& v : r.directions) {
    Json d{{"row_axis", v.row_axis},
           {"col_axis", v.col_axis},
           {"planes", v.planes},
           {"reduced_forms", v.forms.size()},
           {"shared_forms", v.shared_forms},
           {"group_isotopic", v.group_isotopic},
           {"verdict", Verdict(v.passes())}};
    if (v.mismatch) {
      d["mismatch"] = Json{{"first", SelectorJson(v.mismatch->first)},
                           {"second", SelectorJson(v.mismatch->second)}};
    }
    if (v.quadrangle_conflict) {
      d["quadrangle_witness"] = Json::array(
          {SubsquareJson((*v.quadrangle_conflict)[0]), SubsquareJson((*v.quadrangle_conflict)[1])});
    }
    directions.push_back(std::move(d));
  }
  return Json{{"verdict", Verdict(r.overall)}, {"directions", directions}};
}

Json ToJson(const BoundReport& r) {
  return Json{{"order", r.order},
              {"dimension", r.dimension},
              {"base", ToJson(r.base)},
              {"degenerate_total", ToJson(r.degenerate_total)},
              {"per_k_nondegenerate", BigArray(r.per_k_nondegenerate)},
              {"closed_form_total", ToJson(r.closed_form_total)},
              {"component_sum_total", ToJson(r.component_sum_total)},
              {"notes", r.notes}};
}

Json ToJson(const PatternTypeStat& t) {
  Json out{{"k", t.k},
           {"block_sizes", t.block_sizes},
           {"representative", Symbols(t.representative)},
           {"N", t.count}};
  if (t.completions) out["P"] = *t.completions;
  if (t.repetition_floor) out["R"] = *t.repetition_floor;
  return out;
}

Json ToJson(const LowerBoundTable& t) {
  Json rows = Json::array();
  for (const LowerBoundRow& row : t.rows) {
    Json r{{"k", row.k},
           {"degenerate", ToJson(row.degenerate)},
           {"refined", ToJson(row.refined)},
           {"generic", ToJson(row.generic)},
           {"recipe", ToJson(row.recipe)},
           {"non_overlapping", ToJson(row.non_overlapping)},
           {"discrepancy", row.discrepancy}};
    if (row.plane_based) r["plane_based"] = ToJson(*row.plane_based);
    if (row.within_plane) r["within_plane"] = ToJson(*row.within_plane);
    if (row.reference) r["reference"] = ToJson(*row.reference);
    rows.push_back(std::move(r));
  }
  Json out{{"order", t.order},
           {"dimension", t.dimension},
           {"rows", rows},
           {"recipe_total", ToJson(t.recipe_total)},
           {"non_overlapping_total", ToJson(t.non_overlapping_total)},
           {"notes", t.notes}};
  if (t.reference_total) out["reference_total"] = ToJson(*t.reference_total);
  return out;
}

Json ToJson(const BoundComparison& c) {
  Json rows = Json::array();
  for (const BoundCheckRow& row : c.rows) {
    rows.push_back(Json{{"k", row.k},
                        {"measured", row.measured},
                        {"degenerate", ToJson(row.degenerate)},
                        {"refined_with_degenerate", ToJson(row.refined_with_degenerate)},
                        {"non_overlapping", ToJson(row.non_overlapping)},
                        {"upper", ToJson(row.upper)}});
  }
  Json out{{"rows", rows},
           {"measured_total", c.measured_total},
           {"non_overlapping_total", ToJson(c.non_overlapping_total)},
           {"max_total", ToJson(c.max_total)}};
  if (c.generic_total) out["generic_total"] = ToJson(*c.generic_total);
  return out;
}

Json ToJson(const ScanResult& r) {
  auto extreme = [](const Extreme& e) {
    return Json{{"value", e.value},
                {"witness", FormatHypercube(e.witness, TextFormat::kSquare)}};
  };
  Json out{{"order", r.order},
           {"squares_examined", r.squares_examined},
           {"min_total", extreme(r.min_total)},
           {"max_total", extreme(r.max_total)},
           {"per_k_min", r.per_k_min},
           {"per_k_max", r.per_k_max},
           {"max_attainers", r.max_attainers}};
  if (r.group_isotopic) out["group_isotopic"] = *r.group_isotopic;
  if (r.criterion_mismatches) out["criterion_mismatches"] = *r.criterion_mismatches;
  return out;
}

Json BuildReport(const LatinHypercube& q, const std::string& source,
                 const ReportOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CountOptions count_options;
  count_options.threads = options.threads;
  const CountReport counts = CountCuboctahedra(q, count_options);
  const BoundComparison comparison = CompareWithBounds(counts);
  const LowerBoundTable table = AssembleLowerBoundTable(q.order(), q.dimension());

  Json quadrangle{{"plane_criterion", ToJson(CheckPlaneCriterion(q))},
                  {"bundle", ToJson(CheckBundlesDetermineSubcubes(q))}};
  if (q.dimension() == 2) quadrangle["square"] = ToJson(CheckQuadrangleCriterion(q));

  Json bounds = ToJson(comparison);
  bounds["notes"] = table.notes;
  if (q.dimension() >= 3) {
    for (const std::string& note : GenericLowerBound(q.order(), q.dimension()).notes) {
      bounds["notes"].push_back(note);
    }
  }

  Json report{{"schema", kReportSchema},
              {"object", Json{{"kind", q.dimension() == 2 ? "square" : "hypercube"},
                              {"d", q.dimension()},
                              {"n", q.order()},
                              {"source", source}}},
              {"counts", ToJson(counts)},
              {"quadrangle", quadrangle},
              {"bounds", bounds}};
  if (options.meta) {
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start);
    report["meta"] = Json{{"version", kVersion}, {"runtime_seconds", elapsed.count()}};
  }
  return report;
}

}  // namespace latinhc
