#ifndef LATINHC_REPORT_H_
#define LATINHC_REPORT_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "latinhc/bounds.h"
#include "latinhc/count.h"
#include "latinhc/hypercube.h"
#include "latinhc/quadrangle.h"
#include "latinhc/search.h"

namespace latinhc {

// JSON views of every result type. nlohmann::json keeps object keys sorted,
// so equal inputs serialize to identical bytes.

inline constexpr int kReportSchema = 1;
inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

// Exact: a number when it fits in 64 bits, otherwise a decimal string.
Json ToJson(const BigInt& value);

Json ToJson(const CountReport& report);
Json ToJson(const LineViolation& violation);
Json ToJson(const QuadrangleResult& result);
Json ToJson(const BundleCheckResult& result);
Json ToJson(const PlaneCriterionReport& report);
Json ToJson(const BoundReport& report);
Json ToJson(const PatternTypeStat& stat);
Json ToJson(const LowerBoundTable& table);
Json ToJson(const BoundComparison& comparison);
Json ToJson(const ScanResult& result);

struct ReportOptions {
  int threads = 0;
  bool meta = false;  // version and runtime; off keeps output reproducible
};

// Full analysis of one hypercube: counts, both maximality criteria, and the
// comparison with every applicable bound. The bound comparison uses the same
// counts object as the "counts" entry.
Json BuildReport(const LatinHypercube& q, const std::string& source,
                 const ReportOptions& options = {});

}  // namespace latinhc

#endif  // LATINHC_REPORT_H_
