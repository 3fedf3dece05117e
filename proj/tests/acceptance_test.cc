// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latinhc/bounds.h"
#include "latinhc/count.h"
#include "latinhc/hypercube.h"
#include "latinhc/quadrangle.h"
#include "latinhc/search.h"
#include "testing.h"

namespace latinhc {
namespace {

using ::latinhc::testing::LoadFixture;
using ::latinhc::testing::RandomIsotopy;
using ::latinhc::testing::SymmetricGroupS3;
using Counts = std::vector<std::uint64_t>;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Join(const Counts& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// Collects failures for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <typename A, typename B>
  void Equal(const A& measured, const B& expected, const std::string& what) {
    if (!(measured == expected)) {
      std::ostringstream s;
      s << what << ": expected " << expected << ", got " << measured;
      failures_.push_back(s.str());
    }
  }
  void Note(const std::string& note) { notes_.push_back(note); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

void GroupMaxima(Check& c) {
  const std::vector<std::pair<int, int>> shapes = {{3, 2}, {3, 3}, {4, 3},
                                                   {5, 3}, {4, 4}, {5, 4}};
  const Counts totals = {243, 6561, 65536, 390625, 4194304, 48828125};
  double slowest = 0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto [n, d] = shapes[i];
    const auto start = Clock::now();
    const CountReport r = CountCuboctahedra(IteratedCyclicGroup(n, d));
    const double t = Seconds(start);
    slowest = std::max(slowest, t);
    const std::string name = "iterated Z_" + std::to_string(n) + " d=" + std::to_string(d);
    c.Equal(r.total, totals[i], name);
    c.Expect(r.is_max, name + " not maximal");
    c.Expect(t < 5.0, name + " took " + std::to_string(t) + " s");
  }
  c.Note("slowest " + std::to_string(slowest) + " s");
}

struct FixtureRow {
  const char* file;
  Counts per_k;
  std::uint64_t total;
};

void FixtureRegression(Check& c) {
  const std::vector<FixtureRow> rows = {
      {"min6.sq", {216, 2160, 1920}, 4296},
      {"min7.sq", {343, 4116, 3880}, 8339},
      {"min3d4.hc", {1024, 9216, 21504, 15360}, 47104},
      {"min3d5.hc", {3125, 37500, 53136, 9984}, 103745},
      {"min4d4.hc", {16384, 196608, 698368, 903168, 405504}, 2220032},
      {"min4d5.hc", {78125, 1250000, 2551712, 923216, 267344}, 5080397},
  };
  for (const FixtureRow& row : rows) {
    const auto start = Clock::now();
    const CountReport r = CountCuboctahedra(LoadFixture(row.file));
    const double t = Seconds(start);
    std::uint64_t row_sum = 0;
    for (auto v : row.per_k) row_sum += v;
    if (r.per_dim_counts != row.per_k) {
      c.Expect(false, std::string(row.file) + ": expected (" + Join(row.per_k) +
                          "), measured (" + Join(r.per_dim_counts) + ")" +
                          (row_sum != row.total ? "; expected row sums to " +
                                                      std::to_string(row_sum) + ", not " +
                                                      std::to_string(row.total)
                                                : ""));
    }
    c.Equal(r.total, row.total, std::string(row.file) + " total");
    c.Expect(t < 10.0, std::string(row.file) + " took " + std::to_string(t) + " s");
  }
  // Conjugates of the order-6 square keep the total.
  const LatinHypercube q = LoadFixture("min6.sq");
  std::vector<int> pi{0, 1, 2};
  do {
    c.Equal(CountCuboctahedra(Conjugate(q, Conjugation{pi})).total, std::uint64_t{4296},
            "order-6 conjugate");
  } while (std::next_permutation(pi.begin(), pi.end()));
}

void OrderFiveScan(Check& c) {
  const auto start = Clock::now();
  const ScanResult r = ScanExtremes(5);
  const double t = Seconds(start);
  c.Equal(r.squares_examined, std::uint64_t{56}, "reduced squares");
  c.Equal(Join(CountCuboctahedra(r.min_total.witness).per_dim_counts),
          Join({125, 1000, 824}), "min row");
  c.Equal(r.min_total.value, std::uint64_t{1949}, "min total");
  c.Equal(Join(CountCuboctahedra(r.max_total.witness).per_dim_counts),
          Join({125, 1000, 2000}), "max row");
  c.Equal(r.max_total.value, std::uint64_t{3125}, "max total");
  c.Expect(t < 1.0, "scan took " + std::to_string(t) + " s");
  c.Note(std::to_string(t) + " s");
}

void OrderSixScan(Check& c) {
  ScanOptions options;
  options.check_group_isotopy = true;
  const auto start = Clock::now();
  const ScanResult r = ScanExtremes(6, options);
  const double t = Seconds(start);
  c.Equal(r.squares_examined, std::uint64_t{9408}, "reduced squares");
  c.Equal(r.min_total.value, std::uint64_t{4296}, "min total");
  c.Equal(r.max_total.value, std::uint64_t{7776}, "max total");
  c.Equal(r.per_k_min[2], std::uint64_t{1920}, "min c_2");
  c.Equal(r.per_k_max[2], std::uint64_t{5400}, "max c_2");
  c.Expect(IsGroupIsotopic(r.max_total.witness), "max witness fails the quadrangle criterion");
  c.Equal(*r.criterion_mismatches, std::uint64_t{0}, "squares where 7776 and group isotopy disagree");
  c.Expect(t < 60.0, "scan took " + std::to_string(t) + " s");
  c.Note(std::to_string(r.max_attainers) + " maximal squares, " + std::to_string(t) + " s");
}

void Bounds(Check& c) {
  const std::vector<std::pair<int, std::uint64_t>> square = {{5, 1805}, {6, 3816}, {7, 7147}};
  const Counts c2 = {680, 1440, 2688};
  for (std::size_t i = 0; i < square.size(); ++i) {
    const int n = square[i].first;
    c.Equal(SquareLowerBound(n), BigInt(square[i].second), "square bound n=" + std::to_string(n));
    c.Equal(ComputeSquareBoundParts(n).two_dimensional(), BigInt(c2[i]),
            "square c_2 bound n=" + std::to_string(n));
  }
  struct Refined {
    int n, d, k;
    std::uint64_t value;
  };
  for (const Refined& r : std::vector<Refined>{{5, 3, 2, 37440}, {4, 4, 2, 376416},
                                               {4, 4, 3, 28800}, {5, 4, 2, 2217600},
                                               {5, 3, 3, 0}, {4, 4, 4, 0},
                                               {5, 4, 3, 0}, {5, 4, 4, 0}}) {
    c.Equal(RefinedLowerBoundK(r.n, r.d, r.k).value, BigInt(r.value),
            "refined (" + std::to_string(r.n) + "," + std::to_string(r.d) + "," +
                std::to_string(r.k) + ")");
  }
  struct Table {
    int n, d, k;
    std::vector<std::array<std::uint64_t, 3>> npr;
  };
  const std::vector<Table> tables = {
      {5, 3, 2, {{4, 4, 6}, {12, 3, 8}}},
      {4, 4, 2, {{3, 3, 21}, {6, 2, 32}}},
      {4, 4, 3, {{3, 51, 1}, {18, 24, 2}, {6, 13, 4}}},
      {5, 4, 2, {{4, 4, 31}, {12, 3, 41}}},
  };
  for (const Table& t : tables) {
    const auto types = PatternTypeTable(t.n, t.d, t.k);
    std::vector<std::array<std::uint64_t, 3>> got;
    for (const auto& s : types) got.push_back({s.count, *s.completions, *s.repetition_floor});
    std::string label = "N/P/R (" + std::to_string(t.n) + "," + std::to_string(t.d) + "," +
                        std::to_string(t.k) + ")";
    c.Expect(got == t.npr, label + " differs");
  }
}

void LowerBoundTables(Check& c) {
  struct Shape {
    int n, d;
    std::uint64_t total;
  };
  for (const Shape& s : std::vector<Shape>{{5, 2, 1805}, {6, 2, 3816}, {7, 2, 7147},
                                           {4, 3, 24256}, {5, 3, 87440},
                                           {4, 4, 680416}, {5, 4, 3925725}}) {
    const LowerBoundTable t = AssembleLowerBoundTable(s.n, s.d);
    c.Equal(t.recipe_total, BigInt(s.total),
            "recipe total n=" + std::to_string(s.n) + " d=" + std::to_string(s.d));
  }
  const LowerBoundTable five = AssembleLowerBoundTable(5, 3);
  c.Expect(five.rows[3].discrepancy && five.rows[3].recipe == 3375,
           "order-5 cube k=3 row not flagged");
  for (const char* name :
       {"min6.sq", "min7.sq", "min3d4.hc", "min3d5.hc", "min4d4.hc", "min4d5.hc"}) {
    const LatinHypercube q = LoadFixture(name);
    const CountReport r = CountCuboctahedra(q);
    const LowerBoundTable t = AssembleLowerBoundTable(q.order(), q.dimension());
    c.Expect(t.non_overlapping_total <= r.total,
             std::string(name) + ": non-overlapping bound " + ToString(t.non_overlapping_total) +
                 " exceeds " + std::to_string(r.total));
  }
}

void OracleEquivalence(Check& c) {
  const auto start = Clock::now();
  std::size_t compared = 0;
  auto agree = [&](const LatinHypercube& q, const std::string& what) {
    c.Expect(BruteForceCount(q) == CountCuboctahedra(q), what);
    ++compared;
  };
  for (int n : {4, 5}) {
    for (const LatinHypercube& q : GenerateReducedSquares(n)) agree(q, "reduced square");
  }
  std::mt19937_64 rng(20251121);
  const LatinHypercube cube = LoadFixture("min3d4.hc");
  const LatinHypercube group = IteratedCyclicGroup(3, 3);
  for (int i = 0; i < 20; ++i) {
    agree(ApplyIsotopy(cube, RandomIsotopy(rng, 3, 4)), "isotope of min3d4");
    agree(ApplyIsotopy(group, RandomIsotopy(rng, 3, 3)), "isotope of iterated Z_3");
  }
  const double t = Seconds(start);
  c.Equal(compared, std::size_t{100}, "objects compared");
  c.Expect(t < 120.0, "took " + std::to_string(t) + " s");
  c.Note(std::to_string(compared) + " objects, " + std::to_string(t) + " s");
}

void ThreeWayEquivalence(Check& c) {
  std::vector<LatinHypercube> corpus;
  for (int n = 1; n <= 5; ++n) {
    for (auto& q : GenerateReducedSquares(n)) corpus.push_back(std::move(q));
  }
  const std::vector<LatinHypercube> six = GenerateReducedSquares(6);
  std::mt19937_64 rng(6);
  std::vector<std::size_t> picks(six.size());
  std::iota(picks.begin(), picks.end(), 0);
  std::shuffle(picks.begin(), picks.end(), rng);
  for (std::size_t i = 0; i < 500; ++i) corpus.push_back(six[picks[i]]);
  for (const char* name :
       {"min6.sq", "min7.sq", "min3d4.hc", "min3d5.hc", "min4d4.hc", "min4d5.hc"}) {
    corpus.push_back(LoadFixture(name));
  }
  for (int n = 1; n <= 7; ++n) corpus.push_back(CyclicGroupSquare(n));
  corpus.push_back(SymmetricGroupS3());
  for (auto [n, d] : std::vector<std::pair<int, int>>{
           {2, 3}, {3, 3}, {4, 3}, {5, 3}, {3, 4}, {4, 4}, {5, 4}, {2, 5}}) {
    corpus.push_back(IteratedCyclicGroup(n, d));
  }
  const LatinHypercube s3 = SymmetricGroupS3();
  corpus.push_back(IterateQuasigroup(s3, 2));
  corpus.push_back(ComposeQuasigroups(s3, s3, std::vector<int>{0, 1, 2, 3}));
  corpus.push_back(ComposeQuasigroups(s3, s3, std::vector<int>{0, 2, 1, 3}));

  std::size_t maximal = 0;
  for (const LatinHypercube& q : corpus) {
    const bool is_max = CountCuboctahedra(q).is_max;
    const bool bundle = CheckBundlesDetermineSubcubes(q).determines_subcube;
    const bool planes = CheckPlaneCriterion(q).overall;
    maximal += is_max;
    if (is_max != bundle || is_max != planes) {
      c.Expect(false, "disagreement on d=" + std::to_string(q.dimension()) +
                          " n=" + std::to_string(q.order()));
    }
  }
  c.Note(std::to_string(corpus.size()) + " objects, " + std::to_string(maximal) + " maximal");
}

void Invariance(Check& c) {
  std::mt19937_64 rng(9);
  std::size_t counted = 0;
  try {
    for (const char* name :
         {"min6.sq", "min7.sq", "min3d4.hc", "min3d5.hc", "min4d4.hc", "min4d5.hc"}) {
      const LatinHypercube q = LoadFixture(name);
      const Counts base = CountCuboctahedra(q).per_dim_counts;
      for (int i = 0; i < 100; ++i) {
        const LatinHypercube t = ApplyIsotopy(q, RandomIsotopy(rng, q.dimension(), q.order()));
        c.Expect(CountCuboctahedra(t).per_dim_counts == base, std::string(name) + " isotope differs");
        ++counted;
      }
    }
  } catch (const CountInvariantError& e) {
    c.Expect(false, std::string("closed-form invariant violated: ") + e.what());
  }
  c.Note(std::to_string(counted) + " isotopes counted, closed forms asserted on each");
}

void Asymptotics(Check& c) {
  const auto start = Clock::now();
  for (int d : {3, 4}) {
    const int n = 1000;
    const BoundReport r = GenericLowerBound(n, d);
    BigInt scale = 1;
    for (int i = 0; i < 2 * d; ++i) scale *= n;
    const int limit = d * (d - 1) / 2 + d + 1;
    const BigInt target = limit * scale;
    const BigInt gap = r.component_sum_total > target ? r.component_sum_total - target
                                                      : target - r.component_sum_total;
    c.Expect(100 * gap < target, "d=" + std::to_string(d) + " more than 1% from " +
                                     std::to_string(limit));
    // Relative gap in units of 10^-6.
    c.Note("d=" + std::to_string(d) + " gap " +
           ToString(gap * 1000000 / target) + "e-6");
  }
  const double t = Seconds(start);
  c.Expect(t < 1.0, "took " + std::to_string(t) + " s");
}

}  // namespace
}  // namespace latinhc

int main() {
  using namespace latinhc;
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"group maxima", GroupMaxima},
      {"fixture regression", FixtureRegression},
      {"order-5 scan", OrderFiveScan},
      {"order-6 scan", OrderSixScan},
      {"bounds", Bounds},
      {"lower-bound tables", LowerBoundTables},
      {"oracle equivalence", OracleEquivalence},
      {"three-way equivalence", ThreeWayEquivalence},
      {"invariance", Invariance},
      {"asymptotics", Asymptotics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const bool pass = check.failures().empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << ")";
    for (const auto& note : check.notes()) std::cout << " [" << note << "]";
    std::cout << "\n";
    for (const auto& f : check.failures()) std::cout << "    " << f << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
