#include "cli.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "latinhc/bounds.h"
#include "latinhc/count.h"
#include "latinhc/io.h"
#include "latinhc/quadrangle.h"
#include "latinhc/report.h"
#include "latinhc/search.h"

namespace latinhc::cli {
namespace {

// Bad input the user can fix: reported, exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  bool json = false;
  bool strict = false;
  bool meta = false;
  int threads = 0;
};

void AddCommon(CLI::App* cmd, Common& c, bool with_threads = true) {
  cmd->add_flag("--json", c.json, "Emit JSON instead of text");
  cmd->add_flag("--strict", c.strict, "Exit 1 when a check fails");
  cmd->add_flag("--meta", c.meta, "Add version and runtime to JSON output");
  if (with_threads) {
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
  }
}

std::vector<int> ParseIntList(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size() &&
          item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw InputError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

class Driver {
 public:
  Driver(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  LatinHypercube Load(const std::string& path) {
    if (path == "-") return ParseHypercube(in_);
    return ReadHypercubeFile(path);
  }

  void Emit(Json j, const Common& c, std::chrono::steady_clock::time_point start) {
    j["schema"] = kReportSchema;
    if (c.meta) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      j["meta"] = Json{{"version", kVersion}, {"runtime_seconds", elapsed.count()}};
    }
    out_ << j.dump(2) << "\n";
  }

  std::ostream& out() { return out_; }

 private:
  std::istream& in_;
  std::ostream& out_;
};

std::string Row(const std::vector<std::uint64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += (i ? " " : "") + std::to_string(values[i]);
  }
  return s;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cuboctahedra in latin squares and hypercubes", "latinhc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Driver driver(in, out);
  Common common;
  int exit_code = kOk;
  std::function<void()> action;
  const auto start = std::chrono::steady_clock::now();

  // validate
  std::string path;
  auto* validate = app.add_subcommand("validate", "Check that a file holds a latin hypercube");
  validate->add_option("file", path, "Input file, - for stdin")->required();
  AddCommon(validate, common, false);
  validate->callback([&] {
    action = [&] {
      Json j;
      try {
        const LatinHypercube q = driver.Load(path);
        j = Json{{"valid", true}, {"d", q.dimension()}, {"n", q.order()}};
      } catch (const NotLatinError& e) {
        j = Json{{"valid", false}, {"violation", ToJson(e.violation())}};
        if (common.strict) exit_code = kCheckFailed;
      }
      if (common.json) {
        driver.Emit(j, common, start);
      } else if (j["valid"]) {
        out << "valid: dimension " << j["d"] << ", order " << j["n"] << "\n";
      } else {
        out << "not latin: " << j["violation"]["message"].get<std::string>() << "\n";
      }
    };
  });

  // count
  bool counts_only = false;
  auto* count = app.add_subcommand("count", "Count cuboctahedra and analyse maximality");
  count->add_option("file", path, "Input file, - for stdin")->required();
  count->add_flag("--counts-only", counts_only, "Skip the criteria and bound comparison");
  AddCommon(count, common);
  count->callback([&] {
    action = [&] {
      const LatinHypercube q = driver.Load(path);
      Json j;
      if (counts_only) {
        CountOptions options;
        options.threads = common.threads;
        j = Json{{"object", Json{{"kind", q.dimension() == 2 ? "square" : "hypercube"},
                                 {"d", q.dimension()},
                                 {"n", q.order()},
                                 {"source", path}}},
                 {"counts", ToJson(CountCuboctahedra(q, options))}};
      } else {
        j = BuildReport(q, path, ReportOptions{common.threads, false});
      }
      if (common.strict && !counts_only &&
          (j["quadrangle"]["plane_criterion"]["verdict"] == "fail" ||
           j["quadrangle"]["bundle"]["verdict"] == "fail")) {
        exit_code = kCheckFailed;
      }
      if (common.json) {
        driver.Emit(j, common, start);
        return;
      }
      const Json& c = j["counts"];
      for (std::size_t k = 0; k < c["per_dim_counts"].size(); ++k) {
        out << "c_" << k << " " << c["per_dim_counts"][k] << " (upper "
            << c["per_dim_upper"][k] << ")\n";
      }
      out << "total " << c["total"] << " of maximum " << c["max_total"]
          << (c["is_max"].get<bool>() ? " (maximal)" : "") << "\n";
      if (!counts_only) {
        out << "plane criterion: "
            << j["quadrangle"]["plane_criterion"]["verdict"].get<std::string>() << "\n"
            << "bundle check: " << j["quadrangle"]["bundle"]["verdict"].get<std::string>()
            << "\n"
            << "lower bound: " << j["bounds"]["non_overlapping_total"].dump() << "\n";
      }
    };
  });

  // check-quadrangle
  auto* quad = app.add_subcommand(
      "check-quadrangle", "Bundle and plane criteria for the maximal count");
  quad->add_option("file", path, "Input file, - for stdin")->required();
  AddCommon(quad, common, false);
  quad->callback([&] {
    action = [&] {
      const LatinHypercube q = driver.Load(path);
      const PlaneCriterionReport planes = CheckPlaneCriterion(q);
      const BundleCheckResult bundles = CheckBundlesDetermineSubcubes(q);
      Json j{{"plane_criterion", ToJson(planes)}, {"bundle", ToJson(bundles)}};
      if (q.dimension() == 2) j["square"] = ToJson(CheckQuadrangleCriterion(q));
      const bool pass = planes.overall && bundles.determines_subcube;
      j["verdict"] = pass ? "pass" : "fail";
      if (!pass && common.strict) exit_code = kCheckFailed;
      if (common.json) {
        driver.Emit(j, common, start);
        return;
      }
      out << "verdict: " << (pass ? "pass" : "fail") << "\n";
      for (const DirectionVerdict& v : planes.directions) {
        out << "direction (" << v.row_axis << "," << v.col_axis << "): "
            << (v.passes() ? "pass" : "fail") << ", " << v.forms.size()
            << " reduced forms" << (v.shared_forms ? "" : ", planes differ")
            << (v.group_isotopic ? "" : ", quadrangle fails") << "\n";
      }
      if (bundles.conflict) {
        const BundleConflict& b = *bundles.conflict;
        out << "bundle witness: filling";
        for (Symbol s : b.bundle_filling) out << " " << static_cast<int>(s);
        out << " spans different subcubes at bases";
        for (int x : b.first.base) out << " " << x;
        out << " /";
        for (int x : b.second.base) out << " " << x;
        out << "\n";
      }
    };
  });

  // bounds
  int order = 0;
  int dim = 0;
  auto* bounds = app.add_subcommand("bounds", "Lower bounds for an order and dimension");
  bounds->add_option("--n", order, "Order")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--d", dim, "Dimension")->required()->check(CLI::PositiveNumber);
  AddCommon(bounds, common, false);
  bounds->callback([&] {
    action = [&] {
      Json j{{"generic", ToJson(GenericLowerBound(order, dim))}};
      if (dim == 2) j["square"] = ToJson(SquareLowerBound(order));
      const bool tabulable = order <= kMaxOrder;
      if (tabulable) j["table"] = ToJson(AssembleLowerBoundTable(order, dim));
      if (common.json) {
        driver.Emit(j, common, start);
        return;
      }
      if (dim == 2) out << "square bound " << ToString(SquareLowerBound(order)) << "\n";
      if (tabulable) {
        const Json& t = j["table"];
        for (const Json& row : t["rows"]) {
          out << "k=" << row["k"] << " recipe " << row["recipe"].dump()
              << " non-overlapping " << row["non_overlapping"].dump()
              << (row["discrepancy"].get<bool>() ? " (tabulated value differs)" : "")
              << "\n";
        }
        out << "recipe total " << t["recipe_total"].dump() << "\n"
            << "non-overlapping total " << t["non_overlapping_total"].dump() << "\n";
      }
      out << "generic bound " << j["generic"]["component_sum_total"].dump() << "\n";
    };
  });

  // patterns
  int k = 2;
  auto* patterns = app.add_subcommand("patterns", "Bundle pattern types with N, P and R");
  patterns->add_option("--n", order, "Order")->required()->check(CLI::Range(2, kMaxOrder));
  patterns->add_option("--d", dim, "Dimension")->required()->check(CLI::PositiveNumber);
  patterns->add_option("--k", k, "Pattern dimension")
      ->check(CLI::Range(2, kMaxCompletionDimension));
  AddCommon(patterns, common, false);
  patterns->callback([&] {
    action = [&] {
      if (k > dim) throw InputError("--k must not exceed --d");
      const RefinedBound refined = RefinedLowerBoundK(order, dim, k);
      Json types = Json::array();
      for (const auto& t : refined.types) types.push_back(ToJson(t));
      Json j{{"n", order}, {"d", dim}, {"k", k}, {"types", types},
             {"refined_bound", ToJson(refined.value)}};
      if (common.json) {
        driver.Emit(j, common, start);
        return;
      }
      for (const auto& t : refined.types) {
        out << "type";
        for (Symbol s : t.representative) out << " " << static_cast<int>(s);
        out << ": N=" << t.count << " P=" << *t.completions << " R=" << *t.repetition_floor
            << "\n";
      }
      out << "refined bound " << ToString(refined.value) << "\n";
    };
  });

  // search
  std::uint64_t budget = kDefaultScanBudget;
  bool check_groups = false;
  bool progress = false;
  auto* search = app.add_subcommand("search", "Extremes over all reduced squares of an order");
  search->add_option("--n", order, "Order")->required()->check(CLI::Range(1, kMaxSearchOrder));
  search->add_option("--budget", budget, "Maximum number of squares to examine");
  search->add_flag("--check-groups", check_groups, "Run the quadrangle criterion on each square");
  search->add_flag("--progress", progress, "Report finished shards on stderr");
  AddCommon(search, common);
  search->callback([&] {
    action = [&] {
      ScanOptions options;
      options.threads = common.threads;
      options.budget = budget;
      options.check_group_isotopy = check_groups;
      if (progress) {
        options.progress = [&err](std::size_t done, std::size_t total) {
          err << "shard " << done << "/" << total << "\n";
        };
      }
      const ScanResult r = ScanExtremes(order, options);
      if (check_groups && common.strict && *r.criterion_mismatches != 0) {
        exit_code = kCheckFailed;
      }
      if (common.json) {
        driver.Emit(ToJson(r), common, start);
        return;
      }
      out << "squares " << r.squares_examined << "\n"
          << "min total " << r.min_total.value << ", per k min " << Row(r.per_k_min) << "\n"
          << "max total " << r.max_total.value << ", per k max " << Row(r.per_k_max) << "\n"
          << "min witness:\n" << FormatHypercube(r.min_total.witness, TextFormat::kSquare);
    };
  });

  // construct
  std::string kind;
  std::string f_path, g_path, sigma_text, format_name;
  auto* construct = app.add_subcommand("construct", "Build a hypercube");
  construct->add_option("kind", kind, "cyclic | iterated-cyclic | compose")
      ->required()
      ->check(CLI::IsMember({"cyclic", "iterated-cyclic", "compose"}));
  construct->add_option("--order", order, "Order")->check(CLI::Range(1, kMaxOrder));
  construct->add_option("--dim", dim, "Dimension for iterated-cyclic")
      ->check(CLI::PositiveNumber);
  construct->add_option("--f", f_path, "Outer operation for compose");
  construct->add_option("--g", g_path, "Inner operation for compose");
  construct->add_option("--sigma", sigma_text,
                        "Argument slot to variable map for compose, e.g. \"0,1,2,3\"");
  construct->add_option("--format", format_name, "square | hypercube")
      ->check(CLI::IsMember({"square", "hypercube"}));
  construct->callback([&] {
    action = [&] {
      auto need = [&](bool ok, const char* what) {
        if (!ok) throw InputError(std::string("construct ") + kind + " needs " + what);
      };
      std::optional<LatinHypercube> q;
      if (kind == "cyclic") {
        need(order > 0, "--order");
        q = CyclicGroupSquare(order);
      } else if (kind == "iterated-cyclic") {
        need(order > 0 && dim > 0, "--order and --dim");
        q = IteratedCyclicGroup(order, dim);
      } else {
        need(!f_path.empty() && !g_path.empty(), "--f and --g");
        const LatinHypercube f = driver.Load(f_path);
        const LatinHypercube g = driver.Load(g_path);
        std::vector<int> sigma;
        if (sigma_text.empty()) {
          sigma.resize(f.dimension() + g.dimension());
          std::iota(sigma.begin(), sigma.end(), 0);
        } else {
          sigma = ParseIntList(sigma_text, "--sigma");
        }
        q = ComposeQuasigroups(f, g, sigma);
      }
      TextFormat format = DefaultFormat(*q);
      if (format_name == "square") format = TextFormat::kSquare;
      if (format_name == "hypercube") format = TextFormat::kHypercube;
      out << FormatHypercube(*q, format);
    };
  });

  // conjugate
  std::string perm_text;
  auto* conjugate = app.add_subcommand("conjugate", "Permute the roles of a hypercube");
  conjugate->add_option("file", path, "Input file, - for stdin")->required();
  conjugate->add_option("--perm", perm_text,
                        "\"r0,...,rd\": role i of the result is role r_i of the input, "
                        "role 0 the symbol")
      ->required();
  conjugate->add_option("--format", format_name, "square | hypercube")
      ->check(CLI::IsMember({"square", "hypercube"}));
  conjugate->callback([&] {
    action = [&] {
      const LatinHypercube q = driver.Load(path);
      const LatinHypercube c = Conjugate(q, Conjugation{ParseIntList(perm_text, "--perm")});
      TextFormat format = DefaultFormat(c);
      if (format_name == "square") format = TextFormat::kSquare;
      if (format_name == "hypercube") format = TextFormat::kHypercube;
      out << FormatHypercube(c, format);
    };
  });

  // convert
  std::string target;
  auto* convert = app.add_subcommand("convert", "Rewrite a file in the other text format");
  convert->add_option("file", path, "Input file, - for stdin")->required();
  convert->add_option("--to", target, "square | hypercube")
      ->required()
      ->check(CLI::IsMember({"square", "hypercube"}));
  convert->callback([&] {
    action = [&] {
      const LatinHypercube q = driver.Load(path);
      out << FormatHypercube(q, target == "square" ? TextFormat::kSquare
                                                   : TextFormat::kHypercube);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kInputError;
  } catch (const NotLatinError& e) {
    err << "error: not a latin hypercube: " << e.violation().Describe() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    // Argument problems surface as invalid_argument; anything else is a bug.
    if (dynamic_cast<const std::invalid_argument*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e)) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return exit_code;
}

}  // namespace latinhc::cli
