#include "cuspdim/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuspdim/arith.hpp"
#include "cuspdim/certificate.hpp"
#include "cuspdim/dim_formulas.hpp"
#include "cuspdim/distribution.hpp"
#include "cuspdim/envelope.hpp"
#include "cuspdim/scan.hpp"
#include "cuspdim/spectrum.hpp"
#include "cuspdim/util.hpp"

namespace cuspdim {

namespace {

using nlohmann::json;

constexpr const char* kCsvVersionLine = "# cuspdim-csv v1";
constexpr const char* kJsonSchema = "cuspdim.v1";
constexpr const char* kCacheEnvVar = "CUSPDIM_CACHE_DIR";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/*
 * All commands stream rows either as CSV (default; versioned comment line,
 * one `# key=value` meta line per entry, header row, data rows) or as a
 * single JSON document (--json) with the same content.
 */
class Output {
 public:
  Output(const std::string& path, bool as_json, const std::string& command)
      : as_json_(as_json) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) {
        throw IoError("cannot open output file: " + path);
      }
      out_ = &file_;
    }
    doc_["schema"] = kJsonSchema;
    doc_["command"] = command;
    doc_["meta"] = json::object();
    doc_["rows"] = json::array();
    if (!as_json_) {
      (*out_) << kCsvVersionLine << "\n";
    }
  }

  void meta(const std::string& key, const std::string& value) {
    if (as_json_) {
      doc_["meta"][key] = value;
    } else {
      (*out_) << "# " << key << "=" << value << "\n";
    }
  }
  void meta(const std::string& key, uint64_t value) {
    if (as_json_) {
      doc_["meta"][key] = value;
    } else {
      (*out_) << "# " << key << "=" << value << "\n";
    }
  }
  void meta(const std::string& key, int64_t value) {
    if (as_json_) {
      doc_["meta"][key] = value;
    } else {
      (*out_) << "# " << key << "=" << value << "\n";
    }
  }
  void meta(const std::string& key, double value) {
    if (as_json_) {
      doc_["meta"][key] = value;
    } else {
      (*out_) << "# " << key << "=" << fmt_double(value) << "\n";
    }
  }

  void header(const std::vector<std::string>& columns) {
    columns_ = columns;
    if (!as_json_) {
      for (size_t i = 0; i < columns.size(); ++i) {
        (*out_) << (i ? "," : "") << columns[i];
      }
      (*out_) << "\n";
    }
  }

  // Values must arrive in header order.
  void row(const std::vector<json>& values) {
    if (as_json_) {
      json r = json::object();
      for (size_t i = 0; i < values.size(); ++i) r[columns_[i]] = values[i];
      doc_["rows"].push_back(std::move(r));
      return;
    }
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) (*out_) << ",";
      const json& v = values[i];
      if (v.is_string()) {
        (*out_) << v.get<std::string>();
      } else if (v.is_boolean()) {
        (*out_) << (v.get<bool>() ? "true" : "false");
      } else if (v.is_number_float()) {
        (*out_) << fmt_double(v.get<double>());
      } else {
        (*out_) << v.dump();
      }
    }
    (*out_) << "\n";
  }

  void finish() {
    if (as_json_) {
      (*out_) << doc_.dump(2) << "\n";
    }
    out_->flush();
    if (!*out_) {
      throw IoError("write failure on output stream");
    }
  }

 private:
  bool as_json_;
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
  std::vector<std::string> columns_;
  json doc_;
};

struct CommonArgs {
  std::string out_path;
  bool as_json = false;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--out", args->out_path, "Write output to a file instead of stdout");
  cmd->add_flag("--json", args->as_json, "Emit a JSON document instead of CSV");
}

// ---------------------------------------------------------------------------
// dim
// ---------------------------------------------------------------------------

struct DimArgs {
  CommonArgs common;
  std::string space = "full";
  int k = 2;
  std::vector<uint64_t> levels;
  uint64_t from = 0, to = 0;
};

int cmd_dim(const DimArgs& a) {
  const Space space = parse_space(a.space);
  validate_weight(a.k);
  std::vector<uint64_t> levels = a.levels;
  if (a.from != 0 || a.to != 0) {
    if (a.from < 1 || a.to < a.from) {
      throw std::invalid_argument("dim: need 1 <= --from <= --to");
    }
    for (uint64_t n = a.from; n <= a.to; ++n) levels.push_back(n);
  }
  if (levels.empty()) {
    throw std::invalid_argument("dim: give --level values or --from/--to");
  }
  Output out(a.common.out_path, a.common.as_json, "dim");
  out.meta("space", std::string(space_name(space)));
  out.meta("k", static_cast<int64_t>(a.k));
  out.header({"n", "psi", "nu_inf", "nu2", "nu3", "mu", "dim", "delta12"});
  for (uint64_t n : levels) {
    if (n < 1) throw std::invalid_argument("dim: levels must be >= 1");
    const Factorization f = factorize(n);
    const DimensionParts parts = dimension_parts(space, f);
    const int64_t d = dimension_from_parts(space, a.k, n, parts);
    const int64_t delta12 =
        12 * d - static_cast<int64_t>(a.k - 1) * static_cast<int64_t>(parts.psi);
    out.row({n, parts.psi, parts.nu_inf, parts.nu2, parts.nu3, f.mobius(), d,
             delta12});
  }
  out.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanArgs {
  CommonArgs common;
  std::string space = "full";
  int k = 2;
  uint64_t from = 1, to = 0;
  int threads = 1;
  bool use_cache = false;
};

std::string cache_path(const std::string& dir, Space space, int k,
                       uint64_t limit) {
  return dir + "/dims_" + std::string(space_name(space)) + "_k" +
         std::to_string(k) + "_" + std::to_string(limit) + ".bin";
}

int cmd_scan(const ScanArgs& a) {
  const Space space = parse_space(a.space);
  validate_weight(a.k);
  if (a.from < 1 || a.to < a.from) {
    throw std::invalid_argument("scan: need 1 <= --from <= --to");
  }

  Output out(a.common.out_path, a.common.as_json, "scan");
  out.meta("space", std::string(space_name(space)));
  out.meta("k", static_cast<int64_t>(a.k));
  out.meta("from", a.from);
  out.meta("to", a.to);
  out.header({"n", "dim"});

  if (a.use_cache) {
    if (a.from != 1) {
      throw std::invalid_argument("scan: --cache requires --from 1");
    }
    const char* dir = std::getenv(kCacheEnvVar);
    if (dir == nullptr || *dir == '\0') {
      throw std::invalid_argument(std::string("scan: --cache requires ") +
                                  kCacheEnvVar + " to be set");
    }
    const std::string path = cache_path(dir, space, a.k, a.to);
    std::optional<DimensionTable> table;
    try {
      table = DimensionTable::load(path, space, a.k, a.to);
    } catch (const IoError&) {
      table.reset();  // missing or stale cache: recompute below
    }
    if (!table) {
      table = sieve_dimensions(space, a.k, a.to, a.threads);
      table->save(path);
    }
    for (uint64_t n = 1; n <= a.to; ++n) {
      out.row({n, table->dim(n)});
    }
    out.finish();
    return 0;
  }

  // Deterministic parallel scan: disjoint ordered blocks, written in order.
  const auto blocks = split_range(a.from, a.to, a.threads);
  std::vector<std::vector<int64_t>> dims(blocks.size());
  {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
      auto run = [&, i] {
        try {
          const auto [lo, hi] = blocks[i];
          dims[i].resize(hi - lo + 1);
          scan_levels(space, lo, hi, [&](const LevelData& ld) {
            DimensionParts parts = ld.parts;
            parts.mu_slot = space == Space::Full ? 1 : ld.mu;
            dims[i][ld.n - lo] = dimension_from_parts(space, a.k, ld.n, parts);
          });
        } catch (...) {
          errors[i] = std::current_exception();
        }
      };
      if (blocks.size() == 1) {
        run();
      } else {
        workers.emplace_back(run);
      }
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto [lo, hi] = blocks[i];
    for (uint64_t n = lo; n <= hi; ++n) {
      out.row({n, dims[i][n - lo]});
    }
  }
  out.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// missing / spectrum
// ---------------------------------------------------------------------------

struct MissingArgs {
  CommonArgs common;
  std::string space = "new";
  int k = 2;
  int64_t target = 0;
  uint64_t max_scan = 400000000ull;
  int threads = 1;
};

void emit_certificate_meta(Output& out, const TailCertificate& cert) {
  if (cert.flat) {
    out.meta("certificate", std::string("flat"));
    out.meta("scan_limit", cert.flat->scan_limit);
    out.meta("grid_end", cert.flat->grid_end);
  } else if (cert.hybrid) {
    out.meta("certificate", std::string("squarefull-kernel"));
    out.meta("s_limit", cert.hybrid->s_limit);
    out.meta("kernels", static_cast<uint64_t>(cert.hybrid->kernels.size()));
  }
  out.meta("settlement_cost", cert.settlement_cost());
}

int cmd_missing(const MissingArgs& a) {
  const Space space = parse_space(a.space);
  validate_weight(a.k);
  if (a.target < 0) throw std::invalid_argument("missing: --target must be >= 0");
  const TailCertificate cert =
      certify_scan_bound(space, a.k, a.target, a.max_scan);
  const ValueSpectrum vs = build_spectrum(cert, a.threads);
  const std::vector<int64_t> missing = missing_values(vs, a.target);

  Output out(a.common.out_path, a.common.as_json, "missing");
  out.meta("space", std::string(space_name(space)));
  out.meta("k", static_cast<int64_t>(a.k));
  out.meta("target", a.target);
  emit_certificate_meta(out, cert);
  out.meta("missing_count", static_cast<uint64_t>(missing.size()));
  out.header({"d"});
  for (int64_t d : missing) out.row({d});
  out.finish();
  return 0;
}

struct SpectrumArgs {
  CommonArgs common;
  std::string space = "new";
  int k = 2;
  int64_t target = 0;
  uint64_t max_scan = 400000000ull;
  int threads = 1;
  double distinct_x = -1.0;
  std::vector<double> density_grid;
  double ford_c = 0.8178146;
  double ford_d = 0.0;
  bool ford_d_set = false;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const Space space = parse_space(a.space);
  validate_weight(a.k);
  if (a.target < 0) throw std::invalid_argument("spectrum: --target must be >= 0");
  const TailCertificate cert =
      certify_scan_bound(space, a.k, a.target, a.max_scan);
  const ValueSpectrum vs = build_spectrum(cert, a.threads);

  // Resolve everything that can fail before any output is written.
  std::optional<DensityTrend> trend;
  if (!a.density_grid.empty()) {
    std::optional<FordConstants> ford;
    if (a.ford_d_set) {
      ford = FordConstants{a.ford_c, a.ford_d};
    }
    trend = density_trend(vs, a.density_grid, ford);
  }
  std::optional<uint64_t> distinct;
  if (a.distinct_x >= 0) distinct = count_distinct(vs, a.distinct_x);

  Output out(a.common.out_path, a.common.as_json, "spectrum");
  out.meta("space", std::string(space_name(space)));
  out.meta("k", static_cast<int64_t>(a.k));
  out.meta("max_certified", vs.max_certified);
  emit_certificate_meta(out, cert);

  if (trend) {
    out.meta("strictly_decreasing", std::string(trend->strictly_decreasing
                                                    ? "true"
                                                    : "false"));
    out.header({"x", "distinct", "ratio", "rho_ratio", "rho_shape_only"});
    for (const DensityRow& r : trend->rows) {
      out.row({r.x, r.distinct, r.ratio,
               r.rho_ratio ? json(*r.rho_ratio) : json(nullptr),
               r.rho_shape_only});
    }
    out.finish();
    return 0;
  }

  if (distinct) {
    out.meta("distinct_x", a.distinct_x);
    out.meta("distinct", *distinct);
  }
  out.header({"d", "count", "first_level"});
  for (int64_t d = 0; d <= vs.max_certified; ++d) {
    const auto idx = static_cast<size_t>(d);
    if (vs.counts[idx] == 0) continue;
    out.row({d, vs.counts[idx], vs.first_level[idx]});
  }
  out.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  CommonArgs common;
  std::string suite;
  std::string space = "new";
  int k = 2;
  uint64_t limit = 1000000;
  std::vector<double> grid;
  double cutoff_factor = 0.0;  // suite-specific default
  double max_normalized = 8.0;
  int r = 3;
  uint64_t h_bound = 1;
  uint64_t scan = 1000000;
  double x = 1e4;
};

int suite_nu_bounds(const VerifyArgs& a, Output& out) {
  const NuBoundsReport r = verify_nu_bounds(a.limit);
  out.meta("limit", r.limit);
  out.header({"check", "value", "ok"});
  out.row({std::string("levels_checked"), r.levels_checked, r.ok});
  if (!r.ok) {
    out.meta("first_violation", r.first_violation);
    out.meta("detail", r.detail);
  }
  out.finish();
  return r.ok ? 0 : 2;
}

int suite_eta(const VerifyArgs& a, Output& out) {
  std::vector<double> grid = a.grid;
  if (grid.empty()) grid = {1e2, 1e4, 1e6, 1e8};
  const double factor = a.cutoff_factor > 0 ? a.cutoff_factor : 100.0;
  const EtaReport rep = verify_eta_bounds(grid, factor);
  out.meta("eta", rep.eta);
  out.header(
      {"x", "squarefull_count", "count_bound", "tail_upper", "tail_bound", "ok"});
  for (const EtaRow& row : rep.rows) {
    out.row({row.x, row.squarefull_count, row.count_bound, row.tail_upper,
             row.tail_bound, row.ok});
  }
  out.finish();
  return rep.all_ok ? 0 : 2;
}

int suite_squarefull_tail(const VerifyArgs& a, Output& out) {
  std::vector<double> grid = a.grid;
  if (grid.empty()) grid = {1e2, 1e3, 1e4, 1e5};
  const double factor = a.cutoff_factor > 0 ? a.cutoff_factor : 1e6;
  out.meta("cutoff_factor", factor);
  out.meta("max_normalized", a.max_normalized);
  out.header({"space", "x", "terms", "sum", "truncation", "normalized", "ok"});
  bool all_ok = true;
  for (Space sp : {Space::Full, Space::New, Space::Min}) {
    for (double x : grid) {
      const SquarefullTailReport rep =
          squarefull_reciprocal_tail(sp, x, factor * x);
      const bool ok = rep.normalized <= a.max_normalized;
      all_ok = all_ok && ok;
      out.row({std::string(space_name(sp)), x, rep.terms, rep.sum,
               rep.truncation, rep.normalized, ok});
    }
  }
  out.finish();
  return all_ok ? 0 : 2;
}

int suite_delta_values(const VerifyArgs& a, Output& out) {
  const Space space = parse_space(a.space);
  validate_weight(a.k);
  std::optional<uint64_t> h;
  if (space == Space::Full) h = a.h_bound;
  const SurveyReport rep = delta_value_survey(space, a.k, a.r, h, a.scan);
  out.meta("space", std::string(space_name(space)));
  out.meta("k", static_cast<int64_t>(a.k));
  out.meta("r", static_cast<int64_t>(a.r));
  if (h) out.meta("h_bound", *h);
  out.meta("bound", rep.bound);
  out.meta("distinct", static_cast<uint64_t>(rep.values.size()));
  {
    std::ostringstream vals;
    for (size_t i = 0; i < rep.values.size(); ++i) {
      if (i) vals << ";";
      vals << rep.values[i];
    }
    out.meta("values", vals.str());
  }
  out.header({"scan_limit", "distinct"});
  for (const SurveyCheckpoint& cp : rep.checkpoints) {
    out.row({cp.scan_limit, cp.distinct});
  }
  out.finish();
  return rep.within_bound() ? 0 : 2;
}

int suite_exceptions(const VerifyArgs& a, Output& out) {
  const Space space = parse_space(a.space);
  validate_weight(a.k);
  const CensusReport rep = exceptional_census(space, a.k, a.x);
  out.meta("space", std::string(space_name(space)));
  out.meta("k", static_cast<int64_t>(a.k));
  out.header({"x", "scan_bound", "count", "normalized"});
  out.row({rep.x, rep.scan_bound, rep.count, rep.normalized});
  out.finish();
  return 0;
}

int suite_oracles(const VerifyArgs&, Output& out) {
  out.header({"check", "expected", "actual", "ok"});
  bool all_ok = true;
  auto check_i = [&](const std::string& name, int64_t expected, int64_t actual) {
    const bool ok = expected == actual;
    all_ok = all_ok && ok;
    out.row({name, expected, actual, ok});
  };
  auto check_d = [&](const std::string& name, double expected, double actual,
                     double tol) {
    const bool ok = std::abs(expected - actual) <= tol;
    all_ok = all_ok && ok;
    out.row({name, expected, actual, ok});
  };
  // Classical dimension values (modular curve genera and level-1 spaces).
  check_i("dim_full_k2_N11", 1, dimension(Space::Full, 2, uint64_t{11}));
  check_i("dim_full_k2_N37", 2, dimension(Space::Full, 2, uint64_t{37}));
  check_i("dim_full_k2_N389", 32, dimension(Space::Full, 2, uint64_t{389}));
  check_i("dim_full_k12_N1", 1, dimension(Space::Full, 12, uint64_t{1}));
  check_i("dim_full_k2_N100", 7, dimension(Space::Full, 2, uint64_t{100}));
  check_i("dim_new_k2_N11", 1, dimension(Space::New, 2, uint64_t{11}));
  // Squarefull counting constant to ten decimals.
  check_d("eta", 2.1732543125, envelope::eta_value(), 5e-11);
  check_d("zeta_3_2", 2.612375348685488, envelope::zeta_em(1.5), 1e-14);
  check_d("zeta_3", 1.202056903159594, envelope::zeta_em(3.0), 1e-14);
  // Exact small psi-value counts.
  check_i("v_psi_full_1", 1,
          static_cast<int64_t>(v_psi_exact(Space::Full, 1.0).count));
  check_i("v_psi_full_3", 2,
          static_cast<int64_t>(v_psi_exact(Space::Full, 3.0).count));
  out.finish();
  return all_ok ? 0 : 2;
}

int cmd_verify(const VerifyArgs& a) {
  Output out(a.common.out_path, a.common.as_json, "verify:" + a.suite);
  if (a.suite == "nu_bounds") return suite_nu_bounds(a, out);
  if (a.suite == "eta") return suite_eta(a, out);
  if (a.suite == "squarefull_tail") return suite_squarefull_tail(a, out);
  if (a.suite == "delta_values") return suite_delta_values(a, out);
  if (a.suite == "exceptions") return suite_exceptions(a, out);
  if (a.suite == "oracles") return suite_oracles(a, out);
  throw std::invalid_argument("verify: unknown suite '" + a.suite + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Cusp form dimension toolkit for Gamma_0(N)"};
  app.require_subcommand(1);

  DimArgs dim_args;
  CLI::App* dim_cmd =
      app.add_subcommand("dim", "Exact dimensions and local factors");
  dim_cmd->add_option("--space", dim_args.space, "full | new | min");
  dim_cmd->add_option("-k,--weight", dim_args.k, "Even weight >= 2");
  dim_cmd->add_option("-N,--level", dim_args.levels, "Level(s) to evaluate");
  dim_cmd->add_option("--from", dim_args.from, "Range start");
  dim_cmd->add_option("--to", dim_args.to, "Range end");
  add_common(dim_cmd, &dim_args.common);

  ScanArgs scan_args;
  CLI::App* scan_cmd =
      app.add_subcommand("scan", "Stream dimensions over a level range");
  scan_cmd->add_option("--space", scan_args.space, "full | new | min");
  scan_cmd->add_option("-k,--weight", scan_args.k, "Even weight >= 2");
  scan_cmd->add_option("--from", scan_args.from, "Range start (default 1)");
  scan_cmd->add_option("--to", scan_args.to, "Range end")->required();
  scan_cmd->add_option("--threads", scan_args.threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  scan_cmd->add_flag("--cache", scan_args.use_cache,
                     std::string("Reuse/store a binary table under $") +
                         kCacheEnvVar + " (requires --from 1)");
  add_common(scan_cmd, &scan_args.common);

  MissingArgs missing_args;
  CLI::App* missing_cmd = app.add_subcommand(
      "missing", "Certified list of non-attained dimensions up to a target");
  missing_cmd->add_option("--space", missing_args.space, "full | new | min");
  missing_cmd->add_option("-k,--weight", missing_args.k, "Even weight >= 2");
  missing_cmd->add_option("--target", missing_args.target, "Largest dimension to settle")
      ->required();
  missing_cmd->add_option("--max-scan", missing_args.max_scan,
                          "Abort if the certified scan would exceed this");
  missing_cmd->add_option("--threads", missing_args.threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  add_common(missing_cmd, &missing_args.common);

  SpectrumArgs spectrum_args;
  CLI::App* spectrum_cmd = app.add_subcommand(
      "spectrum", "Exact multiplicities of attained dimensions up to a target");
  spectrum_cmd->add_option("--space", spectrum_args.space, "full | new | min");
  spectrum_cmd->add_option("-k,--weight", spectrum_args.k, "Even weight >= 2");
  spectrum_cmd->add_option("--target", spectrum_args.target,
                           "Largest dimension to settle")
      ->required();
  spectrum_cmd->add_option("--max-scan", spectrum_args.max_scan,
                           "Abort if the certified scan would exceed this");
  spectrum_cmd->add_option("--threads", spectrum_args.threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  spectrum_cmd->add_option("--x", spectrum_args.distinct_x,
                           "Also report the distinct count below (k-1)x/12");
  spectrum_cmd->add_option("--density-grid", spectrum_args.density_grid,
                           "Report the attained-density trend on this grid");
  spectrum_cmd->add_option("--ford-c", spectrum_args.ford_c,
                           "Quadratic constant of the reference density");
  CLI::Option* ford_d_opt =
      spectrum_cmd->add_option("--ford-d", spectrum_args.ford_d,
                               "Linear constant of the reference density");
  add_common(spectrum_cmd, &spectrum_args.common);

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run a verification suite (exit 2 on any failed check)");
  verify_cmd
      ->add_option("--suite", verify_args.suite,
                   "nu_bounds | eta | squarefull_tail | delta_values | "
                   "exceptions | oracles")
      ->required();
  verify_cmd->add_option("--space", verify_args.space, "full | new | min");
  verify_cmd->add_option("-k,--weight", verify_args.k, "Even weight >= 2");
  verify_cmd->add_option("--limit", verify_args.limit, "Level range for nu_bounds");
  verify_cmd->add_option("--grid", verify_args.grid, "Grid of x values");
  verify_cmd->add_option("--cutoff-factor", verify_args.cutoff_factor,
                         "Enumeration cutoff as a multiple of x");
  verify_cmd->add_option("--max-normalized", verify_args.max_normalized,
                         "Pass threshold for the normalized tail");
  verify_cmd->add_option("-r", verify_args.r, "Prime-count bound for delta_values");
  verify_cmd->add_option("--h-bound", verify_args.h_bound,
                         "Squarefull-part bound (full-space delta_values)");
  verify_cmd->add_option("--scan", verify_args.scan, "Survey scan range");
  verify_cmd->add_option("--x", verify_args.x, "Census threshold");
  add_common(verify_cmd, &verify_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (dim_cmd->parsed()) return cmd_dim(dim_args);
    if (scan_cmd->parsed()) return cmd_scan(scan_args);
    if (missing_cmd->parsed()) return cmd_missing(missing_args);
    if (spectrum_cmd->parsed()) {
      spectrum_args.ford_d_set = ford_d_opt->count() > 0;
      return cmd_spectrum(spectrum_args);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    std::cerr << "no command given\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const CertificationError& e) {
    std::cerr << "certification error: " << e.what() << "\n";
    return 2;
  } catch (const MemoryBudgetError& e) {
    std::cerr << "memory budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cuspdim
