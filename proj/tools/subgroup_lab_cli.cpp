// subgroup-lab: sweeps over multiplicative subgroups of Z_p^*, the property
// suite, and report generation from stored sweeps.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage or configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "subgroup_lab/errors.hpp"
#include "subgroup_lab/sweep.hpp"
#include "subgroup_lab/verify.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

// Sweep flags in precedence order: command line > config file >
// SUBGROUP_LAB_THREADS > defaults.
const std::vector<std::string> kSweepKeys = {
    "pmin", "pmax",   "alpha-lo", "alpha-hi",   "min-size",           "max-size", "checks",
    "kmax", "threads", "out",     "format",     "svg-dir", "hypothesis-constant",
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sglab::InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_sweep_command(const std::map<std::string, std::string>& cli, bool heavy_flag,
                      const std::string& config_path, const std::string& summary_path) {
  sglab::SweepConfig config;
  if (const char* env = std::getenv("SUBGROUP_LAB_THREADS"); env && *env) {
    sglab::apply_setting(config, "threads", env);
  }
  if (!config_path.empty()) {
    for (const auto& [k, v] : sglab::parse_config_text(read_file(config_path))) {
      sglab::apply_setting(config, k, v);
    }
  }
  for (const auto& [k, v] : cli) sglab::apply_setting(config, k, v);
  if (heavy_flag) config.heavy = true;
  sglab::validate(config);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!config.out_path.empty()) {
    file.open(config.out_path);
    if (!file) throw sglab::InvalidArgument("cannot write " + config.out_path);
    out = &file;
  }
  if (config.format == sglab::OutputFormat::kCsv) *out << sglab::csv_header(config.checks) << "\n";

  sglab::ReportBuilder report(config.checks);
  sglab::run_sweep(config, [&](const sglab::SweepRecord& r) {
    *out << (config.format == sglab::OutputFormat::kCsv ? sglab::csv_row(r, config.checks)
                                                        : sglab::jsonl_row(r, config.checks))
         << "\n";
    report.add(r);
  });
  out->flush();
  if (!*out) throw std::runtime_error("write failed for sweep output");

  std::string summary = summary_path;
  if (summary.empty() && !config.out_path.empty()) summary = config.out_path + ".summary.txt";
  sglab::emit_report(std::move(report).finish(), summary, config.svg_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive structure of multiplicative subgroups of Z_p^*"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "Evaluate every subgroup in a prime range");
  std::map<std::string, std::string> sweep_values;
  std::vector<std::pair<std::string, CLI::Option*>> sweep_opts;
  for (const auto& key : kSweepKeys) {
    sweep_opts.emplace_back(key, sweep->add_option("--" + key, sweep_values[key]));
  }
  bool heavy = false;
  std::string config_path, summary_path;
  sweep->add_flag("--heavy", heavy, "Enable sumset_ratio_sum and N-counts above p = 4096");
  sweep->add_option("--config", config_path, "Flat key=value config file");
  sweep->add_option("--summary", summary_path, "Summary path (default <out>.summary.txt)");

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  std::uint32_t verify_pmax = 101;
  bool inject_fault = false, verbose = false;
  verify->add_option("--pmax", verify_pmax, "Largest prime to examine");
  verify->add_flag("--inject-fault", inject_fault, "Corrupt convolutions (self-test)");
  verify->add_flag("-v,--verbose", verbose);

  auto* report = app.add_subcommand("report", "Summarise a stored sweep CSV");
  std::string report_in, report_out, report_svg;
  report->add_option("--in", report_in, "Sweep CSV")->required();
  report->add_option("--out", report_out, "Summary path (default stdout)");
  report->add_option("--svg-dir", report_svg, "Directory for per-check SVG scatters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      std::map<std::string, std::string> given;
      for (const auto& [key, opt] : sweep_opts) {
        if (opt->count() > 0) given[key] = sweep_values[key];
      }
      return run_sweep_command(given, heavy, config_path, summary_path);
    }
    if (verify->parsed()) {
      sglab::VerifyOptions opts;
      opts.p_max = verify_pmax;
      opts.inject_fault = inject_fault;
      if (verbose) opts.log = &std::cerr;
      const auto result = sglab::verify_all(opts);
      if (!result.ok) {
        std::cout << "FAIL " << result.counterexample << "\n";
        return kExitViolation;
      }
      std::cout << "OK " << result.cases << " cases\n";
      return 0;
    }
    if (report->parsed()) {
      std::ifstream in(report_in);
      if (!in) throw sglab::InvalidArgument("cannot read " + report_in);
      const auto data = sglab::report_from_csv(in);
      if (report_out.empty()) {
        std::cout << sglab::format_summary(data, sglab::summarize(data));
        sglab::emit_report(data, "", report_svg);
      } else {
        sglab::emit_report(data, report_out, report_svg);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
