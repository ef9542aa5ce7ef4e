#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subgroup_lab/energetics.hpp"
#include "subgroup_lab/verifier.hpp"

namespace sglab {

enum class OutputFormat { kCsv, kJsonl };

struct SweepConfig {
  std::uint64_t p_min = 3;
  std::uint64_t p_max = 1000;
  std::uint64_t min_size = 1;
  std::uint64_t max_size = kMaxModulus;
  double alpha_lo = 0.0;  // window on log_p |A|
  double alpha_hi = 1.0;
  std::vector<std::string> checks;
  int kmax = 8;
  int threads = 1;
  std::string out_path;
  OutputFormat format = OutputFormat::kCsv;
  std::string svg_dir;
  double hypothesis_constant = 1.0;
  bool heavy = false;
};

// Throws InvalidArgument / CatalogError describing the first problem.
void validate(const SweepConfig& config);

// Sets one field by its command-line name without dashes ("pmin",
// "alpha-lo", "checks", "heavy", ...). "checks" takes a comma list or "all".
void apply_setting(SweepConfig& config, std::string_view key, std::string_view value);

// Flat key=value lines; blank lines and '#' comments are skipped.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

std::vector<std::string> parse_check_list(std::string_view list);

bool passes_filter(const SweepConfig& config, std::uint32_t p, std::uint64_t d);

// Every (p, d) the sweep visits, sorted by p then d.
std::vector<std::pair<std::uint32_t, std::uint32_t>> sweep_tasks(const SweepConfig& config);

struct SweepRecord {
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  EnergyReport energy;
  double phi = 0.0;
  std::uint32_t phi_argmax = 0;
  bool six_fold = false;
  std::optional<int> covering_k;
  bool clears_six_fold_exponent = false;
  // Aligned with SweepConfig::checks; empty when |A| < 3, nullopt entries
  // for checks whose inputs were gated off.
  std::vector<std::optional<BoundCheck>> checks;
};

SweepRecord compute_record(std::uint32_t p, std::uint32_t d, const SweepConfig& config);

// Records reach the sink in (p, d) order whatever the thread count.
void run_sweep(const SweepConfig& config,
               const std::function<void(const SweepRecord&)>& sink);
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

std::string csv_header(const std::vector<std::string>& checks);
std::string csv_row(const SweepRecord& record, const std::vector<std::string>& checks);
std::string jsonl_row(const SweepRecord& record, const std::vector<std::string>& checks);

// Per-check data points gathered from records or from a sweep CSV.
struct CheckSeries {
  std::string name;
  std::vector<std::uint32_t> p;
  std::vector<double> a_size;
  std::vector<double> lhs;
  std::vector<double> ratio;
};

struct ReportData {
  std::size_t n_records = 0;
  std::size_t threshold_cleared = 0;          // |A| >= p^{11/23}
  std::size_t threshold_cleared_covered = 0;  // ... and 6A ⊇ Z_p^*
  std::vector<CheckSeries> series;
};

class ReportBuilder {
 public:
  explicit ReportBuilder(std::vector<std::string> checks);
  void add(const SweepRecord& record);
  ReportData finish() &&;

 private:
  ReportData data_;
};

// Reads a CSV produced by the sweep.
ReportData report_from_csv(std::istream& in);

struct CheckSummary {
  std::string name;
  std::size_t n_points = 0;
  std::size_t n_nonfinite = 0;
  std::optional<FitResult> fit;       // log lhs against log |A|, all points
  std::optional<FitResult> envelope;  // dyadic maxima only
  double max_ratio = 0.0;
  std::map<int, double> bucket_max_ratio;  // floor(log2 |A|) -> max ratio
};

std::vector<CheckSummary> summarize(const ReportData& data);
std::string format_summary(const ReportData& data, const std::vector<CheckSummary>& summary);

// Self-contained SVG scatter of log lhs against log |A|.
std::string svg_scatter(const CheckSeries& series);

// Writes the summary file and, when svg_dir is non-empty, one SVG per check.
void emit_report(const ReportData& data, const std::string& summary_path,
                 const std::string& svg_dir);

}  // namespace sglab
