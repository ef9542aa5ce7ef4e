#include "subgroup_lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>
#include <type_traits>

#include "subgroup_lab/errors.hpp"
#include "subgroup_lab/spectral.hpp"

namespace sglab {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Column values in CSV order; nullopt for blank cells.
std::vector<std::pair<std::string, std::optional<std::string>>> columns(
    const SweepRecord& r, const std::vector<std::string>& checks) {
  std::vector<std::pair<std::string, std::optional<std::string>>> cols;
  const auto& e = r.energy;
  cols.emplace_back("p", std::to_string(r.p));
  cols.emplace_back("d", std::to_string(r.d));
  cols.emplace_back("A_size", std::to_string(r.d));
  cols.emplace_back("twoA_size", std::to_string(e.twoA_size));
  cols.emplace_back("sixA_covers", r.six_fold ? "1" : "0");
  cols.emplace_back("covering_k", r.covering_k ? std::optional(std::to_string(*r.covering_k))
                                               : std::nullopt);
  cols.emplace_back("E", std::to_string(e.E));
  cols.emplace_back("E3", std::to_string(e.E3));
  cols.emplace_back("E32", fmt(e.E32));
  cols.emplace_back("phi", fmt(r.phi));
  cols.emplace_back("ssc_ratio", fmt(e.ssc_ratio));
  cols.emplace_back("sumset_ratio",
                    e.sumset_ratio ? std::optional(fmt(*e.sumset_ratio)) : std::nullopt);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::optional<BoundCheck> bc =
        i < r.checks.size() ? r.checks[i] : std::optional<BoundCheck>{};
    const std::string& n = checks[i];
    cols.emplace_back(n + ":lhs", bc ? std::optional(fmt(bc->lhs)) : std::nullopt);
    cols.emplace_back(n + ":rhs", bc ? std::optional(fmt(bc->rhs_expr)) : std::nullopt);
    cols.emplace_back(n + ":ratio", bc ? std::optional(fmt(bc->ratio)) : std::nullopt);
    cols.emplace_back(n + ":hyp", bc ? std::optional<std::string>(bc->hypothesis_ok ? "1" : "0")
                                     : std::nullopt);
  }
  return cols;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void validate(const SweepConfig& c) {
  if (c.p_min > c.p_max) throw InvalidArgument("pmin exceeds pmax");
  if (c.p_max > kMaxModulus) throw InvalidArgument("pmax exceeds 2^26");
  if (c.threads < 1) throw InvalidArgument("threads must be >= 1");
  if (c.kmax < 1) throw InvalidArgument("kmax must be >= 1");
  if (c.alpha_lo > c.alpha_hi) throw InvalidArgument("alpha-lo exceeds alpha-hi");
  if (c.min_size > c.max_size) throw InvalidArgument("min-size exceeds max-size");
  if (!(c.hypothesis_constant > 0)) throw InvalidArgument("hypothesis constant must be > 0");
  for (const auto& name : c.checks) {
    if (!in_catalog(name)) throw CatalogError("unknown bound check: " + name);
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(v, &used));
    } else if constexpr (std::is_signed_v<T>) {
      out = static_cast<T>(std::stoll(v, &used));
    } else {
      if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
      out = static_cast<T>(std::stoull(v, &used));
    }
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw InvalidArgument("bad value for " + std::string(key) + ": '" + v + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw InvalidArgument("bad boolean for " + std::string(key) + ": '" + v + "'");
}

}  // namespace

std::vector<std::string> parse_check_list(std::string_view list) {
  const std::string v = trim(list);
  std::vector<std::string> out;
  if (v.empty()) return out;
  if (v == "all") {
    for (auto n : bound_catalog()) out.emplace_back(n);
    return out;
  }
  for (const auto& part : split(v, ',')) {
    const std::string name = trim(part);
    if (!in_catalog(name)) throw CatalogError("unknown bound check: " + name);
    out.push_back(name);
  }
  return out;
}

void apply_setting(SweepConfig& c, std::string_view key, std::string_view value) {
  if (key == "pmin") {
    c.p_min = parse_number<std::uint64_t>(key, value);
  } else if (key == "pmax") {
    c.p_max = parse_number<std::uint64_t>(key, value);
  } else if (key == "alpha-lo") {
    c.alpha_lo = parse_number<double>(key, value);
  } else if (key == "alpha-hi") {
    c.alpha_hi = parse_number<double>(key, value);
  } else if (key == "min-size") {
    c.min_size = parse_number<std::uint64_t>(key, value);
  } else if (key == "max-size") {
    c.max_size = parse_number<std::uint64_t>(key, value);
  } else if (key == "checks") {
    c.checks = parse_check_list(value);
  } else if (key == "kmax") {
    c.kmax = parse_number<int>(key, value);
  } else if (key == "threads") {
    c.threads = parse_number<int>(key, value);
  } else if (key == "out") {
    c.out_path = trim(value);
  } else if (key == "format") {
    const std::string v = trim(value);
    if (v == "csv") {
      c.format = OutputFormat::kCsv;
    } else if (v == "jsonl") {
      c.format = OutputFormat::kJsonl;
    } else {
      throw InvalidArgument("format must be csv or jsonl, got '" + v + "'");
    }
  } else if (key == "svg-dir") {
    c.svg_dir = trim(value);
  } else if (key == "hypothesis-constant") {
    c.hypothesis_constant = parse_number<double>(key, value);
  } else if (key == "heavy") {
    c.heavy = parse_bool(key, value);
  } else {
    throw InvalidArgument("unknown setting: " + std::string(key));
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(std::string(text), '\n')) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + " lacks '='");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

bool passes_filter(const SweepConfig& c, std::uint32_t p, std::uint64_t d) {
  if (d < c.min_size || d > c.max_size) return false;
  const double alpha = std::log(static_cast<double>(d)) / std::log(static_cast<double>(p));
  return alpha >= c.alpha_lo && alpha <= c.alpha_hi;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> sweep_tasks(const SweepConfig& c) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tasks;
  for (std::uint32_t p : primes_in_range(c.p_min, c.p_max)) {
    for (std::uint64_t d : divisors(p - 1)) {
      if (passes_filter(c, p, d)) tasks.emplace_back(p, static_cast<std::uint32_t>(d));
    }
  }
  return tasks;
}

SweepRecord compute_record(std::uint32_t p, std::uint32_t d, const SweepConfig& config) {
  const Subgroup A = subgroup(Modulus(p), d);
  const SubgroupData data = analyze(A);
  SweepRecord rec;
  rec.p = p;
  rec.d = d;

  ContextOptions opts;
  opts.hypothesis_constant = config.hypothesis_constant;
  opts.allow_heavy = config.heavy;
  opts.force_sumset_ratio = true;
  const bool with_checks = A.size() >= 3 && !config.checks.empty();
  const BoundContext ctx =
      build_context(data, with_checks ? config.checks : std::vector<std::string>{}, opts);
  rec.energy = *ctx.energy;
  const PhiResult ph = phi_subgroup(data.cosets);
  rec.phi = ph.phi;
  rec.phi_argmax = ph.argmax;
  rec.six_fold = check_six_fold(data.cosets);
  rec.covering_k = covering_index(data.cosets, config.kmax);
  rec.clears_six_fold_exponent = clears_six_fold_exponent(p, A.size());

  if (with_checks) {
    rec.checks.reserve(config.checks.size());
    for (const auto& name : config.checks) {
      try {
        rec.checks.emplace_back(check_bound(name, A, ctx));
      } catch (const DependencyError&) {
        rec.checks.emplace_back(std::nullopt);
      }
    }
  }
  return rec;
}

void run_sweep(const SweepConfig& config,
               const std::function<void(const SweepRecord&)>& sink) {
  validate(config);
  const auto tasks = sweep_tasks(config);
  if (tasks.empty()) return;

  std::vector<std::optional<SweepRecord>> slots(tasks.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        SweepRecord rec = compute_record(tasks[i].first, tasks[i].second, config);
        std::lock_guard lock(mu);
        slots[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      ready.notify_all();
    }
  };

  const int n_workers =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.threads), tasks.size()));
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);

  // Single writer: emits in task order, buffering out-of-order completions.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    SweepRecord rec;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value() || failure != nullptr; });
      if (failure) break;
      rec = std::move(*slots[i]);
      slots[i].reset();
    }
    try {
      sink(rec);
    } catch (...) {
      stop = true;
      throw;
    }
  }
  stop = true;
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  std::vector<SweepRecord> out;
  run_sweep(config, [&](const SweepRecord& r) { out.push_back(r); });
  return out;
}

std::string csv_header(const std::vector<std::string>& checks) {
  std::string out =
      "p,d,A_size,twoA_size,sixA_covers,covering_k,E,E3,E32,phi,ssc_ratio,sumset_ratio";
  for (const auto& n : checks) {
    out += "," + n + ":lhs," + n + ":rhs," + n + ":ratio," + n + ":hyp";
  }
  return out;
}

std::string csv_row(const SweepRecord& record, const std::vector<std::string>& checks) {
  std::string out;
  bool first = true;
  for (const auto& [key, value] : columns(record, checks)) {
    if (!first) out += ',';
    first = false;
    if (value) out += *value;
  }
  return out;
}

std::string jsonl_row(const SweepRecord& record, const std::vector<std::string>& checks) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : columns(record, checks)) {
    if (!first) out += ',';
    first = false;
    out += '"' + key + "\":";
    if (!value || *value == "nan" || *value == "inf" || *value == "-inf") {
      out += "null";
    } else {
      out += *value;
    }
  }
  out += '}';
  return out;
}

ReportBuilder::ReportBuilder(std::vector<std::string> checks) {
  for (auto& n : checks) data_.series.push_back(CheckSeries{std::move(n), {}, {}, {}, {}});
}

void ReportBuilder::add(const SweepRecord& record) {
  ++data_.n_records;
  if (record.clears_six_fold_exponent) {
    ++data_.threshold_cleared;
    if (record.six_fold) ++data_.threshold_cleared_covered;
  }
  for (std::size_t i = 0; i < record.checks.size() && i < data_.series.size(); ++i) {
    if (!record.checks[i]) continue;
    auto& s = data_.series[i];
    s.p.push_back(record.p);
    s.a_size.push_back(static_cast<double>(record.d));
    s.lhs.push_back(record.checks[i]->lhs);
    s.ratio.push_back(record.checks[i]->ratio);
  }
}

ReportData ReportBuilder::finish() && { return std::move(data_); }

ReportData report_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty sweep CSV");
  const auto header = split(line, ',');
  auto col = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InvalidArgument("sweep CSV lacks column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_p = col("p"), c_a = col("A_size"), c_six = col("sixA_covers");
  ReportData data;
  std::vector<std::pair<std::size_t, std::size_t>> check_cols;  // lhs, ratio
  for (const auto& h : header) {
    const auto pos = h.rfind(":lhs");
    if (pos != std::string::npos && pos + 4 == h.size()) {
      const std::string name = h.substr(0, pos);
      data.series.push_back(CheckSeries{name, {}, {}, {}, {}});
      check_cols.emplace_back(col(name + ":lhs"), col(name + ":ratio"));
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw InvalidArgument("ragged sweep CSV row: " + line);
    ++data.n_records;
    const auto p = static_cast<std::uint32_t>(std::stoul(cells[c_p]));
    const double a = std::stod(cells[c_a]);
    if (clears_six_fold_exponent(p, static_cast<std::uint64_t>(a))) {
      ++data.threshold_cleared;
      if (cells[c_six] == "1") ++data.threshold_cleared_covered;
    }
    for (std::size_t i = 0; i < check_cols.size(); ++i) {
      const auto& lhs = cells[check_cols[i].first];
      if (lhs.empty()) continue;
      auto& s = data.series[i];
      s.p.push_back(p);
      s.a_size.push_back(a);
      s.lhs.push_back(std::stod(lhs));
      s.ratio.push_back(std::stod(cells[check_cols[i].second]));
    }
  }
  return data;
}

std::vector<CheckSummary> summarize(const ReportData& data) {
  std::vector<CheckSummary> out;
  for (const auto& s : data.series) {
    CheckSummary cs;
    cs.name = s.name;
    cs.n_points = s.lhs.size();
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.lhs.size(); ++i) {
      if (!std::isfinite(s.ratio[i]) || !std::isfinite(s.lhs[i])) {
        ++cs.n_nonfinite;
        continue;
      }
      cs.max_ratio = std::max(cs.max_ratio, s.ratio[i]);
      const int bucket = static_cast<int>(std::floor(std::log2(s.a_size[i])));
      double& bm = cs.bucket_max_ratio[bucket];
      bm = std::max(bm, s.ratio[i]);
      if (s.lhs[i] > 0) pts.emplace_back(s.a_size[i], s.lhs[i]);
    }
    try {
      cs.fit = exponent_fit(pts);
      cs.envelope = envelope_fit(pts);
    } catch (const std::invalid_argument&) {
    }
    out.push_back(std::move(cs));
  }
  return out;
}

std::string format_summary(const ReportData& data, const std::vector<CheckSummary>& summary) {
  std::ostringstream os;
  os << "records=" << data.n_records << "\n";
  os << "six_fold_exponent_cleared=" << data.threshold_cleared << "\n";
  os << "six_fold_exponent_cleared_covered=" << data.threshold_cleared_covered << "\n";
  for (const auto& cs : summary) {
    os << "check=" << cs.name << " points=" << cs.n_points << " nonfinite=" << cs.n_nonfinite
       << " max_ratio=" << fmt(cs.max_ratio);
    if (cs.fit) os << " slope=" << fmt(cs.fit->slope) << " residual=" << fmt(cs.fit->residual);
    if (cs.envelope) {
      os << " envelope_slope=" << fmt(cs.envelope->slope)
         << " envelope_points=" << cs.envelope->n_points;
    }
    os << "\n";
    for (const auto& [bucket, mx] : cs.bucket_max_ratio) {
      os << "  bucket=" << bucket << " max_ratio=" << fmt(mx) << "\n";
    }
  }
  return os.str();
}

std::string svg_scatter(const CheckSeries& series) {
  constexpr double kW = 640, kH = 480, kMargin = 60;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < series.lhs.size(); ++i) {
    if (series.lhs[i] > 0 && series.a_size[i] > 0 && std::isfinite(series.lhs[i])) {
      pts.emplace_back(std::log(series.a_size[i]), std::log(series.lhs[i]));
    }
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
  }
  auto sx = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin); };
  auto sy = [&](double y) { return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\">" << series.name
     << "</text>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
     << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
     << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 20
     << "\" text-anchor=\"middle\">log |A| [" << fmt(x0) << ", " << fmt(x1) << "]</text>\n";
  os << "<text x=\"16\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 16 " << kH / 2
     << ")\" text-anchor=\"middle\">log lhs [" << fmt(y0) << ", " << fmt(y1) << "]</text>\n";
  for (const auto& [x, y] : pts) {
    os << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
       << "\" r=\"2\" fill=\"steelblue\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_report(const ReportData& data, const std::string& summary_path,
                 const std::string& svg_dir) {
  const auto summary = summarize(data);
  if (!summary_path.empty()) {
    std::ofstream f(summary_path);
    if (!f) throw std::runtime_error("cannot write summary file " + summary_path);
    f << format_summary(data, summary);
    if (!f) throw std::runtime_error("write failed for " + summary_path);
  }
  if (!svg_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(svg_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + svg_dir + ": " + ec.message());
    for (const auto& s : data.series) {
      const auto path = (std::filesystem::path(svg_dir) / (s.name + ".svg")).string();
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot write " + path);
      f << svg_scatter(s);
    }
  }
}

}  // namespace sglab
