// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, ranges and
// time limits are fixed here; the exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subgroup_lab/energetics.hpp"
#include "subgroup_lab/oracle.hpp"
#include "subgroup_lab/spectral.hpp"
#include "subgroup_lab/sweep.hpp"
#include "subgroup_lab/verifier.hpp"
#include "subgroup_lab/zpset.hpp"

namespace {

using namespace sglab;

constexpr double kEnergySpectralRelTol = 1e-6;
constexpr double kPhiRelTol = 1e-9;
constexpr double kIdentityRelTol = 1e-6;
constexpr double kGoldenAbsTol = 1e-9;
constexpr double kEnergyTimeLimit = 30.0;      // seconds
constexpr double kEnvelopeTimeLimit = 300.0;   // seconds
constexpr double kEnvelopeSlopeMax = 2.55;
constexpr double kBucketGrowthFactor = 2.0;
constexpr int kSweepThreads = 8;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure of a criterion and keeps counting cases.
class Tally {
 public:
  void expect(bool cond, const std::function<std::string()>& what) {
    ++cases_;
    if (!cond && ok_) {
      ok_ = false;
      first_ = what();
    }
  }
  std::size_t cases() const { return cases_; }
  Outcome outcome(std::string detail) const {
    if (!ok_) return {false, first_};
    return {true, std::move(detail)};
  }

 private:
  bool ok_ = true;
  std::size_t cases_ = 0;
  std::string first_;
};

std::string at(std::uint32_t p, std::uint64_t d) {
  return "p=" + std::to_string(p) + " d=" + std::to_string(d);
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0 : std::abs(a - b) / scale;
}

template <typename F>
void for_each_subgroup(std::uint64_t lo, std::uint64_t hi, F&& f) {
  for (std::uint32_t p : primes_in_range(lo, hi)) {
    for (std::uint64_t d : divisors(p - 1)) f(subgroup(Modulus(p), d));
  }
}

ZpSet random_set(Modulus p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> density(0.0, 1.0);
  std::bernoulli_distribution coin(density(rng));
  std::vector<std::uint32_t> elems;
  for (std::uint32_t x = 0; x < p.value(); ++x)
    if (coin(rng)) elems.push_back(x);
  return ZpSet::from_elements(p, elems);
}

Outcome energy_equivalence() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  for_each_subgroup(3, 101, [&](const Subgroup& A) {
    const ZpSet a = to_zpset(A);
    const std::uint64_t e = additive_energy(a, a);
    const std::uint64_t quad = oracle::energy_quadruples(a, a);
    const std::uint64_t diff = oracle::energy_difference_form(a, a);
    const auto mags = oracle::dft_magnitudes(a);
    double spec = 0;
    for (double m : mags) spec += m * m * m * m;
    spec /= A.p();
    worst = std::max(worst, rel_diff(spec, double(e)));
    t.expect(e == quad && e == diff, [&] { return at(A.p(), A.order()) + " integer forms differ"; });
    t.expect(rel_diff(spec, double(e)) <= kEnergySpectralRelTol,
             [&] { return at(A.p(), A.order()) + " spectral form off"; });
  });
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < kEnergyTimeLimit, [&] { return "took " + std::to_string(secs) + " s"; });
  std::ostringstream os;
  os << t.cases() << " checks, worst spectral rel err " << worst << ", " << secs << " s";
  return t.outcome(os.str());
}

Outcome convolution_oracle() {
  Tally t;
  std::mt19937_64 rng(20240501);
  for (std::uint32_t p : primes_in_range(3, 101)) {
    const Modulus m(p);
    for (int trial = 0; trial < 50; ++trial) {
      const ZpSet x = random_set(m, rng), y = random_set(m, rng);
      t.expect(convolve_counts(x, y).counts == oracle::pair_counts(x, y),
               [&] { return "convolve_counts p=" + std::to_string(p); });
      std::vector<std::uint64_t> u(p), v(p);
      for (std::uint32_t i = 0; i < p; ++i) {
        u[i] = x.contains(i);
        v[i] = y.contains(i);
      }
      t.expect(cyclic_convolution_exact(u, v, m) == oracle::cyclic_convolution(u, v),
               [&] { return "cyclic_convolution_exact p=" + std::to_string(p); });
    }
  }
  return t.outcome(std::to_string(t.cases()) + " comparisons");
}

Outcome golden_values() {
  Tally t;
  const Modulus p7(7);
  const Subgroup A = subgroup(p7, 3);
  const ZpSet a = to_zpset(A);

  // Brute-force references.
  std::vector<std::uint64_t> shift(7);
  for (std::uint32_t s = 0; s < 7; ++s) shift[s] = oracle::shift_count(a, s);
  double e32 = 0, ssc = 0, sr = 0;
  const auto two_ref = oracle::sumset(a, a);
  std::vector<std::uint32_t> two_elems;
  for (std::uint32_t z = 0; z < 7; ++z)
    if (two_ref[z]) two_elems.push_back(z);
  const ZpSet two = ZpSet::from_elements(p7, two_elems);
  for (std::uint32_t s = 0; s < 7; ++s) {
    const double l = double(shift[s]);
    e32 += std::pow(l, 1.5);
    if (shift[s] == 0) continue;
    ssc += l * l / double(oracle::shift_count(two, s));
    std::vector<std::uint32_t> as;
    for (std::uint32_t x = 0; x < 7; ++x)
      if (a.contains(x) && a.contains((x + 7 - s) % 7)) as.push_back(x);
    const auto plus = oracle::sumset(a, ZpSet::from_elements(p7, as));
    sr += l * l / double(std::count(plus.begin(), plus.end(), true));
  }
  const auto mags = oracle::dft_magnitudes(a);
  const double phi = *std::max_element(mags.begin() + 1, mags.end());
  const auto counts = oracle::pair_counts(a, a);
  const std::uint64_t conv_sum = counts[1] + counts[2] + counts[4];

  const auto report = energy_report(A, true);
  t.expect(report.E == 15 && oracle::energy_quadruples(a, a) == 15, [] { return "E"; });
  t.expect(std::abs(report.E32 - e32) < kGoldenAbsTol && std::abs(e32 - 11.19615) < 1e-5,
           [] { return "E_3/2"; });
  t.expect(std::abs(phi_subgroup(A).phi - std::numbers::sqrt2) <= kGoldenAbsTol &&
               std::abs(phi - std::numbers::sqrt2) <= kGoldenAbsTol,
           [] { return "Phi"; });
  t.expect(fold_sumset(a, 2) == ZpSet::units(p7) && two == ZpSet::units(p7), [] { return "2A"; });
  t.expect(covering_index(A, 8) == 2, [] { return "covering index"; });
  t.expect(std::abs(report.ssc_ratio - 2.7) < kGoldenAbsTol && std::abs(ssc - 2.7) < kGoldenAbsTol,
           [] { return "ssc_ratio_sum"; });
  t.expect(report.sumset_ratio && std::abs(*report.sumset_ratio - 3.5) < kGoldenAbsTol &&
               std::abs(sr - 3.5) < kGoldenAbsTol,
           [] { return "sumset_ratio_sum"; });
  const std::vector<std::uint32_t> one{1};
  const auto s = invariant_set(A, one, false);
  t.expect(invariant_convolution_sum(s, s, s) == 3 && conv_sum == 3,
           [] { return "invariant_convolution_sum"; });
  return t.outcome("p=7, A={1,2,4}: 8 values");
}

Outcome containment() {
  Tally t;
  for_each_subgroup(3, 200, [&](const Subgroup& A) {
    const ZpSet a = to_zpset(A);
    const ZpSet two = fold_sumset(a, 2);
    for (std::uint32_t s = 0; s < A.p(); ++s) {
      t.expect(sumset(a, shift_intersect(a, s)).is_subset_of(shift_intersect(two, s)),
               [&] { return at(A.p(), A.order()) + " s=" + std::to_string(s); });
    }
  });
  return t.outcome(std::to_string(t.cases()) + " (p, d, s) cases");
}

Outcome coset_constancy() {
  Tally t;
  double worst = 0;
  for_each_subgroup(3, 500, [&](const Subgroup& A) {
    const std::uint32_t p = A.p();
    const ZpSet a = to_zpset(A);
    const auto cosets = coset_reps(A);
    std::vector<std::uint64_t> level(cosets.count(), ~std::uint64_t{0});
    for (std::uint32_t z = 1; z < p; ++z) {
      const std::uint64_t l = oracle::shift_count(a, z);
      auto& slot = level[cosets.coset_of(z)];
      if (slot == ~std::uint64_t{0}) slot = l;
      t.expect(slot == l, [&] { return at(p, A.order()) + " z=" + std::to_string(z); });
    }
    const double fast = phi_subgroup(A).phi;
    const double full = dft_magnitudes(a).phi;
    worst = std::max(worst, rel_diff(fast, full));
    t.expect(rel_diff(fast, full) <= kPhiRelTol, [&] { return at(p, A.order()) + " Phi"; });
  });
  std::ostringstream os;
  os << t.cases() << " checks, worst Phi rel err " << worst;
  return t.outcome(os.str());
}

Outcome exponential_sum_identity() {
  Tally t;
  double worst = 0;
  for_each_subgroup(3, 101, [&](const Subgroup& A) {
    const std::uint32_t p = A.p();
    const ZpSet a = to_zpset(A);
    const auto mags = oracle::dft_magnitudes(a);
    std::vector<std::uint64_t> shift(p);
    for (std::uint32_t s = 0; s < p; ++s) shift[s] = oracle::shift_count(a, s);
    for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
      const double lhs = double(A.size()) * mags[lambda] * mags[lambda];
      double rhs = 0;
      for (std::uint32_t s = 0; s < p; ++s) {
        if (shift[s] == 0) continue;
        double re = 0;
        for (std::uint32_t y : A.elements()) {
          const std::uint64_t k = std::uint64_t{lambda} * y % p * s % p;
          re += std::cos(2 * std::numbers::pi * double(k) / p);
        }
        rhs += double(shift[s]) * re;
      }
      // Both sides are O(|A|^3); compare on that scale when they nearly cancel.
      const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
      const double err = std::abs(lhs - rhs) / scale;
      worst = std::max(worst, err);
      t.expect(err <= kIdentityRelTol,
               [&] { return at(p, A.order()) + " lambda=" + std::to_string(lambda); });
    }
  });
  std::ostringstream os;
  os << t.cases() << " (p, d, lambda) cases, worst rel err " << worst;
  return t.outcome(os.str());
}

Outcome six_fold_chain() {
  Tally t;
  std::mt19937_64 rng(0x6a);
  std::size_t positive = 0;
  for_each_subgroup(100, 2000, [&](const Subgroup& A) {
    if (!positivity_condition(A)) return;
    ++positive;
    const std::uint32_t p = A.p();
    t.expect(check_six_fold(A), [&] { return at(p, A.order()) + " 6A misses a unit"; });
    const SolutionCounter counter(A);
    std::uniform_int_distribution<std::uint32_t> pick(1, p - 1);
    for (int i = 0; i < 20; ++i) {
      const std::uint32_t a = pick(rng);
      t.expect(counter.count(a) > 0, [&] { return at(p, A.order()) + " N(a)=0, a=" + std::to_string(a); });
    }
  });
  std::size_t above = 0;
  for_each_subgroup(1000, 5000, [&](const Subgroup& A) {
    if (double(A.size()) < std::pow(double(A.p()), 0.478)) return;
    ++above;
    t.expect(check_six_fold(A), [&] { return at(A.p(), A.order()) + " above p^0.478 but 6A misses a unit"; });
  });
  return t.outcome(std::to_string(positive) + " positive subgroups, " + std::to_string(above) +
                   " subgroups above p^0.478");
}

Outcome hk_envelope() {
  const auto start = std::chrono::steady_clock::now();
  SweepConfig c;
  c.p_min = 3;
  c.p_max = 20000;
  c.min_size = 3;
  c.alpha_hi = 2.0 / 3.0;
  c.checks = {"hk_energy"};
  c.threads = kSweepThreads;
  std::vector<std::pair<double, double>> energy;
  ReportBuilder builder(c.checks);
  Tally t;
  run_sweep(c, [&](const SweepRecord& r) {
    t.expect(std::pow(double(r.d), 1.5) <= double(r.p) * (1 + 1e-12),
             [&] { return at(r.p, r.d) + " outside |A| <= p^(2/3)"; });
    energy.emplace_back(double(r.d), double(r.energy.E));
    builder.add(r);
  });
  const auto data = std::move(builder).finish();
  const auto summary = summarize(data).front();
  const auto env = envelope_fit(energy);
  const double last = summary.bucket_max_ratio.rbegin()->second;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(env.slope <= kEnvelopeSlopeMax, [&] { return "envelope slope " + std::to_string(env.slope); });
  t.expect(last <= kBucketGrowthFactor * summary.max_ratio, [&] { return "last bucket grows"; });
  t.expect(secs < kEnvelopeTimeLimit, [&] { return "took " + std::to_string(secs) + " s"; });
  std::ostringstream os;
  os << energy.size() << " subgroups, envelope slope " << env.slope << " (<= " << kEnvelopeSlopeMax
     << "), max E/|A|^2.5 " << summary.max_ratio << ", last bucket " << last << ", " << secs << " s";
  return t.outcome(os.str());
}

SweepConfig full_sweep_5000(int threads) {
  SweepConfig c;
  c.p_min = 3;
  c.p_max = 5000;
  c.checks = parse_check_list("all");
  c.heavy = true;
  c.threads = threads;
  return c;
}

// Strictly increasing across at least three buckets counts as growth.
bool monotone_growth(const std::map<int, double>& buckets) {
  if (buckets.size() < 3) return false;
  double prev = -1;
  for (const auto& [b, v] : buckets) {
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

Outcome ratio_finiteness() {
  Tally t;
  const auto config = full_sweep_5000(kSweepThreads);
  ReportBuilder builder(config.checks);
  std::map<std::string, std::map<int, double>> in_range;
  std::map<std::string, double> in_range_max;
  std::size_t n = 0;
  run_sweep(config, [&](const SweepRecord& r) {
    ++n;
    builder.add(r);
    if (r.d >= 3) t.expect(r.checks.size() == config.checks.size(), [&] { return at(r.p, r.d) + " missing checks"; });
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
      const auto& c = r.checks[i];
      t.expect(c.has_value(), [&] { return at(r.p, r.d) + " " + config.checks[i] + " not computed"; });
      if (!c) continue;
      t.expect(std::isfinite(c->ratio) && c->ratio >= 0 && c->rhs_expr > 0,
               [&] { return at(r.p, r.d) + " " + c->name + " ratio " + std::to_string(c->ratio); });
      if ((c->name == "li_decay" || c->name == "e32") && c->hypothesis_ok) {
        const int b = static_cast<int>(std::floor(std::log2(double(c->A_size))));
        auto& slot = in_range[c->name][b];
        slot = std::max(slot, c->ratio);
        in_range_max[c->name] = std::max(in_range_max[c->name], c->ratio);
      }
    }
  });
  const auto data = std::move(builder).finish();
  const auto summary = summarize(data);
  t.expect(summary.size() == config.checks.size(), [] { return "summary lacks checks"; });
  for (const auto& s : summary) {
    t.expect(s.n_nonfinite == 0, [&] { return s.name + " has non-finite ratios"; });
    t.expect(s.fit.has_value() && s.envelope.has_value() && std::isfinite(s.envelope->slope),
             [&] { return s.name + " lacks an envelope fit"; });
  }
  t.expect(!format_summary(data, summary).empty(), [] { return "empty summary text"; });
  std::ostringstream os;
  os << n << " records";
  for (const auto& name : {"e32", "li_decay"}) {
    t.expect(!monotone_growth(in_range[name]), [&] { return std::string(name) + " grows across buckets"; });
    double overall = 0;
    for (const auto& s : summary)
      if (s.name == name) overall = s.max_ratio;
    os << ", " << name << " max " << in_range_max[name] << " for |A| <= p^(1/2) (" << overall
       << " over all)";
  }
  return t.outcome(os.str());
}

std::string render_csv(const SweepConfig& c) {
  std::string out = csv_header(c.checks) + "\n";
  run_sweep(c, [&](const SweepRecord& r) { out += csv_row(r, c.checks) + "\n"; });
  return out;
}

Outcome determinism() {
  const std::string one = render_csv(full_sweep_5000(1));
  const std::string eight = render_csv(full_sweep_5000(kSweepThreads));
  if (one != eight) return {false, "CSV differs between 1 and 8 threads"};
  return {true, std::to_string(one.size()) + " identical bytes"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "energy definitions agree (p <= 101)", energy_equivalence},
      {2, "convolution matches naive oracle (p <= 101, 50 pairs)", convolution_oracle},
      {3, "golden values at p = 7", golden_values},
      {4, "A + A_s within (2A)_s (p <= 200)", containment},
      {5, "|A_z| constant on cosets, Phi fast = full (p <= 500)", coset_constancy},
      {6, "exponential-sum shift identity (p <= 101)", exponential_sum_identity},
      {7, "positivity implies 6A covers and N > 0", six_fold_chain},
      {8, "energy envelope slope (p <= 20000)", hk_envelope},
      {9, "bound ratios finite, reports emitted (p <= 5000)", ratio_finiteness},
      {10, "CSV identical for 1 and 8 threads", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s -- %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
