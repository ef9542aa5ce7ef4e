#include "subgroup_lab/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "subgroup_lab/errors.hpp"
#include "subgroup_lab/spectral.hpp"

namespace sglab {

namespace {

constexpr std::array<std::string_view, 16> kCatalog = {
    "hk_energy",        "e3",              "ssc2",           "ssc_lemma3",
    "energy1_shkredov", "energy2_shkredov", "energy_extension", "sumset_growth",
    "phi_hk",           "phi_shparlinski", "e32",            "phi_expA",
    "phi_expA2",        "sv_convolution",  "l3_moment",      "li_decay",
};

bool wants(std::span<const std::string> checks, std::initializer_list<std::string_view> names) {
  for (const auto& c : checks) {
    for (auto n : names) {
      if (c == n) return true;
    }
  }
  return false;
}

template <typename T>
const T& need(const std::optional<T>& v, std::string_view check, const char* what) {
  if (!v) {
    throw DependencyError(std::string(check) + " needs " + what + " in its context");
  }
  return *v;
}

}  // namespace

std::span<const std::string_view> bound_catalog() { return kCatalog; }

bool in_catalog(std::string_view name) {
  return std::find(kCatalog.begin(), kCatalog.end(), name) != kCatalog.end();
}

BoundContext build_context(const SubgroupData& data, std::span<const std::string> checks,
                           const ContextOptions& options) {
  for (const auto& c : checks) {
    if (!in_catalog(c)) throw CatalogError("unknown bound check: " + c);
  }
  const Subgroup& A = data.subgroup();
  BoundContext ctx;
  ctx.hypothesis_constant = options.hypothesis_constant;

  const bool want_sumset_ratio =
      (options.force_sumset_ratio || wants(checks, {"ssc_lemma3"})) && (A.p() <= kHeavyModulusLimit || options.allow_heavy);
  ctx.energy = energy_report(data, want_sumset_ratio, options.allow_heavy);

  if (wants(checks, {"phi_hk", "phi_shparlinski", "phi_expA", "phi_expA2"})) {
    ctx.phi = phi_subgroup(data.cosets).phi;
  }
  if (wants(checks, {"li_decay"})) ctx.profile = data.profile;

  if (wants(checks, {"sv_convolution"})) {
    const InvariantSet a = invariant_set_unchecked(A, {1}, false);
    const InvariantSet& two = data.two_fold;
    SvInput sv;
    sv.s1_size = sv.s2_size = two.size();
    sv.s1_nonzero = sv.s2_nonzero = two.nonzero_size();
    sv.s3_size = a.size();
    sv.s3_nonzero = a.nonzero_size();
    sv.sum = invariant_convolution_sum(two, two, a);
    ctx.sv = sv;
  }
  if (wants(checks, {"l3_moment"})) {
    const InvariantSet a = invariant_set_unchecked(A, {1}, false);
    const CountProfile counts = invariant_counts(a, a, data.cosets);
    L3Input l3;
    l3.s1_size = l3.s2_size = A.size();
    l3.k = static_cast<double>(A.size()) * static_cast<double>(A.size()) /
           static_cast<double>(data.two_fold.size());
    l3.r = options.l3_r;
    const InvariantSet m =
        threshold_invariant_set(counts, data.cosets, l3.k, options.l3_include_zero);
    l3.m_size = m.size();
    l3.moment = restricted_moment(counts, m, l3.r);
    ctx.l3 = l3;
  }
  return ctx;
}

BoundCheck check_bound(std::string_view name, const Subgroup& A, const BoundContext& ctx) {
  if (!in_catalog(name)) throw CatalogError("unknown bound check: " + std::string(name));
  if (A.size() < 3) throw InvalidArgument("bound checks require |A| >= 3");

  const double p = A.p();
  const double a = static_cast<double>(A.size());
  const double la = std::log(a);
  const double c = ctx.hypothesis_constant;

  BoundCheck out;
  out.name = std::string(name);
  out.p = A.p();
  out.d = A.order();
  out.A_size = A.size();
  if (ctx.energy) out.twoA_size = ctx.energy->twoA_size;

  auto energy = [&]() -> const EnergyReport& { return need(ctx.energy, name, "an energy report"); };
  auto two_a = [&]() { return static_cast<double>(energy().twoA_size); };
  auto E = [&]() { return static_cast<double>(energy().E); };
  auto phi = [&]() { return need(ctx.phi, name, "Phi_A"); };
  const bool below_two_thirds = a <= c * std::pow(p, 2.0 / 3.0);
  const bool below_half = a <= c * std::sqrt(p);

  if (name == "hk_energy") {
    out.lhs = E();
    out.rhs_expr = std::pow(a, 2.5);
    out.hypothesis_ok = below_two_thirds;
  } else if (name == "e3") {
    out.lhs = static_cast<double>(energy().E3);
    out.rhs_expr = a * a * a * la;
    out.hypothesis_ok = below_two_thirds;
  } else if (name == "ssc2") {
    out.lhs = energy().ssc_ratio;
    out.rhs_expr = a * la;
    out.hypothesis_ok = below_two_thirds;
  } else if (name == "ssc_lemma3") {
    out.lhs = need(energy().sumset_ratio, name, "sumset_ratio_sum");
    out.rhs_expr = static_cast<double>(energy().E3) / (a * a);
    out.hypothesis_ok = true;
  } else if (name == "energy1_shkredov") {
    out.lhs = E();
    out.rhs_expr = std::pow(a, 4.0 / 3.0) * std::pow(two_a(), 2.0 / 3.0) * la;
    out.hypothesis_ok =
        below_two_thirds && E() <= c * std::pow(a, 1.5) * std::sqrt(p) * la;
  } else if (name == "energy2_shkredov") {
    out.lhs = E();
    out.rhs_expr = std::max(std::pow(a, 22.0 / 9.0) * la,
                            a * a * a * std::pow(p, -1.0 / 3.0) * std::pow(la, 4.0 / 3.0));
    out.hypothesis_ok = below_two_thirds;
  } else if (name == "energy_extension") {
    out.lhs = E();
    out.rhs_expr = std::max(std::pow(a, 4.0 / 3.0) * std::pow(two_a(), 2.0 / 3.0) * std::sqrt(la),
                            a * two_a() * two_a() / p * la);
    out.hypothesis_ok = below_two_thirds;
  } else if (name == "sumset_growth") {
    out.lhs = two_a();
    const double split = std::pow(p, 5.0 / 9.0) * std::pow(la, -1.0 / 18.0);
    out.rhs_expr = a <= split ? std::pow(a, 1.6) * std::pow(la, -0.3)
                              : a * std::cbrt(p) * std::pow(la, -1.0 / 3.0);
    out.hypothesis_ok = below_two_thirds;
  } else if (name == "phi_hk") {
    out.lhs = phi();
    if (a >= std::pow(p, 2.0 / 3.0)) {
      out.rhs_expr = std::sqrt(p);
    } else if (a >= std::sqrt(p)) {
      out.rhs_expr = std::pow(p, 0.25) * std::pow(a, -0.25) * std::pow(E(), 0.25);
    } else {
      out.rhs_expr = std::pow(p, 0.125) * std::pow(E(), 0.25);
    }
    out.hypothesis_ok = std::cbrt(p) <= c * a;
  } else if (name == "phi_shparlinski") {
    out.lhs = phi();
    out.rhs_expr = std::pow(a, 7.0 / 12.0) * std::pow(p, 1.0 / 6.0);
    out.hypothesis_ok = std::pow(p, 0.4) <= c * a && a <= c * std::pow(p, 4.0 / 7.0);
  } else if (name == "e32") {
    out.lhs = energy().E32;
    out.rhs_expr = std::sqrt(a) * two_a() * std::pow(la, 1.75);
    out.hypothesis_ok = below_half;
  } else if (name == "phi_expA") {
    out.lhs = phi();
    out.rhs_expr = std::pow(p, 0.125) * std::pow(a, -0.125) * std::pow(two_a(), 0.25) *
                   std::pow(E(), 0.125) * std::pow(la, 7.0 / 16.0);
    out.hypothesis_ok = below_half;
  } else if (name == "phi_expA2") {
    out.lhs = phi();
    out.rhs_expr = std::pow(p, 0.125) * std::pow(a, 1.0 / 24.0) * std::cbrt(two_a()) *
                   std::pow(la, 0.625);
    out.hypothesis_ok = below_half;
  } else if (name == "sv_convolution") {
    const SvInput& sv = need(ctx.sv, name, "an invariant convolution sum");
    out.lhs = static_cast<double>(sv.sum);
    const double prod = static_cast<double>(sv.s1_size) * static_cast<double>(sv.s2_size) *
                        static_cast<double>(sv.s3_size);
    out.rhs_expr = std::pow(a, -1.0 / 3.0) * std::pow(prod, 2.0 / 3.0);
    const double nz = static_cast<double>(sv.s1_nonzero) * static_cast<double>(sv.s2_nonzero) *
                      static_cast<double>(sv.s3_nonzero);
    out.hypothesis_ok = nz <= c * std::min(std::pow(a, 5.0), p * p * p / a);
  } else if (name == "l3_moment") {
    const L3Input& l3 = need(ctx.l3, name, "a restricted moment");
    const double s1 = static_cast<double>(l3.s1_size);
    const double s2 = static_cast<double>(l3.s2_size);
    const double base = s1 * s1 * s2 * s2 / a;
    out.lhs = l3.moment;
    if (l3.r == 3.0) {
      // log argument clamped at e so the bound stays positive
      const double arg = s1 * s1 * s2 * s2 / (a * a) / (l3.k * l3.k * l3.k);
      out.rhs_expr = base * std::log(std::max(arg, std::exp(1.0)));
    } else {
      out.rhs_expr = base * std::pow(l3.k, l3.r - 3.0);
    }
    const double size_prod = s1 * s2 * static_cast<double>(l3.m_size) * a;
    out.hypothesis_ok =
        l3.k * c >= 1.0 && size_prod <= c * std::min(std::pow(a, 6.0), p * p * p);
  } else if (name == "li_decay") {
    const CosetProfile& prof = need(ctx.profile, name, "a coset profile");
    double best = 0.0;
    for (std::size_t i = 0; i < prof.pairs.size(); ++i) {
      best = std::max(best, static_cast<double>(prof.pairs[i].l) *
                                std::pow(static_cast<double>(i + 1), 2.0 / 3.0));
    }
    out.lhs = best;
    out.rhs_expr = std::pow(two_a(), 2.0 / 3.0) * std::pow(a, -1.0 / 3.0) * std::sqrt(la);
    out.hypothesis_ok = below_half;
  }

  if (name == "sumset_growth") {
    out.ratio = out.lhs > 0 ? out.rhs_expr / out.lhs : 0.0;
  } else {
    out.ratio = out.rhs_expr > 0 ? out.lhs / out.rhs_expr : 0.0;
  }
  return out;
}

std::optional<int> covering_index(const CosetDecomposition& cosets, int kmax) {
  if (kmax < 1) throw InvalidArgument("covering_index requires kmax >= 1");
  const InvariantSet a = invariant_set_unchecked(cosets.subgroup(), {1}, false);
  InvariantSet acc = a;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) acc = invariant_sumset(acc, a, cosets);
    if (acc.reps().size() == cosets.count()) return k;
  }
  return std::nullopt;
}

std::optional<int> covering_index(const Subgroup& A, int kmax) {
  return covering_index(coset_reps(A), kmax);
}

bool check_six_fold(const CosetDecomposition& cosets) {
  return invariant_fold(cosets, 6).reps().size() == cosets.count();
}

bool check_six_fold(const Subgroup& A) { return check_six_fold(coset_reps(A)); }

bool clears_six_fold_exponent(std::uint32_t p, std::uint64_t a_size) {
  return std::log(static_cast<double>(a_size)) >= kSixFoldExponent * std::log(static_cast<double>(p));
}

SolutionCounter::SolutionCounter(const Subgroup& A, bool allow_heavy) : subgroup_(A) {
  if (A.p() > kHeavyModulusLimit && !allow_heavy) {
    throw HeavyOperationDisabled("count_solutions_N above p = " +
                                 std::to_string(kHeavyModulusLimit) +
                                 " requires the heavy flag");
  }
  const std::uint32_t p = A.p();
  const auto cosets = coset_reps(A);
  const ZpSet two = invariant_fold(cosets, 2).base();
  std::vector<std::uint64_t> ind_a(p, 0), ind_two(p, 0);
  for (std::uint32_t x : A.elements()) ind_a[x] = 1;
  for (std::uint32_t x : two.elements()) ind_two[x] = 1;
  auto f = cyclic_convolution_exact(ind_two, ind_two, A.modulus());
  f = cyclic_convolution_exact(f, ind_a, A.modulus());
  profile_ = cyclic_convolution_exact(f, ind_a, A.modulus());
}

std::uint64_t SolutionCounter::count(std::uint32_t a) const {
  const std::uint64_t p = subgroup_.p();
  if (a % p == 0) throw InvalidArgument("count_solutions_N requires a != 0");
  unsigned __int128 n = 0;
  for (std::uint32_t y : subgroup_.elements()) n += profile_[a % p * y % p];
  if (n > std::numeric_limits<std::uint64_t>::max()) throw OverflowRisk("N exceeds 64 bits");
  return static_cast<std::uint64_t>(n);
}

std::uint64_t count_solutions_N(const Subgroup& A, std::uint32_t a, bool allow_heavy) {
  if (a % A.p() == 0) throw InvalidArgument("count_solutions_N requires a != 0");
  return SolutionCounter(A, allow_heavy).count(a);
}

bool positivity_condition(std::uint32_t p, std::uint64_t a_size, std::uint64_t two_a_size,
                          double phi) {
  const double a = static_cast<double>(a_size);
  return static_cast<double>(two_a_size) * a * a * a > static_cast<double>(p) * phi * phi * phi;
}

bool positivity_condition(const Subgroup& A) {
  const auto cosets = coset_reps(A);
  const auto two = invariant_fold(cosets, 2);
  return positivity_condition(A.p(), A.size(), two.size(), phi_subgroup(cosets).phi);
}

FitResult exponent_fit(std::span<const std::pair<double, double>> records) {
  if (records.size() < 2) throw InsufficientData("exponent_fit needs at least two points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : records) {
    if (!(x > 0) || !(y > 0)) throw InvalidArgument("exponent_fit needs positive data");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(records.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : records) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0) throw InsufficientData("exponent_fit needs at least two distinct x values");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = records.size();
  double ss = 0;
  for (const auto& [x, y] : records) {
    const double e = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::vector<std::pair<double, double>> dyadic_envelope(
    std::span<const std::pair<double, double>> records) {
  std::map<int, std::pair<double, double>> best;
  for (const auto& rec : records) {
    if (!(rec.first > 0)) throw InvalidArgument("dyadic_envelope needs positive x");
    const int bucket = static_cast<int>(std::floor(std::log2(rec.first)));
    auto it = best.find(bucket);
    if (it == best.end() || rec.second > it->second.second ||
        (rec.second == it->second.second && rec.first < it->second.first)) {
      best[bucket] = rec;
    }
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(best.size());
  for (const auto& [bucket, rec] : best) out.push_back(rec);
  return out;
}

FitResult envelope_fit(std::span<const std::pair<double, double>> records) {
  const auto env = dyadic_envelope(records);
  return exponent_fit(env);
}

}  // namespace sglab
