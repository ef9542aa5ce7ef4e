#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subgroup_lab/energetics.hpp"
#include "subgroup_lab/numtheory.hpp"

namespace sglab {

// Every bound the checker knows, in emission order.
std::span<const std::string_view> bound_catalog();
bool in_catalog(std::string_view name);

// One inequality "lhs << rhs" evaluated with implied constant 1.
//
// sumset_growth is a lower bound on |2A|: lhs holds |2A|, rhs_expr the
// bound, and ratio = rhs_expr / lhs so that small still means consistent.
// Every other check has ratio = lhs / rhs_expr.
struct BoundCheck {
  std::string name;
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::uint64_t A_size = 0;
  std::uint64_t twoA_size = 0;
  double lhs = 0.0;
  double rhs_expr = 0.0;
  double ratio = 0.0;
  bool hypothesis_ok = false;
};

// Sum over S3 of (S1 * S2) together with the set sizes.
struct SvInput {
  std::uint64_t s1_size = 0, s2_size = 0, s3_size = 0;
  std::uint64_t s1_nonzero = 0, s2_nonzero = 0, s3_nonzero = 0;
  std::uint64_t sum = 0;
};

// Restricted moment over M, the invariant part of {z : (S1*S2)(z) >= k}.
struct L3Input {
  std::uint64_t s1_size = 0, s2_size = 0, m_size = 0;
  double k = 0.0;
  double r = 2.0;
  double moment = 0.0;
};

struct BoundContext {
  double hypothesis_constant = 1.0;
  std::optional<EnergyReport> energy;
  std::optional<double> phi;
  std::optional<CosetProfile> profile;
  std::optional<SvInput> sv;
  std::optional<L3Input> l3;
};

struct ContextOptions {
  double hypothesis_constant = 1.0;
  bool allow_heavy = false;     // sumset_ratio_sum above kHeavyModulusLimit
  double l3_r = 2.0;            // moment order for l3_moment
  bool l3_include_zero = false; // whether M may contain 0
  bool force_sumset_ratio = false;  // compute it even if no check needs it
};

// Computes what the named checks need. The sv_convolution triple is
// S1 = S2 = 2A, S3 = A; l3_moment uses S1 = S2 = A with k = |A|^2 / |2A|.
BoundContext build_context(const SubgroupData& data, std::span<const std::string> checks,
                           const ContextOptions& options = {});

// Throws CatalogError for unknown names, DependencyError when ctx lacks an
// input, InvalidArgument when |A| < 3.
BoundCheck check_bound(std::string_view name, const Subgroup& A, const BoundContext& ctx);

// Smallest k <= kmax with kA ⊇ Z_p^*.
std::optional<int> covering_index(const Subgroup& A, int kmax);
std::optional<int> covering_index(const CosetDecomposition& cosets, int kmax);

bool check_six_fold(const Subgroup& A);
bool check_six_fold(const CosetDecomposition& cosets);

// log_p |A| >= 11/23.
inline constexpr double kSixFoldExponent = 11.0 / 23.0;
bool clears_six_fold_exponent(std::uint32_t p, std::uint64_t a_size);

// Counts solutions of x1 + x2 + y1 + y2 = a y3 with x_i in 2A, y_i in A.
class SolutionCounter {
 public:
  explicit SolutionCounter(const Subgroup& A, bool allow_heavy = false);

  std::uint64_t count(std::uint32_t a) const;
  // (2A * 2A * A * A)(z) for every z.
  const std::vector<std::uint64_t>& profile() const { return profile_; }

 private:
  Subgroup subgroup_;
  std::vector<std::uint64_t> profile_;
};

std::uint64_t count_solutions_N(const Subgroup& A, std::uint32_t a, bool allow_heavy = false);

// |2A| |A|^3 > p Phi_A^3
bool positivity_condition(const Subgroup& A);
bool positivity_condition(std::uint32_t p, std::uint64_t a_size, std::uint64_t two_a_size,
                          double phi);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n_points = 0;
  double residual = 0.0;  // RMS of log-space residuals
};

// Least squares of log y against log x.
FitResult exponent_fit(std::span<const std::pair<double, double>> records);

// The largest y in each dyadic bucket floor(log2 x).
std::vector<std::pair<double, double>> dyadic_envelope(
    std::span<const std::pair<double, double>> records);

FitResult envelope_fit(std::span<const std::pair<double, double>> records);

}  // namespace sglab
