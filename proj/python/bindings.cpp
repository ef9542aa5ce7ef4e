#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "subgroup_lab/energetics.hpp"
#include "subgroup_lab/errors.hpp"
#include "subgroup_lab/numtheory.hpp"
#include "subgroup_lab/spectral.hpp"
#include "subgroup_lab/sweep.hpp"
#include "subgroup_lab/verifier.hpp"
#include "subgroup_lab/verify.hpp"
#include "subgroup_lab/zpset.hpp"

namespace py = pybind11;
using namespace sglab;

namespace {

ZpSet make_set(std::uint64_t p, const std::vector<std::uint32_t>& elems) {
  return ZpSet::from_elements(Modulus(p), elems);
}

std::vector<std::string> check_names(const std::vector<std::string>& names) {
  if (names.size() == 1 && names[0] == "all") return {bound_catalog().begin(), bound_catalog().end()};
  return names;
}

py::dict record_dict(const SweepRecord& r, const std::vector<std::string>& checks) {
  py::dict out;
  out["p"] = r.p;
  out["d"] = r.d;
  out["twoA_size"] = r.energy.twoA_size;
  out["six_fold"] = r.six_fold;
  out["covering_k"] = r.covering_k;
  out["E"] = r.energy.E;
  out["E3"] = r.energy.E3;
  out["E32"] = r.energy.E32;
  out["phi"] = r.phi;
  out["ssc_ratio"] = r.energy.ssc_ratio;
  out["sumset_ratio"] = r.energy.sumset_ratio;
  py::dict bounds;
  for (std::size_t i = 0; i < r.checks.size(); ++i) bounds[py::str(checks[i])] = r.checks[i];
  out["checks"] = bounds;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of subgroup_lab";

  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<InvalidOrder>(m, "InvalidOrder", invalid.ptr());
  py::register_exception<ModulusMismatch>(m, "ModulusMismatch", invalid.ptr());
  py::register_exception<CatalogError>(m, "CatalogError", PyExc_ValueError);
  py::register_exception<InsufficientData>(m, "InsufficientData", PyExc_ValueError);
  py::register_exception<OverflowRisk>(m, "OverflowRisk", PyExc_OverflowError);
  py::register_exception<InvarianceViolation>(m, "InvarianceViolation", PyExc_RuntimeError);
  py::register_exception<DependencyError>(m, "DependencyError", PyExc_RuntimeError);
  py::register_exception<HeavyOperationDisabled>(m, "HeavyOperationDisabled", PyExc_RuntimeError);

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("factorize", &factorize, py::arg("n"));
  m.def("divisors", &divisors, py::arg("n"));
  m.def("primitive_root", [](std::uint64_t p) { return primitive_root(Modulus(p)); }, py::arg("p"));

  py::class_<Subgroup>(m, "Subgroup")
      .def_property_readonly("p", &Subgroup::p)
      .def_property_readonly("order", &Subgroup::order)
      .def_property_readonly("generator", &Subgroup::generator)
      .def_property_readonly("elements", [](const Subgroup& A) {
        return std::vector<std::uint32_t>(A.elements().begin(), A.elements().end());
      })
      .def("__len__", &Subgroup::size)
      .def("__contains__", &Subgroup::contains)
      .def("__eq__", [](const Subgroup& a, const Subgroup& b) { return a == b; })
      .def("__repr__", [](const Subgroup& A) {
        return "Subgroup(p=" + std::to_string(A.p()) + ", d=" + std::to_string(A.order()) + ")";
      });
  m.def("subgroup", [](std::uint64_t p, std::uint64_t d) { return subgroup(Modulus(p), d); },
        py::arg("p"), py::arg("d"));
  m.def("coset_reps", [](const Subgroup& A) {
    const auto c = coset_reps(A);
    return std::vector<std::uint32_t>(c.reps().begin(), c.reps().end());
  });

  py::class_<ZpSet>(m, "ZpSet")
      .def(py::init(&make_set), py::arg("p"), py::arg("elements"))
      .def_static("parse", &ZpSet::parse)
      .def_static("units", [](std::uint64_t p) { return ZpSet::units(Modulus(p)); })
      .def_static("of", [](const Subgroup& A) { return to_zpset(A); })
      .def_property_readonly("p", &ZpSet::p)
      .def_property_readonly("elements", &ZpSet::elements)
      .def("__len__", &ZpSet::size)
      .def("__contains__", [](const ZpSet& s, std::uint32_t x) { return x < s.p() && s.contains(x); })
      .def("__eq__", [](const ZpSet& a, const ZpSet& b) { return a == b; })
      .def("issubset", &ZpSet::is_subset_of)
      .def("__str__", &ZpSet::to_string)
      .def("__repr__", [](const ZpSet& s) { return "ZpSet(" + s.to_string() + ")"; });

  m.def("sumset", &sumset);
  m.def("fold_sumset", &fold_sumset, py::arg("a"), py::arg("k"));
  m.def("shift_intersect", &shift_intersect, py::arg("c"), py::arg("z"));
  m.def("dilate", &dilate, py::arg("x"), py::arg("a"));

  m.def("convolve_counts", [](const ZpSet& x, const ZpSet& y) { return convolve_counts(x, y).counts; });
  m.def("cyclic_convolution_exact",
        [](const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v, std::uint64_t p) {
          return cyclic_convolution_exact(u, v, Modulus(p));
        },
        py::arg("u"), py::arg("v"), py::arg("p"));
  m.def("dft_magnitudes", [](const ZpSet& s) {
    const auto spec = dft_magnitudes(s);
    return py::make_tuple(spec.mags, spec.phi, spec.argmax);
  });
  m.def("phi_subgroup", [](const Subgroup& A) {
    const auto r = phi_subgroup(A);
    return py::make_tuple(r.phi, r.argmax);
  });

  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("p", &EnergyReport::p)
      .def_readonly("d", &EnergyReport::d)
      .def_readonly("E", &EnergyReport::E)
      .def_readonly("E3", &EnergyReport::E3)
      .def_readonly("E32", &EnergyReport::E32)
      .def_readonly("ssc_ratio", &EnergyReport::ssc_ratio)
      .def_readonly("sumset_ratio", &EnergyReport::sumset_ratio)
      .def_readonly("twoA_size", &EnergyReport::twoA_size);

  m.def("additive_energy", &additive_energy);
  m.def("energy_moment", &energy_moment, py::arg("a"), py::arg("r"));
  m.def("ssc_ratio_sum", &ssc_ratio_sum);
  m.def("sumset_ratio_sum", &sumset_ratio_sum, py::arg("A"), py::arg("allow_heavy") = false);
  m.def("energy_report",
        [](const Subgroup& A, bool with_sumset_ratio, bool allow_heavy) {
          return energy_report(A, with_sumset_ratio, allow_heavy);
        },
        py::arg("A"), py::arg("with_sumset_ratio") = true, py::arg("allow_heavy") = false);
  m.def("coset_profile", [](const Subgroup& A) {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
    for (const auto& c : coset_profile(A).pairs) out.emplace_back(c.rep, c.l);
    return out;
  });
  m.def("invariant_convolution_sum",
        [](const Subgroup& A, const std::vector<std::uint32_t>& s1, bool z1,
           const std::vector<std::uint32_t>& s2, bool z2, const std::vector<std::uint32_t>& s3,
           bool z3) {
          return invariant_convolution_sum(invariant_set(A, s1, z1), invariant_set(A, s2, z2),
                                           invariant_set(A, s3, z3));
        },
        "Each invariant set is given by coset representatives and a zero flag.", py::arg("A"),
        py::arg("reps1"), py::arg("zero1"), py::arg("reps2"), py::arg("zero2"), py::arg("reps3"),
        py::arg("zero3"));

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("name", &BoundCheck::name)
      .def_readonly("p", &BoundCheck::p)
      .def_readonly("d", &BoundCheck::d)
      .def_readonly("A_size", &BoundCheck::A_size)
      .def_readonly("twoA_size", &BoundCheck::twoA_size)
      .def_readonly("lhs", &BoundCheck::lhs)
      .def_readonly("rhs_expr", &BoundCheck::rhs_expr)
      .def_readonly("ratio", &BoundCheck::ratio)
      .def_readonly("hypothesis_ok", &BoundCheck::hypothesis_ok)
      .def("__eq__",
           [](const BoundCheck& a, const BoundCheck& b) {
             return a.name == b.name && a.p == b.p && a.d == b.d && a.lhs == b.lhs &&
                    a.rhs_expr == b.rhs_expr && a.ratio == b.ratio &&
                    a.hypothesis_ok == b.hypothesis_ok;
           })
      .def("__repr__", [](const BoundCheck& c) {
        std::ostringstream os;
        os << "BoundCheck(" << c.name << ", p=" << c.p << ", d=" << c.d << ", ratio=" << c.ratio << ")";
        return os.str();
      });

  m.def("bound_catalog", [] { return std::vector<std::string>(bound_catalog().begin(), bound_catalog().end()); });
  m.def("check_bound",
        [](const std::string& name, const Subgroup& A, double hypothesis_constant, bool allow_heavy,
           double l3_r, bool l3_include_zero) {
          ContextOptions opt;
          opt.hypothesis_constant = hypothesis_constant;
          opt.allow_heavy = allow_heavy;
          opt.l3_r = l3_r;
          opt.l3_include_zero = l3_include_zero;
          const std::vector<std::string> names{name};
          const auto ctx = in_catalog(name) ? build_context(analyze(A), names, opt) : BoundContext{};
          return check_bound(name, A, ctx);
        },
        py::arg("name"), py::arg("A"), py::arg("hypothesis_constant") = 1.0,
        py::arg("allow_heavy") = false, py::arg("l3_r") = 2.0, py::arg("l3_include_zero") = false);

  m.def("covering_index", py::overload_cast<const Subgroup&, int>(&covering_index), py::arg("A"),
        py::arg("kmax") = 8);
  m.def("check_six_fold", py::overload_cast<const Subgroup&>(&check_six_fold));
  m.def("count_solutions_N", &count_solutions_N, py::arg("A"), py::arg("a"),
        py::arg("allow_heavy") = false);
  m.def("positivity_condition", py::overload_cast<const Subgroup&>(&positivity_condition));

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("slope", &FitResult::slope)
      .def_readonly("intercept", &FitResult::intercept)
      .def_readonly("n_points", &FitResult::n_points)
      .def_readonly("residual", &FitResult::residual);
  m.def("exponent_fit", [](const std::vector<std::pair<double, double>>& pts) { return exponent_fit(pts); });
  m.def("envelope_fit", [](const std::vector<std::pair<double, double>>& pts) { return envelope_fit(pts); });

  m.def("sweep",
        [](std::uint64_t p_min, std::uint64_t p_max, std::vector<std::string> checks, double alpha_lo,
           double alpha_hi, int threads, bool heavy) {
          SweepConfig c;
          c.p_min = p_min;
          c.p_max = p_max;
          c.checks = check_names(checks);
          c.alpha_lo = alpha_lo;
          c.alpha_hi = alpha_hi;
          c.threads = threads;
          c.heavy = heavy;
          validate(c);
          std::vector<SweepRecord> records;
          {
            py::gil_scoped_release release;
            records = run_sweep(c);
          }
          py::list out;
          for (const auto& r : records) out.append(record_dict(r, c.checks));
          return out;
        },
        py::arg("p_min"), py::arg("p_max"), py::arg("checks") = std::vector<std::string>{},
        py::arg("alpha_lo") = 0.0, py::arg("alpha_hi") = 1.0, py::arg("threads") = 1,
        py::arg("heavy") = false);

  m.def("verify_all",
        [](std::uint32_t p_max) {
          VerifyOptions opt;
          opt.p_max = p_max;
          VerifyResult r;
          {
            py::gil_scoped_release release;
            r = verify_all(opt);
          }
          return py::make_tuple(r.ok, r.cases, r.counterexample);
        },
        py::arg("p_max") = 101);
}
