#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <variant>

#include "qwave/analysis.hpp"
#include "qwave/frame_bounds.hpp"
#include "qwave/grid.hpp"
#include "qwave/lifting.hpp"
#include "qwave/quaternion.hpp"
#include "qwave/wavelet.hpp"

namespace py = pybind11;
using namespace qwave;

namespace {

py::array_t<cplx> to_array(const std::vector<cplx>& v) {
  py::array_t<cplx> out(py::ssize_t(v.size()));
  auto r = out.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < r.shape(0); ++i) r(i) = v[std::size_t(i)];
  return out;
}

std::vector<cplx> from_array(py::handle obj) {
  auto arr = py::array_t<cplx, py::array::c_style | py::array::forcecast>::ensure(obj);
  if (!arr || arr.ndim() != 1) throw std::invalid_argument("expected a 1-d complex array");
  auto r = arr.unchecked<1>();
  std::vector<cplx> v(std::size_t(r.shape(0)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) v[std::size_t(i)] = r(i);
  return v;
}

BoxSpec make_box(int dim, std::vector<double> side, std::vector<int> n) {
  if (dim != 2 && dim != 4) throw std::invalid_argument("dim must be 2 or 4");
  if (side.size() == 1) side.assign(std::size_t(dim), side[0]);
  if (n.size() == 1) n.assign(std::size_t(dim), n[0]);
  if (int(side.size()) != dim || int(n.size()) != dim)
    throw std::invalid_argument("side and n must have one entry per axis");
  BoxSpec b;
  b.dim = dim;
  for (int ax = 0; ax < dim; ++ax) {
    b.side[std::size_t(ax)] = side[std::size_t(ax)];
    b.n[std::size_t(ax)] = n[std::size_t(ax)];
  }
  return b;
}

}  // namespace

PYBIND11_MODULE(_qwave, m) {
  m.doc() = "quaternionic wavelet frames on periodic sampling boxes";

  // --- quaternion layer -----------------------------------------------------
  py::class_<Quaternion>(m, "Quaternion")
      .def(py::init([](double q0, double q1, double q2, double q3) {
             return Quaternion{q0, q1, q2, q3};
           }),
           py::arg("q0") = 0.0, py::arg("q1") = 0.0, py::arg("q2") = 0.0,
           py::arg("q3") = 0.0)
      .def_readwrite("q0", &Quaternion::q0)
      .def_readwrite("q1", &Quaternion::q1)
      .def_readwrite("q2", &Quaternion::q2)
      .def_readwrite("q3", &Quaternion::q3)
      .def("z1", &Quaternion::z1)
      .def("z2", &Quaternion::z2)
      .def("norm", &Quaternion::norm)
      .def("norm2", &Quaternion::norm2)
      .def("conj", [](const Quaternion& a) { return qconj(a); })
      .def("inverse", [](const Quaternion& a) { return qinv(a); })
      .def("to_vec", &Quaternion::to_vec)
      .def_static("from_vec", &Quaternion::from_vec)
      .def("__add__", [](const Quaternion& a, const Quaternion& b) { return qadd(a, b); })
      .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return qsub(a, b); })
      .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return qmul(a, b); })
      .def("__mul__", [](const Quaternion& a, double s) { return qscale(a, s); })
      .def("__rmul__", [](const Quaternion& a, double s) { return qscale(a, s); })
      .def("__repr__", [](const Quaternion& a) {
        return "Quaternion(" + std::to_string(a.q0) + ", " + std::to_string(a.q1) +
               ", " + std::to_string(a.q2) + ", " + std::to_string(a.q3) + ")";
      });

  py::class_<DihedralSimilitude>(m, "DihedralSimilitude")
      .def(py::init([](double l1, double l2, double t1, double t2) {
             return DihedralSimilitude{l1, l2, t1, t2};
           }),
           py::arg("lambda1") = 1.0, py::arg("lambda2") = 0.0,
           py::arg("theta1") = 0.0, py::arg("theta2") = 0.0)
      .def_readwrite("lambda1", &DihedralSimilitude::lambda1)
      .def_readwrite("lambda2", &DihedralSimilitude::lambda2)
      .def_readwrite("theta1", &DihedralSimilitude::theta1)
      .def_readwrite("theta2", &DihedralSimilitude::theta2)
      .def("scale2", &DihedralSimilitude::scale2)
      .def("validate", &DihedralSimilitude::validate)
      .def("realize", &DihedralSimilitude::realize)
      .def("realize_inverse", &DihedralSimilitude::realize_inverse)
      .def("apply", &DihedralSimilitude::apply, py::arg("v"), py::arg("dim") = 4)
      .def("apply_transpose", &DihedralSimilitude::apply_transpose, py::arg("v"),
           py::arg("dim") = 4)
      .def("apply_inverse", &DihedralSimilitude::apply_inverse, py::arg("v"),
           py::arg("dim") = 4);

  m.def("polar_decompose", &polar_decompose, py::arg("a"));
  m.def("recompose", &recompose, py::arg("d"));
  m.def("to_matrix4", &to_matrix4, py::arg("a"));
  m.def("mat4_mul", &mat4_mul, py::arg("a"), py::arg("b"));
  m.def("mat4_apply", &mat4_apply, py::arg("m"), py::arg("v"));

  // --- sampling boxes and fields --------------------------------------------
  py::class_<BoxSpec>(m, "BoxSpec")
      .def(py::init(&make_box), py::arg("dim"), py::arg("side"), py::arg("n"))
      .def(py::init([](int dim, double side, int n) {
             return make_box(dim, {side}, {n});
           }),
           py::arg("dim"), py::arg("side"), py::arg("n"))
      .def_readonly("dim", &BoxSpec::dim)
      .def_property_readonly("side",
                             [](const BoxSpec& b) {
                               return std::vector<double>(b.side.begin(),
                                                          b.side.begin() + b.dim);
                             })
      .def_property_readonly("n",
                             [](const BoxSpec& b) {
                               return std::vector<int>(b.n.begin(), b.n.begin() + b.dim);
                             })
      .def("total", &BoxSpec::total)
      .def("cellvol", &BoxSpec::cellvol)
      .def("volume", &BoxSpec::volume)
      .def("coord", &BoxSpec::coord, py::arg("ax"), py::arg("m"))
      .def("freq", &BoxSpec::freq, py::arg("ax"), py::arg("p"))
      .def("signed_bin", &BoxSpec::signed_bin, py::arg("ax"), py::arg("p"))
      .def("same_shape", &BoxSpec::same_shape)
      .def("__repr__", [](const BoxSpec& b) {
        return "BoxSpec(dim=" + std::to_string(b.dim) + ", n0=" + std::to_string(b.n[0]) +
               ")";
      });

  py::class_<SampledField>(m, "SampledField")
      .def(py::init<>())
      .def(py::init<const BoxSpec&>(), py::arg("box"))
      .def_readwrite("box", &SampledField::box)
      .def_property(
          "values", [](const SampledField& f) { return to_array(f.values); },
          [](SampledField& f, py::handle obj) {
            auto v = from_array(obj);
            if (v.size() != f.box.total())
              throw std::invalid_argument("value count must match the box");
            f.values = std::move(v);
            f.spectrum.reset();
          })
      .def("spectrum", [](SampledField& f) { return to_array(f.ensure_spectrum()); });

  m.def("fft", py::overload_cast<const SampledField&>(&fft), py::arg("f"));
  m.def("ifft", py::overload_cast<const SampledField&>(&ifft), py::arg("f"));
  m.def("inner", py::overload_cast<const SampledField&, const SampledField&>(&inner),
        py::arg("f"), py::arg("g"));
  m.def("norm2", py::overload_cast<const SampledField&>(&norm2), py::arg("f"));

  py::class_<QuaternionField>(m, "QuaternionField")
      .def(py::init<>())
      .def(py::init<const BoxSpec&>(), py::arg("box"))
      .def_readwrite("f1", &QuaternionField::f1)
      .def_readwrite("f2", &QuaternionField::f2);

  m.def("norm2", py::overload_cast<const QuaternionField&>(&norm2), py::arg("F"));
  m.def("qinner", &qinner, py::arg("F"), py::arg("G"));
  m.def("right_scale", &right_scale, py::arg("F"), py::arg("q"));
  m.def("rank_one_apply", &rank_one_apply, py::arg("F"), py::arg("G"), py::arg("H"));

  // --- mother wavelets and atoms --------------------------------------------
  py::enum_<Normalization>(m, "Normalization")
      .value("l1", Normalization::l1)
      .value("l2", Normalization::l2);

  py::class_<MotherWavelet>(m, "MotherWavelet")
      .def_readonly("dim", &MotherWavelet::dim)
      .def_readonly("name", &MotherWavelet::name)
      .def_readwrite("space_cutoff", &MotherWavelet::space_cutoff)
      .def("spectrum",
           [](const MotherWavelet& w, const Vec4& k) { return w.spectrum_fn(k); },
           py::arg("k"))
      .def("space",
           [](const MotherWavelet& w, const Vec4& x) {
             if (!w.space_fn) throw std::domain_error("mother wavelet has no space form");
             return w.space_fn(x);
           },
           py::arg("x"))
      .def("radial_abs2",
           [](const MotherWavelet& w, double r) { return w.radial_abs2(r); },
           py::arg("r"));

  m.def("laplacian_gaussian", &laplacian_gaussian, py::arg("dim"));
  m.def("morlet", &morlet, py::arg("dim"), py::arg("k0") = 5.0);
  m.def("gaussian_bump", &gaussian_bump, py::arg("dim"));

  py::class_<Atom>(m, "Atom")
      .def(py::init([](const MotherWavelet& w, const DihedralSimilitude& A, Vec4 b,
                       Normalization norm) {
             return Atom{w, A, b, norm};
           }),
           py::arg("mother"), py::arg("A"), py::arg("b") = Vec4{},
           py::arg("norm") = Normalization::l1)
      .def_readwrite("mother", &Atom::mother)
      .def_readwrite("A", &Atom::A)
      .def_readwrite("b", &Atom::b)
      .def_readwrite("norm", &Atom::norm);

  m.def("atom_prefactor_space", &atom_prefactor_space, py::arg("a"));
  m.def("atom_prefactor_freq", &atom_prefactor_freq, py::arg("a"));
  m.def("atom_spectrum", &atom_spectrum, py::arg("a"), py::arg("k"));
  m.def("atom_space", &atom_space, py::arg("a"), py::arg("x"));
  m.def("sample_atom_space", &sample_atom_space, py::arg("a"), py::arg("box"));
  m.def("sample_atom_spectrum", &sample_atom_spectrum, py::arg("a"), py::arg("box"));

  py::class_<DufloMooreOptions>(m, "DufloMooreOptions")
      .def(py::init<>())
      .def_readwrite("box_half", &DufloMooreOptions::box_half)
      .def_readwrite("n0", &DufloMooreOptions::n0)
      .def_readwrite("max_levels", &DufloMooreOptions::max_levels)
      .def_readwrite("rel_tol", &DufloMooreOptions::rel_tol);

  py::class_<DufloMoore>(m, "DufloMoore")
      .def_readonly("value", &DufloMoore::value)
      .def_readonly("converged", &DufloMoore::converged)
      .def_readonly("last_rel_change", &DufloMoore::last_rel_change)
      .def_readonly("levels", &DufloMoore::levels);

  m.def("duflo_moore", &duflo_moore, py::arg("psi"),
        py::arg("opts") = DufloMooreOptions{});
  m.def("duflo_moore_norm", &duflo_moore_norm, py::arg("psi"));

  // --- discretization grids -------------------------------------------------
  py::enum_<ScaleMode>(m, "ScaleMode")
      .value("ring", ScaleMode::ring)
      .value("base", ScaleMode::base);

  py::class_<GridSpec2D>(m, "GridSpec2D")
      .def(py::init<>())
      .def_readwrite("lambda0", &GridSpec2D::lambda0)
      .def_readwrite("L", &GridSpec2D::L)
      .def_readwrite("beta0", &GridSpec2D::beta0)
      .def_readwrite("beta1", &GridSpec2D::beta1)
      .def_readwrite("t_max", &GridSpec2D::t_max)
      .def_readwrite("m_range", &GridSpec2D::m_range)
      .def_readwrite("scale_mode", &GridSpec2D::scale_mode)
      .def("validate", &GridSpec2D::validate)
      .def("count", &GridSpec2D::count);

  py::class_<GridSpec4D>(m, "GridSpec4D")
      .def(py::init<>())
      .def_readwrite("lambda01", &GridSpec4D::lambda01)
      .def_readwrite("lambda02", &GridSpec4D::lambda02)
      .def_readwrite("L1", &GridSpec4D::L1)
      .def_readwrite("L2", &GridSpec4D::L2)
      .def_readwrite("beta0", &GridSpec4D::beta0)
      .def_readwrite("beta1", &GridSpec4D::beta1)
      .def_readwrite("beta2", &GridSpec4D::beta2)
      .def_readwrite("beta3", &GridSpec4D::beta3)
      .def_readwrite("t_max", &GridSpec4D::t_max)
      .def_readwrite("j_max", &GridSpec4D::j_max)
      .def_readwrite("m_range", &GridSpec4D::m_range)
      .def_readwrite("scale_mode", &GridSpec4D::scale_mode)
      .def("validate", &GridSpec4D::validate)
      .def("count", &GridSpec4D::count);

  py::class_<GridPoint2D>(m, "GridPoint2D")
      .def_readonly("t", &GridPoint2D::t)
      .def_readonly("l", &GridPoint2D::l)
      .def_readonly("m0", &GridPoint2D::m0)
      .def_readonly("m1", &GridPoint2D::m1)
      .def_readonly("a", &GridPoint2D::a)
      .def_readonly("theta", &GridPoint2D::theta)
      .def_readonly("b", &GridPoint2D::b)
      .def("sim", &GridPoint2D::sim);

  py::class_<GridPoint4D>(m, "GridPoint4D")
      .def_readonly("t", &GridPoint4D::t)
      .def_readonly("j", &GridPoint4D::j)
      .def_readonly("l", &GridPoint4D::l)
      .def_readonly("k", &GridPoint4D::k)
      .def_readonly("m0", &GridPoint4D::m0)
      .def_readonly("m1", &GridPoint4D::m1)
      .def_readonly("m2", &GridPoint4D::m2)
      .def_readonly("m3", &GridPoint4D::m3)
      .def_readonly("A", &GridPoint4D::A)
      .def_readonly("b", &GridPoint4D::b);

  py::class_<AreaReport>(m, "AreaReport")
      .def_readonly("ok", &AreaReport::ok)
      .def_readonly("eta", &AreaReport::eta)
      .def_readonly("sup_bound", &AreaReport::sup_bound)
      .def_readonly("classic_bound", &AreaReport::classic_bound)
      .def_readonly("worst_t", &AreaReport::worst_t)
      .def_readonly("worst_area", &AreaReport::worst_area);

  m.def("annulus_area", &annulus_area, py::arg("t"), py::arg("lam"), py::arg("L"));
  m.def("validate_area_bound",
        py::overload_cast<double, int, int, double>(&validate_area_bound),
        py::arg("lam"), py::arg("L"), py::arg("t_max"), py::arg("eta"));
  m.def("validate_area_bound",
        py::overload_cast<const GridSpec2D&, double>(&validate_area_bound),
        py::arg("grid"), py::arg("eta"));
  m.def("validate_area_bound",
        py::overload_cast<const GridSpec4D&, double>(&validate_area_bound),
        py::arg("grid"), py::arg("eta"));
  m.def("enumerate_grid_2d", &enumerate_grid_2d, py::arg("grid"));
  m.def("enumerate_grid_4d", &enumerate_grid_4d, py::arg("grid"));

  // --- analysis and synthesis -----------------------------------------------
  py::enum_<TranslationMode>(m, "TranslationMode")
      .value("exact", TranslationMode::exact)
      .value("snap", TranslationMode::snap);

  py::class_<AnalysisOptions>(m, "AnalysisOptions")
      .def(py::init<>())
      .def_readwrite("norm", &AnalysisOptions::norm)
      .def_readwrite("translation_mode", &AnalysisOptions::translation_mode)
      .def_readwrite("support_rel_tol", &AnalysisOptions::support_rel_tol)
      .def_readwrite("threads", &AnalysisOptions::threads);

  py::class_<CoefficientSet>(m, "CoefficientSet")
      .def_property_readonly("grid",
                             [](const CoefficientSet& c) -> py::object {
                               return std::visit(
                                   [](const auto& g) { return py::cast(g); }, c.grid);
                             })
      .def_property(
          "values", [](const CoefficientSet& c) { return to_array(c.values); },
          [](CoefficientSet& c, py::handle obj) { c.values = from_array(obj); });

  py::class_<WaveletPlan>(m, "WaveletPlan")
      .def_static("build",
                  py::overload_cast<const MotherWavelet&, const GridSpec2D&,
                                    const BoxSpec&, const AnalysisOptions&>(
                      &WaveletPlan::build),
                  py::arg("psi"), py::arg("grid"), py::arg("box"),
                  py::arg("opts") = AnalysisOptions{})
      .def_static("build",
                  py::overload_cast<const MotherWavelet&, const GridSpec4D&,
                                    const BoxSpec&, const AnalysisOptions&>(
                      &WaveletPlan::build),
                  py::arg("psi"), py::arg("grid"), py::arg("box"),
                  py::arg("opts") = AnalysisOptions{})
      .def_readonly("box", &WaveletPlan::box)
      .def_readonly("dim", &WaveletPlan::dim)
      .def_readonly("total", &WaveletPlan::total)
      .def("analyze", &WaveletPlan::analyze, py::arg("f"))
      .def("synthesize", &WaveletPlan::synthesize, py::arg("coeffs"))
      .def("frame_apply", &WaveletPlan::frame_apply, py::arg("f"))
      .def("member_field", &WaveletPlan::member_field, py::arg("cell"),
           py::arg("translation"));

  m.def("slow_coefficient", &slow_coefficient, py::arg("f"), py::arg("atom"));
  m.def("analyze",
        py::overload_cast<const SampledField&, const MotherWavelet&, const GridSpec2D&,
                          const AnalysisOptions&>(&analyze),
        py::arg("f"), py::arg("psi"), py::arg("grid"),
        py::arg("opts") = AnalysisOptions{});
  m.def("analyze",
        py::overload_cast<const SampledField&, const MotherWavelet&, const GridSpec4D&,
                          const AnalysisOptions&>(&analyze),
        py::arg("f"), py::arg("psi"), py::arg("grid"),
        py::arg("opts") = AnalysisOptions{});
  m.def("frame_apply",
        py::overload_cast<const SampledField&, const MotherWavelet&, const GridSpec2D&,
                          const AnalysisOptions&>(&frame_apply),
        py::arg("f"), py::arg("psi"), py::arg("grid"),
        py::arg("opts") = AnalysisOptions{});
  m.def("frame_apply",
        py::overload_cast<const SampledField&, const MotherWavelet&, const GridSpec4D&,
                          const AnalysisOptions&>(&frame_apply),
        py::arg("f"), py::arg("psi"), py::arg("grid"),
        py::arg("opts") = AnalysisOptions{});

  py::class_<FrameSystem>(m, "FrameSystem")
      .def_property_readonly("box", &FrameSystem::box)
      .def("size", &FrameSystem::size)
      .def("analyze",
           [](const FrameSystem& s, const SampledField& f) {
             return to_array(s.analyze(f));
           },
           py::arg("f"))
      .def("synthesize",
           [](const FrameSystem& s, py::handle coeffs) {
             return s.synthesize(from_array(coeffs));
           },
           py::arg("coeffs"))
      .def("frame_apply", &FrameSystem::frame_apply, py::arg("f"));

  py::class_<FieldListSystem, FrameSystem>(m, "FieldListSystem")
      .def(py::init<std::vector<SampledField>>(), py::arg("members"))
      .def("members", &FieldListSystem::members);

  py::class_<WaveletSystem, FrameSystem>(m, "WaveletSystem")
      .def(py::init<WaveletPlan>(), py::arg("plan"));

  py::enum_<ReconstructMethod>(m, "ReconstructMethod")
      .value("cg", ReconstructMethod::cg)
      .value("richardson", ReconstructMethod::richardson);

  py::class_<ReconstructOptions>(m, "ReconstructOptions")
      .def(py::init<>())
      .def_readwrite("max_iters", &ReconstructOptions::max_iters)
      .def_readwrite("tol", &ReconstructOptions::tol)
      .def_readwrite("method", &ReconstructOptions::method)
      .def_readwrite("bound_A", &ReconstructOptions::bound_A)
      .def_readwrite("bound_B", &ReconstructOptions::bound_B);

  py::class_<ReconstructResult>(m, "ReconstructResult")
      .def_readonly("field", &ReconstructResult::field)
      .def_readonly("iterations", &ReconstructResult::iterations)
      .def_readonly("rel_residual", &ReconstructResult::rel_residual)
      .def_readonly("converged", &ReconstructResult::converged);

  m.def("reconstruct_system",
        [](const FrameSystem& sys, py::handle coeffs, const ReconstructOptions& opts) {
          return reconstruct_system(sys, from_array(coeffs), opts);
        },
        py::arg("sys"), py::arg("coeffs"), py::arg("opts") = ReconstructOptions{});
  m.def("reconstruct", &reconstruct, py::arg("coeffs"), py::arg("psi"), py::arg("box"),
        py::arg("iters"), py::arg("tol"), py::arg("opts") = AnalysisOptions{});

  // --- frame bounds ---------------------------------------------------------
  py::enum_<ESummand>(m, "ESummand")
      .value("geometric", ESummand::geometric)
      .value("plain", ESummand::plain);

  py::class_<ProbeOptions>(m, "ProbeOptions")
      .def(py::init<>())
      .def_readwrite("r_min", &ProbeOptions::r_min)
      .def_readwrite("r_max", &ProbeOptions::r_max)
      .def_readwrite("n_radial", &ProbeOptions::n_radial)
      .def_readwrite("n_angular", &ProbeOptions::n_angular)
      .def_readwrite("max_rounds", &ProbeOptions::max_rounds)
      .def_readwrite("rel_tol", &ProbeOptions::rel_tol)
      .def_readwrite("seed", &ProbeOptions::seed);

  py::class_<FrameReport>(m, "FrameReport")
      .def_readonly("s_val", &FrameReport::s_val)
      .def_readonly("S_val", &FrameReport::S_val)
      .def_readonly("E_val", &FrameReport::E_val)
      .def_readonly("A_candidate", &FrameReport::A_candidate)
      .def_readonly("B_candidate", &FrameReport::B_candidate)
      .def_readonly("A_emp", &FrameReport::A_emp)
      .def_readonly("B_emp", &FrameReport::B_emp)
      .def_readonly("eig_min", &FrameReport::eig_min)
      .def_readonly("eig_max", &FrameReport::eig_max)
      .def_readonly("const_factor", &FrameReport::const_factor)
      .def_readonly("tail_fraction", &FrameReport::tail_fraction)
      .def_readonly("probes_converged", &FrameReport::probes_converged)
      .def_readonly("dense_used", &FrameReport::dense_used)
      .def_readonly("rounds", &FrameReport::rounds)
      .def_readonly("probe_count", &FrameReport::probe_count)
      .def_readonly("pair_probe_count", &FrameReport::pair_probe_count)
      .def_readonly("verdict", &FrameReport::verdict);

  py::class_<BoundsOptions>(m, "BoundsOptions")
      .def(py::init<>())
      .def_readwrite("probes", &BoundsOptions::probes)
      .def_readwrite("summand", &BoundsOptions::summand)
      .def_readwrite("shell_rel_stop", &BoundsOptions::shell_rel_stop)
      .def_readwrite("max_shell", &BoundsOptions::max_shell)
      .def_readwrite("box", &BoundsOptions::box)
      .def_readwrite("band_lo", &BoundsOptions::band_lo)
      .def_readwrite("band_hi", &BoundsOptions::band_hi)
      .def_readwrite("pair_slack", &BoundsOptions::pair_slack)
      .def_readwrite("dense_limit", &BoundsOptions::dense_limit)
      .def_readwrite("analysis", &BoundsOptions::analysis);

  m.def("frame_verdict",
        py::overload_cast<const MotherWavelet&, const GridSpec2D&, const BoundsOptions&>(
            &frame_verdict),
        py::arg("psi"), py::arg("grid"), py::arg("opt") = BoundsOptions{});
  m.def("frame_verdict",
        py::overload_cast<const MotherWavelet&, const GridSpec4D&, const BoundsOptions&>(
            &frame_verdict),
        py::arg("psi"), py::arg("grid"), py::arg("opt") = BoundsOptions{});

  py::class_<EmpiricalReport>(m, "EmpiricalReport")
      .def_readonly("A_emp", &EmpiricalReport::A_emp)
      .def_readonly("B_emp", &EmpiricalReport::B_emp)
      .def_readonly("eig_min", &EmpiricalReport::eig_min)
      .def_readonly("eig_max", &EmpiricalReport::eig_max)
      .def_readonly("dense_used", &EmpiricalReport::dense_used)
      .def_readonly("probe_count", &EmpiricalReport::probe_count)
      .def_readonly("pair_probe_count", &EmpiricalReport::pair_probe_count);

  m.def("band_bins", &band_bins, py::arg("box"), py::arg("k_lo"), py::arg("k_hi"));
  m.def("rayleigh_quotients", &rayleigh_quotients, py::arg("sys"), py::arg("bins"));
  m.def("empirical_bounds",
        py::overload_cast<const FrameSystem&, const std::vector<SampledField>&,
                          std::size_t>(&empirical_bounds),
        py::arg("sys"), py::arg("probe_signals"), py::arg("dense_limit") = 256);

  // --- quaternionic lifting -------------------------------------------------
  py::enum_<LiftMode>(m, "LiftMode")
      .value("diagonal", LiftMode::diagonal)
      .value("mixed", LiftMode::mixed);

  py::class_<LiftedSystem>(m, "LiftedSystem")
      .def(py::init<std::vector<SampledField>, LiftMode>(), py::arg("phis"),
           py::arg("mode"))
      .def_property_readonly("box", &LiftedSystem::box)
      .def("size", &LiftedSystem::size)
      .def("mode", &LiftedSystem::mode)
      .def("source", &LiftedSystem::source)
      .def("member", &LiftedSystem::member, py::arg("n"))
      .def("coefficient", &LiftedSystem::coefficient, py::arg("n"), py::arg("F"));

  m.def("lift", &lift, py::arg("phis"), py::arg("mode"));
  m.def("conjugate_system", &conjugate_system, py::arg("phis"));

  py::class_<Mat2c>(m, "Mat2c")
      .def_readonly("m11", &Mat2c::m11)
      .def_readonly("m12", &Mat2c::m12)
      .def_readonly("m21", &Mat2c::m21)
      .def_readonly("m22", &Mat2c::m22);

  m.def("pairing_matrix", &pairing_matrix, py::arg("F"), py::arg("G"));
  m.def("modulus_matrix", &modulus_matrix, py::arg("F"), py::arg("G"));

  py::class_<Expansion>(m, "Expansion")
      .def_readonly("coeffs", &Expansion::coeffs)
      .def_readonly("partial_sum", &Expansion::partial_sum)
      .def_readonly("residual", &Expansion::residual);

  m.def("expand", &expand, py::arg("F"), py::arg("sys"));

  py::class_<PreservationReport>(m, "PreservationReport")
      .def_readonly("A", &PreservationReport::A)
      .def_readonly("B", &PreservationReport::B)
      .def_readonly("worst_low", &PreservationReport::worst_low)
      .def_readonly("worst_high", &PreservationReport::worst_high)
      .def_readonly("max_offdiag", &PreservationReport::max_offdiag)
      .def_readonly("probe_count", &PreservationReport::probe_count)
      .def_readonly("passed", &PreservationReport::passed);

  m.def("verify_frame_preservation", &verify_frame_preservation, py::arg("phis"),
        py::arg("A"), py::arg("B"), py::arg("probes"), py::arg("tol") = 1e-9);
  m.def("lifted_empirical_bounds", &lifted_empirical_bounds, py::arg("sys"),
        py::arg("probes"));

  py::class_<LiftedFrame>(m, "LiftedFrame")
      .def_readonly("system", &LiftedFrame::system)
      .def_readonly("report", &LiftedFrame::report);

  m.def("lift_wavelet_frame",
        py::overload_cast<const MotherWavelet&, const GridSpec2D&, const BoundsOptions&>(
            &lift_wavelet_frame),
        py::arg("psi"), py::arg("grid"), py::arg("opt"));
  m.def("lift_wavelet_frame",
        py::overload_cast<const MotherWavelet&, const GridSpec4D&, const BoundsOptions&>(
            &lift_wavelet_frame),
        py::arg("psi"), py::arg("grid"), py::arg("opt"));
}
