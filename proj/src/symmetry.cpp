#include "gptcone/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "gptcone/appendix.hpp"
#include "gptcone/discrimination.hpp"
#include "gptcone/pses.hpp"
#include "gptcone/random.hpp"

namespace gptcone {

const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::kGlobalUnitary:
      return "GLOBAL_UNITARY";
    case TransformKind::kLocalUnitary:
      return "LOCAL_UNITARY";
    case TransformKind::kLocalWithTranspose:
      return "LOCAL_WITH_TRANSPOSE";
    case TransformKind::kSwapFactors:
      return "SWAP_FACTORS";
  }
  return "?";
}

namespace {

void require_unitary(const CMatrix& u, int n, const char* what) {
  if (u.rows() != n || u.cols() != n) throw DimensionError(std::string(what) + ": unitary has wrong size");
  const double defect = (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw ValidationError(std::string(what) + ": matrix is not unitary to 1e-10");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

HermMatrix conj_local(const HermMatrix& x, const CMatrix& u, bool transpose_first) {
  return conjugate(transpose_first ? transpose(x) : x, u);
}

CMatrix generalized_z(int m) {
  CMatrix z = CMatrix::Zero(m, m);
  for (int k = 0; k < m; ++k) z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  return z;
}

struct Sample {
  HermMatrix x;
  std::vector<ProductTerm> terms;
};

Sample sample_element(const ConeRep& cone, Rng& rng) {
  const BipartiteDims dims = cone.dims;
  const int d = dims.total();
  Sample s;
  s.x = HermMatrix::zero(d);
  bool have = false;
  switch (cone.tag) {
    case ConeTag::kPsd:
    case ConeTag::kCsNeg:
      s.x = random_density(d, rng, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d)));
      have = true;
      break;
    case ConeTag::kSep:
      for (int t = 0; t < 3; ++t) {
        const double w = uniform01(rng) + 0.05;
        const HermMatrix a = random_pure_state(dims.a, rng) * w;
        const HermMatrix b = random_pure_state(dims.b, rng);
        s.terms.emplace_back(a, b);
        s.x += tensor(a, b);
      }
      have = true;
      break;
    case ConeTag::kSepDual:
      s.x = random_density(d, rng) + partial_transpose(random_density(d, rng), dims);
      have = true;
      break;
    case ConeTag::kClassicalOrthant: {
      std::vector<double> diag(static_cast<std::size_t>(d));
      for (double& v : diag) v = uniform01(rng);
      s.x = HermMatrix::diagonal(diag);
      have = true;
      break;
    }
    case ConeTag::kShrunkBloch:
      s.x = cone.param * random_density(d, rng) + ((1.0 - cone.param) / d) * HermMatrix::identity(d);
      have = true;
      break;
    case ConeTag::kCr: {
      const std::vector<HermMatrix> ys = sample_cr0_dual(*cone.cr, 1, rng());
      s.x = ys.front();
      for (const HermMatrix& n : npm_endpoints(*cone.cr)) s.x += uniform01(rng) * n;
      have = true;
      break;
    }
    case ConeTag::kNone:
      break;
  }
  if (!cone.generators.empty() && cone.tag != ConeTag::kShrunkBloch) {
    const std::size_t k = rng() % cone.generators.size();
    s.x += (uniform01(rng) + 0.05) * cone.generators[k];
    have = true;
  }
  if (!have) throw DomainError("orbit_invariance_check: cone has neither an oracle nor generators");
  return s;
}

Json unitary_to_json(const CMatrix& u) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      re.push_back(u(i, j).real());
      im.push_back(u(i, j).imag());
    }
  return {{"rows", u.rows()}, {"re", re}, {"im", im}};
}

}  // namespace

TransformSpec TransformSpec::global(const CMatrix& u, BipartiteDims dims) {
  require_unitary(u, dims.total(), "TransformSpec");
  TransformSpec t;
  t.kind = TransformKind::kGlobalUnitary;
  t.dims = dims;
  t.u = u;
  return t;
}

TransformSpec TransformSpec::local(const CMatrix& ua, const CMatrix& ub, BipartiteDims dims, bool transpose_a,
                                   bool transpose_b, bool swap) {
  require_unitary(ua, dims.a, "TransformSpec");
  require_unitary(ub, dims.b, "TransformSpec");
  TransformSpec t;
  t.kind = (transpose_a || transpose_b) ? TransformKind::kLocalWithTranspose : TransformKind::kLocalUnitary;
  t.dims = dims;
  t.ua = ua;
  t.ub = ub;
  t.transpose_a = transpose_a;
  t.transpose_b = transpose_b;
  t.swap = swap;
  t.u = kron(ua, ub);
  return t;
}

TransformSpec TransformSpec::swap_factors(BipartiteDims dims) {
  TransformSpec t = local(CMatrix::Identity(dims.a, dims.a), CMatrix::Identity(dims.b, dims.b), dims, false, false,
                          true);
  t.kind = TransformKind::kSwapFactors;
  return t;
}

BipartiteDims TransformSpec::output_dims() const {
  return swap ? BipartiteDims(dims.b, dims.a) : dims;
}

HermMatrix TransformSpec::apply(const HermMatrix& x) const {
  require_dims(x, dims, "TransformSpec::apply");
  if (kind == TransformKind::kGlobalUnitary) return conjugate(x, u);
  HermMatrix y = x;
  if (transpose_b) y = partial_transpose(y, dims);
  if (transpose_a) y = transpose(partial_transpose(y, dims));
  y = conjugate(y, u);
  return swap ? gptcone::swap_factors(y, dims) : y;
}

ProductTerm TransformSpec::apply(const ProductTerm& t) const {
  if (kind == TransformKind::kGlobalUnitary) throw DomainError("TransformSpec: global maps do not act on product terms");
  HermMatrix a = conj_local(t.first, ua, transpose_a);
  HermMatrix b = conj_local(t.second, ub, transpose_b);
  return swap ? ProductTerm(std::move(b), std::move(a)) : ProductTerm(std::move(a), std::move(b));
}

HermMatrix swap_factors(const HermMatrix& x, BipartiteDims dims) {
  require_dims(x, dims, "swap_factors");
  const int da = dims.a;
  const int db = dims.b;
  CMatrix y(x.dim(), x.dim());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) y(b * da + a, b2 * da + a2) = x(a * db + b, a2 * db + b2);
  return HermMatrix::trusted(std::move(y));
}

Report orbit_invariance_check(const ConeRep& cone, SymmetryGroup group, int samples, std::uint64_t seed,
                              double tol) {
  validate_cone(cone);
  Report rep(std::string(group == SymmetryGroup::kGU ? "orbit_invariance_GU_" : "orbit_invariance_LU_") +
             to_string(cone.tag) + (cone.generators.empty() ? "" : "_augmented"));
  const BipartiteDims dims = cone.dims;
  Rng rng(seed);
  SepOptions so;
  so.seed = seed + 1;
  int falsified = 0;
  int unknown = 0;
  Json first = nullptr;

  auto record = [&](const HermMatrix& x, const HermMatrix& gx, const CMatrix& g, const MembershipVerdict& v,
                    const std::string& source) {
    if (v.status == Status::kUnknown) ++unknown;
    if (v.status != Status::kOut) return;
    ++falsified;
    if (!first.is_null()) return;
    first = Json::object();
    first["source"] = source;
    first["x"] = matrix_to_json(x);
    first["g"] = unitary_to_json(g);
    first["g_x"] = matrix_to_json(gx);
    first["verdict"] = verdict_to_json(v);
  };

  for (int s = 0; s < samples; ++s) {
    const Sample smp = sample_element(cone, rng);
    if (group == SymmetryGroup::kGU) {
      const TransformSpec t = TransformSpec::global(haar_unitary(dims.total(), rng), dims);
      const HermMatrix gx = t.apply(smp.x);
      record(smp.x, gx, t.u, membership(cone, gx, tol, so), "haar");
    } else {
      const TransformSpec t = TransformSpec::local(haar_unitary(dims.a, rng), haar_unitary(dims.b, rng), dims);
      const HermMatrix gx = t.apply(smp.x);
      MembershipVerdict v;
      if (cone.tag == ConeTag::kSep && cone.generators.empty()) {
        std::vector<ProductTerm> moved;
        for (const ProductTerm& term : smp.terms) moved.push_back(t.apply(term));
        v = sep_membership(gx, dims, tol, so, &moved);
      } else {
        v = membership(cone, gx, tol, so);
      }
      record(smp.x, gx, t.u, v, "haar");
    }
  }

  if (!cone.generators.empty() && cone.tag != ConeTag::kShrunkBloch) {
    const TransformSpec t = TransformSpec::local(CMatrix::Identity(dims.a, dims.a), generalized_z(dims.b), dims);
    for (const HermMatrix& g : cone.generators) {
      const HermMatrix gx = t.apply(g);
      record(g, gx, t.u, membership(cone, gx, tol, so), "generator-phase-rotation");
    }
  }

  rep.data()["samples"] = samples;
  rep.data()["seed"] = seed;
  rep.data()["cone"] = to_string(cone.tag);
  rep.data()["inconclusive"] = unknown;
  if (!first.is_null()) rep.data()["falsification"] = first;
  rep.le("falsifications", falsified, 0.0, 0.0, "images with an Out verdict");
  return rep;
}

GuWitness gu_falsifier(const HermMatrix& x, BipartiteDims dims, double tol) {
  require_dims(x, dims, "gu_falsifier");
  const Spectrum s = eig_ascending(x);
  if (s.values(0) >= -tol) throw DomainError("gu_falsifier: x is positive semidefinite");
  const int d = dims.total();
  GuWitness w;
  w.negative_vector = s.vectors.col(0);
  const CVector& v = w.negative_vector;
  const double mag = std::abs(v(0));
  const cplx phase = mag > 1e-300 ? v(0) / mag : cplx(1.0);
  CVector e0 = CVector::Zero(d);
  e0(0) = phase;
  const CVector h = v - e0;
  const double hn = h.squaredNorm();
  w.g = CMatrix::Identity(d, d);
  if (hn > 1e-24) w.g -= (2.0 / hn) * h * h.adjoint();
  w.gx = conjugate(x, w.g);
  const HermMatrix grho = conjugate(HermMatrix::projector(v), w.g);
  w.value = trace_inner(grho, w.gx);
  w.product_min = product_minimum(w.gx, dims, 16, 3).value;
  return w;
}

Report two_symmetry_counterexample(int samples, std::uint64_t seed) {
  Report rep("two_symmetry_counterexample");
  const BipartiteDims dims = appendix::dims();
  const HermMatrix r1 = appendix::rho1();
  const HermMatrix r2 = appendix::rho2();
  const HermMatrix s1 = appendix::product00();
  const HermMatrix s2 = appendix::product11();
  const HermMatrix id = HermMatrix::identity(4);

  const std::vector<HermMatrix> e{appendix::e1(), appendix::e2()};
  const std::vector<double> d0{1.0, 0.0};
  const std::vector<double> d1{0.0, 1.0};
  const std::vector<HermMatrix> f{tensor(HermMatrix::diagonal(d0), HermMatrix::identity(2)),
                                  tensor(HermMatrix::diagonal(d1), HermMatrix::identity(2))};
  for (const auto& [label, effects] : {std::pair{"rho", e}, std::pair{"sigma", f}}) {
    const std::string l = label;
    const std::vector<HermMatrix> st = l == "rho" ? std::vector<HermMatrix>{r1, r2} : std::vector<HermMatrix>{s1, s2};
    rep.le(l + "_pair_table_deviation", distinguishability_deviation(st, effects), 0.0, 1e-12);
    rep.le(l + "_pair_sum_defect", (effects[0] + effects[1] - id).matrix().cwiseAbs().maxCoeff(), 0.0, 1e-12);
    bool block_positive = true;
    for (const HermMatrix& m : effects) block_positive = block_positive && sep_dual_membership(m, dims).status != Status::kOut;
    rep.require(l + "_pair_effects_block_positive", block_positive);
    bool separable = true;
    for (const HermMatrix& x : st) separable = separable && sep_membership(x, dims).status == Status::kIn;
    rep.require(l + "_pair_separable", separable);
  }
  const double ov_r = trace_inner(r1, r2);
  const double ov_s = trace_inner(s1, s2);
  rep.near("rho_overlap", ov_r, 0.25, 1e-12);
  rep.near("sigma_overlap", ov_s, 0.0, 1e-12);

  Rng rng(seed);
  double dev_r = 0.0;
  double dev_s = 0.0;
  double product_defect = 0.0;
  for (int k = 0; k < samples; ++k) {
    const bool ta = rng() % 2 == 1;
    const bool tb = rng() % 2 == 1;
    const bool sw = rng() % 2 == 1;
    const TransformSpec t = TransformSpec::local(haar_unitary(2, rng), haar_unitary(2, rng), dims, ta, tb, sw);
    const HermMatrix fr1 = t.apply(r1);
    const HermMatrix fr2 = t.apply(r2);
    dev_r = std::max(dev_r, std::abs(trace_inner(fr1, fr2) - ov_r));
    dev_s = std::max(dev_s, std::abs(trace_inner(t.apply(s1), t.apply(s2)) - ov_s));
    const ProductTerm img = t.apply(ProductTerm(partial_trace(r2, dims, Subsystem::kA), partial_trace(r2, dims, Subsystem::kB)));
    product_defect = std::max(product_defect, (tensor(img.first, img.second) - fr2).matrix().cwiseAbs().maxCoeff());
  }
  rep.data()["maps"] = samples;
  rep.data()["rho_overlap"] = ov_r;
  rep.data()["sigma_overlap"] = ov_s;
  rep.le("form_iii_rho_overlap_deviation", dev_r, 0.0, 1e-10);
  rep.le("form_iii_sigma_overlap_deviation", dev_s, 0.0, 1e-10);
  rep.le("form_iii_product_structure_defect", product_defect, 0.0, 1e-10);
  rep.require("overlaps_differ", std::abs(ov_r - ov_s) > 1e-6,
              "no overlap-preserving map carries the rho pair onto the sigma pair");
  rep.data()["conclusion"] = "SEP is 1-symmetric but not 2-symmetric";
  return rep;
}

}  // namespace gptcone
