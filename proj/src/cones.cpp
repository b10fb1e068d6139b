#include "gptcone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gptcone/pses.hpp"
#include "gptcone/random.hpp"

namespace gptcone {

const char* to_string(ConeTag tag) {
  switch (tag) {
    case ConeTag::kNone:
      return "NONE";
    case ConeTag::kPsd:
      return "PSD";
    case ConeTag::kSep:
      return "SEP";
    case ConeTag::kSepDual:
      return "SEP_DUAL";
    case ConeTag::kClassicalOrthant:
      return "CLASSICAL_ORTHANT";
    case ConeTag::kShrunkBloch:
      return "SHRUNK_BLOCH";
    case ConeTag::kCsNeg:
      return "CS_NEG";
    case ConeTag::kCr:
      return "CR";
  }
  return "NONE";
}

ConeTag cone_tag_from_string(const std::string& s) {
  for (ConeTag t : {ConeTag::kNone, ConeTag::kPsd, ConeTag::kSep, ConeTag::kSepDual,
                    ConeTag::kClassicalOrthant, ConeTag::kShrunkBloch, ConeTag::kCsNeg, ConeTag::kCr})
    if (s == to_string(t)) return t;
  throw ValidationError("unknown cone tag '" + s + "'");
}

namespace {

MembershipVerdict verdict(Status s, double margin, std::string tier,
                          std::optional<HermMatrix> witness = std::nullopt) {
  MembershipVerdict v;
  v.status = s;
  v.margin = margin;
  v.tier = std::move(tier);
  v.witness = std::move(witness);
  return v;
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("membership: tol must be positive");
}

HermMatrix shrunk_point(const HermMatrix& rho, double p) {
  const int d = rho.dim();
  return p * rho + ((1.0 - p) / d) * HermMatrix::identity(d);
}

std::vector<HermMatrix> shrunk_axis_generators(int d, double p) {
  std::vector<HermMatrix> out;
  if (d != 2) {
    for (int i = 0; i < d; ++i) {
      CVector e = CVector::Zero(d);
      e(i) = 1.0;
      out.push_back(shrunk_point(HermMatrix::projector(e), p));
    }
    return out;
  }
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<CVector> axes = {
      (CVector(2) << 1.0, 0.0).finished(),           (CVector(2) << 0.0, 1.0).finished(),
      (CVector(2) << s, s).finished(),               (CVector(2) << s, -s).finished(),
      (CVector(2) << s, cplx(0.0, s)).finished(),    (CVector(2) << s, cplx(0.0, -s)).finished()};
  for (const CVector& v : axes) out.push_back(shrunk_point(HermMatrix::projector(v), p));
  return out;
}

MembershipVerdict shrunk_membership(const HermMatrix& x, double p, double tol) {
  const int d = x.dim();
  const Spectrum s = eig_ascending(x);
  const double margin = s.values(0) - (1.0 - p) / d * x.trace();
  if (margin >= -tol && x.trace() >= -tol) return verdict(Status::kIn, margin, "shrunk-spectrum");
  HermMatrix w = HermMatrix::projector(s.vectors.col(0)) - ((1.0 - p) / d) * HermMatrix::identity(d);
  return verdict(Status::kOut, margin, "shrunk-spectrum", w);
}

// M in C_p* iff p * lambda_min(M) + (1 - p) Tr M / d >= 0.
MembershipVerdict shrunk_dual_membership(const HermMatrix& x, double p, double tol) {
  const int d = x.dim();
  const Spectrum s = eig_ascending(x);
  const double margin = p * s.values(0) + (1.0 - p) * x.trace() / d;
  if (margin >= -tol) return verdict(Status::kIn, margin, "shrunk-dual-spectrum");
  return verdict(Status::kOut, margin, "shrunk-dual-spectrum",
                 shrunk_point(HermMatrix::projector(s.vectors.col(0)), p));
}

MembershipVerdict csneg_membership(const HermMatrix& x, double s, double tol) {
  const Spectrum sp = eig_ascending(x);
  const double margin = s * x.trace() - nege(x);
  if (margin >= -tol) return verdict(Status::kIn, margin, "nege-bound");
  const HermMatrix w = HermMatrix::projector(sp.vectors.col(0)) + s * HermMatrix::identity(x.dim());
  return verdict(Status::kOut, margin, "nege-bound", w);
}

MembershipVerdict csneg_dual_membership(const HermMatrix& x, double s, double tol) {
  const int d = x.dim();
  const Spectrum sp = eig_ascending(x);
  const double lmin = sp.values(0);
  const double lmax = sp.values(d - 1);
  if (lmin < -tol)
    return verdict(Status::kOut, lmin, "psd-subcone", HermMatrix::projector(sp.vectors.col(0)));
  const double sufficient = lmin * (1.0 + s * d) - s * x.trace();
  if (sufficient >= -tol) return verdict(Status::kIn, sufficient, "nege-dual-sufficient");
  const double test = (1.0 + s) * lmin - s * lmax;
  if (test < -tol) {
    HermMatrix w = (1.0 + s) * HermMatrix::projector(sp.vectors.col(0)) -
                   s * HermMatrix::projector(sp.vectors.col(d - 1));
    return verdict(Status::kOut, test, "nege-dual-test", w);
  }
  return verdict(Status::kUnknown, sufficient, "nege-dual");
}

MembershipVerdict orthant_membership(const HermMatrix& x, double tol) {
  double worst = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < x.dim(); ++i)
    if (x(i, i).real() < worst) {
      worst = x(i, i).real();
      arg = i;
    }
  double off = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j)
      if (i != j) off = std::max(off, std::abs(x(i, j)));
  if (off > tol) return verdict(Status::kOut, -off, "orthant-diagonal");
  if (worst >= -tol) return verdict(Status::kIn, worst, "orthant-entrywise");
  std::vector<double> e(static_cast<std::size_t>(x.dim()), 0.0);
  e[static_cast<std::size_t>(arg)] = 1.0;
  return verdict(Status::kOut, worst, "orthant-entrywise", HermMatrix::diagonal(e));
}

MembershipVerdict orthant_dual_membership(const HermMatrix& x, double tol) {
  double worst = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < x.dim(); ++i)
    if (x(i, i).real() < worst) {
      worst = x(i, i).real();
      arg = i;
    }
  if (worst >= -tol) return verdict(Status::kIn, worst, "orthant-dual-entrywise");
  std::vector<double> e(static_cast<std::size_t>(x.dim()), 0.0);
  e[static_cast<std::size_t>(arg)] = 1.0;
  return verdict(Status::kOut, worst, "orthant-dual-entrywise", HermMatrix::diagonal(e));
}

bool witness_nonneg_on(const HermMatrix& w, const std::vector<HermMatrix>& gens, double tol) {
  for (const HermMatrix& g : gens)
    if (trace_inner(w, g) < -tol) return false;
  return true;
}

MembershipVerdict oracle_membership(const ConeRep& cone, const HermMatrix& x, double tol,
                                    const SepOptions& opts) {
  switch (cone.tag) {
    case ConeTag::kPsd:
      return psd_membership(x, tol);
    case ConeTag::kSep:
      return sep_membership(x, cone.dims, tol, opts);
    case ConeTag::kSepDual:
      return sep_dual_membership(x, cone.dims, tol, opts);
    case ConeTag::kClassicalOrthant:
      return orthant_membership(x, tol);
    case ConeTag::kShrunkBloch:
      return shrunk_membership(x, cone.param, tol);
    case ConeTag::kCsNeg:
      return csneg_membership(x, cone.param, tol);
    case ConeTag::kCr:
      return cr_membership(x, *cone.cr, tol);
    case ConeTag::kNone:
      break;
  }
  throw DomainError("membership: cone has no oracle");
}

MembershipVerdict oracle_dual_membership(const ConeRep& cone, const HermMatrix& x, double tol,
                                         const SepOptions& opts) {
  switch (cone.tag) {
    case ConeTag::kPsd:
      return psd_membership(x, tol);
    case ConeTag::kSep:
      return sep_dual_membership(x, cone.dims, tol, opts);
    case ConeTag::kSepDual:
      return sep_membership(x, cone.dims, tol, opts);
    case ConeTag::kClassicalOrthant:
      return orthant_dual_membership(x, tol);
    case ConeTag::kShrunkBloch:
      return shrunk_dual_membership(x, cone.param, tol);
    case ConeTag::kCsNeg:
      return csneg_dual_membership(x, cone.param, tol);
    case ConeTag::kCr:
      return cr_dual_membership(x, *cone.cr, tol);
    case ConeTag::kNone:
      break;
  }
  throw DomainError("dual_cone_membership: cone has no oracle");
}

}  // namespace

ConeRep ConeRep::named(ConeTag tag, BipartiteDims dims, double param) {
  ConeRep c;
  c.tag = tag;
  c.param = param;
  c.dims = dims;
  switch (tag) {
    case ConeTag::kShrunkBloch:
      if (!(param > 0.0 && param < 1.0)) throw DomainError("SHRUNK_BLOCH: p must lie in (0, 1)");
      c.generators = shrunk_axis_generators(dims.total(), param);
      break;
    case ConeTag::kCsNeg:
      if (!(param >= 0.0)) throw DomainError("CS_NEG: s must be >= 0");
      break;
    case ConeTag::kCr:
      throw DomainError("CR cones are built with ConeRep::cr_cone");
    case ConeTag::kNone:
      throw DomainError("named cone needs a tag");
    default:
      break;
  }
  return c;
}

ConeRep ConeRep::cr_cone(const PsesParams& params) {
  ConeRep c;
  c.tag = ConeTag::kCr;
  c.param = params.r;
  c.cr = params;
  c.dims = params.dims;
  return c;
}

ConeRep ConeRep::generated(std::vector<HermMatrix> generators, BipartiteDims dims) {
  ConeRep c;
  c.dims = dims;
  c.generators = std::move(generators);
  validate_cone(c);
  return c;
}

ConeRep ConeRep::halfspaces(std::vector<HermMatrix> dual_generators, BipartiteDims dims) {
  ConeRep c;
  c.dims = dims;
  c.dual_generators = std::move(dual_generators);
  validate_cone(c);
  return c;
}

ConeRep ConeRep::described(std::vector<HermMatrix> generators, std::vector<HermMatrix> dual_generators,
                           BipartiteDims dims) {
  ConeRep c;
  c.dims = dims;
  c.generators = std::move(generators);
  c.dual_generators = std::move(dual_generators);
  validate_cone(c);
  return c;
}

ConeRep ConeRep::augmented(ConeTag tag, BipartiteDims dims, std::vector<HermMatrix> extra, double param) {
  ConeRep c = named(tag, dims, param);
  c.generators.insert(c.generators.end(), extra.begin(), extra.end());
  validate_cone(c);
  return c;
}

void validate_cone(const ConeRep& cone) {
  if (cone.tag == ConeTag::kNone && cone.generators.empty() && cone.dual_generators.empty())
    throw ValidationError("ConeRep: no description present");
  for (const HermMatrix& g : cone.generators)
    if (g.dim() != cone.dim()) throw DimensionError("ConeRep: generator dimension mismatch");
  for (const HermMatrix& h : cone.dual_generators)
    if (h.dim() != cone.dim()) throw DimensionError("ConeRep: dual generator dimension mismatch");
  if (!cone.generators.empty() && !cone.dual_generators.empty()) {
    for (std::size_t i = 0; i < cone.generators.size(); ++i)
      for (std::size_t j = 0; j < cone.dual_generators.size(); ++j)
        if (trace_inner(cone.generators[i], cone.dual_generators[j]) < -1e-9) {
          std::ostringstream os;
          os << "ConeRep: generator " << i << " violates dual generator " << j;
          throw ValidationError(os.str());
        }
  }
  if (cone.tag == ConeTag::kNone && !cone.generators.empty()) {
    bool trace_positive = true;
    for (const HermMatrix& g : cone.generators) trace_positive = trace_positive && g.trace() > 1e-12;
    if (!trace_positive) {
      ConicOptions opts;
      opts.tol = 1e-7;
      for (std::size_t i = 0; i < cone.generators.size(); ++i) {
        if (trace_inner(cone.generators[i], cone.generators[i]) == 0.0) continue;
        if (conic_feasibility(-cone.generators[i], cone.generators, false, opts).feasible) {
          std::ostringstream os;
          os << "ConeRep: cone is not pointed (-generator " << i << " lies in the cone)";
          throw ValidationError(os.str());
        }
      }
    }
  }
}

MembershipVerdict psd_membership(const HermMatrix& x, double tol) {
  require_tol(tol);
  const Spectrum s = eig_ascending(x);
  if (s.values(0) >= -tol) return verdict(Status::kIn, s.values(0), "psd-spectrum");
  return verdict(Status::kOut, s.values(0), "psd-spectrum", HermMatrix::projector(s.vectors.col(0)));
}

double gurvits_distance(const HermMatrix& x) {
  return (HermMatrix::identity(x.dim()) - x).matrix().norm();
}

bool gurvits_ball(const HermMatrix& x, double tol) { return gurvits_distance(x) <= 1.0 + tol; }

MembershipVerdict sep_membership(const HermMatrix& x, BipartiteDims dims, double tol, const SepOptions& opts,
                                 const std::vector<ProductTerm>* decomposition) {
  require_tol(tol);
  require_dims(x, dims, "sep_membership");
  const int d = x.dim();
  if (decomposition != nullptr) {
    HermMatrix acc = HermMatrix::zero(d);
    bool valid = true;
    for (const auto& [a, b] : *decomposition) {
      if (a.dim() != dims.a || b.dim() != dims.b || !is_psd(a, tol) || !is_psd(b, tol)) {
        valid = false;
        break;
      }
      acc += tensor(a, b);
    }
    if (valid) {
      const double residual = (acc - x).matrix().norm();
      if (residual <= tol) return verdict(Status::kIn, -residual, "product-decomposition");
    }
  }
  const double tr = x.trace();
  if (x.matrix().cwiseAbs().maxCoeff() <= tol) return verdict(Status::kIn, 0.0, "zero");
  if (tr <= 0.0) return verdict(Status::kOut, tr, "trace", HermMatrix::identity(d));

  bool diagonal = true;
  for (int i = 0; i < d && diagonal; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && std::abs(x(i, j)) > 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) dmin = std::min(dmin, x(i, i).real());
    if (dmin >= -tol) return verdict(Status::kIn, dmin, "diagonal-product-basis", x);
  }

  const double g = gurvits_distance(x * (d / tr));
  if (g <= 1.0 + tol) return verdict(Status::kIn, 1.0 - g, "gurvits-ball");

  const Spectrum s = eig_ascending(x);
  if (s.values(0) < -tol)
    return verdict(Status::kOut, s.values(0), "psd-necessary", HermMatrix::projector(s.vectors.col(0)));
  if (d == 1 || s.values(d - 2) <= tol) {
    const std::vector<double> sc = schmidt_coefficients(s.vectors.col(d - 1), dims);
    if (sc.size() < 2 || sc[1] <= 1e-9) return verdict(Status::kIn, s.values(d - 1), "pure-product");
  }

  const Spectrum sg = eig_ascending(partial_transpose(x, dims));
  if (sg.values(0) < -tol) {
    HermMatrix w = partial_transpose(HermMatrix::projector(sg.vectors.col(0)), dims);
    return verdict(Status::kOut, sg.values(0), "ppt", w);
  }
  if (opts.low_dim_exact && d <= 6) return verdict(Status::kIn, sg.values(0), "ppt-low-dim-exact");
  return verdict(Status::kUnknown, 1.0 - g, "undecided");
}

ProductMinimum product_minimum(const HermMatrix& x, BipartiteDims dims, int restarts, std::uint64_t seed) {
  require_dims(x, dims, "product_minimum");
  const int da = dims.a;
  const int db = dims.b;
  const CMatrix& m = x.matrix();
  auto contract_b = [&](const CVector& b) {
    CMatrix out(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        out(i, j) = (b.adjoint() * m.block(i * db, j * db, db, db) * b)(0, 0);
    return out;
  };
  auto contract_a = [&](const CVector& a) {
    CMatrix out = CMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) out += std::conj(a(i)) * a(j) * m.block(i * db, j * db, db, db);
    return out;
  };
  auto bottom = [](const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    return std::make_pair(es.eigenvalues()(0), CVector(es.eigenvectors().col(0)));
  };

  Rng rng(seed);
  ProductMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  best.restarts = std::max(restarts, 1);
  best.seed = seed;
  for (int r = 0; r < best.restarts; ++r) {
    CVector b;
    if (r == 0) {
      const Spectrum s = eig_ascending(x);
      CMatrix c(da, db);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) c(i, j) = s.vectors(i * db + j, 0);
      Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
      b = svd.matrixV().col(0).conjugate();
    } else {
      b = random_unit_vector(db, rng);
    }
    CVector a;
    double value = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
      auto [va, na] = bottom(contract_b(b));
      a = na;
      auto [vb, nb] = bottom(contract_a(a));
      b = nb;
      const bool done = value - vb <= 1e-15 * std::max(1.0, std::abs(vb));
      value = vb;
      if (done) break;
    }
    if (value < best.value) {
      best.value = value;
      best.a = a;
      best.b = b;
    }
  }
  return best;
}

Decomposition decomposable_certificate(const HermMatrix& x, BipartiteDims dims, int iters, double tol) {
  require_dims(x, dims, "decomposable_certificate");
  Decomposition out;
  HermMatrix q = HermMatrix::zero(x.dim());
  HermMatrix neg = negative_part(x);
  double res = neg.matrix().norm();
  int it = 0;
  while (it < iters && res > tol) {
    ++it;
    q = project_psd(q + 0.5 * partial_transpose(neg, dims));
    neg = negative_part(x - partial_transpose(q, dims));
    res = neg.matrix().norm();
  }
  out.iterations = it;
  out.residual = res;
  out.q = q;
  out.p = positive_part(x - partial_transpose(q, dims));
  out.found = res <= tol;
  return out;
}

MembershipVerdict sep_dual_membership(const HermMatrix& x, BipartiteDims dims, double tol,
                                      const SepOptions& opts) {
  require_tol(tol);
  require_dims(x, dims, "sep_dual_membership");
  const double lmin = min_eigenvalue(x);
  if (lmin >= -tol) return verdict(Status::kIn, lmin, "psd");
  const ProductMinimum pm = product_minimum(x, dims, std::max(opts.restarts, 64), opts.seed);
  if (pm.value < -tol)
    return verdict(Status::kOut, pm.value, "product-minimization", HermMatrix::projector(tensor(pm.a, pm.b)));
  if (opts.try_decomposition) {
    const Decomposition dc = decomposable_certificate(x, dims, opts.decomposition_iters, tol);
    if (dc.found) return verdict(Status::kIn, pm.value, "decomposable", dc.q);
  }
  return verdict(Status::kUnknown, pm.value, "undecided");
}

MembershipVerdict membership(const ConeRep& cone, const HermMatrix& x, double tol, const SepOptions& opts) {
  require_tol(tol);
  if (x.dim() != cone.dim()) throw DimensionError("membership: dimension mismatch");
  const bool has_v = !cone.generators.empty();
  const bool has_h = !cone.dual_generators.empty();

  if (cone.tag == ConeTag::kNone) {
    if (has_h) return dual_membership(cone.dual_generators, x, tol);
    ConicOptions co;
    co.tol = tol;
    const ConicResult r = conic_feasibility(x, cone.generators, false, co);
    if (r.feasible) return verdict(Status::kIn, -r.bound, "conic-feasibility");
    if (r.witness) return verdict(Status::kOut, -r.bound, "conic-feasibility", r.witness);
    return verdict(Status::kUnknown, -r.bound, "conic-feasibility");
  }

  MembershipVerdict base = oracle_membership(cone, x, tol, opts);
  if (!has_v || base.status == Status::kIn || cone.tag == ConeTag::kShrunkBloch) return base;

  ConicOptions co;
  co.tol = tol;
  if (cone.tag == ConeTag::kPsd) {
    const ConicResult r = conic_feasibility(x, cone.generators, true, co);
    if (r.feasible) return verdict(Status::kIn, -r.bound, "conic-feasibility+psd");
    if (r.witness) return verdict(Status::kOut, -r.bound, "conic-feasibility+psd", r.witness);
    return verdict(Status::kUnknown, -r.bound, "conic-feasibility+psd");
  }
  if (conic_feasibility(x, cone.generators, false, co).feasible)
    return verdict(Status::kIn, 0.0, "generator-hull");
  if (base.status == Status::kOut && base.witness && witness_nonneg_on(*base.witness, cone.generators, tol))
    return base;
  if (cone.tag == ConeTag::kSep) {
    const Spectrum sg = eig_ascending(partial_transpose(x, cone.dims));
    for (int k = 0; k < sg.values.size() && sg.values(k) < -tol; ++k) {
      HermMatrix w = partial_transpose(HermMatrix::projector(sg.vectors.col(k)), cone.dims);
      if (witness_nonneg_on(w, cone.generators, tol))
        return verdict(Status::kOut, sg.values(k), "ppt-augmented", w);
    }
  }
  return verdict(Status::kUnknown, base.margin, "augmented-undecided");
}

MembershipVerdict dual_cone_membership(const ConeRep& cone, const HermMatrix& x, double tol,
                                       const SepOptions& opts) {
  require_tol(tol);
  if (x.dim() != cone.dim()) throw DimensionError("dual_cone_membership: dimension mismatch");
  const bool has_v = !cone.generators.empty();
  const bool has_h = !cone.dual_generators.empty();
  if (cone.tag == ConeTag::kNone) {
    if (has_v) return dual_membership(cone.generators, x, tol);
    ConicOptions co;
    co.tol = tol;
    const ConicResult r = conic_feasibility(x, cone.dual_generators, false, co);
    if (r.feasible) return verdict(Status::kIn, -r.bound, "conic-feasibility");
    if (r.witness) return verdict(Status::kOut, -r.bound, "conic-feasibility", r.witness);
    return verdict(Status::kUnknown, -r.bound, "conic-feasibility");
  }
  if (has_v && cone.tag != ConeTag::kShrunkBloch) {
    const MembershipVerdict scan = dual_membership(cone.generators, x, tol);
    if (scan.status == Status::kOut) return scan;
  }
  (void)has_h;
  return oracle_dual_membership(cone, x, tol, opts);
}

GptModel::GptModel(ConeRep c, HermMatrix u) : cone(std::move(c)), unit(std::move(u)) {
  if (unit.dim() != cone.dim()) throw DimensionError("GptModel: unit dimension mismatch");
  for (const HermMatrix& g : cone.generators)
    if (trace_inner(unit, g) <= 0.0) throw ValidationError("GptModel: unit not positive on a generator");
  if (cone.tag == ConeTag::kNone) return;
  const MembershipVerdict v = dual_cone_membership(cone, unit, kDefaultTol);
  if (v.status != Status::kIn || v.margin <= 0.0)
    throw ValidationError("GptModel: unit is not interior to the dual cone");
}

Measurement validate_measurement(const GptModel& model, const std::vector<HermMatrix>& effects, double tol,
                                 bool strict, const SepOptions& opts) {
  if (effects.empty()) throw DomainError("validate_measurement: empty effect list");
  HermMatrix sum = HermMatrix::zero(model.cone.dim());
  for (const HermMatrix& e : effects) {
    if (e.dim() != model.cone.dim()) throw DimensionError("validate_measurement: effect dimension mismatch");
    sum += e;
  }
  Measurement m;
  m.sum_defect = (sum - model.unit).matrix().cwiseAbs().maxCoeff();
  if (m.sum_defect > 1e-10) {
    std::ostringstream os;
    os << "measurement: effects sum to u only up to " << m.sum_defect;
    throw InvalidMeasurement(os.str(), -1, Status::kUnknown);
  }
  for (std::size_t i = 0; i < effects.size(); ++i) {
    MembershipVerdict v = dual_cone_membership(model.cone, effects[i], tol, opts);
    if (v.status == Status::kOut || (strict && v.status == Status::kUnknown)) {
      std::ostringstream os;
      os << "measurement: effect " << i << " has verdict " << to_string(v.status) << " (tier " << v.tier
         << ", margin " << v.margin << ")";
      throw InvalidMeasurement(os.str(), static_cast<int>(i), v.status);
    }
    m.verdicts.push_back(std::move(v));
  }
  m.effects = effects;
  return m;
}

CapacityDemo capacity_demo(const GptModel& model) {
  const BipartiteDims dims = model.dims();
  const int d = dims.total();
  CapacityDemo out;
  for (int k = 0; k < d; ++k) {
    std::vector<double> e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    out.states.push_back(HermMatrix::diagonal(e));
  }
  out.measurement = validate_measurement(model, out.states);
  out.table.resize(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      out.table(k, l) = trace_inner(out.states[static_cast<std::size_t>(k)],
                                    out.measurement.effects[static_cast<std::size_t>(l)]);
  out.deviation = (out.table - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  return out;
}

Json verdict_to_json(const MembershipVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["tier"] = v.tier;
  j["margin"] = v.margin;
  if (v.witness) j["witness"] = matrix_to_json(*v.witness);
  return j;
}

Json cone_to_json(const ConeRep& cone) {
  Json j;
  j["tag"] = to_string(cone.tag);
  Json params = Json::object();
  if (cone.tag == ConeTag::kShrunkBloch) params["p"] = cone.param;
  if (cone.tag == ConeTag::kCsNeg) params["s"] = cone.param;
  if (cone.tag == ConeTag::kCr) {
    params["r"] = cone.param;
    params["families"] = cone.cr->families.size();
  }
  j["params"] = params;
  j["dims"] = {cone.dims.a, cone.dims.b};
  Json gens = Json::array();
  for (const HermMatrix& g : cone.generators) gens.push_back(matrix_to_json(g));
  Json duals = Json::array();
  for (const HermMatrix& h : cone.dual_generators) duals.push_back(matrix_to_json(h));
  j["generators"] = gens;
  j["dual_generators"] = duals;
  return j;
}

ConeRep cone_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("schema error at 'cone': expected an object");
  ConeTag tag = ConeTag::kNone;
  if (j.contains("tag")) {
    if (!j["tag"].is_string()) throw ValidationError("schema error at 'cone.tag': expected a string");
    tag = cone_tag_from_string(j["tag"].get<std::string>());
  }
  std::vector<HermMatrix> gens;
  std::vector<HermMatrix> duals;
  auto read_list = [&](const char* key, std::vector<HermMatrix>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) throw ValidationError(std::string("schema error at 'cone.") + key + "': expected an array");
    for (std::size_t i = 0; i < j[key].size(); ++i)
      out.push_back(matrix_from_json(j[key][i], std::string("cone.") + key + "[" + std::to_string(i) + "]"));
  };
  read_list("generators", gens);
  read_list("dual_generators", duals);
  BipartiteDims dims;
  if (j.contains("dims")) {
    const Json& dj = j["dims"];
    if (!dj.is_array() || dj.size() != 2 || !dj[0].is_number_integer() || !dj[1].is_number_integer())
      throw ValidationError("schema error at 'cone.dims': expected [dA, dB]");
    dims = BipartiteDims(dj[0].get<int>(), dj[1].get<int>());
  } else if (!gens.empty()) {
    dims = BipartiteDims(gens.front().dim(), 1);
  } else if (!duals.empty()) {
    dims = BipartiteDims(duals.front().dim(), 1);
  } else {
    throw ValidationError("schema error at 'cone.dims': missing");
  }
  if (tag == ConeTag::kCr) throw ValidationError("schema error at 'cone.tag': CR cones are built by build-pses");
  if (tag == ConeTag::kNone) {
    ConeRep c;
    c.dims = dims;
    c.generators = std::move(gens);
    c.dual_generators = std::move(duals);
    validate_cone(c);
    return c;
  }
  double param = 0.0;
  if (j.contains("params") && j["params"].is_object()) {
    const Json& p = j["params"];
    if (p.contains("p")) param = p["p"].get<double>();
    if (p.contains("s")) param = p["s"].get<double>();
  }
  ConeRep c = ConeRep::named(tag, dims, param);
  c.generators.insert(c.generators.end(), gens.begin(), gens.end());
  c.dual_generators = std::move(duals);
  validate_cone(c);
  return c;
}

}  // namespace gptcone
