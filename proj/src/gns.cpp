#include "gaugelab/gns.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace gaugelab {

namespace {

using ConstVecMap = Eigen::Map<const CVector>;

ConstVecMap vec(const CMatrix& m) { return {m.data(), m.size()}; }

CMatrix unvec(const CVector& v, Eigen::Index d) { return Eigen::Map<const CMatrix>(v.data(), d, d); }

// Appends v to the orthonormal columns of `basis` when its residual exceeds
// rel_tol * |v|. Two Gram-Schmidt passes.
bool extend_orthonormal(CMatrix& basis, Eigen::Index& used, CVector v, double rel_tol) {
  const double nrm = v.norm();
  if (!(nrm > 0.0)) return false;
  for (int pass = 0; pass < 2; ++pass)
    if (used > 0) v -= basis.leftCols(used) * (basis.leftCols(used).adjoint() * v);
  const double res = v.norm();
  if (res <= rel_tol * nrm) return false;
  basis.col(used++) = v / res;
  return true;
}

CMatrix psd_sqrt(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho + rho.adjoint()));
  const RVector s = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

AlgebraBasis::AlgebraBasis(FockSpace space, std::vector<FockOperator> elements, bool full, CMatrix span)
    : space_(std::move(space)), elements_(std::move(elements)), full_(full), span_(std::move(span)) {}

AlgebraBasis AlgebraBasis::full_matrix_algebra(const FockSpace& space) {
  const std::size_t d = space.dim();
  if (d > kMaxFullAlgebraDim)
    throw InvalidInput("full matrix algebra basis limited to Fock dimension <= 32; use generators");
  const auto di = static_cast<Eigen::Index>(d);
  std::vector<FockOperator> units;
  units.reserve(d * d);
  for (Eigen::Index t = 0; t < di; ++t)
    for (Eigen::Index s = 0; s < di; ++s) {
      CMatrix e = CMatrix::Zero(di, di);
      e(s, t) = 1.0;
      units.emplace_back(space, std::move(e));
    }
  return {space, std::move(units), true, CMatrix()};
}

AlgebraBasis AlgebraBasis::from_generators(const FockSpace& space, const std::vector<FockOperator>& generators,
                                           int max_word_length) {
  if (max_word_length < 1) throw InvalidInput("from_generators: word length must be >= 1");
  const auto d = static_cast<Eigen::Index>(space.dim());
  constexpr double independence_tol = 1e-10;

  std::vector<FockOperator> letters;
  for (const auto& g : generators) {
    require_same_space(space, g.space(), "from_generators");
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }

  CMatrix span(d * d, d * d);
  Eigen::Index used = 0;
  std::vector<FockOperator> kept;
  std::vector<FockOperator> frontier{FockOperator::identity(space)};
  extend_orthonormal(span, used, vec(frontier.front().matrix()), independence_tol);
  kept.push_back(frontier.front());

  for (int len = 1; len <= max_word_length && used < d * d; ++len) {
    std::vector<FockOperator> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        FockOperator word = w * l;
        if (extend_orthonormal(span, used, vec(word.matrix()), independence_tol)) {
          kept.push_back(word);
          next.push_back(std::move(word));
        }
      }
    frontier = std::move(next);
  }

  AlgebraBasis basis(space, std::move(kept), used == d * d, CMatrix(span.leftCols(used)));
  if (basis.full_) basis.span_.resize(0, 0);
  for (const auto& a : basis.elements_) {
    const double res = basis.span_residual(a.matrix().adjoint());
    if (res > 1e-10 * std::max(1.0, a.matrix().norm()))
      throw NumericalError("algebra basis is not closed under adjoints", res);
  }
  return basis;
}

double AlgebraBasis::span_residual(const CMatrix& a) const {
  if (full_) return 0.0;
  const CVector v = vec(a);
  return (v - span_ * (span_.adjoint() * v)).norm();
}

double AlgebraBasis::closure_residual() const {
  if (full_) return 0.0;
  double worst = 0.0;
  for (const auto& a : elements_)
    for (const auto& b : elements_) {
      const CMatrix p = a.matrix() * b.matrix();
      worst = std::max(worst, span_residual(p) / std::max(1.0, p.norm()));
    }
  return worst;
}

GnsTriple gns_construct(const State& omega, const AlgebraBasis& alg, const GnsOptions& options) {
  require_same_space(omega.space(), alg.space(), "gns_construct");
  if (!alg.is_full() && options.check_closure) {
    const double res = alg.closure_residual();
    if (res > 1e-10) throw NumericalError("gns_construct: basis is not closed under products", res);
  }
  const auto d = static_cast<Eigen::Index>(omega.space().dim());
  const auto k = static_cast<Eigen::Index>(alg.size());
  const CMatrix& rho = omega.density();

  // Columns vec(A_j) and vec(A_j rho); G_ij = omega(A_i* A_j) = <A_i, A_j rho>_HS.
  CMatrix a_rho(d * d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const CMatrix p = alg.elements()[static_cast<std::size_t>(j)].matrix() * rho;
    a_rho.col(j) = vec(p);
  }
  CMatrix basis_cols;
  CMatrix gram;
  if (alg.is_full()) {
    gram = a_rho;  // vec(A_i) is the i-th unit vector
  } else {
    basis_cols.resize(d * d, k);
    for (Eigen::Index j = 0; j < k; ++j) basis_cols.col(j) = vec(alg.elements()[static_cast<std::size_t>(j)].matrix());
    gram = basis_cols.adjoint() * a_rho;
  }
  gram = 0.5 * (gram + gram.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
  const RVector ascending = eig.eigenvalues();
  const double top = std::max(ascending.maxCoeff(), 0.0);
  const double cut = options.gram_rank_tol * top;
  if (ascending.minCoeff() < -cut - 1e-14)
    throw NumericalError("gns_construct: Gram matrix is not positive semidefinite", ascending.minCoeff());

  GnsTriple out;
  out.gram_rank_tol = options.gram_rank_tol;
  out.gram_spectrum = ascending.reverse();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = k - 1; i >= 0; --i)
    if (ascending(i) > cut) keep.push_back(i);
  const auto r = static_cast<Eigen::Index>(keep.size());
  out.dim = keep.size();

  CMatrix w(k, r);
  for (Eigen::Index a = 0; a < r; ++a)
    w.col(a) = eig.eigenvectors().col(keep[static_cast<std::size_t>(a)]) / std::sqrt(ascending(keep[static_cast<std::size_t>(a)]));
  out.representatives = alg.is_full() ? w : CMatrix(basis_cols * w);
  out.sqrt_density = psd_sqrt(rho);
  out.hs_vectors.resize(d * d, r);
  for (Eigen::Index a = 0; a < r; ++a)
    out.hs_vectors.col(a) = vec(CMatrix(unvec(out.representatives.col(a), d) * out.sqrt_density));
  out.cyclic = out.hs_vectors.adjoint() * vec(out.sqrt_density);

  if (static_cast<std::size_t>(k) * static_cast<std::size_t>(r * r) <= options.eager_rep_budget) {
    out.rep.reserve(alg.size());
    for (const auto& a : alg.elements()) out.rep.push_back(gns_represent(out, a));
  }
  return out;
}

CMatrix gns_represent(const GnsTriple& gns, const FockOperator& a) {
  const Eigen::Index d = gns.sqrt_density.rows();
  if (a.matrix().rows() != d) throw InvalidInput("gns_represent: operator dimension mismatch");
  const auto r = static_cast<Eigen::Index>(gns.dim);
  CMatrix moved(d * d, r);
  for (Eigen::Index c = 0; c < r; ++c) moved.col(c) = vec(CMatrix(a.matrix() * unvec(gns.hs_vectors.col(c), d)));
  return gns.hs_vectors.adjoint() * moved;
}

CVector gns_vector(const GnsTriple& gns, const FockOperator& a) {
  const Eigen::Index d = gns.sqrt_density.rows();
  if (a.matrix().rows() != d) throw InvalidInput("gns_vector: operator dimension mismatch");
  return gns.hs_vectors.adjoint() * vec(CMatrix(a.matrix() * gns.sqrt_density));
}

CovariantUnitary covariant_unitary(const GnsTriple& gns, const State& omega, const GaugeField& g,
                                   const AlgebraBasis& alg) {
  require_same_space(omega.space(), alg.space(), "covariant_unitary");
  const auto& space = omega.space();
  const CMatrix v = gauge_unitary(space, g).matrix();
  const CMatrix diff = v.adjoint() * omega.density() * v - omega.density();

  CovariantUnitary out;
  if (alg.is_full()) {
    out.invariance_defect = max_abs(diff);
  } else {
    for (const auto& a : alg.elements())
      out.invariance_defect =
          std::max(out.invariance_defect, std::abs(diff.transpose().cwiseProduct(a.matrix()).sum()));
  }
  if (out.invariance_defect > kCovarianceInvarianceTol)
    throw NumericalError("covariant_unitary: state is not invariant under gamma_g", out.invariance_defect);

  const auto d = static_cast<Eigen::Index>(space.dim());
  const auto r = static_cast<Eigen::Index>(gns.dim);
  CMatrix moved(d * d, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    const CMatrix e = unvec(gns.representatives.col(c), d);
    moved.col(c) = vec(CMatrix(v * e * v.adjoint() * gns.sqrt_density));
  }
  out.u = gns.hs_vectors.adjoint() * moved;

  out.unitarity_residual = spectral_norm(out.u.adjoint() * out.u - CMatrix::Identity(r, r));
  out.vacuum_residual = (out.u * gns.cyclic - gns.cyclic).norm();
  for (std::size_t i = 0; i < alg.size(); ++i) {
    const auto& a = alg.elements()[i];
    const CMatrix pi_a = gns.rep.empty() ? gns_represent(gns, a) : gns.rep[i];
    const CMatrix pi_ga = gns_represent(gns, FockOperator(space, v * a.matrix() * v.adjoint()));
    out.covariance_residual =
        std::max(out.covariance_residual, spectral_norm(out.u * pi_a * out.u.adjoint() - pi_ga));
  }
  return out;
}

std::vector<ContinuityRow> strong_continuity_probe(const GnsTriple& gns, const State& omega,
                                                   const std::vector<double>& times,
                                                   const std::vector<GaugeField>& path,
                                                   const FockOperator& a, const AlgebraBasis& alg) {
  if (times.size() != path.size()) throw InvalidInput("strong_continuity_probe: times and path differ in length");
  const CVector xi = gns_vector(gns, a);
  std::vector<ContinuityRow> rows;
  rows.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const CovariantUnitary cu = covariant_unitary(gns, omega, path[i], alg);
    const double displacement = (cu.u * xi - xi).norm();
    const double bound = op_norm(gauge_automorphism(path[i], a) - a);
    rows.push_back({times[i], displacement, bound});
  }
  return rows;
}

GaugeField exponential_path(const LatticeSpec& spec, const std::vector<CMatrix>& generators, double t) {
  if (generators.size() != spec.sites()) throw InvalidInput("exponential_path: one generator per site required");
  std::vector<CMatrix> values;
  values.reserve(generators.size());
  for (const auto& h : generators) {
    if (max_abs(h - h.adjoint()) > kValidationTol) throw InvalidInput("exponential_path: generators must be Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    CVector phases(eig.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, t * eig.eigenvalues()(i));
    values.push_back(eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint());
  }
  return {spec, GroupKind::unitary(), std::move(values)};
}

}  // namespace gaugelab
