#include "gaugelab/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gaugelab {

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0 || a.isZero(0.0)) return 0.0;
  // Eigen 3.4's BDCSVD misreports the top singular value on strongly
  // degenerate spectra (annihilators on Fock space), so go through the
  // Hermitian eigenproblem of the smaller Gram matrix instead.
  const CMatrix gram = a.rows() < a.cols() ? CMatrix(a * a.adjoint()) : CMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double trace_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

GroupKind GroupKind::cyclic(int q) {
  if (q < 1) throw InvalidInput("cyclic group order must be >= 1");
  return {GroupFamily::Cyclic, q};
}

std::string GroupKind::name() const {
  switch (family) {
    case GroupFamily::Unitary: return "U";
    case GroupFamily::SpecialUnitary: return "SU";
    case GroupFamily::Torus: return "torus";
    case GroupFamily::Cyclic: return "Z" + std::to_string(q);
  }
  return "?";
}

GroupKind GroupKind::parse(const std::string& text) {
  if (text == "U") return unitary();
  if (text == "SU") return special_unitary();
  if (text == "torus") return torus();
  if (text.size() > 1 && text[0] == 'Z') {
    try {
      std::size_t used = 0;
      const int q = std::stoi(text.substr(1), &used);
      if (used + 1 == text.size()) return cyclic(q);
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidInput("unknown group kind '" + text + "' (expected U, SU, torus or Z<q>)");
}

MatrixField::MatrixField(LatticeSpec s, std::vector<CMatrix> v)
    : spec(std::move(s)), values(std::move(v)) {
  if (values.size() != spec.sites()) throw InvalidInput("matrix field: wrong number of sites");
  for (const auto& a : values)
    if (a.rows() != spec.colors() || a.cols() != spec.colors())
      throw InvalidInput("matrix field: block size must be colors x colors");
}

MatrixField MatrixField::identity(const LatticeSpec& spec) {
  return {spec, std::vector<CMatrix>(spec.sites(), CMatrix::Identity(spec.colors(), spec.colors()))};
}

MatrixField MatrixField::operator-(const MatrixField& other) const {
  require_same_spec(spec, other.spec, "matrix field difference");
  std::vector<CMatrix> out(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) out[x] = values[x] - other.values[x];
  return {spec, std::move(out)};
}

MatrixField MatrixField::operator*(const MatrixField& other) const {
  require_same_spec(spec, other.spec, "matrix field product");
  std::vector<CMatrix> out(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) out[x] = values[x] * other.values[x];
  return {spec, std::move(out)};
}

MatrixField MatrixField::scaled(Complex s) const {
  std::vector<CMatrix> out(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) out[x] = s * values[x];
  return {spec, std::move(out)};
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return spectral_norm(defect) <= tol;
}

void require_unitary(const CMatrix& u, double tol, const char* where) {
  if (u.rows() != u.cols()) throw InvalidInput(std::string(where) + ": matrix is not square");
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  const double d = spectral_norm(defect);
  if (d > tol) throw NumericalError(std::string(where) + ": matrix is not unitary", d);
}

namespace {

void validate_site(const CMatrix& u, GroupKind kind) {
  require_unitary(u, kValidationTol, "gauge field");
  const auto n = u.rows();
  switch (kind.family) {
    case GroupFamily::Unitary:
      break;
    case GroupFamily::SpecialUnitary: {
      const double d = std::abs(u.determinant() - Complex(1.0));
      if (d > kValidationTol) throw NumericalError("gauge field: SU(n) value with det != 1", d);
      break;
    }
    case GroupFamily::Torus: {
      CMatrix off = u;
      off.diagonal().setZero();
      const double d = max_abs(off);
      if (d > kValidationTol) throw NumericalError("gauge field: torus value is not diagonal", d);
      break;
    }
    case GroupFamily::Cyclic: {
      const Complex z = u(0, 0);
      const double scalar_dev = max_abs(u - z * CMatrix::Identity(n, n));
      if (scalar_dev > kValidationTol)
        throw NumericalError("gauge field: cyclic value is not scalar", scalar_dev);
      const double root_dev = std::abs(std::pow(z, kind.q) - Complex(1.0));
      if (root_dev > kValidationTol)
        throw NumericalError("gauge field: cyclic value is not a q-th root of unity", root_dev);
      break;
    }
  }
}

}  // namespace

GaugeField::GaugeField(LatticeSpec spec, GroupKind kind, std::vector<CMatrix> values)
    : field_(std::move(spec), std::move(values)), kind_(kind) {
  if (kind_.family == GroupFamily::Cyclic && kind_.q < 1)
    throw InvalidInput("cyclic group order must be >= 1");
  for (const auto& u : field_.values) validate_site(u, kind_);
}

GaugeField GaugeField::identity(const LatticeSpec& spec, GroupKind kind) {
  return constant(spec, kind, CMatrix::Identity(spec.colors(), spec.colors()));
}

GaugeField GaugeField::constant(const LatticeSpec& spec, GroupKind kind, const CMatrix& u) {
  return {spec, kind, std::vector<CMatrix>(spec.sites(), u)};
}

GaugeField gauge_mul(const GaugeField& g, const GaugeField& h) {
  require_same_spec(g.spec(), h.spec(), "gauge_mul");
  if (!(g.kind() == h.kind())) throw InvalidInput("gauge_mul: group kind mismatch");
  return {g.spec(), g.kind(), (g.field() * h.field()).values};
}

GaugeField gauge_inv(const GaugeField& g) {
  std::vector<CMatrix> out;
  out.reserve(g.values().size());
  for (const auto& u : g.values()) out.push_back(u.adjoint());
  return {g.spec(), g.kind(), std::move(out)};
}

double sup_norm(const MatrixField& f) {
  double best = 0.0;
  for (const auto& a : f.values) best = std::max(best, spectral_norm(a));
  return best;
}

double sup_norm_dist(const GaugeField& g, const GaugeField& h) {
  require_same_spec(g.spec(), h.spec(), "sup_norm_dist");
  return sup_norm(g - h);
}

GaugeField translate(const GaugeField& g, const std::vector<int>& shift) {
  const auto& spec = g.spec();
  if (shift.size() != spec.dims().size()) throw InvalidInput("translate: shift arity mismatch");
  if (!spec.uniform_weights()) throw InvalidInput("translate: requires uniform weights");
  std::vector<CMatrix> out(spec.sites());
  for (std::size_t x = 0; x < spec.sites(); ++x) out[x] = g.at(spec.shifted(x, shift));
  return {spec, g.kind(), std::move(out)};
}

bool center_kernel_check(const GaugeField& g) {
  if (g.kind().family != GroupFamily::SpecialUnitary)
    throw InvalidInput("center_kernel_check: requires an SU(n) gauge field");
  const int n = g.spec().colors();
  for (const auto& u : g.values()) {
    const Complex z = u(0, 0);
    if (max_abs(u - z * CMatrix::Identity(n, n)) > kValidationTol) return false;
    if (std::abs(std::pow(z, n) - Complex(1.0)) > kValidationTol) return false;
  }
  return true;
}

}  // namespace gaugelab
