#include "core/fock.hpp"

#include <cmath>
#include <vector>

namespace phasestar::fock {

namespace {

bool nearly_hermitian(const Matrix& h) {
  const double scale = h.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

Matrix pade_approximant(const Matrix& a, const std::vector<double>& b) {
  const Eigen::Index n = a.rows();
  const Matrix a2 = a * a;
  Matrix u = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  if (b.size() == 14) {
    // degree 13: split into even powers of a2 up to a2^3 times blocks
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
             b[5] * a4 + b[3] * a2 + b[1] * Matrix::Identity(n, n));
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
        b[2] * a2 + b[0] * Matrix::Identity(n, n);
  } else {
    Matrix pow = Matrix::Identity(n, n);
    u = b[1] * Matrix::Identity(n, n);
    v = b[0] * Matrix::Identity(n, n);
    for (std::size_t k = 2; k < b.size(); k += 2) {
      pow = pow * a2;
      v += b[k] * pow;
      if (k + 1 < b.size()) u += b[k + 1] * pow;
    }
    u = a * u;
  }
  // (v - u) x = (v + u)
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix annihilation(int dim) {
  if (dim < 2) raise(ErrorCode::DimensionTooSmall, "annihilation: dim < 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix from_symbol(const NormalSymbol& b, int dim) {
  if (dim < 2) raise(ErrorCode::DimensionTooSmall, "from_symbol: dim < 2");
  if (dim < int(b.degree()) + 2)
    raise(ErrorCode::DimensionTooSmall,
          "from_symbol: dim must be at least degree + 2");

  const Matrix a = annihilation(dim);
  const Matrix ad = creation(dim);
  const unsigned max_m = b.degree_alpha_star();
  const unsigned max_n = b.degree_alpha();

  std::vector<Matrix> apow(max_n + 1), adpow(max_m + 1);
  apow[0] = Matrix::Identity(dim, dim);
  for (unsigned k = 1; k <= max_n; ++k) apow[k] = apow[k - 1] * a;
  adpow[0] = Matrix::Identity(dim, dim);
  for (unsigned k = 1; k <= max_m; ++k) adpow[k] = adpow[k - 1] * ad;

  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [e, c] : b.terms()) out += c * (adpow[e.m] * apow[e.n]);
  return out;
}

double coherent_tail(cxd alpha, int dim) {
  const double r = std::norm(alpha);
  if (r == 0.0) return 0.0;
  // First tail term in log space, then the ratio recurrence.
  double lt = dim * std::log(r) - std::lgamma(double(dim) + 1.0) - r;
  if (lt < -745.0) return 0.0;
  double term = std::exp(lt);
  double sum = 0.0;
  int n = dim;
  while (true) {
    sum += term;
    ++n;
    term *= r / double(n);
    if (double(n) > r && term < 1e-18 * (sum + 1e-300)) break;
    if (n > dim + 100000) break;
  }
  return sum;
}

int default_dim(double max_abs_alpha) {
  const double d = 8.0 * (1.0 + max_abs_alpha * max_abs_alpha);
  return std::max(32, int(std::ceil(d)));
}

Vector coherent_amplitudes_unchecked(cxd alpha, int dim) {
  Vector v(dim);
  cxd cur = std::exp(cxd(-0.5 * std::norm(alpha), 0.0));
  for (int n = 0; n < dim; ++n) {
    v(n) = cur;
    cur *= alpha / std::sqrt(double(n + 1));
  }
  return v;
}

Vector coherent_vector(cxd alpha, int dim) {
  if (dim < 1) raise(ErrorCode::DimensionTooSmall, "coherent_vector: dim < 1");
  if (coherent_tail(alpha, dim) >= kAdmissibleTail)
    raise(ErrorCode::TruncationTooCoarse,
          "coherent_vector: basis too small for |alpha|");
  return coherent_amplitudes_unchecked(alpha, dim);
}

cxd coherent_overlap(cxd beta, cxd alpha) {
  return std::exp(cxd(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta), 0.0) +
                  std::conj(beta) * alpha);
}

Matrix displacement(cxd alpha, int dim) {
  if (coherent_tail(alpha, dim) >= kAdmissibleTail)
    raise(ErrorCode::TruncationTooCoarse,
          "displacement: basis too small for |alpha|");
  if (alpha == cxd(0.0, 0.0)) return Matrix::Identity(dim, dim);
  // The generator alpha a+ - conj(alpha) a is anti-Hermitian, so
  // exp(G) = e^{-i (iG)} with iG Hermitian.
  const Matrix g =
      alpha * creation(dim) - std::conj(alpha) * annihilation(dim);
  return evolve(cxd(0.0, 1.0) * g, 1.0);
}

Matrix expm(const Matrix& a) {
  // Backward-error-controlled scaling-and-squaring (Pade 3/5/7/9/13).
  static const std::vector<double> b3 = {120, 60, 12, 1};
  static const std::vector<double> b5 = {30240, 15120, 3360, 420, 30, 1};
  static const std::vector<double> b7 = {17297280, 8648640, 1995840, 277200,
                                         25200,    1512,    56,      1};
  static const std::vector<double> b9 = {
      17643225600., 8821612800., 2075673600., 302702400., 30270240.,
      2162160.,     110880.,     3960.,       90.,        1.};
  static const std::vector<double> b13 = {
      64764752532480000., 32382376266240000., 7771770303897600.,
      1187353796428800.,  129060195264000.,   10559470521600.,
      670442572800.,      33522128640.,       1323241920.,
      40840800.,          960960.,            16380.,
      182.,               1.};
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068;
  static const double theta13 = 5.371920351148152;

  const double nrm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (nrm <= theta3) return pade_approximant(a, b3);
  if (nrm <= theta5) return pade_approximant(a, b5);
  if (nrm <= theta7) return pade_approximant(a, b7);
  if (nrm <= theta9) return pade_approximant(a, b9);

  int s = 0;
  double scaled = nrm;
  while (scaled > theta13) {
    scaled *= 0.5;
    ++s;
  }
  Matrix e = pade_approximant(a / std::pow(2.0, double(s)), b13);
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

Matrix evolve(const Matrix& h, double t) {
  if (h.rows() != h.cols())
    raise(ErrorCode::InvalidArgument, "evolve: matrix not square");
  if (t == 0.0) return Matrix::Identity(h.rows(), h.cols());
  if (nearly_hermitian(h)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
      raise(ErrorCode::Internal, "evolve: eigensolver failed");
    Vector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
      phases(k) = std::exp(cxd(0.0, -t * es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
  }
  return expm(cxd(0.0, -t) * h);
}

cxd matrix_element(cxd alpha_f, const Matrix& op, cxd alpha_i) {
  const int dim = int(op.rows());
  const Vector vf = coherent_vector(alpha_f, dim);
  const Vector vi = coherent_vector(alpha_i, dim);
  return vf.dot(op * vi);
}

double completeness_residual(int dim, const ComplexPlaneRule& rule) {
  if (dim < 2)
    raise(ErrorCode::DimensionTooSmall, "completeness_residual: dim < 2");
  Matrix s = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Vector v = coherent_amplitudes_unchecked(rule.nodes[k], dim);
    s.noalias() += (rule.plain_weight(k) / M_PI) * (v * v.adjoint());
  }
  const int blk = dim / 2;
  return (s - Matrix::Identity(dim, dim))
      .topLeftCorner(blk, blk)
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace phasestar::fock
