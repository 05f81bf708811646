#include "podrbf/rbf.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "podrbf/diagnostics.hpp"
#include "podrbf/errors.hpp"

namespace podrbf {
namespace {

constexpr double kDuplicateFactor = 1e-12;
constexpr double kResidualTolerance = 1e-8;
constexpr double kIllConditioned = 1e12;
constexpr int kRefinementSweeps = 3;

}  // namespace

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::LinearSpline ? "linear" : "cubic";
}

KernelKind parse_kernel_kind(std::string_view text) {
  if (text == "linear" || text == "linear-spline") return KernelKind::LinearSpline;
  if (text == "cubic" || text == "cubic-spline") return KernelKind::CubicSpline;
  throw InvalidArgument("unknown kernel '" + std::string(text) + "'");
}

double kernel_eval(KernelKind kind, double r) {
  if (r < 0.0) throw NegativeRadius("radius " + std::to_string(r) + " is negative");
  return kind == KernelKind::LinearSpline ? r : r * r * r;
}

Matrix gram_matrix(const Matrix& centers, KernelKind kind) {
  const auto n = centers.rows();
  double diameter = 0.0;
  if (n > 0) diameter = (centers.colwise().maxCoeff() - centers.colwise().minCoeff()).norm();
  const double min_distance = kDuplicateFactor * diameter;

  Matrix G = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = (centers.row(i) - centers.row(j)).norm();
      if (r <= min_distance) {
        throw DuplicateCenters("centers " + std::to_string(i) + " and " + std::to_string(j) +
                               " coincide (distance " + std::to_string(r) + ")");
      }
      G(i, j) = G(j, i) = kernel_eval(kind, r);
    }
  }
  return G;
}

Vector g_vector(const Vector& b, const Matrix& centers, KernelKind kind) {
  if (b.size() != centers.cols()) {
    throw DimensionMismatch("point has dimension " + std::to_string(b.size()) + ", centers have " +
                            std::to_string(centers.cols()));
  }
  Vector g(centers.rows());
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    g[j] = kernel_eval(kind, (centers.row(j).transpose() - b).norm());
  }
  return g;
}

Matrix solve_coefficients(const Matrix& G, const Matrix& A, double* condition_estimate) {
  if (G.rows() != G.cols()) throw DimensionMismatch("Gram matrix is not square");
  if (A.cols() != G.rows()) {
    throw DimensionMismatch("amplitudes have " + std::to_string(A.cols()) + " columns, Gram matrix is " +
                            std::to_string(G.rows()) + " x " + std::to_string(G.cols()));
  }
  if (A.rows() == 0) return Matrix(0, G.rows());

  Eigen::FullPivLU<Matrix> lu(G);
  if (lu.rank() < G.rows()) {
    throw SingularGram("Gram matrix has rank " + std::to_string(lu.rank()) + " < " + std::to_string(G.rows()));
  }
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (condition_estimate) *condition_estimate = cond;
  if (cond > kIllConditioned) {
    std::ostringstream os;
    os << "Gram matrix condition estimate " << cond;
    warn(WarningKind::IllConditioned, os.str());
  }

  const Matrix rhs = A.transpose();  // n_s x k
  Matrix X = lu.solve(rhs);
  auto worst_ratio = [&](const Matrix& residual) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
      const double a = rhs.col(c).norm();
      const double r = residual.col(c).norm();
      const double ratio = a > 0.0 ? r / a : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      worst = std::max(worst, ratio);
    }
    return worst;
  };
  Matrix residual = rhs - G * X;
  double ratio = worst_ratio(residual);
  for (int sweep = 0; sweep < kRefinementSweeps && ratio > kResidualTolerance; ++sweep) {
    X += lu.solve(residual);
    residual = rhs - G * X;
    ratio = worst_ratio(residual);
  }
  if (!(ratio <= kResidualTolerance)) {
    std::ostringstream os;
    os << "RBF solve residual ratio " << ratio << " exceeds " << kResidualTolerance;
    throw NumericalFailure(os.str());
  }
  return X.transpose();
}

RbfCoefficients fit_coefficients(const Matrix& centers, KernelKind kind, const Matrix& A) {
  RbfCoefficients c;
  c.centers = centers;
  c.kind = kind;
  c.D = solve_coefficients(gram_matrix(centers, kind), A, &c.condition_estimate);
  return c;
}

Vector rbf_evaluate(const RbfCoefficients& coeffs, const Vector& b) {
  return coeffs.D * g_vector(b, coeffs.centers, coeffs.kind);
}

}  // namespace podrbf
