#include "podrbf/surrogate.hpp"

#include <cmath>
#include <limits>

#include "podrbf/diagnostics.hpp"
#include "podrbf/errors.hpp"

namespace podrbf {

Surrogate train(const SnapshotMatrix& snapshots, double eps_pod, KernelKind kind) {
  if (snapshots.Y.cols() != snapshots.samples.points.rows()) {
    throw DimensionMismatch("snapshot columns do not match the sample count");
  }
  const SvdResult svd = compute_svd(snapshots.Y);
  Surrogate s;
  s.k = select_rank(svd.sigma, eps_pod);
  s.phi = svd.U.leftCols(static_cast<Eigen::Index>(s.k));
  s.sigma = svd.sigma;
  s.eps_pod = eps_pod;
  s.grid = snapshots.grid;
  s.stacking = snapshots.stacking;
  s.training_box = snapshots.samples.box;
  const Matrix A = project_amplitudes(s.phi, snapshots.Y);
  s.coeffs = fit_coefficients(snapshots.samples.points, kind, A);
  return s;
}

Vector predict(const Surrogate& s, const Vector& b) {
  if (b.size() != s.coeffs.centers.cols()) {
    throw DimensionMismatch("query has dimension " + std::to_string(b.size()) + ", surrogate expects " +
                            std::to_string(s.coeffs.centers.cols()));
  }
  if (s.training_box.dim() == static_cast<std::size_t>(b.size()) &&
      !s.training_box.contains(b, 1e-12 * (1.0 + s.training_box.diameter()))) {
    warn(WarningKind::Extrapolation, "surrogate evaluated outside its training box");
  }
  return s.phi * rbf_evaluate(s.coeffs, b);
}

Matrix predict_states(const Surrogate& s, const Vector& b) {
  return unstack(predict(s, b), s.stacking);
}

ErrorReport error_report(const Matrix& Y, const Matrix& Yhat) {
  if (Y.rows() != Yhat.rows() || Y.cols() != Yhat.cols()) {
    throw DimensionMismatch("reference is " + std::to_string(Y.rows()) + " x " + std::to_string(Y.cols()) +
                            ", prediction is " + std::to_string(Yhat.rows()) + " x " +
                            std::to_string(Yhat.cols()));
  }
  if (Y.cols() < 1) throw InvalidArgument("error report needs at least one test point");

  ErrorReport rep;
  rep.n_g = static_cast<std::size_t>(Y.cols());
  const Matrix abs_err = (Y - Yhat).cwiseAbs();
  rep.mae = abs_err.mean();
  rep.mxae = abs_err.maxCoeff();

  const Vector ybar = Y.rowwise().mean();
  const double spread = (Y.colwise() - ybar).cwiseAbs().sum();
  const double total_err = abs_err.sum();
  if (spread > 0.0) {
    rep.r2 = 1.0 - total_err / spread;
  } else {
    rep.r2 = total_err == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
  }

  const double guard = 1e-8 * Y.cwiseAbs().maxCoeff();
  rep.rmae = 0.0;
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
      const double denom = std::max(std::abs(Y(i, j)), guard);
      const double e = abs_err(i, j);
      const double rel = denom > 0.0 ? e / denom : (e == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      if (rel > rep.rmae) {
        rep.rmae = rel;
        rep.worst_point = static_cast<std::size_t>(j);
        rep.worst_entry = static_cast<std::size_t>(i);
      }
    }
  }
  return rep;
}

}  // namespace podrbf
