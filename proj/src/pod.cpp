#include "podrbf/pod.hpp"

#include <Eigen/SVD>

#include "podrbf/errors.hpp"

namespace podrbf {

SvdResult compute_svd(const Matrix& Y) {
  if (Y.size() == 0) throw NumericalFailure("cannot decompose an empty matrix");
  if (!Y.allFinite()) throw NumericalFailure("snapshot matrix has non-finite entries");
  Eigen::BDCSVD<Matrix> svd(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("SVD did not converge");
  SvdResult r{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  if (!r.U.allFinite() || !r.sigma.allFinite() || !r.V.allFinite()) {
    throw NumericalFailure("SVD produced non-finite factors");
  }
  return r;
}

Vector cumulative_energy(const Vector& sigma) {
  const Vector sq = sigma.array().square().matrix();
  const double total = sq.sum();
  Vector energy(sigma.size());
  double running = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    running += sq[i];
    energy[i] = total > 0.0 ? running / total : 0.0;
  }
  if (total > 0.0 && energy.size() > 0) energy[energy.size() - 1] = 1.0;
  return energy;
}

std::size_t select_rank(const Vector& sigma, double eps_pod) {
  if (!(eps_pod > 0.0 && eps_pod < 1.0)) throw InvalidArgument("eps_pod must lie in (0, 1)");
  if (sigma.size() == 0) throw InvalidArgument("empty singular value sequence");
  if ((sigma.array() == 0.0).all()) throw AllZeroSpectrum("every singular value is zero");
  const Vector energy = cumulative_energy(sigma);
  const double threshold = 1.0 - eps_pod * eps_pod;
  for (Eigen::Index k = 0; k < energy.size(); ++k) {
    if (energy[k] >= threshold) return static_cast<std::size_t>(k + 1);
  }
  return static_cast<std::size_t>(sigma.size());
}

Matrix project_amplitudes(const Matrix& phi, const Matrix& Y) {
  if (phi.rows() != Y.rows()) {
    throw DimensionMismatch("basis has " + std::to_string(phi.rows()) + " rows, snapshots have " +
                            std::to_string(Y.rows()));
  }
  return phi.transpose() * Y;
}

PodBasis build_pod(const Matrix& Y, double eps_pod) {
  const SvdResult svd = compute_svd(Y);
  PodBasis basis;
  basis.sigma = svd.sigma;
  basis.energy = cumulative_energy(svd.sigma);
  basis.k = select_rank(svd.sigma, eps_pod);
  basis.phi = svd.U.leftCols(static_cast<Eigen::Index>(basis.k));
  return basis;
}

}  // namespace podrbf
