#include <doctest.h>

#include "podrbf/bench.hpp"
#include "podrbf/errors.hpp"
#include "podrbf/pod.hpp"
#include "podrbf/random.hpp"
#include "podrbf/snapshot.hpp"

using namespace podrbf;

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform() - 0.5;
  return m;
}

}  // namespace

TEST_CASE("svd examples") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 1;
  const auto s = compute_svd(d);
  CHECK(s.sigma[0] == doctest::Approx(2.0));
  CHECK(s.sigma[1] == doctest::Approx(1.0));

  Vector a(3), b(4);
  a << 1, 2, 2;
  b << 1, 0, 0, 0;
  const auto r1 = compute_svd(a * b.transpose());
  CHECK(r1.sigma[0] == doctest::Approx(3.0));
  CHECK(r1.sigma.tail(r1.sigma.size() - 1).cwiseAbs().maxCoeff() < 1e-14);

  const Matrix Y = random_matrix(200, 40, 1);
  const auto full = compute_svd(Y);
  const Matrix rebuilt = full.U * full.sigma.asDiagonal() * full.V.transpose();
  CHECK((rebuilt - Y).norm() <= 1e-8 * Y.norm());
  for (Eigen::Index i = 1; i < full.sigma.size(); ++i) CHECK(full.sigma[i] <= full.sigma[i - 1]);
}

TEST_CASE("svd rejects bad input") {
  CHECK_THROWS_AS(compute_svd(Matrix(0, 3)), NumericalFailure);
  Matrix bad = Matrix::Ones(3, 3);
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(compute_svd(bad), NumericalFailure);
}

TEST_CASE("rank selection") {
  Vector s(2);
  s << 2, 1;
  CHECK(cumulative_energy(s)[0] == doctest::Approx(0.8));
  CHECK(select_rank(s, 0.5) == 1);
  Vector r1(3);
  r1 << 1, 0, 0;
  for (double eps : {0.001, 0.1, 0.9}) CHECK(select_rank(r1, eps) == 1);
  CHECK_THROWS_AS(select_rank(Vector::Zero(3), 0.1), AllZeroSpectrum);
  CHECK_THROWS_AS(select_rank(s, 0.0), InvalidArgument);
  CHECK_THROWS_AS(select_rank(s, 1.0), InvalidArgument);
}

TEST_CASE("projection examples") {
  const Matrix Y = random_matrix(5, 4, 2);
  const Matrix e1 = Matrix::Identity(5, 1);
  CHECK(project_amplitudes(e1, Y) == Y.topRows(1));

  const auto svd = compute_svd(Y);
  const Matrix A = project_amplitudes(svd.U, Y);
  CHECK((svd.U * A - Y).norm() <= 1e-8 * Y.norm());
}

TEST_CASE("POD basis on science-policy snapshots") {
  const ProblemDef def = science_policy();
  const auto snap = build_snapshots(def, sample(SamplingStrategy::SLHS, 40, def.box, 0), make_grid(0, 15, 100));
  const auto pod = build_pod(snap.Y, 0.01);
  CHECK(pod.k >= 1);
  CHECK(pod.energy[static_cast<Eigen::Index>(pod.k) - 1] >= 1 - 1e-4);

  // Orthonormal basis.
  const Matrix gram = pod.phi.transpose() * pod.phi;
  CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10);

  // Truncation error equals the discarded spectral energy.
  const auto svd = compute_svd(snap.Y);
  const Matrix phi4 = svd.U.leftCols(4);
  const double err = (snap.Y - phi4 * project_amplitudes(phi4, snap.Y)).squaredNorm();
  const double tail = svd.sigma.tail(svd.sigma.size() - 4).squaredNorm();
  CHECK(std::abs(err - tail) <= 1e-6 * tail);
}
