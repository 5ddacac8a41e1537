#include "curvebump/mixture.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <string>

#include "curvebump/curvature.hpp"
#include "curvebump/error.hpp"
#include "curvebump/random.hpp"

namespace curvebump {

GaussianMixture::GaussianMixture(std::vector<double> weights, std::vector<Vector> means,
                                 std::vector<Matrix> covariances)
    : weights_(std::move(weights)), means_(std::move(means)), covariances_(std::move(covariances)) {
  if (weights_.empty() || weights_.size() != means_.size() ||
      weights_.size() != covariances_.size())
    throw Error(ErrorKind::model, "mixture needs matching, nonempty weights, means and covariances");
  dimension_ = static_cast<int>(means_.front().size());
  if (dimension_ < 1 || dimension_ > kMaxDimension)
    throw Error(ErrorKind::model, "mixture dimension must be 1, 2 or 3");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::model, "mixture weights must be nonnegative and finite");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorKind::model, "mixture weights must sum to 1");

  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const Matrix& cov = covariances_[k];
    if (means_[k].size() != dimension_ || cov.rows() != dimension_ || cov.cols() != dimension_)
      throw Error(ErrorKind::model, "component " + std::to_string(k) + " has the wrong dimension");
    OrderedEigenvalues eig;
    try {
      eig = ordered_eigenvalues(cov);
    } catch (const Error&) {
      throw Error(ErrorKind::model, "covariance " + std::to_string(k) + " is not symmetric");
    }
    if (!(eig.smallest() > 0.0))
      throw Error(ErrorKind::model,
                  "covariance " + std::to_string(k) + " is not positive definite");
    Matrix sym = cov;
    symmetrize(sym);
    precisions_.push_back(sym.inverse());
    normalizers_.push_back(weights_[k] * std::pow(2.0 * std::numbers::pi, -0.5 * dimension_) /
                           std::sqrt(sym.determinant()));
  }
}

GaussianMixture GaussianMixture::standard_normal(int d) {
  return GaussianMixture({1.0}, {Vector::Zero(d)}, {Matrix::Identity(d, d)});
}

double GaussianMixture::value(const Vector& x) const {
  check_point(x);
  double total = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const Vector diff = x - means_[k];
    total += normalizers_[k] * std::exp(-0.5 * diff.dot(precisions_[k] * diff));
  }
  return total;
}

Derivatives GaussianMixture::derivatives(const Vector& x) const {
  check_point(x);
  const int d = dimension_;
  Derivatives out;
  out.gradient = Vector::Zero(d);
  out.hessian = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const Vector diff = x - means_[k];
    const Vector pd = precisions_[k] * diff;
    const double nk = normalizers_[k] * std::exp(-0.5 * diff.dot(pd));
    out.value += nk;
    out.gradient -= nk * pd;
    out.hessian += nk * (pd * pd.transpose() - precisions_[k]);
  }
  symmetrize(out.hessian);
  return out;
}

GaussianMixture boomerang_mixture() {
  Vector m1(2), m2(2);
  m1 << -1.5, 0.0;
  m2 << 1.5, 0.0;
  Matrix s1(2, 2), s2(2, 2);
  s1 << 1.0, -0.7, -0.7, 1.0;
  s2 << 1.0, 0.7, 0.7, 1.0;
  return GaussianMixture({0.5, 0.5}, {m1, m2}, {s1, s2});
}

SampleMatrix sample_mixture(const GaussianMixture& gmm, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::input, "sample size must be at least 1");
  const int d = gmm.dimension();
  std::vector<Matrix> factors;
  for (const Matrix& cov : gmm.covariances()) {
    const Eigen::LLT<Matrix> llt(cov);
    factors.emplace_back(llt.matrixL());
  }
  std::vector<double> cumulative;
  double running = 0.0;
  for (double w : gmm.weights()) cumulative.push_back(running += w);

  Random rng(seed);
  std::vector<double> data;
  data.reserve(n * d);
  Vector z(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && (u >= cumulative[k] || gmm.weights()[k] == 0.0)) ++k;
    for (int a = 0; a < d; ++a) z[a] = rng.normal();
    const Vector x = gmm.means()[k] + factors[k] * z;
    for (int a = 0; a < d; ++a) data.push_back(x[a]);
  }
  return SampleMatrix(n, d, std::move(data));
}

GaussianMixture smoothed_mixture(const GaussianMixture& gmm, double h) {
  if (!(h >= 0.0) || !std::isfinite(h))
    throw Error(ErrorKind::input, "smoothing bandwidth must be nonnegative and finite");
  std::vector<Matrix> covs = gmm.covariances();
  for (Matrix& c : covs) c += h * h * Matrix::Identity(c.rows(), c.cols());
  return GaussianMixture(gmm.weights(), gmm.means(), std::move(covs));
}

}  // namespace curvebump
