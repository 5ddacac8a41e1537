#include "curvebump/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curvebump/error.hpp"
#include "curvebump/parallel.hpp"

namespace curvebump {

namespace {

double kernel_normalizer(int d) { return std::pow(2.0 * std::numbers::pi, -0.5 * d); }

// phi(u), u phi(u) and (u^2 - 1) phi(u) for one sample coordinate along one
// grid axis, restricted to the nodes inside the kernel cutoff.
struct AxisProfile {
  int lo = 0;
  int hi = 0;  // exclusive
  std::vector<double> p0, p1, p2;

  void compute(const std::vector<double>& coords, double center, double h) {
    const double reach = std::sqrt(kKernelCutoffSquared) * h;
    lo = static_cast<int>(std::lower_bound(coords.begin(), coords.end(), center - reach) -
                          coords.begin());
    hi = static_cast<int>(std::upper_bound(coords.begin(), coords.end(), center + reach) -
                          coords.begin());
    const int count = std::max(0, hi - lo);
    p0.resize(count);
    p1.resize(count);
    p2.resize(count);
    for (int k = 0; k < count; ++k) {
      const double u = (coords[lo + k] - center) / h;
      const double e = std::exp(-0.5 * u * u);
      p0[k] = e;
      p1[k] = u * e;
      p2[k] = (u * u - 1.0) * e;
    }
  }
};

int packed_components(int d) { return 1 + d + d * (d + 1) / 2; }

}  // namespace

BandwidthSpec BandwidthSpec::fixed(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(ErrorKind::input, "bandwidth must be positive and finite");
  return BandwidthSpec{h, Mode::fixed, 0};
}

BandwidthSpec select_bandwidth_normal_scale(const SampleMatrix& sample, int r) {
  if (r < 0) throw Error(ErrorKind::configuration, "derivative order r must be nonnegative");
  if (sample.size() < 2)
    throw Error(ErrorKind::degenerate, "normal-scale bandwidth needs at least 2 observations");
  const int d = sample.dimension();
  const double sigma = std::sqrt(sample.coordinate_variances().mean());
  if (!(sigma > 0.0))
    throw Error(ErrorKind::degenerate, "sample has zero variance in every coordinate");
  const double n = static_cast<double>(sample.size());
  const double h = sigma * std::pow(4.0 / ((d + 2.0 * r + 2.0) * n), 1.0 / (d + 2.0 * r + 4.0));
  return BandwidthSpec{h, BandwidthSpec::Mode::normal_scale, r};
}

KernelDensity::KernelDensity(SampleMatrix sample, BandwidthSpec bandwidth)
    : sample_(std::move(sample)), bandwidth_(bandwidth) {
  if (!(bandwidth_.h > 0.0) || !std::isfinite(bandwidth_.h))
    throw Error(ErrorKind::input, "bandwidth must be positive and finite");
}

double KernelDensity::value(const Vector& x) const {
  check_point(x);
  const int d = dimension();
  const double h = bandwidth_.h;
  double sum = 0.0;
  for (std::size_t i = 0; i < sample_.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      const double u = (x[a] - sample_.at(i, a)) / h;
      s += u * u;
    }
    if (s > kKernelCutoffSquared) continue;
    sum += std::exp(-0.5 * s);
  }
  return sum * kernel_normalizer(d) / (static_cast<double>(sample_.size()) * std::pow(h, d));
}

Derivatives KernelDensity::derivatives(const Vector& x) const {
  check_point(x);
  const int d = dimension();
  const double h = bandwidth_.h;
  double k_sum = 0.0;
  Vector u_sum = Vector::Zero(d);
  Matrix uu_sum = Matrix::Zero(d, d);
  Vector u(d);
  for (std::size_t i = 0; i < sample_.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      u[a] = (x[a] - sample_.at(i, a)) / h;
      s += u[a] * u[a];
    }
    if (s > kKernelCutoffSquared) continue;
    const double k = std::exp(-0.5 * s);
    k_sum += k;
    u_sum += k * u;
    uu_sum += k * (u * u.transpose());
  }
  const double scale =
      kernel_normalizer(d) / (static_cast<double>(sample_.size()) * std::pow(h, d));
  Derivatives out;
  out.value = scale * k_sum;
  out.gradient = (-scale / h) * u_sum;
  out.hessian = (scale / (h * h)) * (uu_sum - k_sum * Matrix::Identity(d, d));
  symmetrize(out.hessian);
  return out;
}

DerivativeGrid KernelDensity::derivatives_on_grid(const GridSpec& grid) const {
  const std::vector<double> ones(sample_.size(), 1.0);
  return KernelGridEvaluator(*this, grid, 0).evaluate(ones);
}

DerivativeGrid KernelDensity::weighted_derivatives_on_grid(const GridSpec& grid,
                                                           std::span<const double> weights) const {
  return KernelGridEvaluator(*this, grid, 0).evaluate(weights);
}

struct KernelGridEvaluator::Impl {
  const KernelDensity* density;
  GridSpec grid;
  std::vector<std::vector<double>> coords;
  // profiles[i * d + a] when cached
  std::vector<AxisProfile> profiles;

  Impl(const KernelDensity& kde, const GridSpec& g) : density(&kde), grid(g) {}

  void accumulate_slab(std::span<const double> weights, int r0, int r1,
                       std::vector<double>& acc) const;
};

KernelGridEvaluator::KernelGridEvaluator(const KernelDensity& density, const GridSpec& grid,
                                         std::size_t cache_bytes)
    : impl_(std::make_unique<Impl>(density, grid)) {
  const int d = density.dimension();
  if (grid.dimension() != d)
    throw Error(ErrorKind::input, "grid dimension does not match the model dimension");
  impl_->coords.resize(d);
  std::size_t axis_nodes = 0;
  for (int a = 0; a < d; ++a) {
    impl_->coords[a] = grid.axis_coordinates(a);
    axis_nodes += impl_->coords[a].size();
  }
  const double estimate =
      3.0 * sizeof(double) * static_cast<double>(axis_nodes) * density.sample().size();
  if (estimate <= static_cast<double>(cache_bytes)) {
    const SampleMatrix& sample = density.sample();
    impl_->profiles.resize(sample.size() * d);
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (int a = 0; a < d; ++a)
        impl_->profiles[i * d + a].compute(impl_->coords[a], sample.at(i, a),
                                           density.bandwidth().h);
  }
}

KernelGridEvaluator::~KernelGridEvaluator() = default;
KernelGridEvaluator::KernelGridEvaluator(KernelGridEvaluator&&) noexcept = default;
KernelGridEvaluator& KernelGridEvaluator::operator=(KernelGridEvaluator&&) noexcept = default;

bool KernelGridEvaluator::cached() const noexcept { return !impl_->profiles.empty(); }

void KernelGridEvaluator::Impl::accumulate_slab(std::span<const double> weights, int r0, int r1,
                                                std::vector<double>& acc) const {
  const SampleMatrix& sample = density->sample();
  const int d = sample.dimension();
  const int comps = packed_components(d);
  const double h = density->bandwidth().h;
  const bool use_cache = !profiles.empty();
  AxisProfile scratch[3];
  auto profile = [&](std::size_t i, int a) -> const AxisProfile& {
    if (use_cache) return profiles[i * d + a];
    scratch[a].compute(coords[a], sample.at(i, a), h);
    return scratch[a];
  };
  const int ny = d > 1 ? grid.resolution()[1] : 1;
  const int nz = d > 2 ? grid.resolution()[2] : 1;

  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double w = weights[i];
    if (w == 0.0) continue;
    const AxisProfile& px = profile(i, 0);
    const int x0 = std::max(px.lo, r0);
    const int x1 = std::min(px.hi, r1);
    if (x0 >= x1) continue;
    if (d == 1) {
      for (int kx = x0; kx < x1; ++kx) {
        const int k = kx - px.lo;
        double* out = &acc[static_cast<std::size_t>(kx) * comps];
        out[0] += w * px.p0[k];
        out[1] += w * px.p1[k];
        out[2] += w * px.p2[k];
      }
      continue;
    }
    const AxisProfile& py = profile(i, 1);
    if (py.lo >= py.hi) continue;
    const int count_y = py.hi - py.lo;
    if (d == 2) {
      for (int kx = x0; kx < x1; ++kx) {
        const int k = kx - px.lo;
        const double a0 = w * px.p0[k], a1 = w * px.p1[k], a2 = w * px.p2[k];
        double* row = &acc[(static_cast<std::size_t>(kx) * ny + py.lo) * comps];
        for (int j = 0; j < count_y; ++j) {
          const double b0 = py.p0[j], b1 = py.p1[j], b2 = py.p2[j];
          double* out = row + static_cast<std::size_t>(j) * comps;
          out[0] += a0 * b0;
          out[1] += a1 * b0;
          out[2] += a0 * b1;
          out[3] += a2 * b0;
          out[4] += a1 * b1;
          out[5] += a0 * b2;
        }
      }
      continue;
    }
    const AxisProfile& pz = profile(i, 2);
    if (pz.lo >= pz.hi) continue;
    const int count_z = pz.hi - pz.lo;
    for (int kx = x0; kx < x1; ++kx) {
      const int k = kx - px.lo;
      const double a0 = w * px.p0[k], a1 = w * px.p1[k], a2 = w * px.p2[k];
      for (int jy = 0; jy < count_y; ++jy) {
        const double b0 = py.p0[jy], b1 = py.p1[jy], b2 = py.p2[jy];
        const double ab00 = a0 * b0, ab10 = a1 * b0, ab01 = a0 * b1;
        const double ab20 = a2 * b0, ab11 = a1 * b1, ab02 = a0 * b2;
        double* row =
            &acc[((static_cast<std::size_t>(kx) * ny + py.lo + jy) * nz + pz.lo) * comps];
        for (int jz = 0; jz < count_z; ++jz) {
          const double c0 = pz.p0[jz], c1 = pz.p1[jz], c2 = pz.p2[jz];
          double* out = row + static_cast<std::size_t>(jz) * comps;
          out[0] += ab00 * c0;
          out[1] += ab10 * c0;
          out[2] += ab01 * c0;
          out[3] += ab00 * c1;
          out[4] += ab20 * c0;
          out[5] += ab11 * c0;
          out[6] += ab10 * c1;
          out[7] += ab02 * c0;
          out[8] += ab01 * c1;
          out[9] += ab00 * c2;
        }
      }
    }
  }
}

DerivativeGrid KernelGridEvaluator::evaluate(std::span<const double> weights) const {
  const KernelDensity& density = *impl_->density;
  const GridSpec& grid = impl_->grid;
  const int d = density.dimension();
  if (weights.size() != density.sample().size())
    throw Error(ErrorKind::input, "one weight per sample point is required");
  double total_weight = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::input, "weights must be nonnegative and finite");
    total_weight += w;
  }
  if (!(total_weight > 0.0)) throw Error(ErrorKind::input, "weights must have a positive sum");
  // Normalized weights make equal-weight resamples reproduce the estimate
  // bit for bit.
  std::vector<double> normalized(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) normalized[i] = weights[i] / total_weight;

  const int comps = packed_components(d);
  const std::size_t nodes = grid.node_count();
  const int rows = grid.resolution()[0];
  std::vector<double> acc(nodes * comps, 0.0);
  // Slabs of axis-0 rows are independent and every node still sums the
  // sample in index order, so the result does not depend on the slab count.
  const std::size_t slabs =
      std::min<std::size_t>(rows, 4 * static_cast<std::size_t>(worker_count()));
  parallel_for(slabs, [&](std::size_t slab) {
    const int r0 = static_cast<int>(slab * rows / slabs);
    const int r1 = static_cast<int>((slab + 1) * rows / slabs);
    impl_->accumulate_slab(normalized, r0, r1, acc);
  });

  const double h = density.bandwidth().h;
  const double scale = kernel_normalizer(d) / std::pow(h, d);
  const double grad_scale = -scale / h;
  const double hess_scale = scale / (h * h);
  DerivativeGrid out;
  out.dimension = d;
  out.values.resize(nodes);
  out.gradients.resize(nodes * d);
  out.hessians.resize(nodes * d * d);
  for (std::size_t node = 0; node < nodes; ++node) {
    const double* in = &acc[node * comps];
    out.values[node] = scale * in[0];
    for (int a = 0; a < d; ++a) out.gradients[node * d + a] = grad_scale * in[1 + a];
    double* hess = &out.hessians[node * d * d];
    int c = 1 + d;
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b, ++c) {
        hess[a * d + b] = hess_scale * in[c];
        hess[b * d + a] = hess_scale * in[c];
      }
  }
  return out;
}

}  // namespace curvebump
