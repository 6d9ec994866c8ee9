#include "hitdisk/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace hitdisk {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::annulus: return "annulus";
    case Method::elliptic: return "elliptic";
    case Method::superposition: return "superposition";
    case Method::montecarlo: return "montecarlo";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::annulus, Method::elliptic, Method::superposition, Method::montecarlo}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

double DensityProfile::integral() const {
  if (values.empty()) return 0;
  double sum = 0;
  for (double v : values) sum += v;
  return sum * kTwoPi<double> / static_cast<double>(values.size());
}

ExitDensity::ExitDensity(const CartesianPoint<double>& start, const ProblemSpec<double>& spec, Method method,
                         const SeriesControl& ctl)
    : spec_(spec), method_(method), ctl_(ctl), geometry_(make_ellipse_geometry(spec)), start_(start) {
  ctl_.validate();
  if (method == Method::montecarlo) {
    throw InvalidArgument("ExitDensity: Monte Carlo profiles come from simulate_exits");
  }
  if (!inside_disk(start, spec)) {
    std::ostringstream msg;
    msg << "start point (" << start.x << ", " << start.y << ") is not strictly inside the disk of radius "
        << spec.radius();
    throw DomainError(msg.str());
  }
  const auto e = forward_linear(start, spec);
  annulus_ = ellipse_to_annulus(e, geometry_);
  if (!geometry_.degenerate()) elliptic_ = ellipse_to_elliptic(e, geometry_);
  if (!(annulus_.r < 1)) {
    throw DomainError("start point maps to the ellipse boundary within rounding");
  }
}

KernelValue<double> ExitDensity::kernel(double tau) const {
  switch (method_) {
    case Method::annulus:
      return annulus_kernel(annulus_.r, annulus_.theta, tau, geometry_, ctl_);
    case Method::elliptic:
      if (!elliptic_) {
        // circle: plain Poisson kernel of the unit annulus coordinates
        return {classical_poisson(annulus_.r, annulus_.theta, 1.0, tau), 0, true};
      }
      return elliptic_kernel(elliptic_->eta, elliptic_->phi, tau, geometry_, ctl_);
    case Method::superposition:
      return poisson_superposition_kernel(annulus_.r, annulus_.theta, tau, geometry_, ctl_);
    case Method::montecarlo:
      break;
  }
  throw InvalidArgument("ExitDensity: unsupported method");
}

double ExitDensity::in_tau(double tau) const {
  const auto k = kernel(tau);
  if (!k.converged) truncated_ = true;
  return k.value;
}

double ExitDensity::raw(double alpha) const {
  if (method_ == Method::elliptic && !elliptic_) {
    // rho = 0 goes straight to the Poisson kernel of the original disk
    const double r = std::hypot(start_.x, start_.y);
    return classical_poisson(r, polar_angle(start_.y, start_.x), spec_.radius(), alpha);
  }
  return in_tau(boundary_angle_to_tau(alpha, spec_)) * boundary_jacobian(alpha, spec_);
}

double ExitDensity::operator()(double alpha) const { return std::max(0.0, raw(alpha)); }

double hitting_density(const CartesianPoint<double>& start, double alpha, const ProblemSpec<double>& spec,
                       Method method, const SeriesControl& ctl) {
  return ExitDensity(start, spec, method, ctl)(alpha);
}

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HITDISK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

DensityProfile density_profile(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                               Method method, const SeriesControl& ctl, int n_grid) {
  if (n_grid < 16) throw InvalidArgument("density_profile: grid must have at least 16 points");
  const ExitDensity density(start, spec, method, ctl);

  DensityProfile profile;
  const auto n = static_cast<std::size_t>(n_grid);
  profile.alphas.resize(n);
  profile.values.resize(n);
  std::vector<char> truncated(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const double alpha = kTwoPi<double> * static_cast<double>(i) / static_cast<double>(n);
    // a private copy keeps the truncation flag thread-local
    const ExitDensity local = density;
    profile.alphas[i] = alpha;
    profile.values[i] = local(alpha);
    truncated[i] = local.truncated() ? 1 : 0;
  });

  auto& meta = profile.meta;
  meta.method = method;
  meta.rho = spec.rho();
  meta.radius = spec.radius();
  meta.start = start;
  meta.series = ctl;
  meta.near_boundary = density.near_boundary();
  meta.series_truncated = std::any_of(truncated.begin(), truncated.end(), [](char t) { return t != 0; });
  meta.normalization_residual = profile.integral() - 1;
  return profile;
}

double boundary_functional(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                           std::span<const double> h_samples, const SeriesControl& ctl, Method method) {
  if (h_samples.size() < 64) throw InvalidArgument("boundary_functional: need at least 64 boundary samples");
  const ExitDensity density(start, spec, method, ctl);
  const auto n = h_samples.size();
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = kTwoPi<double> * static_cast<double>(i) / static_cast<double>(n);
    double weight;
    if (method == Method::elliptic && !density.elliptic()) {
      // circle: tau and alpha differ by the fixed rotation of the linear map
      weight = density.raw(tau_to_boundary_angle(tau, spec));
    } else {
      weight = density.in_tau(tau);
    }
    sum += h_samples[i] * weight;
  }
  return sum * kTwoPi<double> / static_cast<double>(n);
}

std::vector<double> bin_masses(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                               Method method, const SeriesControl& ctl, int n_bins, int nodes_per_bin) {
  if (n_bins < 1 || nodes_per_bin < 1) throw InvalidArgument("bin_masses: bin and node counts must be positive");
  const ExitDensity density(start, spec, method, ctl);
  // midpoint rule inside each bin
  const double width = kTwoPi<double> / n_bins;
  const double h = width / nodes_per_bin;
  std::vector<double> masses(static_cast<std::size_t>(n_bins), 0.0);
  parallel_for(masses.size(), [&](std::size_t b) {
    const ExitDensity local = density;
    double sum = 0;
    for (int j = 0; j < nodes_per_bin; ++j) sum += local(static_cast<double>(b) * width + (j + 0.5) * h);
    masses[b] = sum * h;
  });
  return masses;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidArgument("total_variation: size mismatch");
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return sum / 2;
}

}  // namespace hitdisk
