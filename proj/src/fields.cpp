#include "stratwave/fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "stratwave/error.hpp"

namespace stratwave {

namespace detail {

namespace {
// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  FftPlans(int nx, int nz) {
    const std::size_t n = static_cast<std::size_t>(nx) * nz;
    const std::size_t nc = static_cast<std::size_t>(nx) * (nz / 2 + 1);
    double* real = fftw_alloc_real(n);
    fftw_complex* cplx = fftw_alloc_complex(nc);
    {
      std::lock_guard lock(planner_mutex());
      // ESTIMATE keeps the chosen algorithm, and hence every bit of output,
      // independent of timing noise.
      const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
      forward = fftw_plan_dft_r2c_2d(nx, nz, real, cplx, flags);
      backward = fftw_plan_dft_c2r_2d(nx, nz, cplx, real, flags);
    }
    fftw_free(real);
    fftw_free(cplx);
    if (forward == nullptr || backward == nullptr) {
      throw Error("FFTW planning failed");
    }
  }

  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
};

}  // namespace detail

namespace {

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

std::vector<std::complex<double>> forward_transform(const ScalarField& field) {
  const Grid2D& grid = field.grid();
  std::vector<double> input(field.data());
  std::vector<std::complex<double>> out(grid.spectral_size());
  fftw_execute_dft_r2c(grid.plans().forward, input.data(), as_fftw(out.data()));
  return out;
}

ScalarField backward_transform(const Grid2D& grid, std::vector<std::complex<double>> coeffs) {
  std::vector<double> out(grid.size());
  fftw_execute_dft_c2r(grid.plans().backward, as_fftw(coeffs.data()), out.data());
  const double norm = 1.0 / static_cast<double>(grid.size());
  for (double& x : out) x *= norm;
  return ScalarField(grid, std::move(out));
}

// (i k)^order with the Nyquist mode suppressed for odd orders.
std::complex<double> derivative_factor(double k, int mode, int n, int order) {
  if (order == 0) return {1.0, 0.0};
  if (order % 2 == 1 && 2 * mode == n) return {0.0, 0.0};
  std::complex<double> result{1.0, 0.0};
  const std::complex<double> ik{0.0, k};
  for (int p = 0; p < order; ++p) result *= ik;
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid2D

Grid2D::Grid2D(int nx, int nz, double Lx, double Lz) : nx_(nx), nz_(nz), Lx_(Lx), Lz_(Lz) {
  if (nx < 8 || nz < 8 || nx % 2 != 0 || nz % 2 != 0) {
    throw Error("grid dimensions must be even and >= 8, got " + std::to_string(nx) + "x" +
                std::to_string(nz));
  }
  if (!(Lx > 0.0) || !(Lz > 0.0) || !std::isfinite(Lx) || !std::isfinite(Lz)) {
    throw Error("domain lengths must be positive and finite");
  }
  plans_ = std::make_shared<const detail::FftPlans>(nx, nz);
}

double Grid2D::kx(int ix) const { return 2.0 * std::numbers::pi * mode_x(ix) / Lx_; }
double Grid2D::kz(int iz) const { return 2.0 * std::numbers::pi * mode_z(iz) / Lz_; }

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(Grid2D grid, double value)
    : grid_(std::move(grid)), values_(grid_.size(), value) {}

ScalarField::ScalarField(Grid2D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error("field length " + std::to_string(values_.size()) + " does not match grid size " +
                std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::from_function(const Grid2D& grid,
                                       const std::function<double(double, double)>& fn) {
  ScalarField out(grid);
  for (int ix = 0; ix < grid.nx(); ++ix) {
    for (int iz = 0; iz < grid.nz(); ++iz) out(ix, iz) = fn(grid.x(ix), grid.z(iz));
  }
  return out;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

double ScalarField::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(size());
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (double& x : values_) x += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw Error("grid mismatch");
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Params and state

void PhysicalParams::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw Error("g must be positive");
  if (!(N > 0.0) || !std::isfinite(N)) throw Error("N must be positive");
  if (!std::isfinite(f)) throw Error("f must be finite");
}

ScalarField FieldState::zeta() const { return laplacian(psi); }

void FieldState::check_shared_grid() const {
  require_same_grid(psi, v);
  require_same_grid(psi, rho);
}

FieldState zero_state(const Grid2D& grid, double t) {
  return FieldState{t, ScalarField(grid), ScalarField(grid), ScalarField(grid)};
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(const ScalarField& field) : grid_(field.grid()) {
  if (!field.all_finite()) throw Error("non-finite field");
  coeffs_ = forward_transform(field);
}

template <typename Multiplier>
ScalarField Spectrum::synthesize(Multiplier&& multiplier) const {
  std::vector<std::complex<double>> c(coeffs_.size());
  const int nzh = grid_.nz_half();
  for (int ix = 0; ix < grid_.nx(); ++ix) {
    for (int iz = 0; iz < nzh; ++iz) {
      const std::size_t k = static_cast<std::size_t>(ix) * nzh + iz;
      c[k] = coeffs_[k] * multiplier(ix, iz);
    }
  }
  return backward_transform(grid_, std::move(c));
}

ScalarField Spectrum::derivative(int ox, int oz) const {
  return derivative(ox, oz, grid_.nx(), grid_.nz());
}

ScalarField Spectrum::derivative(int ox, int oz, int kx_max, int kz_max) const {
  return synthesize([&](int ix, int iz) -> std::complex<double> {
    if (std::abs(grid_.mode_x(ix)) > kx_max || grid_.mode_z(iz) > kz_max) return {0.0, 0.0};
    return derivative_factor(grid_.kx(ix), grid_.mode_x(ix), grid_.nx(), ox) *
           derivative_factor(grid_.kz(iz), grid_.mode_z(iz), grid_.nz(), oz);
  });
}

ScalarField Spectrum::laplacian_derivative(int ox, int oz) const {
  return laplacian_derivative(ox, oz, grid_.nx(), grid_.nz());
}

ScalarField Spectrum::laplacian_derivative(int ox, int oz, int kx_max, int kz_max) const {
  return synthesize([&](int ix, int iz) -> std::complex<double> {
    if (std::abs(grid_.mode_x(ix)) > kx_max || grid_.mode_z(iz) > kz_max) return {0.0, 0.0};
    const double kx = grid_.kx(ix);
    const double kz = grid_.kz(iz);
    return -(kx * kx + kz * kz) * derivative_factor(kx, grid_.mode_x(ix), grid_.nx(), ox) *
           derivative_factor(kz, grid_.mode_z(iz), grid_.nz(), oz);
  });
}

ScalarField Spectrum::inverse_laplacian() const {
  return synthesize([&](int ix, int iz) -> std::complex<double> {
    if (ix == 0 && iz == 0) return {0.0, 0.0};
    const double kx = grid_.kx(ix);
    const double kz = grid_.kz(iz);
    return {-1.0 / (kx * kx + kz * kz), 0.0};
  });
}

ScalarField Spectrum::band_limited(int kx_max, int kz_max) const {
  return synthesize([&](int ix, int iz) -> std::complex<double> {
    const bool keep = std::abs(grid_.mode_x(ix)) <= kx_max && grid_.mode_z(iz) <= kz_max;
    return {keep ? 1.0 : 0.0, 0.0};
  });
}

ScalarField Spectrum::resampled(const Grid2D& target) const {
  if (target.Lx() != grid_.Lx() || target.Lz() != grid_.Lz()) {
    throw Error("resampling requires equal domain lengths");
  }
  const int mx = std::min(grid_.nx(), target.nx()) / 2;
  const int mz = std::min(grid_.nz(), target.nz()) / 2;
  const double scale = static_cast<double>(target.size()) / static_cast<double>(grid_.size());
  std::vector<std::complex<double>> c(target.spectral_size());
  const int src_h = grid_.nz_half();
  const int dst_h = target.nz_half();
  for (int ix = 0; ix < grid_.nx(); ++ix) {
    const int m = grid_.mode_x(ix);
    if (std::abs(m) >= mx) continue;
    const int tx = m >= 0 ? m : m + target.nx();
    for (int iz = 0; iz < mz; ++iz) {
      c[static_cast<std::size_t>(tx) * dst_h + iz] =
          coeffs_[static_cast<std::size_t>(ix) * src_h + iz] * scale;
    }
  }
  return backward_transform(target, std::move(c));
}

// ---------------------------------------------------------------------------
// Operators

ScalarField diff(const ScalarField& field, Axis axis, int order) {
  if (order < 1 || order > 2) throw Error("derivative order must be 1 or 2");
  return axis == Axis::x ? derivative(field, order, 0) : derivative(field, 0, order);
}

ScalarField derivative(const ScalarField& field, int ox, int oz) {
  return Spectrum(field).derivative(ox, oz);
}

ScalarField laplacian(const ScalarField& field) { return Spectrum(field).laplacian_derivative(0, 0); }

ScalarField inv_laplacian(const ScalarField& field) { return Spectrum(field).inverse_laplacian(); }

ScalarField jacobian(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  const Spectrum sa(a);
  const Spectrum sb(b);
  ScalarField out = sa.derivative(1, 0) * sb.derivative(0, 1);
  out -= sa.derivative(0, 1) * sb.derivative(1, 0);
  return out;
}

int dealias_cutoff(int n) { return (n - 1) / 3; }

ScalarField dealias(const ScalarField& field) {
  const Grid2D& g = field.grid();
  return Spectrum(field).band_limited(dealias_cutoff(g.nx()), dealias_cutoff(g.nz()));
}

ScalarField jacobian_dealiased(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  const Grid2D& g = a.grid();
  const int kx = dealias_cutoff(g.nx());
  const int kz = dealias_cutoff(g.nz());
  const Spectrum sa(a);
  const Spectrum sb(b);
  ScalarField out = sa.derivative(1, 0, kx, kz) * sb.derivative(0, 1, kx, kz);
  out -= sa.derivative(0, 1, kx, kz) * sb.derivative(1, 0, kx, kz);
  return dealias(out);
}

double integrate(const ScalarField& field) {
  const auto& v = field.data();
  return std::accumulate(v.begin(), v.end(), 0.0) * field.grid().dx() * field.grid().dz();
}

ScalarField coordinate_x(const Grid2D& grid) {
  return ScalarField::from_function(grid, [](double x, double) { return x; });
}

ScalarField coordinate_z(const Grid2D& grid) {
  return ScalarField::from_function(grid, [](double, double z) { return z; });
}

ScalarField shifted(const ScalarField& field, int sx, int sz) {
  const Grid2D& g = field.grid();
  ScalarField out(g);
  for (int ix = 0; ix < g.nx(); ++ix) {
    const int tx = ((ix + sx) % g.nx() + g.nx()) % g.nx();
    for (int iz = 0; iz < g.nz(); ++iz) {
      const int tz = ((iz + sz) % g.nz() + g.nz()) % g.nz();
      out(tx, tz) = field(ix, iz);
    }
  }
  return out;
}

int test_band_limit(int n) { return (n / 2 - 1) / 3; }

ScalarField random_band_limited(const Grid2D& grid, CounterRng& rng, double amplitude,
                                int kx_max, int kz_max) {
  if (kx_max < 0) kx_max = test_band_limit(grid.nx());
  if (kz_max < 0) kz_max = test_band_limit(grid.nz());
  kx_max = std::min(kx_max, grid.nx() / 2 - 1);
  kz_max = std::min(kz_max, grid.nz() / 2 - 1);

  const int nzh = grid.nz_half();
  std::vector<std::complex<double>> c(grid.spectral_size());
  auto at = [&](int mode_x, int iz) -> std::complex<double>& {
    const int ix = mode_x >= 0 ? mode_x : mode_x + grid.nx();
    return c[static_cast<std::size_t>(ix) * nzh + iz];
  };
  // The kz = 0 column must be Hermitian in kx for the c2r synthesis.
  at(0, 0) = {rng.uniform(-1.0, 1.0), 0.0};
  for (int mx = 1; mx <= kx_max; ++mx) {
    const std::complex<double> a{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    at(mx, 0) = a;
    at(-mx, 0) = std::conj(a);
  }
  for (int mx = -kx_max; mx <= kx_max; ++mx) {
    for (int iz = 1; iz <= kz_max; ++iz) {
      at(mx, iz) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
  }
  ScalarField out = backward_transform(grid, std::move(c));
  const double m = out.max_abs();
  if (m > 0.0) out *= amplitude / m;
  return out;
}

FieldState random_state(const Grid2D& grid, std::uint64_t seed, std::uint64_t stream,
                        double amplitude, int k_max) {
  CounterRng rng(seed, stream);
  FieldState s = zero_state(grid);
  s.v = random_band_limited(grid, rng, amplitude, k_max, k_max);
  s.rho = random_band_limited(grid, rng, amplitude, k_max, k_max);
  s.psi = random_band_limited(grid, rng, amplitude, k_max, k_max);
  return s;
}

}  // namespace stratwave
