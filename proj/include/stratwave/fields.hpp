#pragma once

// Periodic grid, spectral differential operators, Jacobian bracket and
// quadrature. Everything else in the library is built on these.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "stratwave/random.hpp"

namespace stratwave {

namespace detail {
struct FftPlans;
}

enum class Axis { x, z };

/// Doubly periodic rectangular grid on [0, Lx) x [0, Lz).
///
/// Samples are stored row-major with index (i_x, i_z), z fastest. The grid
/// owns an immutable FFT workspace shared by all copies, so passing a Grid2D
/// by value is cheap and safe across threads.
class Grid2D {
 public:
  Grid2D(int nx, int nz, double Lx, double Lz);

  int nx() const { return nx_; }
  int nz() const { return nz_; }
  double Lx() const { return Lx_; }
  double Lz() const { return Lz_; }
  double dx() const { return Lx_ / nx_; }
  double dz() const { return Lz_ / nz_; }
  double area() const { return Lx_ * Lz_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * nz_; }

  /// Number of stored complex coefficients along z (half spectrum).
  int nz_half() const { return nz_ / 2 + 1; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(nx_) * nz_half(); }

  double x(int ix) const { return ix * dx(); }
  double z(int iz) const { return iz * dz(); }

  /// Signed integer wavenumber of spectral row ix (Nyquist reported as +nx/2).
  int mode_x(int ix) const { return ix <= nx_ / 2 ? ix : ix - nx_; }
  int mode_z(int iz) const { return iz; }
  double kx(int ix) const;
  double kz(int iz) const;

  std::size_t index(int ix, int iz) const {
    return static_cast<std::size_t>(ix) * nz_ + static_cast<std::size_t>(iz);
  }

  bool operator==(const Grid2D& other) const {
    return nx_ == other.nx_ && nz_ == other.nz_ && Lx_ == other.Lx_ && Lz_ == other.Lz_;
  }

  const detail::FftPlans& plans() const { return *plans_; }

 private:
  int nx_;
  int nz_;
  double Lx_;
  double Lz_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

class ScalarField {
 public:
  explicit ScalarField(Grid2D grid, double value = 0.0);
  ScalarField(Grid2D grid, std::vector<double> values);

  static ScalarField from_function(const Grid2D& grid,
                                   const std::function<double(double, double)>& fn);

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& data() const { return values_; }

  double& operator()(int ix, int iz) { return values_[grid_.index(ix, iz)]; }
  double operator()(int ix, int iz) const { return values_[grid_.index(ix, iz)]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double max_abs() const;
  double mean() const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(const ScalarField& other);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
ScalarField operator-(ScalarField a);

/// Throws stratwave::Error("grid mismatch") unless both fields live on equal grids.
void require_same_grid(const ScalarField& a, const ScalarField& b);

/// Max-norm of a - b.
double max_abs_diff(const ScalarField& a, const ScalarField& b);

/// Constants of the model. N > 0 and g > 0 are required.
struct PhysicalParams {
  double g = 9.81;
  double f = 0.0;
  double N = 1.0;

  void validate() const;
  /// N^2 / g, the coefficient of psi_x in the density equation.
  double stratification() const { return N * N / g; }
  /// g^2 / N^2, the weight of rho^2 in the energy density.
  double density_weight() const { return g * g / (N * N); }
};

/// Dependent variables (v, rho, psi) at time t on one shared grid.
struct FieldState {
  double t = 0.0;
  ScalarField v;
  ScalarField rho;
  ScalarField psi;

  const Grid2D& grid() const { return psi.grid(); }
  /// Vorticity Laplacian(psi).
  ScalarField zeta() const;
  void check_shared_grid() const;
};

FieldState zero_state(const Grid2D& grid, double t = 0.0);

/// Fourier coefficients of a real field (r2c half spectrum, row-major ix, kz).
class Spectrum {
 public:
  /// Throws stratwave::Error("non-finite field") on NaN/Inf input.
  explicit Spectrum(const ScalarField& field);

  const Grid2D& grid() const { return grid_; }
  std::span<const std::complex<double>> coefficients() const { return coeffs_; }

  /// d^ox/dx^ox d^oz/dz^oz of the field. Odd-order factors vanish on the
  /// Nyquist mode; even orders keep it.
  ScalarField derivative(int ox, int oz) const;
  /// Derivative restricted to modes |k_x| <= kx_max, |k_z| <= kz_max.
  ScalarField derivative(int ox, int oz, int kx_max, int kz_max) const;
  /// Same derivative applied to the Laplacian of the field.
  ScalarField laplacian_derivative(int ox, int oz) const;
  ScalarField laplacian_derivative(int ox, int oz, int kx_max, int kz_max) const;
  /// Zero-mean solution u of Laplacian(u) = field - mean(field).
  ScalarField inverse_laplacian() const;
  /// Field with all modes |k_x| > kx_max or |k_z| > kz_max removed.
  ScalarField band_limited(int kx_max, int kz_max) const;
  /// Zero-padded or truncated spectral interpolation onto another grid with
  /// the same domain lengths. Nyquist modes of the source are dropped.
  ScalarField resampled(const Grid2D& target) const;

 private:
  template <typename Multiplier>
  ScalarField synthesize(Multiplier&& multiplier) const;

  Grid2D grid_;
  std::vector<std::complex<double>> coeffs_;
};

ScalarField diff(const ScalarField& field, Axis axis, int order);
ScalarField derivative(const ScalarField& field, int ox, int oz);
ScalarField laplacian(const ScalarField& field);
ScalarField inv_laplacian(const ScalarField& field);

/// a_x b_z - a_z b_x with spectral derivatives, product taken pointwise.
ScalarField jacobian(const ScalarField& a, const ScalarField& b);

/// Largest mode kept by the 2/3 rule: the largest K with 3K < n.
int dealias_cutoff(int n);
/// 2/3-rule projection of a field.
ScalarField dealias(const ScalarField& field);
/// Jacobian with both inputs and the product projected by the 2/3 rule.
ScalarField jacobian_dealiased(const ScalarField& a, const ScalarField& b);

/// Periodic quadrature sum(values) * dx * dz.
double integrate(const ScalarField& field);

ScalarField coordinate_x(const Grid2D& grid);
ScalarField coordinate_z(const Grid2D& grid);

/// Periodic roll by whole grid points: out(ix, iz) = in(ix - sx, iz - sz).
ScalarField shifted(const ScalarField& field, int sx, int sz);

/// Largest mode of random test fields: cubic products stay below Nyquist.
int test_band_limit(int n);

/// Random real field whose Fourier modes are confined to |k_x| <= kx_max,
/// |k_z| <= kz_max (defaults: test_band_limit), mean mode included, scaled so
/// that max|field| = amplitude.
ScalarField random_band_limited(const Grid2D& grid, CounterRng& rng, double amplitude,
                                int kx_max = -1, int kz_max = -1);

/// Three independent random band-limited fields drawn from (seed, stream).
FieldState random_state(const Grid2D& grid, std::uint64_t seed, std::uint64_t stream,
                        double amplitude = 1.0, int k_max = -1);

}  // namespace stratwave
