#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "rocktex/image.hpp"

namespace rocktex {

/// One filter of the bank. Wave vector
/// k = (pi / (2 f^scale)) * (cos(orientation*pi/8), sin(orientation*pi/8)).
struct GaborParams {
  int orientation = 0;  ///< 0..7
  int scale = 0;        ///< 0..4
  double sigma = std::numbers::pi;
  double f = std::numbers::sqrt2;

  void validate() const;
  double wave_number() const;  ///< |k|
  double wavelength() const;   ///< 2*pi/|k| = 4 f^scale
  double theta() const;        ///< orientation * pi / 8

  bool operator==(const GaborParams&) const = default;
};

/// Map a (wavelength, angle in degrees) label to bank indices. The wavelength
/// must equal 4 f^scale for an integer scale in 0..4, the angle a multiple of
/// 22.5 degrees; 180 degrees folds onto orientation 0.
GaborParams params_from_wavelength(double wavelength, double theta_deg,
                                   double sigma = std::numbers::pi,
                                   double f = std::numbers::sqrt2);

struct KernelOptions {
  /// Multiply taps by |k|^2 / sigma^2.
  bool amplitude_prefactor = false;
  /// Pick the DC compensation constant so the sampled taps sum to exactly
  /// zero. When false the analytic constant exp(-sigma^2/2) is used, which
  /// leaves a small residual on a truncated support.
  bool exact_dc = true;
};

class GaborKernel {
 public:
  GaborKernel(GaborParams params, int size, std::vector<std::complex<double>> taps);

  const GaborParams& params() const { return params_; }
  int size() const { return size_; }
  int half() const { return size_ / 2; }
  /// Tap at offset (dx, dy) from the center, |dx|, |dy| <= half().
  const std::complex<double>& at(int dx, int dy) const {
    return taps_[static_cast<std::size_t>(dy + half()) * size_ + (dx + half())];
  }
  std::span<const std::complex<double>> taps() const { return taps_; }
  std::complex<double> sum() const;
  double l1_norm() const;

 private:
  GaborParams params_;
  int size_;
  std::vector<std::complex<double>> taps_;
};

/// 2*ceil(3 sigma f^scale 2/pi) + 1, capped at the largest odd number <= min(cap, 61).
int default_kernel_size(const GaborParams& p, int cap = 61);

/// Samples exp(-|k|^2 |r|^2 / (2 sigma^2)) * (exp(i k.r) - c) at integer offsets.
/// `size` must be odd and >= 7.
GaborKernel build_kernel(const GaborParams& p, int size, const KernelOptions& opts = {});

/// All 40 kernels (8 orientations x 5 scales), scale-major then orientation.
std::vector<GaborKernel> bank(double sigma = std::numbers::pi, double f = std::numbers::sqrt2,
                              int cap = 61, const KernelOptions& opts = {});

struct GaborResponse {
  PlaneF amplitude;  ///< >= 0
  PlaneF phase;      ///< in (-pi, pi]
};

enum class ConvolutionMethod { Auto, Direct, Fft };

/// True 2D convolution (kernel index-reversed) with symmetric border
/// extension. The plane must be at least as large as the kernel.
ComplexPlane convolve(const PlaneF& plane, const GaborKernel& kernel,
                      ConvolutionMethod method = ConvolutionMethod::Auto);

GaborResponse filter(const PlaneF& plane, const GaborKernel& kernel,
                     ConvolutionMethod method = ConvolutionMethod::Auto);

}  // namespace rocktex
