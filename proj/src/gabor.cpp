#include "rocktex/gabor.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace rocktex {

void GaborParams::validate() const {
  if (orientation < 0 || orientation > 7)
    throw Error("Gabor orientation index must be in 0..7, got " + std::to_string(orientation));
  if (scale < 0 || scale > 4)
    throw Error("Gabor scale index must be in 0..4, got " + std::to_string(scale));
  if (!(sigma > 0.0)) throw Error("Gabor sigma must be > 0");
  if (!(f > 1.0)) throw Error("Gabor f must be > 1");
}

double GaborParams::wave_number() const { return std::numbers::pi / (2.0 * std::pow(f, scale)); }
double GaborParams::wavelength() const { return 2.0 * std::numbers::pi / wave_number(); }
double GaborParams::theta() const { return orientation * std::numbers::pi / 8.0; }

GaborParams params_from_wavelength(double wavelength, double theta_deg, double sigma, double f) {
  if (!(wavelength > 0.0)) throw Error("Gabor wavelength must be > 0");
  const double scale = std::log(wavelength / 4.0) / std::log(f);
  const double scale_r = std::round(scale);
  if (std::abs(scale - scale_r) > 1e-6 || scale_r < 0 || scale_r > 4)
    throw Error("wavelength " + std::to_string(wavelength) +
                " is not 4*f^nu for an integer scale nu in 0..4");
  const double step = theta_deg / 22.5;
  const double step_r = std::round(step);
  if (std::abs(step - step_r) > 1e-6)
    throw Error("orientation " + std::to_string(theta_deg) +
                " deg is not a multiple of 22.5 deg");
  const int orientation = ((static_cast<int>(step_r) % 8) + 8) % 8;
  GaborParams p{orientation, static_cast<int>(scale_r), sigma, f};
  p.validate();
  return p;
}

GaborKernel::GaborKernel(GaborParams params, int size, std::vector<std::complex<double>> taps)
    : params_(params), size_(size), taps_(std::move(taps)) {
  if (size % 2 == 0) throw Error("Gabor kernel size must be odd");
  if (taps_.size() != static_cast<std::size_t>(size) * size)
    throw Error("Gabor kernel tap count does not match size");
}

std::complex<double> GaborKernel::sum() const {
  return std::accumulate(taps_.begin(), taps_.end(), std::complex<double>{});
}

double GaborKernel::l1_norm() const {
  double s = 0.0;
  for (const auto& t : taps_) s += std::abs(t);
  return s;
}

int default_kernel_size(const GaborParams& p, int cap) {
  p.validate();
  const double reach = 3.0 * p.sigma * std::pow(p.f, p.scale) * 2.0 / std::numbers::pi;
  int size = 2 * static_cast<int>(std::ceil(reach - 1e-9)) + 1;
  int limit = std::min(cap, 61);
  if (limit % 2 == 0) --limit;
  return std::min(size, limit);
}

GaborKernel build_kernel(const GaborParams& p, int size, const KernelOptions& opts) {
  p.validate();
  if (size % 2 == 0) throw Error("Gabor kernel size must be odd, got " + std::to_string(size));
  if (size < 7) throw Error("Gabor kernel size must be >= 7, got " + std::to_string(size));

  const int h = size / 2;
  const double kmag = p.wave_number();
  const double kx = kmag * std::cos(p.theta());
  const double ky = kmag * std::sin(p.theta());
  const double k2 = kmag * kmag;
  const double s2 = p.sigma * p.sigma;

  std::vector<double> envelope(static_cast<std::size_t>(size) * size);
  std::vector<std::complex<double>> carrier(envelope.size());
  double env_sum = 0.0;
  std::complex<double> mod_sum{};
  for (int y = -h; y <= h; ++y) {
    for (int x = -h; x <= h; ++x) {
      const std::size_t i = static_cast<std::size_t>(y + h) * size + (x + h);
      envelope[i] = std::exp(-k2 * (x * x + y * y) / (2.0 * s2));
      carrier[i] = std::polar(1.0, kx * x + ky * y);
      env_sum += envelope[i];
      mod_sum += envelope[i] * carrier[i];
    }
  }

  const std::complex<double> dc =
      opts.exact_dc ? mod_sum / env_sum : std::complex<double>(std::exp(-s2 / 2.0), 0.0);
  const double gain = opts.amplitude_prefactor ? k2 / s2 : 1.0;

  std::vector<std::complex<double>> taps(envelope.size());
  for (std::size_t i = 0; i < taps.size(); ++i) taps[i] = gain * envelope[i] * (carrier[i] - dc);
  return GaborKernel(p, size, std::move(taps));
}

std::vector<GaborKernel> bank(double sigma, double f, int cap, const KernelOptions& opts) {
  std::vector<GaborKernel> out;
  out.reserve(40);
  for (int scale = 0; scale < 5; ++scale) {
    for (int orientation = 0; orientation < 8; ++orientation) {
      const GaborParams p{orientation, scale, sigma, f};
      out.push_back(build_kernel(p, default_kernel_size(p, cap), opts));
    }
  }
  return out;
}

namespace {

int reflect(int i, int n) {
  if (i < 0) return -i - 1;
  if (i >= n) return 2 * n - i - 1;
  return i;
}

ComplexPlane convolve_direct(const PlaneF& plane, const GaborKernel& kernel) {
  const int w = plane.width(), hgt = plane.height(), h = kernel.half();
  ComplexPlane out(w, hgt);
  for (int y = 0; y < hgt; ++y) {
    for (int x = 0; x < w; ++x) {
      std::complex<double> acc{};
      for (int dy = -h; dy <= h; ++dy) {
        const int sy = reflect(y - dy, hgt);
        for (int dx = -h; dx <= h; ++dx) acc += plane(reflect(x - dx, w), sy) * kernel.at(dx, dy);
      }
      out(x, y) = acc;
    }
  }
  return out;
}

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw Error("FFTW allocation failed");
  return FftwBuffer(p);
}

class FftPlan {
 public:
  FftPlan(int rows, int cols, fftw_complex* in, fftw_complex* out, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_2d(rows, cols, in, out, sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw Error("FFTW planning failed");
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan_, in, out); }

 private:
  fftw_plan plan_;
};

// The plane is padded by the kernel half-width on every side with symmetric
// reflection; a circular convolution over the padded grid then never wraps
// into the window we read back.
ComplexPlane convolve_fft(const PlaneF& plane, const GaborKernel& kernel) {
  const int w = plane.width(), hgt = plane.height(), h = kernel.half();
  const int pw = w + 2 * h, ph = hgt + 2 * h;
  const std::size_t n = static_cast<std::size_t>(pw) * ph;

  auto img = fftw_buffer(n);
  auto ker = fftw_buffer(n);
  for (int y = 0; y < ph; ++y) {
    const int sy = reflect(y - h, hgt);
    for (int x = 0; x < pw; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * pw + x;
      img[i][0] = plane(reflect(x - h, w), sy);
      img[i][1] = 0.0;
    }
  }
  std::fill_n(&ker[0][0], 2 * n, 0.0);
  for (int dy = -h; dy <= h; ++dy) {
    for (int dx = -h; dx <= h; ++dx) {
      const std::size_t i = static_cast<std::size_t>((dy + ph) % ph) * pw + (dx + pw) % pw;
      ker[i][0] = kernel.at(dx, dy).real();
      ker[i][1] = kernel.at(dx, dy).imag();
    }
  }

  const FftPlan forward(ph, pw, img.get(), img.get(), FFTW_FORWARD);
  const FftPlan backward(ph, pw, img.get(), img.get(), FFTW_BACKWARD);
  forward.execute(img.get(), img.get());
  forward.execute(ker.get(), ker.get());
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> a(img[i][0], img[i][1]);
    const std::complex<double> b(ker[i][0], ker[i][1]);
    const std::complex<double> c = a * b;
    img[i][0] = c.real();
    img[i][1] = c.imag();
  }
  backward.execute(img.get(), img.get());

  const double scale = 1.0 / static_cast<double>(n);
  ComplexPlane out(w, hgt);
  for (int y = 0; y < hgt; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y + h) * pw + (x + h);
      out(x, y) = {img[i][0] * scale, img[i][1] * scale};
    }
  }
  return out;
}

}  // namespace

ComplexPlane convolve(const PlaneF& plane, const GaborKernel& kernel, ConvolutionMethod method) {
  if (plane.width() < kernel.size() || plane.height() < kernel.size())
    throw Error("plane " + std::to_string(plane.width()) + "x" + std::to_string(plane.height()) +
                " is smaller than the " + std::to_string(kernel.size()) + "x" +
                std::to_string(kernel.size()) + " Gabor kernel");
  if (method == ConvolutionMethod::Auto)
    method = kernel.size() <= 9 ? ConvolutionMethod::Direct : ConvolutionMethod::Fft;
  return method == ConvolutionMethod::Direct ? convolve_direct(plane, kernel)
                                             : convolve_fft(plane, kernel);
}

GaborResponse filter(const PlaneF& plane, const GaborKernel& kernel, ConvolutionMethod method) {
  const ComplexPlane g = convolve(plane, kernel, method);
  GaborResponse r{PlaneF(g.width(), g.height()), PlaneF(g.width(), g.height())};
  auto amp = r.amplitude.values();
  auto ph = r.phase.values();
  auto src = g.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    amp[i] = std::abs(src[i]);
    const double a = std::arg(src[i]);
    ph[i] = a <= -std::numbers::pi ? std::numbers::pi : a;
  }
  return r;
}

}  // namespace rocktex
