#include "rocktex/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace rocktex {

namespace {

// basis[u * n + x] = a(u) cos((2x + 1) u pi / 2n)
std::vector<double> cosine_basis(int n) {
  std::vector<double> basis(static_cast<std::size_t>(n) * n);
  const double a0 = std::sqrt(1.0 / n);
  const double a = std::sqrt(2.0 / n);
  for (int u = 0; u < n; ++u)
    for (int x = 0; x < n; ++x)
      basis[static_cast<std::size_t>(u) * n + x] =
          (u == 0 ? a0 : a) * std::cos((2.0 * x + 1.0) * u * std::numbers::pi / (2.0 * n));
  return basis;
}

// Separable pass: rows first (along x, length w), then columns (along y, length h).
// forward: out[u] = sum_x basis[u][x] in[x]; inverse: out[x] = sum_u basis[u][x] in[u].
PlaneF separable(const PlaneF& in, bool forward) {
  const int w = in.width(), h = in.height();
  const auto bx = cosine_basis(w);
  const auto by = cosine_basis(h);

  PlaneF tmp(w, h);
  std::vector<double> line;
  for (int y = 0; y < h; ++y) {
    const auto src = in.row(y);
    for (int u = 0; u < w; ++u) {
      double acc = 0.0;
      for (int x = 0; x < w; ++x)
        acc += (forward ? bx[static_cast<std::size_t>(u) * w + x]
                        : bx[static_cast<std::size_t>(x) * w + u]) *
               src[x];
      tmp(u, y) = acc;
    }
  }

  PlaneF out(w, h);
  line.resize(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) line[y] = tmp(x, y);
    for (int v = 0; v < h; ++v) {
      double acc = 0.0;
      for (int y = 0; y < h; ++y)
        acc += (forward ? by[static_cast<std::size_t>(v) * h + y]
                        : by[static_cast<std::size_t>(y) * h + v]) *
               line[y];
      out(x, v) = acc;
    }
  }
  return out;
}

}  // namespace

DctCoeffs dct2(const PlaneF& plane) {
  if (plane.empty()) throw Error("dct2: empty plane");
  return {separable(plane, true)};
}

PlaneF idct2(const DctCoeffs& c) {
  if (c.coeffs.empty()) throw Error("idct2: empty coefficient array");
  return separable(c.coeffs, false);
}

DctCoeffs lowpass(const DctCoeffs& c, LowFreqSelector sel) {
  const int limit = std::min(c.width(), c.height());
  if (sel.k < 1 || sel.k > limit)
    throw Error("DCT block side k=" + std::to_string(sel.k) + " outside [1, " +
                std::to_string(limit) + "]");
  DctCoeffs out{PlaneF(c.width(), c.height(), 0.0)};
  for (int j = 0; j < sel.k; ++j)
    for (int i = 0; i < sel.k; ++i) out.coeffs(i, j) = c.coeffs(i, j);
  return out;
}

}  // namespace rocktex
