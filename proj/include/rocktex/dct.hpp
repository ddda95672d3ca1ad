#pragma once

#include "rocktex/image.hpp"

namespace rocktex {

/// Orthonormal 2D DCT-II coefficients. Coefficient (i, j) is stored at
/// column i, row j: i indexes horizontal frequency over the M = width
/// samples, j vertical frequency over the N = height samples.
struct DctCoeffs {
  PlaneF coeffs;

  int width() const { return coeffs.width(); }
  int height() const { return coeffs.height(); }
};

/// Keeps coefficients with i < k and j < k.
struct LowFreqSelector {
  int k = 32;
};

DctCoeffs dct2(const PlaneF& plane);
PlaneF idct2(const DctCoeffs& c);
/// Zeroes every coefficient outside the top-left k x k block. Requires
/// 1 <= k <= min(M, N).
DctCoeffs lowpass(const DctCoeffs& c, LowFreqSelector sel);

}  // namespace rocktex
