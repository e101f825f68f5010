#pragma once

#include <vector>

#include "vesselkit/raster.hpp"

namespace vesselkit {

enum class Polarity {
  DarkOnBright,  // dark vessels on a bright background (fundus, X-ray)
  BrightOnDark,
};

/// Multiscale vesselness parameters. The defaults are the reference values
/// for 2D retinal images: scales 1..8 px, beta = 0.5, c = 15 (gray levels).
struct FrangiParams {
  double sigma_min = 1.0;
  double sigma_max = 8.0;
  double sigma_step = 1.0;
  double beta = 0.5;
  double c = 15.0;
  Polarity polarity = Polarity::DarkOnBright;

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;

  /// sigma_min, sigma_min + step, ... while <= sigma_max.
  std::vector<double> scales() const;
};

/// Scale-normalized second derivatives at one scale.
struct HessianField {
  int width = 0;
  int height = 0;
  std::vector<double> dxx;
  std::vector<double> dxy;
  std::vector<double> dyy;
};

struct EigenPair {
  double lambda1 = 0.0;  // smaller magnitude
  double lambda2 = 0.0;  // larger magnitude
};

/// Gaussian second-derivative responses multiplied by sigma^2. Separable
/// kernels, radius ceil(4 sigma), replicated borders. Throws
/// std::invalid_argument for sigma <= 0.
HessianField hessian_at_scale(const RealImage& image, double sigma);
HessianField hessian_at_scale(const GrayImage& image, double sigma);

/// Eigenvalues of [[dxx, dxy], [dxy, dyy]] with |lambda1| <= |lambda2|.
/// On a magnitude tie the larger value goes to lambda1.
EigenPair eigenvalues_sym2x2(double dxx, double dxy, double dyy);

/// Per-pixel vesselness in [0, 1].
RealImage vesselness_at_scale(const HessianField& field, double beta, double c, Polarity polarity);

/// Pixelwise maximum of vesselness over params.scales(), before quantization.
/// Scales are evaluated concurrently; the result equals sequential evaluation.
RealImage frangi_response(const RealImage& image, const FrangiParams& params);
RealImage frangi_response(const GrayImage& image, const FrangiParams& params);

/// Linear rescale so the maximum maps to 255, rounding half up. An all-zero
/// input stays all-zero.
GrayImage rescale_to_byte(const RealImage& response);

/// frangi_response followed by rescale_to_byte.
GrayImage frangi_multiscale(const GrayImage& image, const FrangiParams& params);

}  // namespace vesselkit
