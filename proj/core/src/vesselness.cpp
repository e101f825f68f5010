#include "vesselkit/vesselness.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace vesselkit {

void FrangiParams::validate() const {
  if (!(sigma_min > 0.0) || !(sigma_max >= sigma_min)) {
    throw std::invalid_argument("frangi scales require 0 < sigma_min <= sigma_max");
  }
  if (!(sigma_step > 0.0)) throw std::invalid_argument("frangi sigma_step must be positive");
  if (!(beta > 0.0) || !(c > 0.0)) throw std::invalid_argument("frangi beta and c must be positive");
}

std::vector<double> FrangiParams::scales() const {
  validate();
  std::vector<double> out;
  // Multiply rather than accumulate so 1 + 7 * 1 lands on 8 exactly.
  for (int k = 0;; ++k) {
    const double s = sigma_min + k * sigma_step;
    if (s > sigma_max + 1e-9 * sigma_max) break;
    out.push_back(s);
  }
  return out;
}

namespace {

struct Kernels {
  int radius = 0;
  std::vector<double> smooth;  // G, unit sum
  std::vector<double> first;   // G', unit response to f(x) = x
  std::vector<double> second;  // G'', zero sum, unit response to f(x) = x^2 / 2
};

// The sampled derivative kernels are corrected so that constants vanish
// exactly and polynomials of the matching degree give unit response; the
// raw samples are noticeably off for sigma near 1.
Kernels make_kernels(double sigma) {
  Kernels k;
  k.radius = static_cast<int>(std::ceil(4.0 * sigma));
  const int n = 2 * k.radius + 1;
  k.smooth.resize(n);
  k.first.resize(n);
  k.second.resize(n);
  const double s2 = sigma * sigma;
  for (int i = 0; i < n; ++i) {
    const double x = i - k.radius;
    const double g = std::exp(-x * x / (2.0 * s2));
    k.smooth[i] = g;
    k.first[i] = -x / s2 * g;
    k.second[i] = (x * x / (s2 * s2) - 1.0 / s2) * g;
  }
  double gsum = 0.0;
  for (double v : k.smooth) gsum += v;
  for (double& v : k.smooth) v /= gsum;

  double moment1 = 0.0;
  for (int i = 0; i < n; ++i) moment1 += -(i - k.radius) * k.first[i];
  for (double& v : k.first) v /= moment1;

  double dc = 0.0;
  for (double v : k.second) dc += v;
  for (int i = 0; i < n; ++i) k.second[i] -= dc * k.smooth[i];
  double moment2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = i - k.radius;
    moment2 += 0.5 * x * x * k.second[i];
  }
  for (double& v : k.second) v /= moment2;
  return k;
}

// out[x] = sum_k in[x - k] * kernel[k], indices clamped to the row.
std::vector<double> convolve_rows(const std::vector<double>& in, int width, int height,
                                  const std::vector<double>& kernel, int radius) {
  std::vector<double> out(in.size());
  for (int y = 0; y < height; ++y) {
    const double* row = in.data() + static_cast<std::size_t>(y) * width;
    double* dst = out.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int xs = std::clamp(x - k, 0, width - 1);
        acc += row[xs] * kernel[k + radius];
      }
      dst[x] = acc;
    }
  }
  return out;
}

std::vector<double> convolve_cols(const std::vector<double>& in, int width, int height,
                                  const std::vector<double>& kernel, int radius) {
  std::vector<double> out(in.size(), 0.0);
  for (int y = 0; y < height; ++y) {
    double* dst = out.data() + static_cast<std::size_t>(y) * width;
    for (int k = -radius; k <= radius; ++k) {
      const int ys = std::clamp(y - k, 0, height - 1);
      const double w = kernel[k + radius];
      const double* src = in.data() + static_cast<std::size_t>(ys) * width;
      for (int x = 0; x < width; ++x) dst[x] += src[x] * w;
    }
  }
  return out;
}

void max_into(RealImage& dst, const RealImage& src) {
  auto d = dst.pixels();
  auto v = src.pixels();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], v[i]);
}

RealImage to_real(const GrayImage& image) {
  std::vector<double> v(image.pixels().begin(), image.pixels().end());
  return RealImage(image.width(), image.height(), std::move(v));
}

}  // namespace

HessianField hessian_at_scale(const RealImage& image, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("hessian scale must be positive, got " + std::to_string(sigma));
  }
  const Kernels k = make_kernels(sigma);
  const int w = image.width();
  const int h = image.height();
  const std::vector<double> src(image.pixels().begin(), image.pixels().end());

  const auto rows_smooth = convolve_rows(src, w, h, k.smooth, k.radius);
  const auto rows_first = convolve_rows(src, w, h, k.first, k.radius);
  const auto rows_second = convolve_rows(src, w, h, k.second, k.radius);

  HessianField field;
  field.width = w;
  field.height = h;
  field.dxx = convolve_cols(rows_second, w, h, k.smooth, k.radius);
  field.dyy = convolve_cols(rows_smooth, w, h, k.second, k.radius);
  field.dxy = convolve_cols(rows_first, w, h, k.first, k.radius);

  const double norm = sigma * sigma;
  for (auto* channel : {&field.dxx, &field.dxy, &field.dyy}) {
    for (double& v : *channel) v *= norm;
  }
  return field;
}

HessianField hessian_at_scale(const GrayImage& image, double sigma) {
  return hessian_at_scale(to_real(image), sigma);
}

EigenPair eigenvalues_sym2x2(double dxx, double dxy, double dyy) {
  const double mean = 0.5 * (dxx + dyy);
  const double radius = std::hypot(0.5 * (dxx - dyy), dxy);
  const double hi = mean + radius;
  const double lo = mean - radius;
  if (std::abs(hi) <= std::abs(lo)) return {hi, lo};
  return {lo, hi};
}

RealImage vesselness_at_scale(const HessianField& field, double beta, double c,
                              Polarity polarity) {
  if (!(beta > 0.0) || !(c > 0.0)) throw std::invalid_argument("beta and c must be positive");
  RealImage out(field.width, field.height, 0.0);
  auto px = out.pixels();
  const double two_beta2 = 2.0 * beta * beta;
  const double two_c2 = 2.0 * c * c;
  for (std::size_t i = 0; i < px.size(); ++i) {
    const auto [l1, l2] = eigenvalues_sym2x2(field.dxx[i], field.dxy[i], field.dyy[i]);
    if (l2 == 0.0) continue;
    if (polarity == Polarity::DarkOnBright ? l2 < 0.0 : l2 > 0.0) continue;
    const double rb = l1 / l2;
    const double s2 = l1 * l1 + l2 * l2;
    px[i] = std::exp(-rb * rb / two_beta2) * (1.0 - std::exp(-s2 / two_c2));
  }
  return out;
}

RealImage frangi_response(const RealImage& image, const FrangiParams& params) {
  const auto scales = params.scales();
  if (scales.empty()) throw std::invalid_argument("frangi scale set is empty");

  // Each worker keeps its own running maximum; max is order independent so
  // the merged result matches sequential evaluation bit for bit.
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1,
                                                      scales.size());
  std::atomic<std::size_t> next{0};
  std::vector<RealImage> partial(workers, RealImage(image.width(), image.height(), 0.0));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = next++; s < scales.size(); s = next++) {
          const RealImage v = vesselness_at_scale(hessian_at_scale(image, scales[s]),
                                                  params.beta, params.c, params.polarity);
          max_into(partial[w], v);
        }
      });
    }
  }
  for (std::size_t w = 1; w < workers; ++w) max_into(partial[0], partial[w]);
  return std::move(partial[0]);
}

RealImage frangi_response(const GrayImage& image, const FrangiParams& params) {
  return frangi_response(to_real(image), params);
}

GrayImage rescale_to_byte(const RealImage& response) {
  GrayImage out(response.width(), response.height(), 0);
  const auto px = response.pixels();
  const double peak = *std::max_element(px.begin(), px.end());
  if (!(peak > 0.0)) return out;
  auto dst = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double scaled = std::floor(std::max(px[i], 0.0) * 255.0 / peak + 0.5);
    dst[i] = static_cast<std::uint8_t>(std::min(scaled, 255.0));
  }
  return out;
}

GrayImage frangi_multiscale(const GrayImage& image, const FrangiParams& params) {
  return rescale_to_byte(frangi_response(image, params));
}

}  // namespace vesselkit
