#pragma once

#include <cstddef>

#include "ggopt/rng.hpp"
#include "ggopt/tensor.hpp"

namespace ggopt::gg {

// Location/scale/shape triple of a generalized Gaussian.
// nu = 2 with beta = sigma*sqrt(2) is a Gaussian of std dev sigma;
// nu = 1 is a Laplacian.
struct GGParams {
    double mu = 0.0;
    double beta = 1.0;
    double nu = 2.0;
};

struct FitReport {
    GGParams params;
    double goodness = 0.0;  // histogram L1 distance, in [0, 2]
    std::size_t sample_count = 0;
};

// Search bounds for shape estimation.
inline constexpr double kNuMin = 0.05;
inline constexpr double kNuMax = 10.0;

// Gamma function; domain error for x <= 0.
double gamma_fn(double x);

// GGD density f(x; mu, beta, nu) = nu / (2 beta Gamma(1/nu)) * exp(-(|x-mu|/beta)^nu).
double pdf(double x, const GGParams& p);

// beta^2 * Gamma(3/nu) / Gamma(1/nu).
double variance(const GGParams& p);

// Scale beta such that variance({mu, beta, nu}) = sigma^2.
double beta_from_sigma(double sigma, double nu);

// i.i.d. draws via X = mu + beta * G^{1/nu} * S, G ~ Gamma(1/nu, 1),
// S uniform on {-1, +1}. Deterministic for a fixed stream.
Tensor sample(const GGParams& p, std::size_t count, RngStream& rng);

// Moment ratio M(nu) = Gamma(2/nu)^2 / (Gamma(1/nu) Gamma(3/nu)),
// strictly increasing in nu. Inverted by fit_shape.
double shape_moment_ratio(double nu);

// Moment-ratio (Mallat) estimation: mu^ = sample mean,
// r = (E|x-mu^|)^2 / E[(x-mu^)^2], nu^ from bisecting M(nu) = r on
// [kNuMin, kNuMax] to 1e-6, beta^ from the sample standard deviation.
// Goodness is the L1 distance between a 101-bin histogram density and the
// fitted pdf over [mu^ +- 6 sigma^]. Requires >= 1000 finite samples and
// nonzero variance; throws EstimationError when r falls outside
// (M(kNuMin), M(kNuMax)).
FitReport fit_shape(const Tensor& data);

// Gaussian restriction of the same fit: nu fixed at 2, mu/sigma from the
// data, goodness via the identical histogram metric.
FitReport fit_gaussian(const Tensor& data);

// Differential entropy in bits: (1/nu) log2 e - log2(nu / (2 beta Gamma(1/nu))).
double differential_entropy(const GGParams& p);

}  // namespace ggopt::gg
