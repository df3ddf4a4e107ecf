#include "ggopt/ggdist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ggopt/errors.hpp"

namespace ggopt::gg {

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: x must be positive");
    return std::tgamma(x);
}

double pdf(double x, const GGParams& p) {
    double norm = p.nu / (2.0 * p.beta * gamma_fn(1.0 / p.nu));
    double z = std::abs(x - p.mu) / p.beta;
    return norm * std::exp(-std::pow(z, p.nu));
}

double variance(const GGParams& p) {
    return p.beta * p.beta * gamma_fn(3.0 / p.nu) / gamma_fn(1.0 / p.nu);
}

double beta_from_sigma(double sigma, double nu) {
    if (!(sigma > 0.0)) throw std::domain_error("beta_from_sigma: sigma must be positive");
    if (!(nu > 0.0)) throw std::domain_error("beta_from_sigma: nu must be positive");
    return sigma * std::sqrt(gamma_fn(1.0 / nu) / gamma_fn(3.0 / nu));
}

Tensor sample(const GGParams& p, std::size_t count, RngStream& rng) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    Tensor out({count});
    double inv_nu = 1.0 / p.nu;
    for (std::size_t i = 0; i < count; ++i) {
        double g = rng.gamma(inv_nu);
        double s = rng.sign();
        out.data[i] = p.mu + p.beta * std::pow(g, inv_nu) * s;
    }
    return out;
}

double shape_moment_ratio(double nu) {
    double g2 = gamma_fn(2.0 / nu);
    return g2 * g2 / (gamma_fn(1.0 / nu) * gamma_fn(3.0 / nu));
}

namespace {

// L1 distance between the 101-bin empirical histogram density over
// [mu - 6 sigma, mu + 6 sigma] and the fitted pdf at bin centers.
double histogram_l1(const Tensor& data, const GGParams& fit, double mu, double sigma) {
    constexpr int kBins = 101;
    double lo = mu - 6.0 * sigma;
    double hi = mu + 6.0 * sigma;
    double width = (hi - lo) / kBins;
    std::vector<std::size_t> counts(kBins, 0);
    for (double v : data.data) {
        if (v < lo || v >= hi) continue;
        int b = static_cast<int>((v - lo) / width);
        if (b >= 0 && b < kBins) counts[b]++;
    }
    double n = static_cast<double>(data.numel());
    double l1 = 0.0;
    for (int b = 0; b < kBins; ++b) {
        double center = lo + (b + 0.5) * width;
        double emp = static_cast<double>(counts[b]) / (n * width);
        l1 += std::abs(emp - pdf(center, fit)) * width;
    }
    return l1;
}

void check_fit_preconditions(const Tensor& data) {
    if (data.numel() < 1000)
        throw std::invalid_argument("fit: needs at least 1000 samples");
    if (!all_finite(data))
        throw std::invalid_argument("fit: samples must be finite");
}

}  // namespace

FitReport fit_shape(const Tensor& data) {
    check_fit_preconditions(data);
    double mu = tensor_mean(data);
    double m1 = 0.0, m2 = 0.0;
    for (double v : data.data) {
        double d = v - mu;
        m1 += std::abs(d);
        m2 += d * d;
    }
    double n = static_cast<double>(data.numel());
    m1 /= n;
    m2 /= n;
    if (!(m2 > 0.0)) throw std::invalid_argument("fit_shape: zero sample variance");

    double r = m1 * m1 / m2;
    if (r <= shape_moment_ratio(kNuMin))
        throw EstimationError("fit_shape: moment ratio below fittable range, nu clamped at 0.05", kNuMin);
    if (r >= shape_moment_ratio(kNuMax))
        throw EstimationError("fit_shape: moment ratio above fittable range, nu clamped at 10", kNuMax);

    // M is strictly increasing in nu; plain bisection.
    double lo = kNuMin, hi = kNuMax;
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        if (shape_moment_ratio(mid) < r)
            lo = mid;
        else
            hi = mid;
    }
    double nu = 0.5 * (lo + hi);
    double sigma = std::sqrt(m2);
    GGParams fit{mu, beta_from_sigma(sigma, nu), nu};
    return FitReport{fit, histogram_l1(data, fit, mu, sigma), data.numel()};
}

FitReport fit_gaussian(const Tensor& data) {
    check_fit_preconditions(data);
    double mu = tensor_mean(data);
    double var = tensor_variance(data);
    if (!(var > 0.0)) throw std::invalid_argument("fit_gaussian: zero sample variance");
    double sigma = std::sqrt(var);
    GGParams fit{mu, sigma * std::sqrt(2.0), 2.0};
    return FitReport{fit, histogram_l1(data, fit, mu, sigma), data.numel()};
}

double differential_entropy(const GGParams& p) {
    constexpr double kLog2E = 1.4426950408889634;
    return kLog2E / p.nu - std::log2(p.nu / (2.0 * p.beta * gamma_fn(1.0 / p.nu)));
}

}  // namespace ggopt::gg
