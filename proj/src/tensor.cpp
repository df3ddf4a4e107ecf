#include "ggopt/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace ggopt {

std::size_t shape_numel(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

Tensor::Tensor(std::vector<std::size_t> shape)
    : dims(std::move(shape)), data(shape_numel(dims), 0.0) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
    : dims(std::move(shape)), data(std::move(values)) {
    if (data.size() != shape_numel(dims))
        throw std::invalid_argument("Tensor: data length does not match shape");
}

Tensor Tensor::vec(std::vector<double> values) {
    std::size_t n = values.size();
    return Tensor({n}, std::move(values));
}

bool all_finite(const Tensor& t) {
    for (double v : t.data)
        if (!std::isfinite(v)) return false;
    return true;
}

double tensor_mean(const Tensor& t) {
    if (t.data.empty()) throw std::domain_error("tensor_mean: empty tensor");
    double s = 0.0;
    for (double v : t.data) s += v;
    return s / static_cast<double>(t.data.size());
}

double tensor_variance(const Tensor& t) {
    if (t.data.empty()) throw std::domain_error("tensor_variance: empty tensor");
    double m = tensor_mean(t);
    double s = 0.0;
    for (double v : t.data) s += (v - m) * (v - m);
    return s / static_cast<double>(t.data.size());
}

Tensor concat_flat(const std::vector<Tensor>& parts) {
    std::size_t n = 0;
    for (const Tensor& p : parts) n += p.numel();
    Tensor out({n});
    std::size_t at = 0;
    for (const Tensor& p : parts) {
        for (double v : p.data) out.data[at++] = v;
    }
    return out;
}

void add_in_place(Tensor& dst, const Tensor& src) {
    if (dst.data.size() != src.data.size())
        throw std::invalid_argument("add_in_place: size mismatch");
    for (std::size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += src.data[i];
}

void axpy_in_place(Tensor& dst, double a, const Tensor& src) {
    if (dst.data.size() != src.data.size())
        throw std::invalid_argument("axpy_in_place: size mismatch");
    for (std::size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += a * src.data[i];
}

void scale_in_place(Tensor& dst, double a) {
    for (double& v : dst.data) v *= a;
}

}  // namespace ggopt
