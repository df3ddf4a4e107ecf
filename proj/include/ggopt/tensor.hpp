#pragma once

#include <cstddef>
#include <vector>

namespace ggopt {

// Dense row-major n-d array of doubles; the sole carrier of weights,
// activations and gradients.
struct Tensor {
    std::vector<std::size_t> dims;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape);
    Tensor(std::vector<std::size_t> shape, std::vector<double> values);

    static Tensor zeros(std::vector<std::size_t> shape) { return Tensor(std::move(shape)); }
    static Tensor vec(std::vector<double> values);

    std::size_t numel() const { return data.size(); }
    std::size_t rank() const { return dims.size(); }

    // Matrix access; caller guarantees rank 2.
    double& at(std::size_t i, std::size_t j) { return data[i * dims[1] + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * dims[1] + j]; }

    bool same_shape(const Tensor& other) const { return dims == other.dims; }
};

std::size_t shape_numel(const std::vector<std::size_t>& dims);

bool all_finite(const Tensor& t);
double tensor_mean(const Tensor& t);
// Population variance around the sample mean.
double tensor_variance(const Tensor& t);

// Flattens a tensor list into one 1-d tensor, in list order.
Tensor concat_flat(const std::vector<Tensor>& parts);

void add_in_place(Tensor& dst, const Tensor& src);    // dst += src
void axpy_in_place(Tensor& dst, double a, const Tensor& src);  // dst += a*src
void scale_in_place(Tensor& dst, double a);

}  // namespace ggopt
