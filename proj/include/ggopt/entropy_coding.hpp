#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ggopt/tensor.hpp"

namespace ggopt::coding {

// Quantization precision n (step 2^-n) plus Exp-Golomb order k.
struct QuantSpec {
    int n = 8;
    int k = 0;
};

void validate(const QuantSpec& spec);  // n in [0,24], k in [0,15]

// Signed quantized levels; dequantized value of level q is q * 2^-n.
struct QuantTensor {
    std::vector<std::int32_t> values;
    QuantSpec spec;
    std::vector<std::size_t> dims;
};

struct BlobHeader {
    std::uint32_t tensor_id = 0;
    std::uint32_t element_count = 0;
    std::uint8_t n = 0;
    std::uint8_t k = 0;
    std::vector<std::uint32_t> dims;
};

// Framed bitstream for one tensor on the simulated wire. Payload bits are
// big-endian within bytes, zero-padded to a byte boundary; bit_length is
// the unpadded length.
struct EncodedBlob {
    BlobHeader header;
    std::vector<std::uint8_t> payload;
    std::uint64_t bit_length = 0;
};

// values[i] = floor(2^n * x[i]); overflow error past +-(2^31 - 2).
// Training treats this op as identity for gradients (straight-through).
QuantTensor quantize(const Tensor& x, QuantSpec spec);
Tensor dequantize(const QuantTensor& q);

// Signed-to-unsigned zigzag: q<0 -> -2q, 0 -> 0, q>0 -> 2q-1.
std::int64_t zigzag_map(std::int64_t q);
std::int64_t zigzag_unmap(std::int64_t v);  // domain error on negative input

// Exact bit length of the k-th order Exp-Golomb codeword for v:
// 2*floor(log2(v + 2^k)) - k + 1.
int eg_code_length(std::uint64_t v, int k);

// Concatenated k-th order EG codewords in element order: for each v, write
// floor(log2(v+2^k)) - k zero bits, then v + 2^k in big-endian binary.
EncodedBlob eg_encode(std::span<const std::uint64_t> values, int k, std::uint32_t tensor_id = 0,
                      std::uint8_t n = 0, const std::vector<std::uint32_t>& dims = {});
std::vector<std::uint64_t> eg_decode(const EncodedBlob& blob);  // CorruptStreamError on bad streams

// EGB1 framing: magic "EGB1", u32 tensor_id, u32 element_count, u8 n, u8 k,
// u8 rank, u32 x rank dims, u64 bit_length, payload bytes. Little-endian.
std::vector<std::uint8_t> serialize_blob(const EncodedBlob& blob);
EncodedBlob parse_blob(std::span<const std::uint8_t> bytes);

// Mean EG code length in bits per element of zigzag_map(quantize(x));
// the forward value of the STE-wrapped rate surrogate.
double rate(const Tensor& x, QuantSpec spec);

// Surrogate rate gradient: (2^(n+2) / (n ln 2)) * sign(x_j) / (v_j + eps)
// with v_j = zigzag_map(floor(2^n |x_j|)); exactly 0 where v_j = 0.
// Odd in x by construction. Domain error for n = 0.
Tensor rate_grad(const Tensor& x, QuantSpec spec, double eps);

// Mean codeword length of a canonical Huffman code built from the empirical
// histogram; deterministic tie-breaking; single-symbol alphabets return 1.
double huffman_avg_length(std::span<const std::int64_t> values);

// Bits of the minimal fixed-width unsigned representation after zigzag
// mapping: ceil(log2(max v + 1)), floored at 1.
int fl_bits(std::span<const std::int32_t> levels);

}  // namespace ggopt::coding
