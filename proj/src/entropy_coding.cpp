#include "ggopt/entropy_coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <queue>
#include <stdexcept>

#include "ggopt/errors.hpp"

namespace ggopt::coding {

void validate(const QuantSpec& spec) {
    if (spec.n < 0 || spec.n > 24) throw std::invalid_argument("QuantSpec: n must be in [0, 24]");
    if (spec.k < 0 || spec.k > 15) throw std::invalid_argument("QuantSpec: k must be in [0, 15]");
}

QuantTensor quantize(const Tensor& x, QuantSpec spec) {
    validate(spec);
    QuantTensor q;
    q.spec = spec;
    q.dims = x.dims;
    q.values.resize(x.numel());
    double scale = std::ldexp(1.0, spec.n);
    constexpr double kMax = 2147483646.0;  // 2^31 - 2
    for (std::size_t i = 0; i < x.numel(); ++i) {
        double v = x.data[i];
        if (!std::isfinite(v)) throw std::invalid_argument("quantize: non-finite entry");
        double y = std::floor(scale * v);
        if (std::abs(y) > kMax) throw std::overflow_error("quantize: level exceeds 2^31 - 2");
        q.values[i] = static_cast<std::int32_t>(y);
    }
    return q;
}

Tensor dequantize(const QuantTensor& q) {
    Tensor out(q.dims.empty() ? std::vector<std::size_t>{q.values.size()} : q.dims);
    double step = std::ldexp(1.0, -q.spec.n);
    for (std::size_t i = 0; i < q.values.size(); ++i)
        out.data[i] = static_cast<double>(q.values[i]) * step;
    return out;
}

std::int64_t zigzag_map(std::int64_t q) {
    if (q < 0) return -2 * q;
    if (q == 0) return 0;
    return 2 * q - 1;
}

std::int64_t zigzag_unmap(std::int64_t v) {
    if (v < 0) throw std::domain_error("zigzag_unmap: negative input");
    if (v == 0) return 0;
    if (v % 2 == 0) return -(v / 2);
    return (v + 1) / 2;
}

int eg_code_length(std::uint64_t v, int k) {
    std::uint64_t m = v + (std::uint64_t{1} << k);
    int floor_log2 = std::bit_width(m) - 1;
    return 2 * floor_log2 - k + 1;
}

namespace {

// MSB-first bit writer/reader over a byte vector.
class BitWriter {
public:
    void put_bits(std::uint64_t value, int count) {
        for (int i = count - 1; i >= 0; --i) put_bit(static_cast<int>((value >> i) & 1u));
    }
    void put_bit(int b) {
        std::size_t byte = static_cast<std::size_t>(bits_ >> 3);
        if (byte >= bytes_.size()) bytes_.push_back(0);
        if (b) bytes_[byte] |= static_cast<std::uint8_t>(0x80u >> (bits_ & 7));
        ++bits_;
    }
    std::uint64_t bit_count() const { return bits_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bits_ = 0;
};

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
        : bytes_(bytes), limit_(bit_limit) {}
    int get_bit() {
        if (pos_ >= limit_) throw CorruptStreamError("eg_decode: truncated payload");
        std::size_t byte = static_cast<std::size_t>(pos_ >> 3);
        int b = (bytes_[byte] >> (7 - (pos_ & 7))) & 1;
        ++pos_;
        return b;
    }
    std::uint64_t get_bits(int count) {
        std::uint64_t v = 0;
        for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint64_t>(get_bit());
        return v;
    }
    std::uint64_t consumed() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t limit_;
    std::uint64_t pos_ = 0;
};

}  // namespace

EncodedBlob eg_encode(std::span<const std::uint64_t> values, int k, std::uint32_t tensor_id,
                      std::uint8_t n, const std::vector<std::uint32_t>& dims) {
    if (k < 0 || k > 15) throw std::invalid_argument("eg_encode: k must be in [0, 15]");
    BitWriter writer;
    for (std::uint64_t v : values) {
        std::uint64_t m = v + (std::uint64_t{1} << k);
        int floor_log2 = std::bit_width(m) - 1;
        int zeros = floor_log2 - k;
        for (int i = 0; i < zeros; ++i) writer.put_bit(0);
        writer.put_bits(m, floor_log2 + 1);
    }
    EncodedBlob blob;
    blob.header.tensor_id = tensor_id;
    blob.header.element_count = static_cast<std::uint32_t>(values.size());
    blob.header.n = n;
    blob.header.k = static_cast<std::uint8_t>(k);
    blob.header.dims = dims.empty() ? std::vector<std::uint32_t>{static_cast<std::uint32_t>(values.size())} : dims;
    blob.bit_length = writer.bit_count();
    blob.payload = writer.take();
    return blob;
}

std::vector<std::uint64_t> eg_decode(const EncodedBlob& blob) {
    if (blob.payload.size() != (blob.bit_length + 7) / 8)
        throw CorruptStreamError("eg_decode: payload size does not match bit_length");
    BitReader reader(blob.payload, blob.bit_length);
    int k = blob.header.k;
    std::vector<std::uint64_t> out;
    out.reserve(blob.header.element_count);
    for (std::uint32_t i = 0; i < blob.header.element_count; ++i) {
        int zeros = 0;
        while (reader.get_bit() == 0) {
            if (++zeros > 63) throw CorruptStreamError("eg_decode: runaway zero prefix");
        }
        // The consumed 1 is the top bit of m; floor(log2 m) = zeros + k.
        int rest = zeros + k;
        std::uint64_t m = (std::uint64_t{1} << rest) | reader.get_bits(rest);
        out.push_back(m - (std::uint64_t{1} << k));
    }
    if (reader.consumed() != blob.bit_length)
        throw CorruptStreamError("eg_decode: element count does not consume the stream");
    return out;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> b) : b_(b) {}
    std::uint8_t u8() {
        need(1);
        return b_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b_[pos_++]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b_[pos_++]) << (8 * i);
        return v;
    }
    std::vector<std::uint8_t> bytes(std::size_t count) {
        need(count);
        std::vector<std::uint8_t> v(b_.begin() + pos_, b_.begin() + pos_ + count);
        pos_ += count;
        return v;
    }
    std::size_t remaining() const { return b_.size() - pos_; }

private:
    void need(std::size_t count) const {
        if (pos_ + count > b_.size()) throw CorruptStreamError("parse_blob: truncated frame");
    }
    std::span<const std::uint8_t> b_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_blob(const EncodedBlob& blob) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), {'E', 'G', 'B', '1'});
    put_u32(out, blob.header.tensor_id);
    put_u32(out, blob.header.element_count);
    out.push_back(blob.header.n);
    out.push_back(blob.header.k);
    out.push_back(static_cast<std::uint8_t>(blob.header.dims.size()));
    for (std::uint32_t d : blob.header.dims) put_u32(out, d);
    put_u64(out, blob.bit_length);
    out.insert(out.end(), blob.payload.begin(), blob.payload.end());
    return out;
}

EncodedBlob parse_blob(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto magic = r.bytes(4);
    if (std::memcmp(magic.data(), "EGB1", 4) != 0)
        throw CorruptStreamError("parse_blob: bad magic");
    EncodedBlob blob;
    blob.header.tensor_id = r.u32();
    blob.header.element_count = r.u32();
    blob.header.n = r.u8();
    blob.header.k = r.u8();
    std::uint8_t rank = r.u8();
    blob.header.dims.resize(rank);
    for (int i = 0; i < rank; ++i) blob.header.dims[i] = r.u32();
    blob.bit_length = r.u64();
    std::size_t payload_len = static_cast<std::size_t>((blob.bit_length + 7) / 8);
    if (r.remaining() != payload_len)
        throw CorruptStreamError("parse_blob: payload length mismatch");
    blob.payload = r.bytes(payload_len);
    return blob;
}

double rate(const Tensor& x, QuantSpec spec) {
    if (x.numel() == 0) throw std::domain_error("rate: empty tensor");
    QuantTensor q = quantize(x, spec);
    std::uint64_t total = 0;
    for (std::int32_t level : q.values)
        total += static_cast<std::uint64_t>(
            eg_code_length(static_cast<std::uint64_t>(zigzag_map(level)), spec.k));
    return static_cast<double>(total) / static_cast<double>(x.numel());
}

Tensor rate_grad(const Tensor& x, QuantSpec spec, double eps) {
    if (x.numel() == 0) throw std::domain_error("rate_grad: empty tensor");
    if (spec.n == 0) throw std::domain_error("rate_grad: n must be positive");
    if (!(eps > 0.0)) throw std::domain_error("rate_grad: eps must be positive");
    validate(spec);
    double coeff = std::ldexp(1.0, spec.n + 2) / (spec.n * std::log(2.0));
    double scale = std::ldexp(1.0, spec.n);
    Tensor out(x.dims);
    for (std::size_t i = 0; i < x.numel(); ++i) {
        double v = x.data[i];
        double sign = (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        double level = std::floor(scale * std::abs(v));
        double mapped = level > 0.0 ? 2.0 * level - 1.0 : 0.0;
        out.data[i] = mapped > 0.0 ? coeff * sign / (mapped + eps) : 0.0;
    }
    return out;
}

double huffman_avg_length(std::span<const std::int64_t> values) {
    if (values.empty()) throw std::invalid_argument("huffman_avg_length: empty input");
    std::map<std::int64_t, std::uint64_t> hist;
    for (std::int64_t v : values) hist[v]++;
    if (hist.size() == 1) return 1.0;

    // (count, creation order) keys make merges deterministic; leaves are
    // created in ascending symbol order.
    struct Node {
        std::uint64_t count;
        std::uint64_t order;
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(hist.size() * 2);
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    std::priority_queue<std::pair<Key, int>, std::vector<std::pair<Key, int>>, std::greater<>> heap;
    std::uint64_t order = 0;
    std::vector<std::uint64_t> leaf_counts;
    for (const auto& [sym, count] : hist) {
        (void)sym;
        nodes.push_back({count, order, -1, -1});
        leaf_counts.push_back(count);
        heap.push({{count, order}, static_cast<int>(nodes.size() - 1)});
        ++order;
    }
    while (heap.size() > 1) {
        auto [ka, a] = heap.top();
        heap.pop();
        auto [kb, b] = heap.top();
        heap.pop();
        (void)ka;
        (void)kb;
        nodes.push_back({nodes[a].count + nodes[b].count, order, a, b});
        heap.push({{nodes.back().count, order}, static_cast<int>(nodes.size() - 1)});
        ++order;
    }
    int root = heap.top().second;

    std::size_t leaf_count = leaf_counts.size();
    std::vector<std::pair<int, int>> stack{{root, 0}};
    std::uint64_t weighted = 0;
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& node = nodes[idx];
        if (node.left < 0) {
            weighted += node.count * static_cast<std::uint64_t>(depth);
        } else {
            stack.push_back({node.left, depth + 1});
            stack.push_back({node.right, depth + 1});
        }
    }
    (void)leaf_count;
    return static_cast<double>(weighted) / static_cast<double>(values.size());
}

int fl_bits(std::span<const std::int32_t> levels) {
    if (levels.empty()) throw std::invalid_argument("fl_bits: empty input");
    std::uint64_t max_mapped = 0;
    for (std::int32_t q : levels)
        max_mapped = std::max(max_mapped, static_cast<std::uint64_t>(zigzag_map(q)));
    int bits = std::bit_width(max_mapped);  // == ceil(log2(max+1))
    return std::max(bits, 1);
}

}  // namespace ggopt::coding
