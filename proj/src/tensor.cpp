#include "loopkit/tensor.hpp"
#include "loopkit/errors.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace loopkit {

std::size_t element_count(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw ParamError("tensor dims must be positive");
        if (d > std::numeric_limits<std::size_t>::max() / n)
            throw ParamError("tensor dims overflow");
        n *= d;
    }
    return n;
}

TensorF32::TensorF32(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
    if (dims_.empty()) throw ParamError("tensor needs at least one dim");
    data_.assign(element_count(dims_), 0.0f);
}

TensorF32::TensorF32(std::vector<std::size_t> dims, std::vector<float> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    if (dims_.empty()) throw ParamError("tensor needs at least one dim");
    if (data_.size() != element_count(dims_))
        throw ShapeError("tensor data length does not match dims");
    require_finite("tensor");
}

void TensorF32::require_finite(const std::string& what) const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i]))
            throw ParamError(what + " contains a non-finite value at flat index " +
                             std::to_string(i));
    }
}

namespace {

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

std::uint32_t get_u32_le(std::span<const std::uint8_t> bytes, std::size_t& off) {
    if (off + 4 > bytes.size()) throw IoError("LTNS: truncated header");
    std::uint32_t v = static_cast<std::uint32_t>(bytes[off]) |
                      static_cast<std::uint32_t>(bytes[off + 1]) << 8 |
                      static_cast<std::uint32_t>(bytes[off + 2]) << 16 |
                      static_cast<std::uint32_t>(bytes[off + 3]) << 24;
    off += 4;
    return v;
}

} // namespace

std::vector<std::uint8_t> encode_ltns(const TensorF32& t) {
    std::vector<std::uint8_t> out;
    out.reserve(12 + 4 * t.ndim() + 4 * t.size());
    out.insert(out.end(), {'L', 'T', 'N', 'S'});
    put_u32_le(out, 1u);
    put_u32_le(out, static_cast<std::uint32_t>(t.ndim()));
    for (std::size_t d : t.dims()) {
        if (d > std::numeric_limits<std::uint32_t>::max())
            throw ParamError("LTNS: dim too large for u32");
        put_u32_le(out, static_cast<std::uint32_t>(d));
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        put_u32_le(out, std::bit_cast<std::uint32_t>(t[i]));
    }
    return out;
}

TensorF32 decode_ltns(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || bytes[0] != 'L' || bytes[1] != 'T' ||
        bytes[2] != 'N' || bytes[3] != 'S')
        throw IoError("LTNS: bad magic");
    std::size_t off = 4;
    std::uint32_t version = get_u32_le(bytes, off);
    if (version != 1) throw IoError("LTNS: unsupported version " + std::to_string(version));
    std::uint32_t ndim = get_u32_le(bytes, off);
    if (ndim == 0) throw IoError("LTNS: zero-dimensional tensor");
    std::vector<std::size_t> dims(ndim);
    for (std::uint32_t i = 0; i < ndim; ++i) {
        std::uint32_t d = get_u32_le(bytes, off);
        if (d == 0) throw IoError("LTNS: zero dim");
        dims[i] = d;
    }
    std::size_t count = element_count(dims);
    if (bytes.size() - off != count * 4)
        throw IoError("LTNS: payload size mismatch");
    std::vector<float> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t raw = get_u32_le(bytes, off);
        data[i] = std::bit_cast<float>(raw);
        if (!std::isfinite(data[i]))
            throw IoError("LTNS: non-finite value at flat index " + std::to_string(i));
    }
    return TensorF32(std::move(dims), std::move(data));
}

void write_ltns(const std::filesystem::path& path, const TensorF32& t) {
    std::vector<std::uint8_t> bytes = encode_ltns(t);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write: " + path.string());
}

TensorF32 read_ltns(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open: " + path.string());
    std::streamsize len = in.tellg();
    in.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len));
    in.read(reinterpret_cast<char*>(bytes.data()), len);
    if (!in) throw IoError("short read: " + path.string());
    return decode_ltns(bytes);
}

} // namespace loopkit
