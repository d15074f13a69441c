#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace loopkit {

// Dense row-major float32 tensor. Construction validates that the element
// count matches the dims and that every value is finite; operations that
// build tensors from scratch are expected to keep it that way.
class TensorF32 {
public:
    TensorF32() = default;
    explicit TensorF32(std::vector<std::size_t> dims);                     // zero-filled
    TensorF32(std::vector<std::size_t> dims, std::vector<float> data);

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t ndim() const { return dims_.size(); }
    std::size_t dim(std::size_t i) const { return dims_[i]; }
    std::size_t size() const { return data_.size(); }

    float* data() { return data_.data(); }
    const float* data() const { return data_.data(); }
    float& operator[](std::size_t i) { return data_[i]; }
    float operator[](std::size_t i) const { return data_[i]; }

    std::span<const float> values() const { return data_; }

    bool same_dims(const TensorF32& other) const { return dims_ == other.dims_; }

    // Throws ParamError if any element is NaN/Inf. `what` names the tensor
    // in the message.
    void require_finite(const std::string& what) const;

private:
    std::vector<std::size_t> dims_;
    std::vector<float> data_;
};

std::size_t element_count(const std::vector<std::size_t>& dims);

// --- LTNS container ---------------------------------------------------------
//
// Byte-exact layout, all integers little-endian:
//   magic   "LTNS"          4 bytes
//   version u32 = 1
//   ndim    u32
//   dims    ndim x u32
//   data    product(dims) x f32, row-major
// No padding, no checksum.

void write_ltns(const std::filesystem::path& path, const TensorF32& t);
TensorF32 read_ltns(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_ltns(const TensorF32& t);
TensorF32 decode_ltns(std::span<const std::uint8_t> bytes);

} // namespace loopkit
