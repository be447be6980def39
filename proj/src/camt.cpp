#include "lesioncam/camt.hpp"

#include "lesioncam/errors.hpp"
#include "io_util.hpp"

#include <bit>
#include <cstring>

namespace lesioncam::camt {
namespace {

using Kind = FormatError::Kind;

constexpr std::size_t kFixedHeader = 7;

static_assert(std::endian::native == std::endian::little, "CAMT I/O assumes a little-endian host");
static_assert(sizeof(float) == 4);

std::size_t checked_product(const std::vector<std::uint32_t>& dims) {
  if (dims.empty() || dims.size() > 4) {
    throw FormatError(Kind::BadDims, "CAMT ndim must be in 1..4, got " + std::to_string(dims.size()));
  }
  std::size_t n = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) {
      throw FormatError(Kind::BadDims, "CAMT dims[" + std::to_string(i) + "] is zero");
    }
    n *= dims[i];
    if (n > kMaxElements) {
      throw FormatError(Kind::DimOverflow, "CAMT dims product exceeds 2^31 at dims[" + std::to_string(i) + "]");
    }
  }
  return n;
}

std::size_t dtype_size(Dtype d) { return d == Dtype::F32 ? 4 : 1; }

}  // namespace

std::size_t Tensor::element_count() const {
  return std::visit([](const auto& v) { return v.size(); }, values);
}

Tensor decode(std::span<const std::byte> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "CAMT", 4) != 0) {
    throw FormatError(Kind::BadMagic, "CAMT magic: expected \"CAMT\"");
  }
  if (bytes.size() < kFixedHeader) {
    throw FormatError(Kind::TruncatedPayload, "CAMT header: truncated before ndim");
  }
  const auto version = std::to_integer<std::uint8_t>(bytes[4]);
  if (version != kVersion) {
    throw FormatError(Kind::UnsupportedVersion, "CAMT version: unsupported value " + std::to_string(version));
  }
  const auto dtype_byte = std::to_integer<std::uint8_t>(bytes[5]);
  if (dtype_byte > 1) {
    throw FormatError(Kind::UnsupportedDtype, "CAMT dtype: unsupported value " + std::to_string(dtype_byte));
  }
  const auto dtype = static_cast<Dtype>(dtype_byte);
  const auto ndim = std::to_integer<std::uint8_t>(bytes[6]);
  if (ndim < 1 || ndim > 4) {
    throw FormatError(Kind::BadDims, "CAMT ndim: must be in 1..4, got " + std::to_string(ndim));
  }
  const std::size_t header = kFixedHeader + 4 * std::size_t{ndim};
  if (bytes.size() < header) {
    throw FormatError(Kind::TruncatedPayload, "CAMT dims: truncated header");
  }

  Tensor t;
  t.dims.resize(ndim);
  std::memcpy(t.dims.data(), bytes.data() + kFixedHeader, 4 * std::size_t{ndim});
  const std::size_t n = checked_product(t.dims);

  const std::size_t payload = n * dtype_size(dtype);
  const std::size_t available = bytes.size() - header;
  if (available < payload) {
    throw FormatError(Kind::TruncatedPayload, "CAMT payload: expected " + std::to_string(payload) +
                                                  " bytes, found " + std::to_string(available));
  }
  if (available > payload) {
    throw FormatError(Kind::TrailingData, "CAMT payload: " + std::to_string(available - payload) +
                                              " unexpected trailing bytes");
  }

  const std::byte* src = bytes.data() + header;
  if (dtype == Dtype::F32) {
    std::vector<float> v(n);
    std::memcpy(v.data(), src, payload);
    t.values = std::move(v);
  } else {
    std::vector<std::uint8_t> v(n);
    std::memcpy(v.data(), src, payload);
    t.values = std::move(v);
  }
  return t;
}

std::vector<std::byte> encode(const Tensor& tensor) {
  const std::size_t n = checked_product(tensor.dims);
  if (n != tensor.element_count()) {
    throw FormatError(Kind::ShapeMismatch, "CAMT encode: dims describe " + std::to_string(n) +
                                               " elements but " + std::to_string(tensor.element_count()) +
                                               " values given");
  }
  const auto dtype = tensor.dtype();
  const std::size_t header = kFixedHeader + 4 * tensor.dims.size();
  std::vector<std::byte> out(header + n * dtype_size(dtype));
  std::memcpy(out.data(), "CAMT", 4);
  out[4] = std::byte{kVersion};
  out[5] = std::byte{static_cast<std::uint8_t>(dtype)};
  out[6] = std::byte{static_cast<std::uint8_t>(tensor.dims.size())};
  std::memcpy(out.data() + kFixedHeader, tensor.dims.data(), 4 * tensor.dims.size());
  std::visit([&](const auto& v) { std::memcpy(out.data() + header, v.data(), v.size() * sizeof(v[0])); },
             tensor.values);
  return out;
}

Tensor read_file(const std::string& path) {
  const auto bytes = detail::read_bytes(path);
  try {
    return decode(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Tensor& tensor) {
  detail::write_bytes(path, encode(tensor));
}

}  // namespace lesioncam::camt
