#ifndef SEBOOST_DATA_HPP
#define SEBOOST_DATA_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seboost/core.hpp"

namespace seboost {

/// File system failures (open, read, write), as opposed to parse errors.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Dataset {
  Mat<double> inputs;   // N x d_in, one row per sample
  Mat<double> targets;  // N x d_out
  std::string name;

  Index size() const { return inputs.rows(); }
};

inline void check_dataset(const Dataset& ds) {
  if (ds.inputs.rows() < 1 || ds.inputs.rows() != ds.targets.rows()) {
    throw std::invalid_argument(
        "dataset needs at least one sample and matching input/target rows");
  }
  if (!ds.inputs.allFinite() || !ds.targets.allFinite()) {
    throw std::invalid_argument("dataset contains non-finite entries");
  }
}

/// Smooth six-input scalar target for the synthetic regression benchmark:
/// y = sin(u1*u2) + 0.5*(u3-u4)^2 + tanh(u5)*u6.
inline double regression_target(const Vec<double>& u) {
  if (u.size() != 6) {
    throw std::invalid_argument("regression target needs 6 inputs");
  }
  const double diff = u[2] - u[3];
  return std::sin(u[0] * u[1]) + 0.5 * diff * diff + std::tanh(u[4]) * u[5];
}

/// n samples with inputs uniform in [-1,1]^6, drawn row by row.
inline Dataset gen_regression(Index n, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("regression dataset needs n >= 2");
  }
  std::mt19937_64 gen(seed);
  Dataset ds;
  ds.name = "regression";
  ds.inputs.resize(n, 6);
  ds.targets.resize(n, 1);
  Vec<double> u(6);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < 6; ++j) u[j] = rng::symmetric(gen);
    ds.inputs.row(i) = u.transpose();
    ds.targets(i, 0) = regression_target(u);
  }
  return ds;
}

enum class IdxErrorKind {
  kTruncatedHeader,
  kBadMagic,
  kUnsupportedType,
  kDimensionOverflow,
  kTruncatedPayload,
  kTrailingBytes,
};

/// Parse failure; offset is the byte index at which the input became invalid
/// or ran out.
struct IdxParseError : std::runtime_error {
  IdxErrorKind kind;
  std::size_t offset;

  IdxParseError(IdxErrorKind k, std::size_t off, const std::string& what)
      : std::runtime_error(what), kind(k), offset(off) {}
};

/// In-memory IDX tensor container: big-endian header, unsigned-byte payload
/// kept raw so serialization round-trips bit for bit.
struct IdxFile {
  std::uint8_t dtype = 0x08;  // unsigned byte, the only supported element code
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> payload;

  std::size_t element_count() const {
    std::size_t count = 1;
    for (const auto d : dims) count *= d;
    return count;
  }
};

namespace detail {

inline std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes,
                               std::size_t offset) {
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

inline void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace detail

// Refusing payloads past 8 GiB keeps corrupt headers from driving allocation.
inline constexpr std::uint64_t kIdxMaxElements = std::uint64_t(1) << 33;

inline IdxFile parse_idx(const std::vector<std::uint8_t>& bytes) {
  const auto need = [&](std::size_t upto, IdxErrorKind kind,
                        const char* what) {
    if (bytes.size() < upto) {
      throw IdxParseError(kind, bytes.size(),
                          std::string(what) + " at byte " +
                              std::to_string(bytes.size()));
    }
  };
  need(4, IdxErrorKind::kTruncatedHeader, "truncated idx header");
  if (bytes[0] != 0 || bytes[1] != 0) {
    const std::size_t off = bytes[0] != 0 ? 0 : 1;
    throw IdxParseError(IdxErrorKind::kBadMagic, off,
                        "bad idx magic at byte " + std::to_string(off));
  }
  IdxFile f;
  f.dtype = bytes[2];
  if (f.dtype != 0x08) {
    throw IdxParseError(IdxErrorKind::kUnsupportedType, 2,
                        "unsupported idx element type at byte 2");
  }
  const std::size_t ndim = bytes[3];
  if (ndim == 0) {
    throw IdxParseError(IdxErrorKind::kBadMagic, 3,
                        "idx dimension count must be >= 1 at byte 3");
  }
  need(4 + 4 * ndim, IdxErrorKind::kTruncatedHeader, "truncated idx header");
  std::uint64_t count = 1;
  f.dims.resize(ndim);
  for (std::size_t d = 0; d < ndim; ++d) {
    const std::size_t off = 4 + 4 * d;
    f.dims[d] = detail::read_be32(bytes, off);
    count *= f.dims[d];
    if (count > kIdxMaxElements) {
      throw IdxParseError(IdxErrorKind::kDimensionOverflow, off,
                          "idx dimensions overflow at byte " +
                              std::to_string(off));
    }
  }
  const std::size_t header = 4 + 4 * ndim;
  need(header + count, IdxErrorKind::kTruncatedPayload,
       "truncated idx payload");
  if (bytes.size() > header + count) {
    const std::size_t off = header + static_cast<std::size_t>(count);
    throw IdxParseError(IdxErrorKind::kTrailingBytes, off,
                        "unexpected trailing bytes at byte " +
                            std::to_string(off));
  }
  f.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header),
                   bytes.end());
  return f;
}

inline std::vector<std::uint8_t> serialize_idx(const IdxFile& f) {
  if (f.dims.empty() || f.dims.size() > 255) {
    throw std::invalid_argument("idx dimension count must be in [1,255]");
  }
  if (f.dtype != 0x08) {
    throw std::invalid_argument("only unsigned-byte idx payloads supported");
  }
  if (f.payload.size() != f.element_count()) {
    throw std::invalid_argument("idx payload size does not match dimensions");
  }
  std::vector<std::uint8_t> out;
  out.reserve(4 + 4 * f.dims.size() + f.payload.size());
  out.push_back(0);
  out.push_back(0);
  out.push_back(f.dtype);
  out.push_back(static_cast<std::uint8_t>(f.dims.size()));
  for (const auto d : f.dims) detail::append_be32(out, d);
  out.insert(out.end(), f.payload.begin(), f.payload.end());
  return out;
}

inline IdxFile read_idx(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failed on " + path);
  return parse_idx(bytes);
}

inline void write_idx(const IdxFile& f, const std::string& path) {
  const auto bytes = serialize_idx(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed on " + path);
}

/// Rows are samples, remaining dimensions flatten to features, bytes scale
/// to [0,1]; targets alias the inputs so the result feeds autoencoders.
inline Dataset dataset_from_idx(const IdxFile& f, std::string name) {
  const Index n = static_cast<Index>(f.dims[0]);
  if (n < 1) {
    throw std::invalid_argument("idx tensor holds no samples");
  }
  std::size_t features = 1;
  for (std::size_t d = 1; d < f.dims.size(); ++d) features *= f.dims[d];
  Dataset ds;
  ds.name = std::move(name);
  ds.inputs.resize(n, static_cast<Index>(features));
  for (Index i = 0; i < n; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * features;
    for (std::size_t j = 0; j < features; ++j) {
      ds.inputs(i, static_cast<Index>(j)) = f.payload[row + j] / 255.0;
    }
  }
  ds.targets = ds.inputs;
  return ds;
}

inline Dataset load_idx(const std::string& path) {
  return dataset_from_idx(read_idx(path),
                          std::filesystem::path(path).stem().string());
}

/// Uniform sample of n rows without replacement, deterministic per seed.
inline Dataset subset(const Dataset& ds, Index n, std::uint64_t seed) {
  if (n < 1 || n > ds.size()) {
    throw std::invalid_argument("subset size out of range");
  }
  std::mt19937_64 gen(seed);
  const auto indices = rng::sample_indices(ds.size(), n, gen);
  Dataset out;
  out.name = ds.name;
  out.inputs.resize(n, ds.inputs.cols());
  out.targets.resize(n, ds.targets.cols());
  for (Index i = 0; i < n; ++i) {
    out.inputs.row(i) = ds.inputs.row(indices[static_cast<std::size_t>(i)]);
    out.targets.row(i) = ds.targets.row(indices[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// First n_train rows become the training set, the rest the test set.
inline std::pair<Dataset, Dataset> split_at(const Dataset& ds, Index n_train) {
  if (n_train < 1 || n_train >= ds.size()) {
    throw std::invalid_argument("split point must leave both sides non-empty");
  }
  const Index n_test = ds.size() - n_train;
  Dataset train{ds.inputs.topRows(n_train), ds.targets.topRows(n_train),
                ds.name + "/train"};
  Dataset test{ds.inputs.bottomRows(n_test), ds.targets.bottomRows(n_test),
               ds.name + "/test"};
  return {std::move(train), std::move(test)};
}

/// Deterministic stand-in image set: every 28x28 frame sums one to three
/// Gaussian bumps, quantized to bytes. Matches the shapes and value range of
/// handwritten-digit files without depending on any downloaded data.
inline IdxFile synthetic_images(Index n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("need at least one image");
  }
  IdxFile f;
  f.dims = {static_cast<std::uint32_t>(n), 28, 28};
  f.payload.resize(static_cast<std::size_t>(n) * 784);
  std::mt19937_64 gen(seed);
  std::array<double, 784> acc{};
  for (Index img = 0; img < n; ++img) {
    acc.fill(0.0);
    const int bumps = 1 + static_cast<int>(rng::bounded(gen, 3));
    for (int b = 0; b < bumps; ++b) {
      const double cx = 4.0 + 20.0 * rng::canonical(gen);
      const double cy = 4.0 + 20.0 * rng::canonical(gen);
      const double sigma = 1.5 + 2.5 * rng::canonical(gen);
      const double amp = 0.5 + 0.5 * rng::canonical(gen);
      for (int y = 0; y < 28; ++y) {
        for (int x = 0; x < 28; ++x) {
          const double dx = x - cx;
          const double dy = y - cy;
          acc[static_cast<std::size_t>(y) * 28 + x] +=
              amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        }
      }
    }
    for (std::size_t p = 0; p < 784; ++p) {
      const double v = std::min(1.0, acc[p]);
      f.payload[static_cast<std::size_t>(img) * 784 + p] =
          static_cast<std::uint8_t>(std::lround(255.0 * v));
    }
  }
  return f;
}

}  // namespace seboost

#endif  // SEBOOST_DATA_HPP
