#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "asyncbcd/vector_ops.hpp"

namespace asyncbcd {

struct DatasetProvenance {
  enum class Kind { synthetic, loaded } kind = Kind::synthetic;
  std::uint64_t seed = 0;
  std::string path;

  friend bool operator==(const DatasetProvenance&, const DatasetProvenance&) = default;
};

/// Dense labelled samples; features are stored row-major.
struct Dataset {
  std::size_t samples = 0;
  std::size_t features = 0;
  Vector values;
  std::vector<int> labels;
  DatasetProvenance provenance;

  std::span<const double> row(std::size_t k) const { return {values.data() + k * features, features}; }
  std::span<double> row(std::size_t k) { return {values.data() + k * features, features}; }
  double at(std::size_t k, std::size_t c) const { return values[k * features + c]; }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct SyntheticSpec {
  std::size_t samples = 0;
  std::size_t features = 0;
  double separation = 0.0;
  std::uint64_t seed = 0;
  /// 0 draws isotropic unit-variance clouds. r > 0 draws each sample from an r-dimensional
  /// Gaussian factor model, offset by the class mean along the first factor direction.
  std::size_t latent_rank = 0;
};

/// Labels alternate 0, 1, 0, ... by sample index; class means sit at -separation/2 and
/// +separation/2 along a seeded direction. Throws std::invalid_argument when samples < 2 or features == 0.
Dataset generate_synthetic(const SyntheticSpec& spec);

/// Reads `label idx:val idx:val ...` lines with 1-based strictly increasing indices. Labels -1/+1
/// map to 0/1. When features is 0 the width is the largest index seen. Errors name the line.
Dataset load_sparse_text(const std::filesystem::path& path, std::size_t features = 0);

/// Inverse of load_sparse_text: writes non-zero entries with 17 significant digits.
void save_sparse_text(const Dataset& d, const std::filesystem::path& path);

/// Column mean 0 and unbiased variance 1; zero-variance columns become 0.
Dataset standardize(Dataset d);
/// Each row scaled to unit Euclidean norm. Throws std::invalid_argument naming the first all-zero row.
Dataset normalize_rows(Dataset d);
/// standardize followed by normalize_rows. Throws std::invalid_argument when samples < 2.
Dataset preprocess(Dataset d);

}  // namespace asyncbcd
