#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace asyncbcd {

/// Split m into n contiguous blocks as evenly as possible; the first m % n blocks get one extra coordinate.
struct EqualSplit {
  std::size_t n = 1;
};

/// Use the listed block sizes verbatim.
struct ExplicitSizes {
  std::vector<std::size_t> sizes;
};

using PartitionSpec = std::variant<EqualSplit, ExplicitSizes>;

/// Decomposition x = (x_0, ..., x_{n-1}) of R^m into contiguous blocks, one per processor.
class BlockPartition {
 public:
  /// Throws std::invalid_argument when a size is zero.
  explicit BlockPartition(std::vector<std::size_t> sizes);

  std::size_t blocks() const noexcept { return sizes_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size(std::size_t i) const { return sizes_.at(i); }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

  /// Index of the block holding coordinate k.
  std::size_t block_of(std::size_t k) const;

  std::span<const double> block(std::span<const double> x, std::size_t i) const;
  std::span<double> block(std::span<double> x, std::size_t i) const;

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
};

/// Throws std::invalid_argument when n > m, n == 0, or explicit sizes do not sum to m.
BlockPartition make_partition(std::size_t m, const PartitionSpec& spec);

/// Contiguous slice [offset(i), offset(i) + size(i)) of x. Throws std::out_of_range for a bad block index
/// and std::invalid_argument when x does not have the partition's dimension.
std::span<const double> block_view(const BlockPartition& partition, std::span<const double> x, std::size_t i);

}  // namespace asyncbcd
