#include "asyncbcd/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace asyncbcd {

BlockPartition::BlockPartition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("partition needs at least one block");
  offsets_.reserve(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] == 0) throw std::invalid_argument("block " + std::to_string(i) + " has size 0");
    offsets_.push_back(dimension_);
    dimension_ += sizes_[i];
  }
}

std::size_t BlockPartition::block_of(std::size_t k) const {
  if (k >= dimension_) throw std::out_of_range("coordinate " + std::to_string(k) + " outside dimension " + std::to_string(dimension_));
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
  return static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
}

std::span<const double> BlockPartition::block(std::span<const double> x, std::size_t i) const {
  return x.subspan(offset(i), size(i));
}

std::span<double> BlockPartition::block(std::span<double> x, std::size_t i) const {
  return x.subspan(offset(i), size(i));
}

BlockPartition make_partition(std::size_t m, const PartitionSpec& spec) {
  if (const auto* eq = std::get_if<EqualSplit>(&spec)) {
    if (eq->n == 0) throw std::invalid_argument("processor count must be positive");
    if (eq->n > m) {
      throw std::invalid_argument("cannot split dimension " + std::to_string(m) + " into " + std::to_string(eq->n) +
                                  " non-empty blocks");
    }
    std::vector<std::size_t> sizes(eq->n, m / eq->n);
    for (std::size_t i = 0; i < m % eq->n; ++i) ++sizes[i];
    return BlockPartition(std::move(sizes));
  }
  const auto& ex = std::get<ExplicitSizes>(spec);
  const std::size_t total = std::accumulate(ex.sizes.begin(), ex.sizes.end(), std::size_t{0});
  if (total != m) {
    throw std::invalid_argument("block sizes sum to " + std::to_string(total) + " but dimension is " + std::to_string(m));
  }
  return BlockPartition(ex.sizes);
}

std::span<const double> block_view(const BlockPartition& partition, std::span<const double> x, std::size_t i) {
  if (i >= partition.blocks()) {
    throw std::out_of_range("block index " + std::to_string(i) + " out of range for " +
                            std::to_string(partition.blocks()) + " blocks");
  }
  if (x.size() != partition.dimension()) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) + ", partition expects " +
                                std::to_string(partition.dimension()));
  }
  return partition.block(x, i);
}

}  // namespace asyncbcd
