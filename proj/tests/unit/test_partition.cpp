#include <gtest/gtest.h>

#include "asyncbcd/partition.hpp"

using namespace asyncbcd;

TEST(Partition, EqualSplitPutsRemainderFirst) {
  const auto p = make_partition(5, EqualSplit{2});
  EXPECT_EQ(p.sizes(), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(p.offsets(), (std::vector<std::size_t>{0, 3}));
}

TEST(Partition, ExplicitSizesVerbatim) {
  const auto p = make_partition(4, ExplicitSizes{{1, 1, 1, 1}});
  EXPECT_EQ(p.blocks(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(p.size(i), 1u);
}

TEST(Partition, CaseStudyShape) {
  const auto p = make_partition(2000, EqualSplit{20});
  EXPECT_EQ(p.blocks(), 20u);
  for (auto s : p.sizes()) EXPECT_EQ(s, 100u);
}

TEST(Partition, Rejections) {
  EXPECT_THROW(make_partition(3, EqualSplit{4}), std::invalid_argument);
  EXPECT_THROW(make_partition(3, EqualSplit{0}), std::invalid_argument);
  EXPECT_THROW(make_partition(5, ExplicitSizes{{2, 2}}), std::invalid_argument);
  EXPECT_THROW(make_partition(2, ExplicitSizes{{2, 0}}), std::invalid_argument);
}

TEST(Partition, EqualSizesDifferByAtMostOne) {
  for (std::size_t m = 1; m <= 40; ++m)
    for (std::size_t n = 1; n <= m; ++n) {
      const auto p = make_partition(m, EqualSplit{n});
      const auto [lo, hi] = std::minmax_element(p.sizes().begin(), p.sizes().end());
      EXPECT_LE(*hi - *lo, 1u);
      EXPECT_EQ(p.dimension(), m);
    }
}

TEST(Partition, BlockViewSlices) {
  const auto p = make_partition(4, ExplicitSizes{{2, 2}});
  const std::vector<double> x{1, 2, 3, 4};
  const auto v = block_view(p, x, 1);
  EXPECT_EQ(std::vector<double>(v.begin(), v.end()), (std::vector<double>{3, 4}));

  const auto q = make_partition(4, ExplicitSizes{{3, 1}});
  const auto w = block_view(q, x, 0);
  EXPECT_EQ(std::vector<double>(w.begin(), w.end()), (std::vector<double>{1, 2, 3}));

  const auto r = make_partition(2, ExplicitSizes{{1, 1}});
  const std::vector<double> y{7, 9};
  EXPECT_EQ(block_view(r, y, 0)[0], 7.0);
  EXPECT_THROW(block_view(r, y, 2), std::out_of_range);
  EXPECT_THROW(block_view(r, x, 0), std::invalid_argument);
}

TEST(Partition, RoundTripReconstructs) {
  const auto p = make_partition(7, EqualSplit{3});
  const std::vector<double> x{0.5, -1, 2.25, 3, 1e-300, -7, 11};
  std::vector<double> y(7, 0.0);
  for (std::size_t i = 0; i < p.blocks(); ++i) {
    const auto v = block_view(p, x, i);
    std::copy(v.begin(), v.end(), y.begin() + static_cast<std::ptrdiff_t>(p.offset(i)));
  }
  EXPECT_EQ(x, y);
  EXPECT_EQ(p.block_of(0), 0u);
  EXPECT_EQ(p.block_of(2), 0u);
  EXPECT_EQ(p.block_of(3), 1u);
  EXPECT_EQ(p.block_of(6), 2u);
}
