#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "bz/parallel.hpp"

namespace {

class ParallelFor : public ::testing::Test {
 protected:
  void SetUp() override { bz::set_thread_budget(4); }
  void TearDown() override { bz::set_thread_budget(0); }
};

TEST_F(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  bz::parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST_F(ParallelFor, RethrowsFirstError) {
  std::atomic<int> done{0};
  EXPECT_THROW(bz::parallel_for(100,
                                [&](std::size_t i) {
                                  if (i == 37) throw std::runtime_error("boom");
                                  done.fetch_add(1);
                                }),
               std::runtime_error);
  EXPECT_EQ(done.load(), 99);
}

TEST_F(ParallelFor, NestedCallsComplete) {
  std::atomic<int> total{0};
  bz::parallel_for(8, [&](std::size_t) {
    bz::parallel_for(8, [&](std::size_t) { total.fetch_add(1); });
  });
  EXPECT_EQ(total.load(), 64);
}

TEST_F(ParallelFor, ZeroItemsIsNoOp) {
  bz::parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(ThreadBudget, OverrideAndReset) {
  bz::set_thread_budget(3);
  EXPECT_EQ(bz::thread_budget(), 3);
  bz::set_thread_budget(0);
  EXPECT_GE(bz::thread_budget(), 1);
}

}  // namespace
