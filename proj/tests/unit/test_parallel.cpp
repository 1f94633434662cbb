#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "parastab/parallel.hpp"

using namespace parastab;

TEST(ParallelMap, ResultsKeyedByIndex) {
    for (unsigned w : {0u, 1u, 2u, 5u, 64u}) {
        const auto out = parallel_map(1000, w, [](std::size_t i) { return i * i; });
        ASSERT_EQ(out.size(), 1000u);
        for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
    }
}

TEST(ParallelMap, EmptyInput) {
    EXPECT_TRUE(parallel_map(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST(ParallelMap, EveryIndexRunsOnce) {
    std::atomic<int> calls{0};
    parallel_map(257, 4, [&](std::size_t) { return ++calls; });
    EXPECT_EQ(calls.load(), 257);
}

TEST(ParallelMap, PropagatesFirstException) {
    EXPECT_THROW(parallel_map(100, 3,
                              [](std::size_t i) {
                                  if (i == 42) throw std::runtime_error("boom");
                                  return 0;
                              }),
                 std::runtime_error);
}
