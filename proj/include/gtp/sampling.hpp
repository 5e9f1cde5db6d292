#pragma once

#include "gtp/estimators.hpp"
#include "gtp/rng.hpp"

namespace gtp {

// k distinct serials drawn uniformly without replacement from
// {n1, ..., n1 + n - 1}; every k-subset is equally likely. Dense draws
// (k/n > 1/8) use a partial Fisher-Yates shuffle; sparse draws use hash-set
// rejection. The threshold is a speed choice only: both routes are uniform
// and both are exercised by the frequency tests.
SerialSample draw_sample(long n1, long n, long k, SplitMix64& stream);

} // namespace gtp
