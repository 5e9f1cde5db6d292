#include "gtp/sampling.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gtp {

SerialSample draw_sample(long n1, long n, long k, SplitMix64& stream) {
    if (n1 < 1 || n < 1) {
        throw std::invalid_argument("draw_sample: population must be nonempty and positive");
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("draw_sample: k must satisfy 1 <= k <= n");
    }

    std::vector<long> picked;
    picked.reserve(static_cast<size_t>(k));

    if (8 * k >= n) {
        // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
        std::vector<long> pool(static_cast<size_t>(n));
        std::iota(pool.begin(), pool.end(), n1);
        for (long i = 0; i < k; ++i) {
            long j = i + static_cast<long>(stream.uniform_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
            picked.push_back(pool[static_cast<size_t>(i)]);
        }
    } else {
        std::unordered_set<long> seen;
        seen.reserve(static_cast<size_t>(2 * k));
        while (static_cast<long>(picked.size()) < k) {
            long v = n1 + static_cast<long>(stream.uniform_below(static_cast<std::uint64_t>(n)));
            if (seen.insert(v).second) {
                picked.push_back(v);
            }
        }
    }

    return SerialSample::from_serials(std::move(picked));
}

} // namespace gtp
