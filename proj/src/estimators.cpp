#include "gtp/estimators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gtp {

SerialSample SerialSample::from_serials(std::vector<long> values) {
    if (values.empty()) {
        throw std::invalid_argument("SerialSample: no serials given");
    }
    std::sort(values.begin(), values.end());
    if (values.front() < 1) {
        throw std::invalid_argument("SerialSample: serials must be positive");
    }
    if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
        throw std::invalid_argument("SerialSample: serials must be pairwise distinct");
    }
    SerialSample sample;
    sample.k = static_cast<long>(values.size());
    sample.m_min = values.front();
    sample.m_max = values.back();
    sample.spread = sample.m_max - sample.m_min;
    sample.serials = std::move(values);
    return sample;
}

Estimate estimate_known_min(long m, long k) {
    if (k < 1) {
        throw std::invalid_argument("estimate_known_min: k must be >= 1");
    }
    if (m < k) {
        throw std::invalid_argument("estimate_known_min: impossible observation m = " +
                                    std::to_string(m) + " < k = " + std::to_string(k));
    }
    return Estimate{Method::KnownMin, invert_expectation(Rational(m), k, Variable::Max), k, m};
}

Estimate estimate_unknown_min(long s, long k) {
    if (k < 2) {
        throw std::invalid_argument("estimate_unknown_min: k must be >= 2");
    }
    if (s < k - 1) {
        throw std::invalid_argument("estimate_unknown_min: impossible spread s = " +
                                    std::to_string(s) + " < k - 1 = " + std::to_string(k - 1));
    }
    return Estimate{Method::UnknownMin, invert_expectation(Rational(s), k, Variable::Spread), k, s};
}

Estimate estimate_from_sample(const SerialSample& sample, Method method,
                              std::optional<long> known_min) {
    if (method == Method::KnownMin) {
        if (!known_min.has_value()) {
            throw std::invalid_argument("estimate_from_sample: KnownMin requires known_min");
        }
        if (*known_min > sample.m_min) {
            throw std::invalid_argument("estimate_from_sample: known_min " +
                                        std::to_string(*known_min) +
                                        " exceeds the observed minimum " +
                                        std::to_string(sample.m_min));
        }
        return estimate_known_min(sample.m_max - *known_min + 1, sample.k);
    }
    return estimate_unknown_min(sample.spread, sample.k);
}

Rational invert_expectation(const Rational& observed, long k, Variable variable) {
    if (variable == Variable::Max) {
        if (k < 1) {
            throw std::invalid_argument("invert_expectation: k must be >= 1 for Max");
        }
        return observed * make_rational(k + 1, k) - 1;
    }
    if (k < 2) {
        throw std::invalid_argument("invert_expectation: k must be >= 2 for Spread");
    }
    return observed * make_rational(k + 1, k - 1) - 1;
}

} // namespace gtp
