#pragma once

#include "gtp/simulator.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gtp {

// The feature columns carry no independent variation (all x equal, duplicated
// columns, numerically rank-deficient Gram matrix).
struct SingularDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inputs outside a model's domain (e.g. nonpositive values under a log).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Column-major design: features[j] is the j-th named column.
struct DesignMatrix {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> features;
    std::vector<double> response;

    size_t rows() const { return response.size(); }
    void validate() const;
};

struct RegressionFit {
    std::vector<std::pair<std::string, double>> coefficients;
    double residual_sum_squares{0.0};
    double r_squared{0.0};
    double rmse{0.0}; // sqrt(rss / rows)
    std::string model_label;

    double coef(const std::string& name) const;
};

// y = a x + b by the closed-form 2x2 normal-equation solve. Throws
// SingularDesign unless at least two x values differ (relative determinant
// threshold 1e-12), InsufficientData below 2 pairs.
RegressionFit fit_simple(const std::vector<std::pair<double, double>>& pairs);

// General linear-in-parameters least squares via the normal equations.
// The Gram matrix is scaled to unit diagonal before Gaussian elimination
// with partial pivoting; any pivot below 1e-12 raises SingularDesign.
// R-squared is centered when an all-ones intercept column is present and
// uncentered otherwise; model_label records which was used.
RegressionFit fit_linear(const DesignMatrix& design);

// log N ~ a log(m) + b (1/k), no intercept. Expects serials starting at 1,
// as all the simulation recipes produce. Coefficients are named a and b.
RegressionFit fit_log_model(const std::vector<TrialRow>& rows);
RegressionFit fit_log_model(const std::vector<TrialRecord>& records);

// y = B x^a fitted as log y = a log x + b on strictly positive data;
// reports a, b and B = exp(b).
RegressionFit fit_power_law(const std::vector<std::pair<double, double>>& pairs);

// One N-on-m line per requested k. A k with fewer than two distinct m values
// is reported singular rather than failing the batch.
struct PerKFit {
    long k{0};
    bool singular{false};
    double slope{0.0};
    double intercept{0.0};
};

std::vector<PerKFit> fit_per_k_slopes(const std::vector<TrialRow>& rows,
                                      const std::vector<long>& k_values);
std::vector<PerKFit> fit_per_k_slopes(const std::vector<TrialRecord>& records,
                                      const std::vector<long>& k_values);

} // namespace gtp
