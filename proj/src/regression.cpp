#include "gtp/regression.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gtp {

namespace {

constexpr double kPivotTolerance = 1e-12;

double sum_squared_residuals(const DesignMatrix& design, const std::vector<double>& coef) {
    double rss = 0.0;
    for (size_t i = 0; i < design.rows(); ++i) {
        double fitted = 0.0;
        for (size_t j = 0; j < design.features.size(); ++j) {
            fitted += coef[j] * design.features[j][i];
        }
        double r = design.response[i] - fitted;
        rss += r * r;
    }
    return rss;
}

bool is_intercept_column(const std::vector<double>& col) {
    return std::all_of(col.begin(), col.end(), [](double v) { return v == 1.0; });
}

double centered_tss(const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) {
        mean += v;
    }
    mean /= static_cast<double>(y.size());
    double tss = 0.0;
    for (double v : y) {
        tss += (v - mean) * (v - mean);
    }
    return tss;
}

double uncentered_tss(const std::vector<double>& y) {
    double tss = 0.0;
    for (double v : y) {
        tss += v * v;
    }
    return tss;
}

double r_squared_from(double rss, double tss) {
    if (tss == 0.0) {
        return rss == 0.0 ? 1.0 : 0.0;
    }
    return 1.0 - rss / tss;
}

} // namespace

void DesignMatrix::validate() const {
    if (feature_names.size() != features.size()) {
        throw std::invalid_argument("DesignMatrix: one name per feature column required");
    }
    if (features.empty()) {
        throw std::invalid_argument("DesignMatrix: no feature columns");
    }
    for (const auto& col : features) {
        if (col.size() != response.size()) {
            throw std::invalid_argument("DesignMatrix: column length mismatch");
        }
    }
    if (rows() < features.size()) {
        throw InsufficientDataError("DesignMatrix: fewer rows than features");
    }
}

double RegressionFit::coef(const std::string& name) const {
    for (const auto& [n, v] : coefficients) {
        if (n == name) {
            return v;
        }
    }
    throw std::invalid_argument("RegressionFit: no coefficient named '" + name + "'");
}

RegressionFit fit_simple(const std::vector<std::pair<double, double>>& pairs) {
    const auto count = static_cast<double>(pairs.size());
    if (pairs.size() < 2) {
        throw InsufficientDataError("fit_simple: need at least 2 pairs");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pairs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    // Determinant of the 2x2 normal-equation matrix; essentially the
    // variance of the x values, so it vanishes exactly when they all agree.
    double det = count * sxx - sx * sx;
    if (det <= kPivotTolerance * count * sxx) {
        throw SingularDesignError("fit_simple: all x values equal (singular design)");
    }
    double a = (count * sxy - sx * sy) / det;
    double b = (sxx * sy - sx * sxy) / det;

    double rss = 0.0;
    std::vector<double> ys;
    ys.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        double r = y - (a * x + b);
        rss += r * r;
        ys.push_back(y);
    }
    RegressionFit fit;
    fit.coefficients = {{"a", a}, {"b", b}};
    fit.residual_sum_squares = rss;
    fit.r_squared = r_squared_from(rss, centered_tss(ys));
    fit.rmse = std::sqrt(rss / count);
    fit.model_label = "simple: y = a*x + b (centered R^2)";
    return fit;
}

RegressionFit fit_linear(const DesignMatrix& design) {
    design.validate();
    const size_t p = design.features.size();

    // Normal equations: G = X'X, rhs = X'y.
    std::vector<std::vector<double>> gram(p, std::vector<double>(p, 0.0));
    std::vector<double> rhs(p, 0.0);
    for (size_t a = 0; a < p; ++a) {
        for (size_t b = a; b < p; ++b) {
            double dot = 0.0;
            for (size_t i = 0; i < design.rows(); ++i) {
                dot += design.features[a][i] * design.features[b][i];
            }
            gram[a][b] = gram[b][a] = dot;
        }
        for (size_t i = 0; i < design.rows(); ++i) {
            rhs[a] += design.features[a][i] * design.response[i];
        }
    }

    // Scale to unit diagonal so the pivot threshold is relative.
    std::vector<double> scale(p);
    for (size_t j = 0; j < p; ++j) {
        if (gram[j][j] <= 0.0) {
            throw SingularDesignError("fit_linear: feature column '" + design.feature_names[j] +
                                      "' is identically zero");
        }
        scale[j] = std::sqrt(gram[j][j]);
    }
    for (size_t a = 0; a < p; ++a) {
        for (size_t b = 0; b < p; ++b) {
            gram[a][b] /= scale[a] * scale[b];
        }
        rhs[a] /= scale[a];
    }

    // Gaussian elimination with partial pivoting on [gram | rhs].
    std::vector<size_t> order(p);
    for (size_t j = 0; j < p; ++j) {
        order[j] = j;
    }
    for (size_t col = 0; col < p; ++col) {
        size_t pivot_row = col;
        for (size_t r = col + 1; r < p; ++r) {
            if (std::fabs(gram[r][col]) > std::fabs(gram[pivot_row][col])) {
                pivot_row = r;
            }
        }
        if (std::fabs(gram[pivot_row][col]) < kPivotTolerance) {
            throw SingularDesignError("fit_linear: rank-deficient design (pivot below " +
                                      std::to_string(kPivotTolerance) + " after scaling)");
        }
        std::swap(gram[col], gram[pivot_row]);
        std::swap(rhs[col], rhs[pivot_row]);
        for (size_t r = col + 1; r < p; ++r) {
            double f = gram[r][col] / gram[col][col];
            for (size_t c = col; c < p; ++c) {
                gram[r][c] -= f * gram[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> coef(p, 0.0);
    for (size_t col = p; col-- > 0;) {
        double v = rhs[col];
        for (size_t c = col + 1; c < p; ++c) {
            v -= gram[col][c] * coef[c];
        }
        coef[col] = v / gram[col][col];
    }
    for (size_t j = 0; j < p; ++j) {
        coef[j] /= scale[j];
    }

    bool has_intercept = false;
    for (const auto& colvals : design.features) {
        if (is_intercept_column(colvals)) {
            has_intercept = true;
            break;
        }
    }

    RegressionFit fit;
    for (size_t j = 0; j < p; ++j) {
        fit.coefficients.emplace_back(design.feature_names[j], coef[j]);
    }
    fit.residual_sum_squares = sum_squared_residuals(design, coef);
    double tss = has_intercept ? centered_tss(design.response) : uncentered_tss(design.response);
    fit.r_squared = r_squared_from(fit.residual_sum_squares, tss);
    fit.rmse = std::sqrt(fit.residual_sum_squares / static_cast<double>(design.rows()));
    fit.model_label = has_intercept ? "linear (centered R^2)" : "linear, no intercept (uncentered R^2)";
    return fit;
}

RegressionFit fit_log_model(const std::vector<TrialRow>& rows) {
    DesignMatrix design;
    design.feature_names = {"a", "b"};
    design.features.assign(2, {});
    for (const TrialRow& row : rows) {
        if (row.m_max < 1 || row.k < 1 || row.n_true < 1) {
            throw DomainError("fit_log_model: rows must have m, k, N >= 1");
        }
        design.features[0].push_back(std::log(static_cast<double>(row.m_max)));
        design.features[1].push_back(1.0 / static_cast<double>(row.k));
        design.response.push_back(std::log(static_cast<double>(row.n_true)));
    }
    RegressionFit fit = fit_linear(design);
    fit.model_label = "log model: log N = a*log(m) + b/k (uncentered R^2)";
    return fit;
}

RegressionFit fit_log_model(const std::vector<TrialRecord>& records) {
    return fit_log_model(to_rows(records));
}

RegressionFit fit_power_law(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<std::pair<double, double>> logged;
    logged.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        if (x <= 0.0 || y <= 0.0) {
            throw DomainError("fit_power_law: requires strictly positive data");
        }
        logged.emplace_back(std::log(x), std::log(y));
    }
    RegressionFit fit = fit_simple(logged);
    fit.coefficients.emplace_back("B", std::exp(fit.coef("b")));
    fit.model_label = "power law: y = B*x^a, fitted as log y = a*log x + b";
    return fit;
}

std::vector<PerKFit> fit_per_k_slopes(const std::vector<TrialRow>& rows,
                                      const std::vector<long>& k_values) {
    std::map<long, std::vector<std::pair<double, double>>> grouped;
    for (const TrialRow& row : rows) {
        grouped[row.k].emplace_back(static_cast<double>(row.m_max),
                                    static_cast<double>(row.n_true));
    }
    std::vector<PerKFit> out;
    out.reserve(k_values.size());
    for (long k : k_values) {
        PerKFit entry;
        entry.k = k;
        auto it = grouped.find(k);
        try {
            if (it == grouped.end()) {
                throw InsufficientDataError("no records for k");
            }
            RegressionFit fit = fit_simple(it->second);
            entry.slope = fit.coef("a");
            entry.intercept = fit.coef("b");
        } catch (const SingularDesignError&) {
            entry.singular = true;
        } catch (const InsufficientDataError&) {
            entry.singular = true;
        }
        out.push_back(entry);
    }
    return out;
}

std::vector<PerKFit> fit_per_k_slopes(const std::vector<TrialRecord>& records,
                                      const std::vector<long>& k_values) {
    return fit_per_k_slopes(to_rows(records), k_values);
}

} // namespace gtp
