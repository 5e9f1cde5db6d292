#pragma once

#include "gtp/distributions.hpp"
#include "gtp/simulator.hpp"

#include <string>
#include <vector>

namespace gtp {

// Shortest decimal form that round-trips the exact double (via
// std::to_chars), so CSV output is byte-stable and reloading loses nothing.
std::string format_double(double value);
double parse_double(const std::string& text);

// PmfTable rows: value,numerator,denominator,float_approx
std::string pmf_table_csv(const PmfTable& table);

// TrialRecord rows: trial_index,n_true,k,m_min,m_max,spread,est_known,est_unknown
// Estimates are exact "p/q" text; est_unknown is empty when k < 2.
std::string trial_csv_header();
std::string trial_csv_line(const TrialRow& row);
std::string trials_csv(const std::vector<TrialRecord>& records);

// Parses the schema above. Throws std::invalid_argument on malformed input.
std::vector<TrialRow> parse_trials_csv(const std::string& text);

std::vector<std::string> split_csv_line(const std::string& line);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace gtp
