#include "gtp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace gtp {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_double: cannot parse '" + text + "'");
    }
    return value;
}

std::string pmf_table_csv(const PmfTable& table) {
    std::ostringstream out;
    out << "value,numerator,denominator,float_approx\n";
    for (long v = table.support_lo; v <= table.support_hi; ++v) {
        const Rational& p = table.probs[static_cast<size_t>(v - table.support_lo)];
        out << v << ',' << p.get_num().get_str() << ',' << p.get_den().get_str() << ','
            << format_double(to_double(p)) << '\n';
    }
    return out.str();
}

std::string trial_csv_header() {
    return "trial_index,n_true,k,m_min,m_max,spread,est_known,est_unknown";
}

std::string trial_csv_line(const TrialRow& row) {
    std::ostringstream out;
    out << row.trial_index << ',' << row.n_true << ',' << row.k << ',' << row.m_min << ','
        << row.m_max << ',' << row.spread << ',' << to_string(row.est_known) << ',';
    if (row.est_unknown.has_value()) {
        out << to_string(*row.est_unknown);
    }
    return out.str();
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << trial_csv_header() << '\n';
    for (const TrialRecord& r : records) {
        out << trial_csv_line(to_row(r)) << '\n';
    }
    return out.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

std::vector<TrialRow> parse_trials_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("parse_trials_csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != trial_csv_header()) {
        throw std::invalid_argument("parse_trials_csv: unexpected header '" + line + "'");
    }
    std::vector<TrialRow> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 8) {
            throw std::invalid_argument("parse_trials_csv: line " + std::to_string(line_no) +
                                        " has " + std::to_string(fields.size()) + " fields");
        }
        TrialRow row;
        row.trial_index = std::stol(fields[0]);
        row.n_true = std::stol(fields[1]);
        row.k = std::stol(fields[2]);
        row.m_min = std::stol(fields[3]);
        row.m_max = std::stol(fields[4]);
        row.spread = std::stol(fields[5]);
        row.est_known = rational_from_string(fields[6]);
        if (!fields[7].empty()) {
            row.est_unknown = rational_from_string(fields[7]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace gtp
