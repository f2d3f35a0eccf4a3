#include "subopt/subsample.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "subopt/errors.hpp"

namespace subopt {

namespace {

bool parse_cell(const std::string& cell, double& value) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE) return false;
    while (*end != '\0') {
        if (!std::isspace(static_cast<unsigned char>(*end))) return false;
        ++end;
    }
    value = v;
    return true;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

double acceptance_probability(const SubsamplingDesign& design, double x) {
    return design.support().contains(x) ? 1.0 : 0.0;
}

SubsampleStats subsample_stream(std::istream& in, std::ostream& out,
                                const SubsamplingDesign& design,
                                const SubsampleOptions& options) {
    SubsampleStats stats;
    const auto& intervals = design.support().parts();
    stats.per_interval_counts.assign(intervals.size(), 0);
    stats.expected_rate = design.alpha();

    const bool index_mode = all_digits(options.column);
    std::size_t column_index = index_mode ? static_cast<std::size_t>(std::stoul(options.column)) : 0;

    std::string line;
    long line_number = 0;
    bool any_line = false;

    auto fail_row = [&](const std::string& what) {
        if (options.on_error == ErrorPolicy::abort) {
            throw parse_error("line " + std::to_string(line_number) + ": " + what);
        }
        ++stats.n_skipped;
    };

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        any_line = true;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_fields(line);

        if (line_number == 1) {
            if (index_mode) {
                // Header if the selected cell of the first row is not a
                // number; in that case echo it and move on.
                double probe = 0.0;
                bool numeric = column_index < fields.size() &&
                               parse_cell(fields[column_index], probe);
                if (!numeric) {
                    stats.header_present = true;
                    out << line << '\n';
                    continue;
                }
            } else {
                stats.header_present = true;
                std::size_t found = fields.size();
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (trim(fields[i]) == options.column) {
                        found = i;
                        break;
                    }
                }
                if (found == fields.size()) {
                    throw parse_error("line 1: column '" + options.column +
                                      "' not found in header");
                }
                column_index = found;
                out << line << '\n';
                continue;
            }
        }
        if (column_index >= fields.size()) {
            fail_row("row has " + std::to_string(fields.size()) +
                     " fields, column index " + std::to_string(column_index) +
                     " is out of range");
            continue;
        }
        double x = 0.0;
        if (!parse_cell(fields[column_index], x)) {
            fail_row("cannot parse '" + trim(fields[column_index]) + "' as a number");
            continue;
        }
        ++stats.n_total;
        if (acceptance_probability(design, x) > 0.0) {
            ++stats.n_accepted;
            out << line << '\n';
            for (std::size_t i = 0; i < intervals.size(); ++i) {
                if (x >= intervals[i].lo && x <= intervals[i].hi) {
                    ++stats.per_interval_counts[i];
                    break;
                }
            }
        }
    }

    stats.empty_input = !any_line;
    if (stats.n_total > 0) {
        stats.empirical_rate = static_cast<double>(stats.n_accepted) /
                               static_cast<double>(stats.n_total);
    }
    if (stats.n_accepted > 0) {
        const CovariateDistribution& dist = design.dist();
        double worst = 0.0;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            double mass = dist.partial_moment(0, intervals[i].lo, intervals[i].hi);
            double emp = static_cast<double>(stats.per_interval_counts[i]) /
                         static_cast<double>(stats.n_accepted);
            worst = std::max(worst, std::abs(emp - mass / design.alpha()));
        }
        stats.ks_note = worst;
    }
    return stats;
}

} // namespace subopt
