// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace sinrtrack {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

template <typename T>
T parse_number(std::string_view field, const std::string& path, long line, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw DatasetFormatError(path, line,
                                 std::string("cannot parse ") + what + " from '" +
                                     std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_dataset_csv(std::ostream& out, const TraceDataset& dataset) {
    out << dataset_header << '\n';
    for (const auto& rec : dataset.records) {
        out << rec.slot << ',';
        if (rec.true_sinr_db) {
            out << format_double(*rec.true_sinr_db);
        }
        out << ',' << rec.mcs << ',' << rec.cbs << ',' << rec.y << ',';
        if (rec.cqi) {
            out << *rec.cqi;
        }
        out << ',';
        if (rec.estimate_db) {
            out << format_double(*rec.estimate_db);
        }
        out << '\n';
    }
}

void write_dataset_file(const std::string& path, const TraceDataset& dataset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    write_dataset_csv(out, dataset);
}

TraceDataset read_dataset_csv(std::istream& in, const std::string& path) {
    TraceDataset dataset;
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) {
        throw DatasetFormatError(path, 1, "missing header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != dataset_header) {
        throw DatasetFormatError(path, 1,
                                 std::string("unexpected header, want '") + dataset_header + "'");
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            throw DatasetFormatError(path, line_no,
                                     "expected 7 fields, got " + std::to_string(fields.size()));
        }
        SlotRecord rec;
        rec.slot = parse_number<long>(fields[0], path, line_no, "slot");
        if (!fields[1].empty()) {
            rec.true_sinr_db = parse_number<double>(fields[1], path, line_no, "true_sinr");
        }
        rec.mcs = parse_number<int>(fields[2], path, line_no, "mcs");
        rec.cbs = parse_number<int>(fields[3], path, line_no, "cbs");
        rec.y = parse_number<int>(fields[4], path, line_no, "y");
        if (rec.y != 0 && rec.y != 1) {
            throw DatasetFormatError(path, line_no, "y must be 0 or 1");
        }
        if (!fields[5].empty()) {
            const int cqi = parse_number<int>(fields[5], path, line_no, "cqi");
            if (cqi < CqiMap::min_index || cqi > CqiMap::max_index) {
                throw DatasetFormatError(path, line_no, "cqi outside 1..15");
            }
            rec.cqi = cqi;
        }
        if (!fields[6].empty()) {
            rec.estimate_db = parse_number<double>(fields[6], path, line_no, "estimate");
        }
        const long expected = static_cast<long>(dataset.records.size());
        if (rec.slot != expected) {
            throw DatasetFormatError(path, line_no,
                                     "slots must be contiguous from 0; expected " +
                                         std::to_string(expected) + ", got " +
                                         std::to_string(rec.slot));
        }
        dataset.records.push_back(std::move(rec));
    }
    return dataset;
}

TraceDataset read_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open dataset: " + path);
    }
    return read_dataset_csv(in, path);
}

void write_estimates_csv(std::ostream& out, const TraceDataset& dataset,
                         std::span<const double> estimates) {
    out << "slot,estimate\n";
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        out << dataset.records[i].slot << ',' << format_double(estimates[i]) << '\n';
    }
}

std::string estimates_csv_string(const TraceDataset& dataset, std::span<const double> estimates) {
    std::ostringstream out;
    write_estimates_csv(out, dataset, estimates);
    return out.str();
}

}  // namespace sinrtrack
