// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sinrtrack/simulator.hpp"

namespace sinrtrack {

// Malformed dataset input, carrying the 1-based offending line.
class DatasetFormatError : public std::runtime_error {
  public:
    DatasetFormatError(std::string path, long line, const std::string& message)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
          path_(std::move(path)),
          line_(line) {}

    const std::string& path() const { return path_; }
    long line() const { return line_; }

  private:
    std::string path_;
    long line_;
};

inline constexpr const char* dataset_header = "slot,true_sinr,mcs,cbs,y,cqi,estimate";

// Line-oriented dataset format, one record per line after the header:
//   slot,true_sinr,mcs,cbs,y,cqi,estimate
// with true_sinr/cqi/estimate left empty when absent. Doubles are written in
// shortest round-trip form so parsed values reproduce the originals exactly.
void write_dataset_csv(std::ostream& out, const TraceDataset& dataset);
void write_dataset_file(const std::string& path, const TraceDataset& dataset);

TraceDataset read_dataset_csv(std::istream& in, const std::string& path_for_errors);
TraceDataset read_dataset_file(const std::string& path);

// Replay output: `slot,estimate` per line.
void write_estimates_csv(std::ostream& out, const TraceDataset& dataset,
                         std::span<const double> estimates);
std::string estimates_csv_string(const TraceDataset& dataset, std::span<const double> estimates);

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

}  // namespace sinrtrack
