// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relclust/types.hpp"

namespace relclust {

struct LoadedCsv {
  DataMatrix data;
  std::optional<std::vector<int>> labels;     // factor-encoded, first-appearance order
  std::vector<std::string> label_names;       // original label text per id
  bool had_header = false;
};

// Comma-separated numeric rows; an optional header row is detected by a
// non-numeric cell outside the label column. The label column (if given) may
// be categorical. Errors name the offending 1-based line.
LoadedCsv load_csv(const std::string& path, std::optional<int> label_column,
                   DataKind kind, bool standardize = false);

// Per-column zero mean, unit variance; constant columns become all zero.
DataMatrix standardize_columns(const DataMatrix& data);

// Feature columns f0..f{d-1} plus an optional trailing label column.
void write_data_csv(const std::string& path, const DataMatrix& data,
                    const std::vector<int>* labels);

// Rows "i,j,link" with link 1 = may, 0 = may-not; a header row is written
// and tolerated on read.
void write_constraints_csv(const std::string& path, const SideInfo& E);
SideInfo load_constraints_csv(const std::string& path, int n);

// Single-column (or labeled-column) file of cluster labels.
std::vector<int> load_labels_csv(const std::string& path,
                                 std::optional<int> column = std::nullopt);

}  // namespace relclust
