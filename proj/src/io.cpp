// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace relclust {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos
                        ? std::string()
                        : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw std::runtime_error("empty file: " + path);
  return rows;
}

}  // namespace

LoadedCsv load_csv(const std::string& path, std::optional<int> label_column,
                   DataKind kind, bool standardize) {
  const auto rows = read_rows(path);
  const int width = static_cast<int>(rows[0].size());
  if (label_column && (*label_column < 0 || *label_column >= width))
    throw std::invalid_argument("load_csv: label column out of range");

  // header iff any non-label cell of the first row is non-numeric
  bool had_header = false;
  for (int c = 0; c < width; ++c) {
    if (label_column && c == *label_column) continue;
    double v;
    if (!parse_double(rows[0][c], v)) {
      had_header = true;
      break;
    }
  }

  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  std::vector<std::string> label_names;
  std::unordered_map<std::string, int> label_ids;

  for (std::size_t r = had_header ? 1 : 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    const int line_no = static_cast<int>(r) + 1;
    if (static_cast<int>(cells.size()) != width)
      throw std::runtime_error("load_csv: ragged row at line " +
                               std::to_string(line_no));
    std::vector<double> feat;
    feat.reserve(width - (label_column ? 1 : 0));
    for (int c = 0; c < width; ++c) {
      if (label_column && c == *label_column) {
        const auto [it, inserted] = label_ids.try_emplace(
            cells[c], static_cast<int>(label_ids.size()));
        if (inserted) label_names.push_back(cells[c]);
        labels.push_back(it->second);
        continue;
      }
      double v;
      if (!parse_double(cells[c], v))
        throw std::runtime_error("load_csv: non-numeric cell '" + cells[c] +
                                 "' at line " + std::to_string(line_no));
      feat.push_back(v);
    }
    features.push_back(std::move(feat));
  }
  if (features.empty()) throw std::runtime_error("load_csv: no data rows in " + path);

  DataMatrix data = DataMatrix::from_rows(features, kind);
  if (standardize) {
    if (kind != DataKind::Real)
      throw std::invalid_argument("load_csv: standardization applies to Real data only");
    data = standardize_columns(data);
  }

  LoadedCsv out{std::move(data), std::nullopt, std::move(label_names), had_header};
  if (label_column) out.labels = std::move(labels);
  return out;
}

DataMatrix standardize_columns(const DataMatrix& data) {
  const auto mean = data.column_means();
  const auto var = data.column_variances();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(data.rows()) * data.cols());
  for (int i = 0; i < data.rows(); ++i) {
    for (int j = 0; j < data.cols(); ++j) {
      const double sd = std::sqrt(var[j]);
      values.push_back(sd > 0.0 ? (data.at(i, j) - mean[j]) / sd : 0.0);
    }
  }
  return DataMatrix(data.rows(), data.cols(), std::move(values), DataKind::Real);
}

void write_data_csv(const std::string& path, const DataMatrix& data,
                    const std::vector<int>* labels) {
  if (labels && static_cast<int>(labels->size()) != data.rows())
    throw std::invalid_argument("write_data_csv: label length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (int j = 0; j < data.cols(); ++j) out << (j ? "," : "") << "f" << j;
  if (labels) out << ",label";
  out << "\n";
  char buf[64];
  for (int i = 0; i < data.rows(); ++i) {
    for (int j = 0; j < data.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", data.at(i, j));
      out << (j ? "," : "") << buf;
    }
    if (labels) out << "," << (*labels)[i];
    out << "\n";
  }
}

void write_constraints_csv(const std::string& path, const SideInfo& E) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "i,j,link\n";
  E.for_each_entry([&](int i, int j, Link link) {
    out << i << "," << j << "," << (link == Link::May ? 1 : 0) << "\n";
  });
}

SideInfo load_constraints_csv(const std::string& path, int n) {
  const auto rows = read_rows(path);
  SideInfo E(n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    const int line_no = static_cast<int>(r) + 1;
    if (cells.size() != 3)
      throw std::runtime_error("load_constraints_csv: expected 3 cells at line " +
                               std::to_string(line_no));
    double i, j, link;
    if (!parse_double(cells[0], i) || !parse_double(cells[1], j) ||
        !parse_double(cells[2], link)) {
      if (r == 0) continue;  // header
      throw std::runtime_error("load_constraints_csv: non-numeric row at line " +
                               std::to_string(line_no));
    }
    if (link != 0.0 && link != 1.0)
      throw std::runtime_error("load_constraints_csv: link must be 0 or 1 at line " +
                               std::to_string(line_no));
    E.add(static_cast<int>(i), static_cast<int>(j),
          link == 1.0 ? Link::May : Link::MayNot);
  }
  return E;
}

std::vector<int> load_labels_csv(const std::string& path,
                                 std::optional<int> column) {
  const auto rows = read_rows(path);
  std::vector<int> labels;
  std::unordered_map<std::string, int> label_ids;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int c = column.value_or(static_cast<int>(rows[r].size()) - 1);
    if (c < 0 || c >= static_cast<int>(rows[r].size()))
      throw std::runtime_error("load_labels_csv: column out of range at line " +
                               std::to_string(r + 1));
    const std::string& cell = rows[r][c];
    double v;
    if (!parse_double(cell, v)) {
      if (r == 0) continue;  // header
      const auto [it, inserted] =
          label_ids.try_emplace(cell, static_cast<int>(label_ids.size()));
      labels.push_back(it->second);
      continue;
    }
    labels.push_back(static_cast<int>(v));
  }
  if (labels.empty()) throw std::runtime_error("load_labels_csv: no labels in " + path);
  return labels;
}

}  // namespace relclust
