#pragma once

#include <string>
#include <vector>

#include "tailwave/errors.hpp"

namespace tailwave {

// Uniform axis with `cells` intervals and cells+1 nodes.
struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  int cells = 0;

  double h() const { return (hi - lo) / cells; }
  int nodes() const { return cells + 1; }
  double node(int i) const { return lo + i * h(); }

  // Nearest node index if `x` lies on a node within tolerance, else -1.
  int node_index(double x, double tol_fraction = 1e-9) const;

  GridAxis refined(int factor) const { return GridAxis{lo, hi, cells * factor}; }
  GridAxis coarsened(int factor) const;
};

// Dense 2D field sampled on the tensor grid col x row. Storage is row-major
// by row index: value(i_col, j_row) = values[j_row * col.nodes() + i_col].
class Field2D {
 public:
  Field2D() = default;
  Field2D(GridAxis col, GridAxis row, std::string col_name, std::string row_name);

  double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * stride_ + i]; }
  double at(int i, int j) const {
    return values_[static_cast<std::size_t>(j) * stride_ + i];
  }

  const GridAxis& col() const { return col_; }
  const GridAxis& row() const { return row_; }
  const std::string& col_name() const { return col_name_; }
  const std::string& row_name() const { return row_name_; }
  const std::vector<double>& values() const { return values_; }

  double max_abs() const;

  // Max abs difference against a field on a grid refined by `factor`,
  // compared on this (coarser) grid's nodes.
  double max_abs_diff_on_common(const Field2D& finer, int factor) const;

 private:
  GridAxis col_, row_;
  std::string col_name_ = "u", row_name_ = "v";
  std::size_t stride_ = 0;
  std::vector<double> values_;
};

// CSV layout: header row carries the column-axis values (first cell is a
// corner label), each following row starts with its row-axis value. Numbers
// use the shortest round-trip decimal form.
void write_field_csv(const Field2D& field, const std::string& path);
std::string field_csv_string(const Field2D& field);

std::string format_shortest(double x);

}  // namespace tailwave
