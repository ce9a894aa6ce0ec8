#include "tailwave/grid.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tailwave {

int GridAxis::node_index(double x, double tol_fraction) const {
  const double t = (x - lo) / h();
  const double r = std::round(t);
  if (std::fabs(t - r) > tol_fraction * std::max(1.0, std::fabs(t))) return -1;
  const int i = static_cast<int>(r);
  return (i >= 0 && i <= cells) ? i : -1;
}

GridAxis GridAxis::coarsened(int factor) const {
  if (cells % factor != 0)
    throw ValidationError("grid axis not divisible for coarsening");
  return GridAxis{lo, hi, cells / factor};
}

Field2D::Field2D(GridAxis col, GridAxis row, std::string col_name, std::string row_name)
    : col_(col),
      row_(row),
      col_name_(std::move(col_name)),
      row_name_(std::move(row_name)),
      stride_(static_cast<std::size_t>(col.nodes())),
      values_(static_cast<std::size_t>(col.nodes()) * row.nodes(), 0.0) {
  if (col.cells < 1 || row.cells < 1)
    throw ValidationError("field grid needs at least one cell per axis");
}

double Field2D::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double Field2D::max_abs_diff_on_common(const Field2D& finer, int factor) const {
  double m = 0.0;
  for (int j = 0; j < row_.nodes(); ++j)
    for (int i = 0; i < col_.nodes(); ++i)
      m = std::max(m, std::fabs(at(i, j) - finer.at(i * factor, j * factor)));
  return m;
}

std::string format_shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string field_csv_string(const Field2D& field) {
  std::ostringstream out;
  out << field.row_name() << "\\" << field.col_name();
  for (int i = 0; i < field.col().nodes(); ++i)
    out << ',' << format_shortest(field.col().node(i));
  out << '\n';
  for (int j = 0; j < field.row().nodes(); ++j) {
    out << format_shortest(field.row().node(j));
    for (int i = 0; i < field.col().nodes(); ++i)
      out << ',' << format_shortest(field.at(i, j));
    out << '\n';
  }
  return out.str();
}

void write_field_csv(const Field2D& field, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << field_csv_string(field);
  if (!f) throw ValidationError("write failed for '" + path + "'");
}

}  // namespace tailwave
