#include "march.hpp"

#include <cmath>
#include <string>

namespace tailwave::detail {

namespace {

[[noreturn]] void unstable(int i, int j, double pivot) {
  throw UnstableCell("cell pivot " + std::to_string(pivot) + " at cell (" +
                     std::to_string(i) + ", " + std::to_string(j) + ")");
}

}  // namespace

void march_forward(const Expr& A, const Expr& B, const Expr& C, Field2D& f) {
  const double hu = f.col().h(), hv = f.row().h();
  for (int j = 0; j < f.row().cells; ++j) {
    const double vc = f.row().node(j) + 0.5 * hv;
    for (int i = 0; i < f.col().cells; ++i) {
      const EvalPoint center{f.col().node(i) + 0.5 * hu, vc};
      const CellCoefficients cc = cell_coefficients(A.eval(center), B.eval(center),
                                                    C.eval(center), hu, hv);
      if (std::fabs(cc.c3) < kPivotTol) unstable(i, j, cc.c3);
      f.at(i + 1, j + 1) =
          -(cc.c0 * f.at(i, j) + cc.c1 * f.at(i + 1, j) + cc.c2 * f.at(i, j + 1)) / cc.c3;
    }
  }
}

void march_backward(const Expr& A, const Expr& B, const Expr& C, Field2D& f) {
  const double hu = f.col().h(), hv = f.row().h();
  for (int j = f.row().cells - 1; j >= 0; --j) {
    const double vc = f.row().node(j) + 0.5 * hv;
    for (int i = f.col().cells - 1; i >= 0; --i) {
      const EvalPoint center{f.col().node(i) + 0.5 * hu, vc};
      const CellCoefficients cc = cell_coefficients(A.eval(center), B.eval(center),
                                                    C.eval(center), hu, hv);
      if (std::fabs(cc.c0) < kPivotTol) unstable(i, j, cc.c0);
      f.at(i, j) = -(cc.c1 * f.at(i + 1, j) + cc.c2 * f.at(i, j + 1) +
                     cc.c3 * f.at(i + 1, j + 1)) /
                   cc.c0;
    }
  }
}

void require_clear_rect(const WaveEquation& eq, const Rect& r, const char* what) {
  const Rect& d = eq.domain().rect;
  if (r.u_lo < d.u_lo - 1e-12 || r.u_hi > d.u_hi + 1e-12 || r.v_lo < d.v_lo - 1e-12 ||
      r.v_hi > d.v_hi + 1e-12)
    throw ValidationError(std::string(what) + ": grid rectangle outside equation domain");
  if (!eq.domain().clear_of_lines(r))
    throw SingularPath(std::string(what) +
                       ": grid rectangle crosses a declared singular line");
}

}  // namespace tailwave::detail
