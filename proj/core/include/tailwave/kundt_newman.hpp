#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tailwave/equation.hpp"
#include "tailwave/solver.hpp"

namespace tailwave {

// A waveform R(u) or S(v) with derivative access. Polynomials and bumps
// differentiate analytically to any order; uniformly sampled tables use
// local degree-5 interpolation through the six nearest nodes, good for
// derivatives up to order 4.
class WaveformSpec {
 public:
  static WaveformSpec polynomial(std::vector<double> coeffs);  // c0 + c1 x + ...
  static WaveformSpec bump(Bump b);
  static WaveformSpec table(double lo, double step, std::vector<double> values);
  static WaveformSpec zero() { return polynomial({}); }

  double value(double x, int order = 0) const;
  int max_derivative() const;  // largest reliable derivative order

  // Polynomial waveforms as expressions in the given variable.
  std::optional<Expr> as_expr(Var w) const;

  bool is_zero_waveform() const;

 private:
  struct Poly {
    std::vector<double> coeffs;
  };
  struct Table {
    double lo;
    double step;
    std::vector<double> values;
  };
  std::variant<Poly, Bump, Table> form_;
};

enum class SequenceStatus { DoubleTerminating, NonTerminating, Indeterminate };

const char* to_string(SequenceStatus s);

// The substitution chains j_0, j_1, ... and l_0, l_{-1}, ... generated from
// the normal forms by
//   j_{k+1}/j_k = j_k/j_{k-1} - d2_{uv} ln|j_k|,
//   l_{k-1}/l_k = l_k/l_{k+1} - d2_{vu} ln|l_k|.
// Termination: j_{k1+1} = 0 with j_{k1} != 0 (k1 >= 0) and l_{k2-1} = 0 with
// l_{k2} != 0 (k2 <= 0); then N = max(k1, -k2). Chains include the detected
// zero entry. l_chain[i] holds l_{-i}.
struct SubstitutionSequence {
  std::vector<Expr> j_chain;
  std::vector<Expr> l_chain;
  std::optional<int> k1;
  std::optional<int> k2;     // stored nonpositive
  std::optional<int> order;  // N, when double terminating
  SequenceStatus status = SequenceStatus::Indeterminate;
  int k_max = 8;
  FactorTransform transform;
};

// Builds both chains, stopping each at its detected zero or at k_max.
// Zero detection samples the termination ratio against the magnitude of the
// two cancelling terms (see DESIGN notes in the repository docs). A sampling
// region with no regular points yields status Indeterminate.
SubstitutionSequence build_sequence(const WaveEquation& eq, int k_max = 8);

// phi(u,v) = sum_i f_i(u,v) R^(i)(u) + sum_i g_i(u,v) S^(i)(v).
struct ProgressingWave {
  int order = 0;
  std::vector<Expr> f;  // amplitudes of R derivatives
  std::vector<Expr> g;  // amplitudes of S derivatives
  WaveformSpec R = WaveformSpec::zero();
  WaveformSpec S = WaveformSpec::zero();

  double eval(EvalPoint p) const;
  double eval(double u, double v) const { return eval(EvalPoint{u, v}); }

  // Full expression when both waveforms are polynomial.
  std::optional<Expr> as_expr() const;
};

// Exact general solution of a double-terminating equation, expanded from the
// nested derivative form into explicit progressing-wave amplitudes.
// Throws NotTerminating unless seq.status == DoubleTerminating.
ProgressingWave exact_solution(const SubstitutionSequence& seq, WaveformSpec R,
                               WaveformSpec S);

// Order-0 progressing wave exp(-lambda) (r(u) + s(v)) of a CPP equation.
// Throws NotCpp otherwise.
ProgressingWave build_pw0(const WaveEquation& eq, WaveformSpec r, WaveformSpec s);

// Residuals of the amplitude PDE system at sampled regular points: the
// order-0 system in the original coefficients for PW0, and the v-normal-form
// system (on amplitudes rescaled by exp(sigma)) for higher orders.
struct AmplitudeResiduals {
  struct Entry {
    std::string name;
    double max_abs;
  };
  std::vector<Entry> entries;
  double max_abs = 0.0;
};

AmplitudeResiduals verify_amplitude_equations(const ProgressingWave& pw,
                                              const WaveEquation& eq,
                                              int trials = 100);

}  // namespace tailwave
