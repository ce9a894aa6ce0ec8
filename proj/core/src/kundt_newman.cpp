#include "tailwave/kundt_newman.hpp"

#include <cmath>

namespace tailwave {

// ---------------------------------------------------------------------------
// WaveformSpec

WaveformSpec WaveformSpec::polynomial(std::vector<double> coeffs) {
  WaveformSpec w;
  w.form_ = Poly{std::move(coeffs)};
  return w;
}

WaveformSpec WaveformSpec::bump(Bump b) {
  WaveformSpec w;
  w.form_ = b;
  return w;
}

WaveformSpec WaveformSpec::table(double lo, double step, std::vector<double> values) {
  if (values.size() < 6)
    throw ValidationError("sampled waveform needs at least 6 nodes");
  if (step <= 0.0) throw ValidationError("sampled waveform needs positive step");
  WaveformSpec w;
  w.form_ = Table{lo, step, std::move(values)};
  return w;
}

namespace {

double poly_value(const std::vector<double>& c, double x, int order) {
  // Horner on the analytically differentiated coefficients.
  double r = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
    double factor = 1.0;
    for (int m = 0; m < order; ++m) factor *= (k - m);
    r = r * x + c[k] * factor;
  }
  return r;
}

// Local degree-5 interpolation: Newton divided differences through the six
// nodes nearest x, then Taylor coefficients at x by nested multiplication.
double table_value(const WaveformSpec* self, double lo, double step,
                   const std::vector<double>& values, double x, int order) {
  (void)self;
  if (order > 5) throw ValidationError("sampled waveform derivative order > 5");
  const int n = static_cast<int>(values.size());
  int i0 = static_cast<int>(std::floor((x - lo) / step)) - 2;
  i0 = std::max(0, std::min(i0, n - 6));

  double xs[6], dd[6];
  for (int i = 0; i < 6; ++i) {
    xs[i] = lo + (i0 + i) * step;
    dd[i] = values[i0 + i];
  }
  for (int level = 1; level < 6; ++level)
    for (int i = 5; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);

  // Taylor coefficients t[k] = p^(k)(x)/k! from the Newton form.
  double t[6] = {dd[5], 0, 0, 0, 0, 0};
  for (int k = 4; k >= 0; --k) {
    const double d = x - xs[k];
    for (int i = 5; i >= 1; --i) t[i] = t[i] * d + t[i - 1];
    t[0] = t[0] * d + dd[k];
  }
  double factorial = 1.0;
  for (int m = 2; m <= order; ++m) factorial *= m;
  return t[order] * factorial;
}

}  // namespace

double WaveformSpec::value(double x, int order) const {
  if (const auto* p = std::get_if<Poly>(&form_)) return poly_value(p->coeffs, x, order);
  if (const auto* b = std::get_if<Bump>(&form_)) return b->derivative(x, order);
  const auto& t = std::get<Table>(form_);
  return table_value(this, t.lo, t.step, t.values, x, order);
}

int WaveformSpec::max_derivative() const {
  return std::holds_alternative<Table>(form_) ? 4 : 64;
}

std::optional<Expr> WaveformSpec::as_expr(Var w) const {
  const auto* p = std::get_if<Poly>(&form_);
  if (!p) return std::nullopt;
  Expr e = Expr::constant(0.0);
  const Expr x = Expr::variable(w);
  for (int k = static_cast<int>(p->coeffs.size()) - 1; k >= 0; --k)
    e = e * x + Expr::constant(p->coeffs[k]);
  return e;
}

bool WaveformSpec::is_zero_waveform() const {
  if (const auto* p = std::get_if<Poly>(&form_)) {
    for (double c : p->coeffs)
      if (c != 0.0) return false;
    return true;
  }
  if (const auto* b = std::get_if<Bump>(&form_)) return b->amplitude == 0.0;
  for (double v : std::get<Table>(form_).values)
    if (v != 0.0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Substitution sequence

const char* to_string(SequenceStatus s) {
  switch (s) {
    case SequenceStatus::DoubleTerminating:
      return "DoubleTerminating";
    case SequenceStatus::NonTerminating:
      return "NonTerminating";
    case SequenceStatus::Indeterminate:
      return "Indeterminate";
  }
  return "?";
}

SubstitutionSequence build_sequence(const WaveEquation& eq, int k_max) {
  if (k_max < 1) throw ValidationError("build_sequence requires k_max >= 1");
  SubstitutionSequence seq;
  seq.k_max = k_max;
  seq.transform = factor_transforms(eq);
  const NormalForm nf = normal_form(eq, seq.transform);
  const SampleRegion region = eq.domain().sample_region();

  try {
    // j-chain. The first link tests the factor of j1 = (dvV + UV - W) j0
    // against the magnitudes of its cancelling halves.
    seq.j_chain.push_back(nf.j0);
    if (is_zero_difference(diff(eq.V(), Var::v) + eq.U() * eq.V(), eq.W(), region)) {
      seq.j_chain.push_back(Expr::constant(0.0));
      seq.k1 = 0;
    } else {
      seq.j_chain.push_back(nf.j1);
      for (int k = 1; k < k_max && !seq.k1; ++k) {
        const Expr& jk = seq.j_chain[k];
        const Expr& jkm1 = seq.j_chain[k - 1];
        const Expr ratio = jk / jkm1;
        const Expr curvature = diff(diff(ln_abs(jk), Var::u), Var::v);
        if (is_zero_difference(ratio, curvature, region)) {
          seq.j_chain.push_back(Expr::constant(0.0));
          seq.k1 = k;
        } else {
          seq.j_chain.push_back(jk * (ratio - curvature));
        }
      }
    }

    // l-chain, mirrored: l_chain[i] = l_{-i}.
    seq.l_chain.push_back(nf.l0);
    if (is_zero_difference(diff(eq.U(), Var::u) + eq.U() * eq.V(), eq.W(), region)) {
      seq.l_chain.push_back(Expr::constant(0.0));
      seq.k2 = 0;
    } else {
      seq.l_chain.push_back(nf.l_minus1);
      for (int i = 1; i < k_max && !seq.k2; ++i) {
        const Expr& lk = seq.l_chain[i];        // l_{-i}
        const Expr& lkp1 = seq.l_chain[i - 1];  // l_{-i+1}
        const Expr ratio = lk / lkp1;
        const Expr curvature = diff(diff(ln_abs(lk), Var::v), Var::u);
        if (is_zero_difference(ratio, curvature, region)) {
          seq.l_chain.push_back(Expr::constant(0.0));
          seq.k2 = -i;
        } else {
          seq.l_chain.push_back(lk * (ratio - curvature));
        }
      }
    }
  } catch (const AllPointsSingular&) {
    seq.status = SequenceStatus::Indeterminate;
    return seq;
  }

  if (seq.k1 && seq.k2) {
    seq.status = SequenceStatus::DoubleTerminating;
    seq.order = std::max(*seq.k1, -*seq.k2);
  } else {
    seq.status = SequenceStatus::NonTerminating;
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Exact solutions

namespace {

// One descent step of the nested derivative form: X -> ratio * d_w X, on
// amplitude vectors of the waveform derivatives.
std::vector<Expr> amplitude_step(const std::vector<Expr>& amps, const Expr& ratio,
                                 Var w) {
  std::vector<Expr> next(amps.size() + 1, Expr::constant(0.0));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    next[i] = next[i] + diff(amps[i], w);
    next[i + 1] = amps[i];
  }
  for (Expr& a : next) a = ratio * a;
  return next;
}

}  // namespace

ProgressingWave exact_solution(const SubstitutionSequence& seq, WaveformSpec R,
                               WaveformSpec S) {
  if (seq.status != SequenceStatus::DoubleTerminating)
    throw NotTerminating("exact_solution requires a double-terminating sequence");
  const int k1 = *seq.k1;
  const int i2 = -*seq.k2;
  const int n = std::max(k1, i2);
  if (std::min(R.max_derivative(), S.max_derivative()) < n)
    throw ValidationError("waveform cannot supply derivatives up to the wave order");

  // S-side: X_{k1} = j_{k1} S(v); X_{k-1} = (j_{k-1}/j_k) dv X_k; the S part
  // of phi is exp(-tau) X_0.
  std::vector<Expr> g_amps{seq.j_chain[k1]};
  for (int k = k1; k >= 1; --k)
    g_amps = amplitude_step(g_amps, seq.j_chain[k - 1] / seq.j_chain[k], Var::v);
  const Expr exp_mtau = exp(-seq.transform.tau);
  for (Expr& a : g_amps) a = exp_mtau * a;

  // R-side: Y_{k2} = l_{k2} R(u); Y_{k+1} = (l_{k+1}/l_k) du Y_k; the R part
  // of phi is exp(-sigma) Y_0.
  std::vector<Expr> f_amps{seq.l_chain[i2]};
  for (int i = i2; i >= 1; --i)
    f_amps = amplitude_step(f_amps, seq.l_chain[i - 1] / seq.l_chain[i], Var::u);
  const Expr exp_msigma = exp(-seq.transform.sigma);
  for (Expr& a : f_amps) a = exp_msigma * a;

  f_amps.resize(n + 1, Expr::constant(0.0));
  g_amps.resize(n + 1, Expr::constant(0.0));

  ProgressingWave pw;
  pw.order = n;
  pw.f = std::move(f_amps);
  pw.g = std::move(g_amps);
  pw.R = std::move(R);
  pw.S = std::move(S);
  return pw;
}

ProgressingWave build_pw0(const WaveEquation& eq, WaveformSpec r, WaveformSpec s) {
  const CppVerdict verdict = classify_cpp(eq);
  if (!verdict.is_cpp) throw NotCpp("build_pw0 requires a CPP equation");
  ProgressingWave pw;
  pw.order = 0;
  const Expr amp = exp(-*verdict.lambda);
  pw.f = {amp};
  pw.g = {amp};
  pw.R = std::move(r);
  pw.S = std::move(s);
  return pw;
}

double ProgressingWave::eval(EvalPoint p) const {
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    total += f[i].eval(p) * R.value(p.u, static_cast<int>(i));
  for (std::size_t i = 0; i < g.size(); ++i)
    total += g[i].eval(p) * S.value(p.v, static_cast<int>(i));
  return total;
}

std::optional<Expr> ProgressingWave::as_expr() const {
  auto r_expr = R.as_expr(Var::u);
  auto s_expr = S.as_expr(Var::v);
  if (!r_expr || !s_expr) return std::nullopt;
  Expr total = Expr::constant(0.0);
  Expr r_deriv = *r_expr, s_deriv = *s_expr;
  for (std::size_t i = 0; i < f.size(); ++i) {
    total = total + f[i] * r_deriv;
    r_deriv = diff(r_deriv, Var::u);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    total = total + g[i] * s_deriv;
    s_deriv = diff(s_deriv, Var::v);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Amplitude PDE residuals

AmplitudeResiduals verify_amplitude_equations(const ProgressingWave& pw,
                                              const WaveEquation& eq, int trials) {
  AmplitudeResiduals out;
  const SampleRegion region = eq.domain().sample_region();
  const auto add = [&](std::string name, const Expr& residual) {
    const double m = max_abs_sampled(residual, region, trials);
    out.max_abs = std::max(out.max_abs, m);
    out.entries.push_back({std::move(name), m});
  };

  if (pw.order == 0) {
    const Expr &f0 = pw.f[0], &g0 = pw.g[0];
    const auto wave_op = [&](const Expr& a) {
      return diff(diff(a, Var::u), Var::v) + eq.U() * diff(a, Var::u) +
             eq.V() * diff(a, Var::v) + eq.W() * a;
    };
    add("6.3", wave_op(f0));
    add("6.4", wave_op(g0));
    add("6.5", diff(f0, Var::v) + eq.U() * f0);
    add("6.6", diff(g0, Var::u) + eq.V() * g0);
    return out;
  }

  // Higher order: the v-normal-form system on the rescaled amplitudes
  // fhat = exp(sigma) f, ghat = exp(sigma) g.
  const FactorTransform ft = factor_transforms(eq);
  const NormalForm nf = normal_form(eq, ft);
  const Expr scale = exp(ft.sigma);
  std::vector<Expr> fh, gh;
  for (const Expr& a : pw.f) fh.push_back(scale * a);
  for (const Expr& a : pw.g) gh.push_back(scale * a);
  const int n = pw.order;

  const auto base_op = [&](const Expr& a) {
    return diff(nf.j0 * diff(a, Var::u), Var::v) - nf.j1 * a;
  };
  add("7.1", base_op(fh[0]));
  for (int i = 1; i <= n; ++i)
    add("7.2[" + std::to_string(i) + "]",
        base_op(fh[i]) + diff(nf.j0 * fh[i - 1], Var::v));
  add("7.3", diff(nf.j0 * fh[n], Var::v));
  add("7.4", base_op(gh[0]));
  for (int i = 1; i <= n; ++i)
    add("7.5[" + std::to_string(i) + "]",
        base_op(gh[i]) + nf.j0 * diff(gh[i - 1], Var::u));
  add("7.6", diff(gh[n], Var::u));
  return out;
}

}  // namespace tailwave
