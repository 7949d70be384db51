#include "intwine/diagnostics/series.hpp"

#include <cmath>
#include <cstdio>

#include "intwine/dynamics/rhs.hpp"
#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"

namespace intwine::diagnostics {

using dynamics::Coupling;
using dynamics::IntertwinedState;
using dynamics::IntertwiningMatrix;
using dynamics::MatrixClass;
using spectral::SpectralField;

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header() {
  std::string s;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) s += ',';
    s += csv_quote(kCsvColumns[i]);
  }
  return s + "\r\n";
}

std::string csv_row(const TimeSeriesRecord& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); };
  const std::string cells[] = {
      csv_number(r.t),      csv_number(r.l2_v1),       csv_number(r.h1_v1),
      csv_number(r.l2_v2),  csv_number(r.h1_v2),       csv_number(r.l2_w),
      csv_number(r.h1_w),   csv_number(r.l2_p),        csv_number(r.l2_q),
      opt(r.h1_vtheta),     opt(r.h1_wtheta),          opt(r.energy_residual),
      csv_number(r.force_l2_g1), csv_number(r.force_l2_g2), csv_number(r.force_l2_h)};
  std::string s;
  for (std::size_t i = 0; i < std::size(cells); ++i) {
    if (i) s += ',';
    s += csv_quote(cells[i]);
  }
  return s + "\r\n";
}

TimeSeriesRecord make_record(const IntertwinedState& s) {
  TimeSeriesRecord r;
  r.t = s.t;
  const auto n1 = spectral::norms(s.v1, 1);
  const auto n2 = spectral::norms(s.v2, 1);
  r.l2_v1 = n1.l2;
  r.h1_v1 = n1.h1;
  r.l2_v2 = n2.l2;
  r.h1_v2 = n2.h1;
  const bool dr = s.matrix.is_direct_replacement();
  const auto views = dynamics::derived_views(s, dr);
  const auto nw = spectral::norms(views.w, 1);
  r.l2_w = nw.l2;
  r.h1_w = nw.h1;
  r.l2_p = spectral::l2_norm(views.p);
  r.l2_q = spectral::l2_norm(views.q);
  if (views.v_theta) r.h1_vtheta = spectral::h1_norm(*views.v_theta);
  if (views.w_theta) r.h1_wtheta = spectral::h1_norm(*views.w_theta);
  const SpectralField f1 = s.g1->at(s.t);
  const SpectralField f2 = s.g2->at(s.t);
  r.force_l2_g1 = spectral::l2_norm(f1);
  r.force_l2_g2 = spectral::l2_norm(f2);
  r.force_l2_h = spectral::l2_norm(f1 - f2);
  return r;
}

std::array<double, 2> budget_weights(const IntertwiningMatrix& m) {
  if (m.cls() == MatrixClass::NudgeMut && m.mu1() > 0.0 && m.mu2() > 0.0) {
    const double s = m.mu1() + m.mu2();
    return {m.mu2() / s, m.mu1() / s};
  }
  return {0.5, 0.5};
}

namespace {

Coupling coupling_of(const IntertwiningMatrix& m) {
  if (m.is_nudging()) return Coupling::ProjectK;
  if (m.is_direct_replacement()) return Coupling::ProjectK_B;
  return m.coupling();
}

SpectralField apply_F(const SpectralField& v, Coupling F, double K) {
  return F == Coupling::ProjectK ? spectral::project_low(v, K)
                                 : spectral::project_low(spectral::bilinear_B(v, v), K);
}

struct Pieces {
  double rate;
  double dissipation;  // l1 ||v1||^2 + l2 ||v2||^2
  double forcing;      // l1 |g1|^2 + l2 |g2|^2
  double energy;
};

Pieces pieces(const IntertwinedState& s, const std::array<double, 2>& l) {
  const Coupling F = coupling_of(s.matrix);
  const SpectralField* v[2] = {&s.v1, &s.v2};
  const SpectralField g[2] = {s.g1->at(s.t), s.g2->at(s.t)};
  const bool coupled = s.matrix.max_abs_entry() != 0.0;
  std::optional<SpectralField> Fv[2];
  if (coupled) {
    Fv[0] = apply_F(s.v1, F, s.K);
    Fv[1] = apply_F(s.v2, F, s.K);
  }
  Pieces p{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    const double h1 = spectral::h1_norm(*v[i]);
    const double l2 = spectral::l2_norm(*v[i]);
    const double gl2 = spectral::l2_norm(g[i]);
    double d = 2.0 * spectral::inner(g[i], *v[i]) - 2.0 * s.nu * h1 * h1;
    if (coupled) {
      for (int j = 0; j < 2; ++j) {
        const double mij = s.matrix.m(i + 1, j + 1);
        if (mij != 0.0) d += 2.0 * mij * spectral::inner(*Fv[j], *v[i]);
      }
    }
    p.rate += l[i] * d;
    p.dissipation += l[i] * h1 * h1;
    p.forcing += l[i] * gl2 * gl2;
    p.energy += l[i] * l2 * l2;
  }
  return p;
}

}  // namespace

double budget_rate(const IntertwinedState& s, const std::array<double, 2>& lambda) {
  return pieces(s, lambda).rate;
}

void BudgetTracker::on_step(const IntertwinedState& before, const IntertwinedState& after) {
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw PreconditionError("BudgetTracker: non-increasing time");
  if (!started_ || before.t != prev_t_) {
    lambda_ = budget_weights(before.matrix);
    const Pieces p0 = pieces(before, lambda_);
    if (!started_) {
      e0_ = p0.energy;
      started_ = true;
    }
    prev_rate_ = p0.rate;
    prev_diss_ = p0.dissipation;
    prev_force_ = p0.forcing;
  }
  const double e_before = [&] {
    const double a = spectral::l2_norm(before.v1), b = spectral::l2_norm(before.v2);
    return lambda_[0] * a * a + lambda_[1] * b * b;
  }();
  const Pieces p1 = pieces(after, lambda_);
  const double res = std::abs((p1.energy - e_before) / dt - 0.5 * (prev_rate_ + p1.rate));
  last_residual_ = res;
  max_residual_ = std::max(max_residual_, res);

  dissipation_ += 0.5 * dt * (prev_diss_ + p1.dissipation);
  forcing_ += 0.5 * dt * (prev_force_ + p1.forcing);
  const double lhs = p1.energy + after.nu * dissipation_;
  const double rhs = e0_ + forcing_ / after.nu;
  if (rhs > 0.0) min_slack_ = std::min(min_slack_, (rhs - lhs) / rhs);

  prev_t_ = after.t;
  prev_rate_ = p1.rate;
  prev_diss_ = p1.dissipation;
  prev_force_ = p1.forcing;
  ++steps_;
}

void SeriesRecorder::on_step(const IntertwinedState& before, const IntertwinedState& after) {
  if (track_budget_) budget_.on_step(before, after);
}

void SeriesRecorder::on_sample(const IntertwinedState& s) {
  TimeSeriesRecord r = make_record(s);
  if (track_budget_ && budget_.steps() > 0) r.energy_residual = budget_.last_residual();
  records_.push_back(std::move(r));
}

std::string SeriesRecorder::to_csv() const {
  std::string out = csv_header();
  for (const auto& r : records_) out += csv_row(r);
  return out;
}

}  // namespace intwine::diagnostics
