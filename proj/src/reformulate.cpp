#include "dkplab/reformulate.hpp"

#include <algorithm>
#include <stdexcept>

#include "dkplab/error.hpp"

namespace dkplab {

namespace {

OptRational shifted(const OptRational& b, const Integer& by) {
  if (!b) return std::nullopt;
  return *b - Rational(by);
}

}  // namespace

RangespaceReform rangespace(const IpInstance& inst, const ReductionProfile& profile) {
  inst.validate();
  RangespaceReform out;
  out.profile = profile;
  out.inst_new = inst;
  out.inst_new.provenance.reset();
  if (inst.cols() == 0) {
    out.u = out.u_inverse = IntMat();
    return out;
  }
  Reduction red = reduce(inst.a, profile);
  out.u = red.transform;
  out.u_inverse = red.inverse;
  out.inst_new.a = red.basis;
  if (inst.objective) out.inst_new.objective->c = row_times(inst.objective->c, out.u);
  return out;
}

std::vector<std::size_t> equality_rows(const IpInstance& inst) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    if (inst.lo[i] && inst.hi[i] && *inst.lo[i] == *inst.hi[i]) rows.push_back(i);
  }
  return rows;
}

bool NoIntegerSolution::verify(const IpInstance& inst, const std::vector<std::size_t>& eq_rows) const {
  if (multiplier.size() != eq_rows.size()) return false;
  RatVec ya(inst.cols());
  Rational yb = 0;
  for (std::size_t t = 0; t < eq_rows.size(); ++t) {
    const std::size_t i = eq_rows[t];
    if (!inst.lo[i] || !inst.hi[i] || *inst.lo[i] != *inst.hi[i]) return false;
    for (std::size_t j = 0; j < inst.cols(); ++j) ya[j] += multiplier[t] * Rational(inst.a(i, j));
    yb += multiplier[t] * *inst.lo[i];
  }
  for (const auto& v : ya) {
    if (!is_integral(v)) return false;
  }
  return yb == value && !is_integral(yb);
}

namespace {

IpInstance substitute(const IpInstance& inst, const std::vector<std::size_t>& kept, const IntMat& v,
                      const IntVec& x_b) {
  IpInstance out;
  out.name = inst.name;
  out.a = IntMat(kept.size(), v.cols());
  for (std::size_t t = 0; t < kept.size(); ++t) {
    const std::size_t i = kept[t];
    const IntVec row = inst.a.row(i);
    out.a.set_row(t, row_times(row, v));
    const Integer off = dot(row, x_b);
    out.lo.push_back(shifted(inst.lo[i], off));
    out.hi.push_back(shifted(inst.hi[i], off));
  }
  if (inst.objective) out.objective = Objective{row_times(inst.objective->c, v), inst.objective->sense};
  return out;
}

// Inverse of a lower triangular matrix with nonzero diagonal.
std::vector<RatVec> lower_inverse(const IntMat& h) {
  const std::size_t m = h.rows();
  std::vector<RatVec> inv(m, RatVec(m));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < m; ++i) {
      Rational s = i == c ? Rational(1) : Rational(0);
      for (std::size_t j = 0; j < i; ++j) s -= Rational(h(i, j)) * inv[j][c];
      inv[i][c] = s / Rational(h(i, i));
    }
  }
  return inv;
}

}  // namespace

AhlResult ahl(const IpInstance& inst, const std::vector<std::size_t>& eq_rows,
              const ReductionProfile& profile) {
  inst.validate();
  const std::size_t n = inst.cols();
  const std::size_t m = eq_rows.size();
  std::vector<bool> is_eq(inst.rows(), false);
  RatVec b1;
  for (std::size_t i : eq_rows) {
    if (i >= inst.rows() || is_eq[i]) throw Error(ErrorKind::kShapeMismatch, "bad equality row index");
    if (!inst.lo[i] || !inst.hi[i] || *inst.lo[i] != *inst.hi[i]) {
      throw Error(ErrorKind::kShapeMismatch, "selected row is not an equality");
    }
    is_eq[i] = true;
    b1.push_back(*inst.lo[i]);
  }
  for (std::size_t t = 0; t < m; ++t) {
    if (!is_integral(b1[t])) {
      NoIntegerSolution cert;
      cert.multiplier.assign(m, Rational(0));
      cert.multiplier[t] = 1;
      cert.value = b1[t];
      return cert;
    }
  }

  IntMat a1(m, n);
  for (std::size_t t = 0; t < m; ++t) a1.set_row(t, inst.a.row(eq_rows[t]));
  Hnf h = hnf(a1);
  std::vector<RatVec> hinv = lower_inverse(h.h);
  IntVec y(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational yi = dot(hinv[i], b1);
    if (!is_integral(yi)) {
      NoIntegerSolution cert;
      cert.multiplier = hinv[i];
      cert.value = yi;
      return cert;
    }
    y[i] = yi.get_num();
  }

  AhlReform out;
  out.profile = profile;
  out.eq_rows = eq_rows;
  out.x_b = h.w * y;
  IntMat v_star = h.u_inverse.row_range(m, n);
  if (n > m) {
    Reduction red = reduce(h.v, profile);
    out.v = red.basis;
    out.v_star = red.inverse * v_star;
    IntVec z = babai_nearest(out.v, out.x_b);
    IntVec vz = out.v * z;
    for (std::size_t j = 0; j < n; ++j) out.x_b[j] -= vz[j];
  } else {
    out.v = IntMat(n, 0);
    out.v_star = IntMat(0, n);
  }
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    if (!is_eq[i]) out.kept_rows.push_back(i);
  }
  out.inst_new = substitute(inst, out.kept_rows, out.v, out.x_b);
  return out;
}

AhlResult ahl(const IpInstance& inst, const ReductionProfile& profile) {
  return ahl(inst, equality_rows(inst), profile);
}

AhlReform AhlReform::rebase(const IpInstance& original, const IntVec& new_xb) const {
  if (new_xb.size() != x_b.size()) throw Error(ErrorKind::kShapeMismatch, "x_b length");
  IntVec diff(x_b.size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = x_b[j] - new_xb[j];
  IntVec shift = v_star * diff;
  if (v * shift != diff) {
    throw Error(ErrorKind::kAssumptionViolated, "new x_b does not solve the equality block");
  }
  AhlReform out = *this;
  out.x_b = new_xb;
  out.inst_new = substitute(original, kept_rows, v, new_xb);
  return out;
}

IntVec AhlReform::lift(const IntVec& lambda) const {
  if (lambda.size() != v.cols()) throw Error(ErrorKind::kShapeMismatch, "lambda length");
  IntVec x = v * lambda;
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += x_b[j];
  return x;
}

RhsShift rhs_reduce(const IpInstance& inst, const ReductionProfile& profile) {
  inst.validate();
  const std::size_t n = inst.cols();
  std::vector<IntVec> f_rows;
  RatVec f;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    IntVec row = inst.a.row(i);
    if (inst.hi[i]) {
      f_rows.push_back(row);
      f.push_back(*inst.hi[i]);
    }
    if (inst.lo[i]) {
      for (auto& e : row) e = -e;
      f_rows.push_back(row);
      f.push_back(-*inst.lo[i]);
    }
  }
  RhsShift out;
  out.inst_new = inst;
  out.x_r.assign(n, 0);
  if (n == 0 || f_rows.empty()) return out;
  IntMat fm = IntMat::from_rows(f_rows, n);
  Reduction red;
  try {
    red = reduce(fm, profile);
  } catch (const Error& e) {
    // Rows do not pin down every direction; leave the rhs as it is.
    if (e.kind() == ErrorKind::kDependentColumns) return out;
    throw;
  }
  IntVec z = babai_nearest(red.basis, f);
  out.x_r = red.transform * z;
  IntVec shift = inst.a * out.x_r;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    out.inst_new.lo[i] = shifted(inst.lo[i], shift[i]);
    out.inst_new.hi[i] = shifted(inst.hi[i], shift[i]);
  }
  return out;
}

OptReform direct_opt_reform(const IntVec& c, const IpInstance& inst, Sense sense,
                            const ReductionProfile& profile) {
  inst.validate();
  if (c.size() != inst.cols()) throw Error(ErrorKind::kShapeMismatch, "objective length");
  Reduction red = reduce(inst.a.with_row_on_top(c), profile);
  OptReform out;
  out.c_new = red.basis.row(0);
  out.reform.u = red.transform;
  out.reform.u_inverse = red.inverse;
  out.reform.profile = profile;
  out.reform.inst_new = inst;
  out.reform.inst_new.provenance.reset();
  out.reform.inst_new.a = red.basis.row_range(1, red.basis.rows());
  out.reform.inst_new.objective = Objective{out.c_new, sense};
  return out;
}

IntVec map_direction(const RangespaceReform& reform, const IntVec& c, MapWhich which) {
  if (which == MapWhich::kReverse) {
    throw Error(ErrorKind::kUnsupported, "reverse map is defined for AHL reforms only");
  }
  if (c.size() != reform.u.rows()) throw Error(ErrorKind::kShapeMismatch, "direction length");
  return row_times(c, reform.u);
}

IntVec map_direction(const AhlReform& reform, const IntVec& c, MapWhich which) {
  if (which == MapWhich::kForward) {
    if (c.size() != reform.v.rows()) throw Error(ErrorKind::kShapeMismatch, "direction length");
    return row_times(c, reform.v);
  }
  if (c.size() != reform.v_star.rows()) throw Error(ErrorKind::kShapeMismatch, "direction length");
  return row_times(c, reform.v_star);
}

}  // namespace dkplab
