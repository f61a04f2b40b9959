#include "dkplab/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "dkplab/error.hpp"
#include "dkplab/instances.hpp"
#include "dkplab/reformulate.hpp"

namespace dkplab {

std::optional<Table> parse_table(const std::string& s) {
  if (s == "t1") return Table::kT1;
  if (s == "t2") return Table::kT2;
  if (s == "t3") return Table::kT3;
  return std::nullopt;
}

const char* to_string(Table t) {
  switch (t) {
    case Table::kT1: return "t1";
    case Table::kT2: return "t2";
    case Table::kT3: return "t3";
  }
  return "?";
}

namespace {

constexpr int kMaxDraws = 1000;

struct Draw {
  IntVec p, r;
};

Draw draw_pr(std::mt19937_64& rng, long n) {
  std::uniform_int_distribution<long> pd(1, 10), rd(-10, 10);
  Draw d;
  for (long i = 0; i < n; ++i) {
    d.p.emplace_back(pd(rng));
    d.r.emplace_back(rd(rng));
  }
  return d;
}

RunCount count(const BnbReport& rep) {
  RunCount c;
  c.nodes = rep.nodes_total;
  c.lp_feasible = rep.nodes_lp_feasible;
  c.status = rep.status;
  c.ran = true;
  return c;
}

BranchStrategy with_limit(BranchStrategy s, std::uint64_t limit) {
  s.node_limit = limit;
  return s;
}

// Adds z with the row p x - z = 0 and branches on z first.
RunCount run_px(const IpInstance& inst, const IntVec& p, std::uint64_t limit) {
  const std::size_t n = inst.cols();
  IpInstance aug;
  aug.name = inst.name + "+px";
  aug.a = IntMat(inst.rows() + 1, n + 1);
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.a(i, j) = inst.a(i, j);
  }
  for (std::size_t j = 0; j < n; ++j) aug.a(inst.rows(), j) = p[j];
  aug.a(inst.rows(), n) = -1;
  aug.lo = inst.lo;
  aug.hi = inst.hi;
  aug.lo.push_back(Rational(0));
  aug.hi.push_back(Rational(0));
  BranchStrategy s = BranchStrategy::ascending();
  s.fixed_order = {n};
  return count(solve(aug, with_limit(s, limit)));
}

RunCount run_orig(const IpInstance& inst, std::uint64_t limit) {
  return count(solve(inst, with_limit(BranchStrategy::ascending(), limit)));
}

RunCount run_r(const IpInstance& inst, const ExperimentOptions& o) {
  RangespaceReform rf = rangespace(inst, o.profile);
  return count(solve(rf.inst_new, with_limit(BranchStrategy::descending(inst.cols()), o.node_limit)));
}

RunCount run_n(const IpInstance& inst, const ExperimentOptions& o) {
  AhlResult res = ahl(inst, o.profile);
  if (std::holds_alternative<NoIntegerSolution>(res)) {
    RunCount c;
    c.ran = true;
    return c;
  }
  const AhlReform& rf = std::get<AhlReform>(res);
  return count(solve(rf.inst_new, with_limit(BranchStrategy::descending(rf.v.cols()), o.node_limit)));
}

IpInstance knapsack(const IntVec& p, const IntVec& r, const Integer& m, const Integer& k,
                    const UpperBounds& u, const OptRational& lo, const OptRational& hi,
                    const std::string& name) {
  DkpParams d;
  d.p = p;
  d.r = r;
  d.m = m;
  d.k = k;
  d.u = u;
  d.beta1 = 0;
  d.beta2 = 0;
  IpInstance inst = to_instance(d, name);
  inst.lo[0] = lo;
  inst.hi[0] = hi;
  return inst;
}

ExperimentRow bounded_row(std::mt19937_64& rng, const ExperimentOptions& o, int index) {
  const long n = o.n;
  const UpperBounds u(n, Integer(o.table == Table::kT1 ? 1 : 10));
  const Integer k = n / 2;
  RecipeOptions ro;
  ro.m = o.m;
  ro.policy = BetaPolicy::kWidest;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Draw d = draw_pr(rng, n);
    DkpParams dkp;
    try {
      dkp = recipe1(d.p, d.r, u, k, ro);
    } catch (const Error&) {
      continue;
    }
    ExperimentRow row;
    row.index = index;
    row.p = d.p;
    row.r = d.r;
    row.a = dkp.a();
    row.k = k;
    row.ell = ell(d.p, k);
    row.beta1 = dkp.beta1;
    row.beta2 = dkp.beta2;

    IpInstance infeas = to_instance(dkp, "dkp-infeas");
    row.infeas_r = run_r(infeas, o);
    row.infeas_orig = run_orig(infeas, o.node_limit);
    row.infeas_px = run_px(infeas, d.p, o.node_limit);

    IpInstance opt = knapsack(d.p, d.r, o.m, k, u, std::nullopt, Rational(dkp.beta2), "dkp-opt");
    OptReform orf = direct_opt_reform(row.a, opt, Sense::kMax, o.profile);
    BnbReport opt_rep = solve(orf.reform.inst_new,
                              with_limit(BranchStrategy::descending(n), o.node_limit),
                              Objective{orf.c_new, Sense::kMax});
    row.opt_r = count(opt_rep);
    BnbReport orig_opt =
        solve(opt, with_limit(BranchStrategy::ascending(), o.node_limit), Objective{row.a, Sense::kMax});
    row.opt_orig = count(orig_opt);
    if (opt_rep.status == BnbStatus::kOptimal) {
      row.beta_a = opt_rep.value->get_num();
    } else if (orig_opt.status == BnbStatus::kOptimal) {
      row.beta_a = orig_opt.value->get_num();
    } else {
      throw Error(ErrorKind::kTooLarge, "node limit reached before the optimization run finished");
    }

    const Rational ba(row.beta_a), ba1(row.beta_a + 1);
    IpInstance fmax = knapsack(d.p, d.r, o.m, k, u, ba, ba, "dkp-feas-max");
    row.feasmax_r = run_r(fmax, o);
    row.feasmax_n = run_n(fmax, o);
    row.feasmax_orig = run_orig(fmax, o.node_limit);
    IpInstance fmin = knapsack(d.p, d.r, o.m, k, u, ba1, ba1, "dkp-infeas-min");
    row.infmin_r = run_r(fmin, o);
    row.infmin_n = run_n(fmin, o);
    row.infmin_orig = run_orig(fmin, o.node_limit);
    return row;
  }
  throw Error(ErrorKind::kGeneratorViolation, "no certified instance after repeated draws");
}

ExperimentRow equality_row(std::mt19937_64& rng, const ExperimentOptions& o, int index) {
  const long n = o.n;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Draw d = draw_pr(rng, n);
    // Sort by r_i / p_i.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return d.r[x] * d.p[y] < d.r[y] * d.p[x];
    });
    IntVec p, r;
    for (auto i : idx) {
      p.push_back(d.p[i]);
      r.push_back(d.r[i]);
    }
    if (r.front() * p.back() == r.back() * p.front()) continue;
    std::pair<Rational, Rational> range;
    try {
      range = frob_branching_range(p, r, o.m);
    } catch (const Error&) {
      continue;
    }
    const Integer beta_star = ceil_of(range.second) - 1;
    if (Rational(beta_star) <= range.first || range.first < 0) continue;

    ExperimentRow row;
    row.index = index;
    row.p = p;
    row.r = r;
    row.k = f_m_delta(p, r, o.m, 1);
    row.beta_star = beta_star;
    for (std::size_t j = 0; j < p.size(); ++j) row.a.push_back(p[j] * o.m + r[j]);
    const UpperBounds u(n, std::nullopt);

    const Rational bs(beta_star);
    IpInstance star = knapsack(p, r, o.m, row.k, u, bs, bs, "kpeq-star");
    row.star_r = run_r(star, o);
    row.star_n = run_n(star, o);
    row.star_px = run_px(star, p, o.node_limit);
    row.star_orig = run_orig(star, o.node_limit);

    if (gcd_of(row.a) == 1) {
      row.frob = frobenius_bruteforce(row.a);
      const Rational fb(*row.frob);
      IpInstance fr = knapsack(p, r, o.m, row.k, u, fb, fb, "kpeq-frob");
      row.iwidth_p = iwidth(fr, p);
      row.frob_r = run_r(fr, o);
      row.frob_n = run_n(fr, o);
      row.frob_px = run_px(fr, p, o.node_limit);
      row.frob_orig = run_orig(fr, o.node_limit);
    }
    return row;
  }
  throw Error(ErrorKind::kGeneratorViolation, "no p, r pair gives a nonempty branching range");
}

std::string cell(const RunCount& c) { return c.ran ? std::to_string(c.nodes) : ""; }

void note_limit(std::vector<std::string>& out, const char* name, const RunCount& c) {
  if (c.limited()) out.push_back(name);
}

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i];
  return s;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentOptions& opts) {
  if (opts.n < 2) throw Error(ErrorKind::kBadDimension, "n must be at least 2");
  if (opts.count < 0) throw Error(ErrorKind::kBadDimension, "count must be nonnegative");
  if (opts.n > 24 && !opts.allow_large) {
    throw Error(ErrorKind::kTooLarge, "n > 24 needs the large-instance override");
  }
  ExperimentResult res;
  res.options = opts;
  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < opts.count; ++i) {
    res.rows.push_back(opts.table == Table::kT3 ? equality_row(rng, opts, i + 1)
                                                : bounded_row(rng, opts, i + 1));
  }
  return res;
}

std::string csv_header(Table t) {
  if (t == Table::kT3) {
    return "schema,idx,beta_star,frob,iwidth_p,star_R,star_N,star_PX,star_ORIG,frob_R,frob_N,"
           "frob_PX,frob_ORIG,limit_hit";
  }
  return "schema,idx,beta1,beta2,beta_a,ell,infeas_R,infeas_ORIG,infeas_PX,opt_R,opt_ORIG,"
         "feasmax_R,feasmax_N,feasmax_ORIG,infmin_R,infmin_N,infmin_ORIG,limit_hit";
}

std::string to_csv(const ExperimentResult& res) {
  const Table t = res.options.table;
  std::ostringstream os;
  os << csv_header(t) << "\n";
  for (const auto& row : res.rows) {
    std::vector<std::string> lim;
    os << to_string(t) << ".v1," << row.index << ",";
    if (t == Table::kT3) {
      os << row.beta_star << "," << (row.frob ? to_string(*row.frob) : "") << ","
         << (row.iwidth_p ? to_string(*row.iwidth_p) : "") << "," << cell(row.star_r) << ","
         << cell(row.star_n) << "," << cell(row.star_px) << "," << cell(row.star_orig) << ","
         << cell(row.frob_r) << "," << cell(row.frob_n) << "," << cell(row.frob_px) << ","
         << cell(row.frob_orig) << ",";
      note_limit(lim, "star_R", row.star_r);
      note_limit(lim, "star_N", row.star_n);
      note_limit(lim, "star_PX", row.star_px);
      note_limit(lim, "star_ORIG", row.star_orig);
      note_limit(lim, "frob_R", row.frob_r);
      note_limit(lim, "frob_N", row.frob_n);
      note_limit(lim, "frob_PX", row.frob_px);
      note_limit(lim, "frob_ORIG", row.frob_orig);
    } else {
      os << row.beta1 << "," << row.beta2 << "," << row.beta_a << "," << row.ell << ","
         << cell(row.infeas_r) << "," << cell(row.infeas_orig) << "," << cell(row.infeas_px) << ","
         << cell(row.opt_r) << "," << cell(row.opt_orig) << "," << cell(row.feasmax_r) << ","
         << cell(row.feasmax_n) << "," << cell(row.feasmax_orig) << "," << cell(row.infmin_r) << ","
         << cell(row.infmin_n) << "," << cell(row.infmin_orig) << ",";
      note_limit(lim, "infeas_R", row.infeas_r);
      note_limit(lim, "infeas_ORIG", row.infeas_orig);
      note_limit(lim, "infeas_PX", row.infeas_px);
      note_limit(lim, "opt_R", row.opt_r);
      note_limit(lim, "opt_ORIG", row.opt_orig);
      note_limit(lim, "feasmax_R", row.feasmax_r);
      note_limit(lim, "feasmax_N", row.feasmax_n);
      note_limit(lim, "feasmax_ORIG", row.feasmax_orig);
      note_limit(lim, "infmin_R", row.infmin_r);
      note_limit(lim, "infmin_N", row.infmin_n);
      note_limit(lim, "infmin_ORIG", row.infmin_orig);
    }
    os << join_names(lim) << "\n";
  }
  return os.str();
}

}  // namespace dkplab
