#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "dkplab/bnb.hpp"
#include "dkplab/error.hpp"
#include "dkplab/experiment.hpp"
#include "dkplab/instance_io.hpp"
#include "dkplab/instances.hpp"
#include "dkplab/reformulate.hpp"

using namespace dkplab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitGenerator = 3;
constexpr int kExitLimit = 4;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kParse:
    case ErrorKind::kShapeMismatch:
      return kExitParse;
    case ErrorKind::kEmptyInterval:
    case ErrorKind::kInvalidK:
    case ErrorKind::kAssumptionViolated:
    case ErrorKind::kParallelVectors:
    case ErrorKind::kDivisionByZero:
    case ErrorKind::kGcdNotOne:
    case ErrorKind::kBadDimension:
    case ErrorKind::kBadRho:
    case ErrorKind::kGeneratorViolation:
      return kExitGenerator;
    case ErrorKind::kTooLarge:
    case ErrorKind::kDimensionCap:
      return kExitLimit;
    default:
      return kExitFail;
  }
}

IntVec parse_list(const std::string& s) {
  IntVec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(parse_integer(tok));
  if (v.empty()) throw Error(ErrorKind::kParse, "empty list");
  return v;
}

UpperBounds parse_bounds(const std::string& s) {
  UpperBounds u;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    u.push_back(tok == "inf" ? std::nullopt : std::optional<Integer>(parse_integer(tok)));
  }
  return u;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

ReductionProfile profile_of(const std::string& name) {
  if (name == "kz") return ReductionProfile::kz();
  if (name == "lll") return ReductionProfile::lll();
  throw Error(ErrorKind::kParse, "reduction must be lll or kz");
}

// Accepts a plain instance or a reform bundle.
IpInstance load_any(const std::string& path) {
  const std::string text = read_file(path);
  if (text.rfind("reform-bundle", 0) == 0) return read_bundle(text).instance;
  return read_instance(text);
}

struct GenArgs {
  std::string what;
  long n = 0;
  long t = 2;
  bool slack = false;
  std::string p, r, u, policy;
  std::string k, m, beta1, beta2;
  std::string out;
};

int cmd_gen(const GenArgs& g) {
  IpInstance inst;
  if (g.what == "recipe1" || g.what == "recipe2") {
    if (g.p.empty() || g.r.empty() || g.k.empty()) throw Error(ErrorKind::kParse, "--p, --r and --k are required");
    RecipeOptions o;
    if (!g.m.empty()) o.m = parse_integer(g.m);
    if (!g.beta1.empty() || !g.beta2.empty()) {
      if (g.beta1.empty() || g.beta2.empty()) throw Error(ErrorKind::kParse, "give both --beta1 and --beta2");
      o.policy = BetaPolicy::kExplicit;
      o.beta1 = parse_integer(g.beta1);
      o.beta2 = parse_integer(g.beta2);
    } else if (g.policy == "widest") {
      o.policy = BetaPolicy::kWidest;
    } else if (g.policy == "tight-low") {
      o.policy = BetaPolicy::kTightLow;
    } else if (!g.policy.empty()) {
      throw Error(ErrorKind::kParse, "policy must be widest or tight-low");
    }
    const IntVec p = parse_list(g.p), r = parse_list(g.r);
    const Integer k = parse_integer(g.k);
    DkpParams d;
    if (g.what == "recipe1") {
      if (g.u.empty()) throw Error(ErrorKind::kParse, "--u is required for recipe1");
      d = recipe1(p, r, parse_bounds(g.u), k, o);
    } else {
      d = recipe2(p, r, k, o);
    }
    inst = to_instance(d, g.what);
  } else {
    auto fam = parse_family(g.what);
    if (!fam) throw Error(ErrorKind::kParse, "unknown family '" + g.what + "'");
    FamilyArgs a;
    a.n = g.n;
    a.t = g.t;
    a.slack = g.slack;
    inst = named_instance(*fam, a);
  }
  emit(g.out, write_instance(inst));
  return 0;
}

struct ReformArgs {
  std::string file, method = "rangespace", reduction = "lll", out;
  bool rhs_reduce = false;
};

int cmd_reformulate(const ReformArgs& a) {
  IpInstance inst = load_instance(a.file);
  const ReductionProfile prof = profile_of(a.reduction);
  ReformBundle b;
  b.reduction = prof.method;
  if (a.method == "rangespace") {
    RangespaceReform r = rangespace(inst, prof);
    b.u = r.u;
    b.instance = r.inst_new;
  } else if (a.method == "ahl") {
    AhlResult res = ahl(inst, prof);
    if (auto* cert = std::get_if<NoIntegerSolution>(&res)) {
      std::cout << "no integer solution\n";
      std::cout << "multiplier " << join(cert->multiplier) << "\n";
      std::cout << "value " << cert->value << "\n";
      return 0;
    }
    const AhlReform& r = std::get<AhlReform>(res);
    b.method = ReformMethod::kAhl;
    b.v = r.v;
    b.v_star = r.v_star;
    b.x_b = r.x_b;
    b.eq_rows = r.eq_rows;
    b.kept_rows = r.kept_rows;
    b.instance = r.inst_new;
  } else {
    throw Error(ErrorKind::kParse, "method must be rangespace or ahl");
  }
  if (a.rhs_reduce) {
    RhsShift s = rhs_reduce(b.instance, prof);
    b.instance = s.inst_new;
    b.x_r = s.x_r;
  }
  emit(a.out, write_bundle(b));
  return 0;
}

struct SolveArgs {
  std::string file, branch = "variable", order = "fixed", priority, direction, trace;
  std::uint64_t seed = 0;
  std::uint64_t node_limit = 1000000;
  bool csv = false;
  bool feasibility = false;
};

int cmd_solve(const SolveArgs& a) {
  IpInstance inst = load_any(a.file);
  BranchStrategy s;
  if (a.branch == "constraint") {
    if (a.direction.empty()) throw Error(ErrorKind::kParse, "--direction is required for constraint branching");
    s = BranchStrategy::constraint(parse_list(a.direction));
  } else if (a.branch != "variable") {
    throw Error(ErrorKind::kParse, "branch must be variable or constraint");
  }
  if (a.order == "fixed" || a.order == "ascending") {
    s.order = OrderKind::kFixed;
    if (!a.priority.empty()) {
      for (const auto& v : parse_list(a.priority)) {
        if (v < 1 || v > static_cast<long>(inst.cols())) throw Error(ErrorKind::kParse, "priority index out of range");
        s.fixed_order.push_back(v.get_ui() - 1);
      }
    }
  } else if (a.order == "descending") {
    s.fixed_order = BranchStrategy::descending(inst.cols()).fixed_order;
  } else if (a.order == "most-fractional") {
    s.order = OrderKind::kMostFractional;
  } else if (a.order == "random") {
    s.order = OrderKind::kRandom;
    s.seed = a.seed;
  } else {
    throw Error(ErrorKind::kParse, "unknown order '" + a.order + "'");
  }
  s.node_limit = a.node_limit;
  s.record_trace = !a.trace.empty();
  std::optional<Objective> obj;
  if (!a.feasibility) obj = inst.objective;
  BnbReport rep = solve(inst, s, obj);
  if (!a.trace.empty()) write_file(a.trace, format_trace(rep.trace));

  const std::string value = rep.value ? to_string(*rep.value) : "";
  const std::string point = rep.point.empty() ? "" : join(rep.point, ",");
  if (a.csv) {
    std::cout << "status,nodes_total,nodes_lp_feasible,max_depth,value,point\n";
    std::cout << to_string(rep.status) << "," << rep.nodes_total << "," << rep.nodes_lp_feasible << ","
              << rep.max_depth << "," << value << ",\"" << point << "\"\n";
  } else {
    std::cout << "status " << to_string(rep.status) << "\n";
    std::cout << "nodes_total " << rep.nodes_total << "\n";
    std::cout << "nodes_lp_feasible " << rep.nodes_lp_feasible << "\n";
    std::cout << "max_depth " << rep.max_depth << "\n";
    if (!value.empty()) std::cout << "value " << value << "\n";
    if (!point.empty()) std::cout << "point " << point << "\n";
  }
  return rep.status == BnbStatus::kNodeLimit ? kExitLimit : 0;
}

struct VerifyArgs {
  std::string file, cert, p, k;
  bool frob = false, node_lb = false;
};

DkpParams params_from(const IpInstance& inst, const VerifyArgs& a) {
  KnapsackForm kf = knapsack_form(inst);
  DkpParams d;
  d.u = kf.u;
  d.beta1 = kf.beta1;
  d.beta2 = kf.beta2;
  d.equality = kf.beta1 == kf.beta2;
  if (inst.provenance) {
    d.p = inst.provenance->p;
    d.r = inst.provenance->r;
    d.m = inst.provenance->m;
    d.k = inst.provenance->k;
  }
  if (!a.p.empty()) d.p = parse_list(a.p);
  if (!a.k.empty()) d.k = parse_integer(a.k);
  if (d.p.empty()) throw Error(ErrorKind::kNotCertified, "no provenance in file; pass --p and --k");
  if (d.p.size() != kf.a.size()) throw Error(ErrorKind::kShapeMismatch, "p length differs from a");
  // Keep a = pM + r consistent when p or k came from the command line.
  if (!inst.provenance || !a.p.empty()) {
    d.m = 0;
    d.r = kf.a;
  }
  return d;
}

int cmd_verify(const VerifyArgs& a) {
  IpInstance inst = load_instance(a.file);
  if (a.cert.empty() && !a.frob && !a.node_lb) {
    throw Error(ErrorKind::kParse, "choose --cert, --frob-bounds or --node-lb");
  }
  int rc = 0;
  if (!a.cert.empty()) {
    const auto colon = a.cert.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::kParse, "--cert takes p1,...,pn:k");
    const IntVec p = parse_list(a.cert.substr(0, colon));
    const Integer k = parse_integer(a.cert.substr(colon + 1));
    const bool ok = check_split_certificate(inst, p, k);
    std::cout << "certificate " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) rc = kExitFail;
  }
  if (a.frob) {
    if (!inst.provenance) throw Error(ErrorKind::kNotCertified, "--frob-bounds needs p, r, M provenance");
    const auto& pv = *inst.provenance;
    auto range = frob_branching_range(pv.p, pv.r, pv.m);
    auto bounds = frob_p_bounds(pv.p, pv.r, pv.m);
    std::cout << "branching_range (" << range.first << ", " << range.second << ")\n";
    std::cout << "frob_p_bounds (" << bounds.first << ", " << bounds.second << ")\n";
    const Integer lo = floor_of(bounds.first) + 1, hi = ceil_of(bounds.second) - 1;
    if (lo == hi) std::cout << "frob_p " << lo << "\n";
  }
  if (a.node_lb) {
    std::cout << "node_lower_bound " << node_lower_bound(params_from(inst, a)) << "\n";
  }
  return rc;
}

struct ExperimentArgs {
  std::string table, m = "10000", reduction = "lll", out;
  long n = 10;
  int count = 5;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 200000;
  bool allow_large = false;
};

int cmd_experiment(const ExperimentArgs& a) {
  auto t = parse_table(a.table);
  if (!t) throw Error(ErrorKind::kParse, "table must be t1, t2 or t3");
  ExperimentOptions o;
  o.table = *t;
  o.n = a.n;
  o.count = a.count;
  o.seed = a.seed;
  o.node_limit = a.node_limit;
  o.m = parse_integer(a.m);
  o.allow_large = a.allow_large;
  o.profile = profile_of(a.reduction);
  emit(a.out, to_csv(run_experiment(o)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposable knapsack lab: generators, reformulations, branch-and-bound"};
  app.require_subcommand(1);

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "Write an instance file");
  gen->add_option("what", g.what, "recipe1, recipe2 or a family name")->required();
  gen->add_option("--n", g.n, "Dimension for named families");
  gen->add_option("--t", g.t, "Exponent for nt_family");
  gen->add_flag("--slack", g.slack, "example2: add the slack variable");
  gen->add_option("--p", g.p, "Comma-separated p");
  gen->add_option("--r", g.r, "Comma-separated r");
  gen->add_option("--u", g.u, "Comma-separated upper bounds (inf allowed)");
  gen->add_option("--k", g.k);
  gen->add_option("--M", g.m);
  gen->add_option("--beta1", g.beta1);
  gen->add_option("--beta2", g.beta2);
  gen->add_option("--policy", g.policy, "widest or tight-low");
  gen->add_option("-o,--out", g.out, "Output path (stdout if omitted)");

  ReformArgs rf;
  auto* ref = app.add_subcommand("reformulate", "Write a reform bundle");
  ref->add_option("file", rf.file)->required();
  ref->add_option("--method", rf.method, "rangespace or ahl");
  ref->add_option("--reduction", rf.reduction, "lll or kz");
  ref->add_flag("--rhs-reduce", rf.rhs_reduce);
  ref->add_option("-o,--out", rf.out);

  SolveArgs sv;
  auto* sol = app.add_subcommand("solve", "Branch-and-bound on an instance or bundle");
  sol->add_option("file", sv.file)->required();
  sol->add_option("--branch", sv.branch, "variable or constraint");
  sol->add_option("--order", sv.order, "fixed, ascending, descending, most-fractional, random");
  sol->add_option("--priority", sv.priority, "1-based variable priority list for fixed order");
  sol->add_option("--direction", sv.direction, "Constraint branching direction");
  sol->add_option("--seed", sv.seed);
  sol->add_option("--node-limit", sv.node_limit);
  sol->add_option("--trace", sv.trace, "Write the node trace (TSV) here");
  sol->add_flag("--csv", sv.csv);
  sol->add_flag("--feasibility", sv.feasibility, "Ignore the objective in the file");

  VerifyArgs vf;
  auto* ver = app.add_subcommand("verify", "Check certificates and bounds");
  ver->add_option("file", vf.file)->required();
  ver->add_option("--cert", vf.cert, "p1,...,pn:k");
  ver->add_flag("--frob-bounds", vf.frob);
  ver->add_flag("--node-lb", vf.node_lb);
  ver->add_option("--p", vf.p, "Override p for --node-lb");
  ver->add_option("--k", vf.k, "Override k for --node-lb");

  ExperimentArgs ex;
  auto* exp = app.add_subcommand("experiment", "Desk-scale tables as CSV");
  exp->add_option("table", ex.table, "t1, t2 or t3")->required();
  exp->add_option("--n", ex.n);
  exp->add_option("--count", ex.count);
  exp->add_option("--seed", ex.seed);
  exp->add_option("--node-limit", ex.node_limit);
  exp->add_option("--M", ex.m);
  exp->add_option("--reduction", ex.reduction, "lll or kz");
  exp->add_flag("--allow-large", ex.allow_large, "Permit original-formulation runs with n > 24");
  exp->add_option("-o,--out", ex.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*gen) return cmd_gen(g);
    if (*ref) return cmd_reformulate(rf);
    if (*sol) return cmd_solve(sv);
    if (*ver) return cmd_verify(vf);
    if (*exp) return cmd_experiment(ex);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitFail;
}
