#include "dkplab/bnb.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dkplab/error.hpp"

namespace dkplab {

BranchStrategy BranchStrategy::ascending() { return {}; }

BranchStrategy BranchStrategy::descending(std::size_t n) {
  BranchStrategy s;
  for (std::size_t j = n; j-- > 0;) s.fixed_order.push_back(j);
  return s;
}

BranchStrategy BranchStrategy::most_fractional() {
  BranchStrategy s;
  s.order = OrderKind::kMostFractional;
  return s;
}

BranchStrategy BranchStrategy::random(std::uint64_t seed) {
  BranchStrategy s;
  s.order = OrderKind::kRandom;
  s.seed = seed;
  return s;
}

BranchStrategy BranchStrategy::constraint(const IntVec& d) {
  BranchStrategy s;
  s.kind = BranchKind::kConstraint;
  s.direction = d;
  return s;
}

const char* to_string(BnbStatus s) {
  switch (s) {
    case BnbStatus::kInfeasible: return "infeasible";
    case BnbStatus::kFeasible: return "feasible";
    case BnbStatus::kOptimal: return "optimal";
    case BnbStatus::kNodeLimit: return "node_limit";
    case BnbStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

bool satisfies(const IpInstance& inst, const IntVec& x) {
  if (x.size() != inst.cols()) return false;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    Rational v(dot(inst.a.row(i), x));
    if (inst.lo[i] && v < *inst.lo[i]) return false;
    if (inst.hi[i] && v > *inst.hi[i]) return false;
  }
  return true;
}

namespace {

struct Node {
  LpModel model;
  std::uint64_t depth = 0;
  std::string fixing;
};

std::string append_fixing(const std::string& base, const std::string& add) {
  return base.empty() ? add : base + "," + add;
}

class Brancher {
 public:
  Brancher(const BranchStrategy& s, std::size_t n) : s_(s), rng_(s.seed) {
    if (s.order == OrderKind::kFixed) {
      std::vector<bool> seen(n, false);
      for (std::size_t j : s.fixed_order) {
        if (j >= n) throw Error(ErrorKind::kShapeMismatch, "branching order index out of range");
        if (!seen[j]) priority_.push_back(j);
        seen[j] = true;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!seen[j]) priority_.push_back(j);
      }
    }
  }

  // Index of the variable to branch on, or nullopt when x is integral.
  std::optional<std::size_t> pick(const RatVec& x) {
    std::vector<std::size_t> frac;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!is_integral(x[j])) frac.push_back(j);
    }
    if (frac.empty()) return std::nullopt;
    switch (s_.order) {
      case OrderKind::kFixed:
        for (std::size_t j : priority_) {
          if (!is_integral(x[j])) return j;
        }
        break;
      case OrderKind::kMostFractional: {
        std::size_t best = frac.front();
        Rational best_dist = 1;
        for (std::size_t j : frac) {
          Rational f = x[j] - Rational(floor_of(x[j]));
          Rational dist = abs(f - Rational(1, 2));
          if (dist < best_dist) {
            best_dist = dist;
            best = j;
          }
        }
        return best;
      }
      case OrderKind::kRandom: {
        std::uniform_int_distribution<std::size_t> pick(0, frac.size() - 1);
        return frac[pick(rng_)];
      }
    }
    return frac.front();
  }

 private:
  const BranchStrategy& s_;
  std::vector<std::size_t> priority_;
  std::mt19937_64 rng_;
};

IntVec to_integer(const RatVec& x) {
  IntVec out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.get_num());
  return out;
}

}  // namespace

BnbReport solve(const IpInstance& inst, const BranchStrategy& strategy,
                const std::optional<Objective>& objective) {
  inst.validate();
  const std::size_t n = inst.cols();
  if (strategy.kind == BranchKind::kConstraint && strategy.direction.size() != n) {
    throw Error(ErrorKind::kShapeMismatch, "branching direction length");
  }
  if (objective && objective->c.size() != n) {
    throw Error(ErrorKind::kShapeMismatch, "objective length");
  }
  const IntVec c = objective ? objective->c : IntVec{};
  const Sense sense = objective ? objective->sense : Sense::kMin;

  BnbReport rep;
  Brancher brancher(strategy, n);
  std::optional<Rational> incumbent;
  bool limit_hit = false;

  std::vector<Node> stack;
  stack.push_back({LpModel::from_instance(inst), 0, ""});
  while (!stack.empty()) {
    if (rep.nodes_total >= strategy.node_limit) {
      limit_hit = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    const std::uint64_t id = rep.nodes_total++;
    rep.max_depth = std::max(rep.max_depth, node.depth);

    LpOutcome lp = solve_lp(node.model, c, sense);
    TraceLine tl{id, node.depth, node.fixing, lp.status, "-"};
    auto log = [&](const std::string& decision) {
      if (!strategy.record_trace) return;
      tl.decision = decision;
      rep.trace.push_back(tl);
    };

    if (lp.status == LpStatus::kInfeasible) {
      log("-");
      continue;
    }
    ++rep.nodes_lp_feasible;

    if (objective && incumbent && lp.status == LpStatus::kOptimal) {
      const bool dominated = sense == Sense::kMax ? Rational(floor_of(lp.value)) <= *incumbent
                                                  : Rational(ceil_of(lp.value)) >= *incumbent;
      if (dominated) {
        log("pruned");
        continue;
      }
    }

    if (strategy.kind == BranchKind::kConstraint && node.depth == 0) {
      WidthReport w = width(node.model, strategy.direction);
      if (!w.bounded()) {
        throw Error(ErrorKind::kUnboundedDirection, "branching direction is unbounded on the relaxation");
      }
      const Integer lo = ceil_of(w.min.value());
      const Integer hi = floor_of(w.max.value());
      if (lo > hi) {
        log("d:none");
        continue;
      }
      for (Integer t = hi; t >= lo; --t) {
        Node child{node.model, 1, append_fixing(node.fixing, "d=" + to_string(t))};
        child.model.add_row(strategy.direction, Rational(t), Rational(t));
        stack.push_back(std::move(child));
      }
      log("d=" + to_string(lo) + ".." + to_string(hi));
      continue;
    }

    std::optional<std::size_t> j = brancher.pick(lp.point);
    if (!j) {
      IntVec x = to_integer(lp.point);
      if (!satisfies(inst, x)) throw std::logic_error("integral LP point violates the instance");
      log("integral");
      if (lp.status == LpStatus::kUnbounded) {
        rep.status = BnbStatus::kUnbounded;
        rep.point = x;
        return rep;
      }
      if (!objective) {
        rep.status = BnbStatus::kFeasible;
        rep.point = x;
        return rep;
      }
      Rational v(dot(c, x));
      const bool better = !incumbent || (sense == Sense::kMax ? v > *incumbent : v < *incumbent);
      if (better) {
        incumbent = v;
        rep.point = x;
        rep.value = v;
      }
      continue;
    }
    if (node.depth >= strategy.depth_limit) {
      limit_hit = true;
      log("depth_limit");
      continue;
    }
    const Integer fl = floor_of(lp.point[*j]);
    const std::string var = "x" + std::to_string(*j + 1);
    Node up{node.model, node.depth + 1, append_fixing(node.fixing, var + ">=" + to_string(Integer(fl + 1)))};
    up.model.tighten_lower(*j, Rational(fl + 1));
    Node down{std::move(node.model), node.depth + 1,
              append_fixing(node.fixing, var + "<=" + to_string(fl))};
    down.model.tighten_upper(*j, Rational(fl));
    log(var);
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }

  if (incumbent) {
    rep.status = limit_hit ? BnbStatus::kNodeLimit : BnbStatus::kOptimal;
  } else {
    rep.status = limit_hit ? BnbStatus::kNodeLimit : BnbStatus::kInfeasible;
  }
  return rep;
}

bool split_condition(const IntVec& a, const Integer& beta1, const Integer& beta2,
                     const UpperBounds& u, const IntVec& p, const Integer& k) {
  if (beta1 > beta2) return false;
  Extended hi = knapsack_extreme(a, p, k, u, Sense::kMax);
  Extended lo = knapsack_extreme(a, p, k + 1, u, Sense::kMin);
  return hi < Extended(Rational(beta1)) && Extended(Rational(beta2)) < lo;
}

KnapsackForm knapsack_form(const IpInstance& inst) {
  inst.validate();
  const std::size_t n = inst.cols();
  if (inst.rows() != n + 1 || !inst.lo[0] || !inst.hi[0] || !is_integral(*inst.lo[0]) ||
      !is_integral(*inst.hi[0])) {
    throw Error(ErrorKind::kShapeMismatch, "not a single-row knapsack with integral rhs");
  }
  KnapsackForm kf;
  kf.a = inst.a.row(0);
  kf.beta1 = inst.lo[0]->get_num();
  kf.beta2 = inst.hi[0]->get_num();
  for (std::size_t i = 0; i < n; ++i) {
    IntVec row = inst.a.row(i + 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] != (i == j ? 1 : 0)) throw Error(ErrorKind::kShapeMismatch, "bound rows must be e_i");
    }
    if (!inst.lo[i + 1] || *inst.lo[i + 1] != 0) {
      throw Error(ErrorKind::kShapeMismatch, "lower bounds must be 0");
    }
    const OptRational& h = inst.hi[i + 1];
    if (h && !is_integral(*h)) throw Error(ErrorKind::kShapeMismatch, "upper bounds must be integral");
    kf.u.push_back(h ? std::optional<Integer>(h->get_num()) : std::nullopt);
  }
  return kf;
}

bool check_split_certificate(const IpInstance& inst, const IntVec& p, const Integer& k) {
  KnapsackForm kf = knapsack_form(inst);
  if (p.size() != kf.a.size()) throw Error(ErrorKind::kShapeMismatch, "certificate length");
  return split_condition(kf.a, kf.beta1, kf.beta2, kf.u, p, k);
}

std::optional<Integer> prove_by_constraint(const IpInstance& inst, const IntVec& p) {
  WidthReport w = width(inst, p);
  if (!w.feasible) return std::nullopt;
  if (!w.bounded()) throw Error(ErrorKind::kUnboundedDirection, "px is unbounded on the relaxation");
  if (*w.iwidth != 0) return std::nullopt;
  Integer k = floor_of(w.max.value());
  if (!(w.min.value() > Rational(k) && w.max.value() < Rational(k + 1))) {
    throw std::logic_error("integer width 0 without a separating k");
  }
  return k;
}

std::string format_trace(const std::vector<TraceLine>& trace) {
  std::ostringstream os;
  os << "node\tdepth\tfixing\tlp\tdecision\n";
  for (const auto& t : trace) {
    os << t.node << '\t' << t.depth << '\t' << (t.fixing.empty() ? "-" : t.fixing) << '\t'
       << to_string(t.lp) << '\t' << t.decision << '\n';
  }
  return os.str();
}

}  // namespace dkplab
