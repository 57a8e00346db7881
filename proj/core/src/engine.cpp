#include "birat/engine.hpp"

#include <map>
#include <set>
#include <sstream>

#include "birat/text.hpp"

namespace birat {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

using BPoly = Poly2<UniPoly<Elem>>;

constexpr Monomial kOne{0, 0};

MorphismPair with_component(const MorphismPair& p, Side side, Poly2<Elem> replacement) {
  if (side == Side::U) return MorphismPair(std::move(replacement), p.v(), p.ctx());
  return MorphismPair(p.u(), std::move(replacement), p.ctx());
}

void regularize(const MorphismPair& p) {
  birat::regularize(p.u());
  birat::regularize(p.v());
}

bool affine_here(const MorphismPair& p) {
  if (p.u().total_degree() > Degree(1) || p.v().total_degree() > Degree(1)) return false;
  const Elem det = p.u().coeff({1, 0}) * p.v().coeff({0, 1}) - p.u().coeff({0, 1}) * p.v().coeff({1, 0});
  return !det.test_zero();
}

// One branch of the parametric division; raises SplitSignal on zero divisors.
DivSystem solve_div_here(const Poly2<Elem>& num, const Poly2<Elem>& den, const FieldCtx& ctx) {
  const TowerPtr& tower = ctx.tower();
  const Poly2<Elem> n = import(num, tower);
  const Poly2<Elem> d = import(den, tower);
  if (!(n.total_degree() > d.total_degree()) || d.total_degree() < Degree(1))
    throw Error(ErrorCode::InvalidInput, "solve_div requires deg num > deg den >= 1");

  auto lift = [](const Elem& c) { return UniPoly<Elem>::constant(c); };
  const BPoly bn = n.map_coeffs(lift);
  BPoly bd = d.map_coeffs(lift);
  bd.add_term(kOne, UniPoly<Elem>::variable());
  const BPoly rem = divide_by(bn, bd).remainder;

  DivSystem sys{ctx, {}, -rem.coeff(kOne), {}, {}};
  for (const auto& [m, c] : rem.terms())
    if (!(m == kOne)) sys.constraints.push_back(c);
  sys.gcd = gcd_all(sys.constraints);
  if (sys.gcd.is_zero() || sys.gcd.size() == 1) return sys;

  auto add_solution = [&](const FieldCtx& where, const Elem& b) {
    sys.solutions.push_back({where, import(sys.a_of_b, where.tower()).eval(b), b});
  };

  if (ctx.mode() == FieldMode::Rational) {
    for (const auto& r : rational_roots(*to_rational(sys.gcd))) add_solution(ctx, Elem(r));
    return sys;
  }

  if (auto rational_gcd = to_rational(sys.gcd)) {
    UniPoly<Rational> rest = squarefree_part(*rational_gcd);
    for (const auto& r : rational_roots(rest)) {
      add_solution(ctx, Elem(r));
      rest = quo_monic(rest, UniPoly<Rational>(std::vector<Rational>{-r, Rational(1)}));
    }
    if (rest.size() > 1) {
      FieldCtx ext = adjoin_or_split(ctx, to_elem(rest));
      add_solution(ext, Elem::generator(ext.tower()));
    }
    return sys;
  }

  const UniPoly<Elem> sqf = squarefree_part(sys.gcd);
  if (sqf.size() == 2) {
    add_solution(ctx, -sqf.coeff(0));
  } else {
    FieldCtx ext = adjoin_or_split(ctx, sqf);
    add_solution(ext, Elem::generator(ext.tower()));
  }
  return sys;
}

std::string degree_text(const Poly2<Elem>& p) {
  std::ostringstream os;
  os << p.total_degree();
  return os.str();
}

MoveAnalysis analyze_here(const MorphismPair& p) {
  MoveAnalysis out;

  for (Side side : {Side::U, Side::V}) {
    const Side other_side = opposite(side);
    FamilyReport rep{std::string("sub2-") + side_name(side), 0, {}, std::nullopt};
    const Poly2<Elem>& target = p.component(side);
    const Poly2<Elem>& other = p.component(other_side);
    const int dt = target.total_degree().value(), dother = other.total_degree().value();
    if (dt % dother != 0) {
      rep.reason = "unavailable: degree " + std::to_string(dother) + " of " + side_name(other_side) +
                   " does not divide degree " + std::to_string(dt) + " of " + side_name(side);
    } else if (auto q = et2_reducible(target, other)) {
      try {
        Sub2 step{side, *q};
        out.moves.push_back({step, apply_step(p, step)});
        rep.produced = 1;
        rep.reason = "available: q(t) = " + render_unipoly(*q, Var::t);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ConstantComponent) throw;
        rep.reason = "unavailable: the reduction leaves a constant component";
      }
    } else {
      rep.reason = std::string("unavailable: leading form of ") + side_name(side) +
                   " is not a scalar multiple of the leading form of " + side_name(other_side) + " to the power " +
                   std::to_string(dt / dother);
    }
    out.families.push_back(std::move(rep));
  }

  for (Side side : {Side::U, Side::V}) {
    const Side other_side = opposite(side);
    FamilyReport rep{std::string("div1-") + side_name(side), 0, {}, std::nullopt};
    const Poly2<Elem>& num = p.component(side);
    const Poly2<Elem>& den = p.component(other_side);
    if (!(num.total_degree() > den.total_degree())) {
      rep.reason = std::string("unavailable: empty divisibility system (deg ") + side_name(side) + " = " +
                   degree_text(num) + " does not exceed deg " + side_name(other_side) + " = " + degree_text(den) + ")";
      out.families.push_back(std::move(rep));
      continue;
    }
    DivSystem sys = solve_div_here(num, den, p.ctx());
    rep.gcd = render_unipoly(sys.gcd, Var::b);
    if (sys.gcd.is_zero()) {
      // Every b works; the pair is not birational. One representative move keeps the family visible.
      Div1 step{side, sys.a_of_b.eval(Elem(0)), Elem(0), Elem(1)};
      out.moves.push_back({step, apply_step(p, step)});
      rep.produced = 1;
      rep.reason = "available: every b solves the divisibility system (components are algebraically dependent); "
                   "b = 0 taken as representative";
    } else if (sys.gcd.size() == 1) {
      rep.reason = "unavailable: empty divisibility system (constraint gcd is 1)";
    } else if (sys.solutions.empty()) {
      rep.reason = "unavailable: empty divisibility system over Q (constraint gcd " + *rep.gcd + " has no rational root)";
    } else {
      for (const auto& sol : sys.solutions) {
        Div1 step{side, sol.a, sol.b, Elem(1)};
        out.moves.push_back({step, apply_step(p.in(sol.ctx), step)});
      }
      rep.produced = static_cast<int>(sys.solutions.size());
      rep.reason = "available: " + std::to_string(rep.produced) + " solution branch(es)";
    }
    out.families.push_back(std::move(rep));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string describe(const ETStep& step) {
  return std::visit(overloaded{
                        [](const Div1& s) {
                          std::string out = std::string("div1-") + side_name(s.side) + "(a = " + render_elem(s.a) +
                                            ", b = " + render_elem(s.b);
                          if (!(s.c == Elem(1))) out += ", c = " + render_elem(s.c);
                          return out + ")";
                        },
                        [](const Sub2& s) {
                          return std::string("sub2-") + side_name(s.side) + "(q = " + render_unipoly(s.q, Var::t) + ")";
                        },
                        [](const Swap&) { return std::string("swap"); },
                    },
                    step);
}

MorphismPair::MorphismPair(Poly2<Elem> u, Poly2<Elem> v, FieldCtx ctx)
    : u_(std::move(u)), v_(std::move(v)), ctx_(std::move(ctx)) {
  if (u_.is_constant() || v_.is_constant())
    throw Error(ErrorCode::ConstantComponent, "pair has a constant component");
}

MorphismPair MorphismPair::in(const FieldCtx& refined) const {
  if (refined == ctx_) return *this;
  return MorphismPair(import(u_, refined.tower()), import(v_, refined.tower()), refined);
}

int degree_sum(const MorphismPair& p) { return (p.u().total_degree() + p.v().total_degree()).value(); }

std::optional<UniPoly<Elem>> et2_reducible(const Poly2<Elem>& target, const Poly2<Elem>& other) {
  const int dt = target.total_degree().value(), dother = other.total_degree().value();
  if (dt < 1 || dother < 1 || dt % dother != 0) return std::nullopt;
  const unsigned k = static_cast<unsigned>(dt / dother);
  const Poly2<Elem> lt = target.leading_form();
  const Poly2<Elem> lo = other.leading_form().pow(k);
  if (!(lt.leading_monomial() == lo.leading_monomial())) return std::nullopt;
  const Elem lambda = lt.leading_coeff() * lo.leading_coeff().inverse();
  const Poly2<Elem> diff = lt - lo.scale(lambda);
  for (const auto& [m, c] : diff.terms())
    if (!c.test_zero()) return std::nullopt;
  return UniPoly<Elem>::monomial(-lambda, static_cast<int>(k));
}

std::vector<DivSystem> solve_div_systems(const Poly2<Elem>& num, const Poly2<Elem>& den, const FieldCtx& ctx) {
  std::vector<DivSystem> out;
  for (auto& branch : evaluate(ctx, [&](const FieldCtx& c) { return solve_div_here(num, den, c); }))
    out.push_back(std::move(branch.value));
  return out;
}

std::vector<DivSolution> solve_div(const Poly2<Elem>& num, const Poly2<Elem>& den, const FieldCtx& ctx) {
  std::vector<DivSolution> out;
  for (auto& sys : solve_div_systems(num, den, ctx)) {
    if (sys.gcd.is_zero())
      throw Error(ErrorCode::SymbolicUnderdetermined, "divisibility constraints vanish identically");
    for (auto& s : sys.solutions) out.push_back(std::move(s));
  }
  return out;
}

MorphismPair apply_step(const MorphismPair& p, const ETStep& s) {
  const TowerPtr& tower = p.ctx().tower();
  return std::visit(
      overloaded{
          [&](const Swap&) { return MorphismPair(p.v(), p.u(), p.ctx()); },
          [&](const Sub2& st) {
            const Poly2<Elem>& other = p.component(opposite(st.side));
            return with_component(p, st.side, p.component(st.side) + compose(import(st.q, tower), other));
          },
          [&](const Div1& st) {
            const Poly2<Elem> num = p.component(st.side) + Poly2<Elem>::constant(import(st.a, tower));
            const Poly2<Elem> den = p.component(opposite(st.side)).scale(import(st.c, tower)) +
                                    Poly2<Elem>::constant(import(st.b, tower));
            auto [q, r] = divide_by(num, den);
            if (!r.is_zero()) throw Error(ErrorCode::NotDivisible, "remainder nonzero");
            return with_component(p, st.side, std::move(q));
          },
      },
      s);
}

MoveAnalysis analyze_moves(const MorphismPair& p) {
  MoveAnalysis out;
  auto branches = evaluate(p.ctx(), [&](const FieldCtx& c) {
    MorphismPair local = p.in(c);
    regularize(local);
    return analyze_here(local);
  });
  for (auto& b : branches) {
    for (auto& m : b.value.moves) out.moves.push_back(std::move(m));
    if (out.families.empty()) out.families = std::move(b.value.families);
  }
  return out;
}

std::vector<Move> reducing_moves(const MorphismPair& p) { return analyze_moves(p).moves; }

std::vector<Branch<bool>> is_affine_auto(const MorphismPair& p) {
  return evaluate(p.ctx(), [&](const FieldCtx& c) {
    MorphismPair local = p.in(c);
    regularize(local);
    return affine_here(local);
  });
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Undecided: return "undecided";
  }
  return "undecided";
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct NodeResult {
  std::optional<MorphismPair> pair;
  bool affine = false;
  std::vector<Move> moves;
};

class Search {
 public:
  Search(int max_depth, const DecideOptions& options, SearchStats& stats)
      : max_depth_(max_depth), options_(options), stats_(stats) {}

  bool explore(const MorphismPair& pair, int depth) {
    ++stats_.nodes;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    auto key = std::make_pair(render_poly(pair.u()) + " | " + render_poly(pair.v()), pair.ctx().tower());
    if (failed_.count(key)) return false;

    bool truncated_here = false;
    auto branches = evaluate(
        pair.ctx(),
        [&](const FieldCtx& c) {
          NodeResult r;
          MorphismPair local = pair.in(c);
          regularize(local);
          r.affine = affine_here(local);
          if (!r.affine) {
            if (depth < max_depth_)
              r.moves = analyze_here(local).moves;
            else if (degree_sum(local) > 2)
              truncated_here = true;
          }
          r.pair = std::move(local);
          return r;
        },
        &stats_.splits);

    for (auto& b : branches) {
      if (b.value.affine) {
        final_pair_ = b.value.pair;
        return true;
      }
    }
    for (auto& b : branches) {
      for (auto& m : b.value.moves) {
        if (options_.log)
          options_.log("depth " + std::to_string(depth) + ": " + describe(m.step) + " -> (" +
                       render_poly(m.successor.u()) + ", " + render_poly(m.successor.v()) + ")");
        trace_.push_back({m.step, m.successor.ctx()});
        if (explore(m.successor, depth + 1)) return true;
        trace_.pop_back();
      }
    }
    if (truncated_here) truncated_ = true;
    if (!truncated_here) failed_.insert(std::move(key));
    return false;
  }

  std::vector<TraceEntry> take_trace() { return std::move(trace_); }
  std::optional<MorphismPair> final_pair() const { return final_pair_; }
  bool truncated() const { return truncated_; }

 private:
  int max_depth_;
  const DecideOptions& options_;
  SearchStats& stats_;
  std::vector<TraceEntry> trace_;
  std::optional<MorphismPair> final_pair_;
  std::set<std::pair<std::string, TowerPtr>> failed_;
  bool truncated_ = false;
};

}  // namespace

Decision decide(const Poly2<Rational>& u, const Poly2<Rational>& v, FieldMode mode, const DecideOptions& options) {
  if (u.is_constant() || v.is_constant()) throw Error(ErrorCode::InvalidInput, "input pair has a constant component");
  Decision d;
  d.input_u = u;
  d.input_v = v;
  d.mode = mode;
  const MorphismPair root(to_elem(u), to_elem(v), FieldCtx(mode));
  d.depth_bound = degree_sum(root) - 2;
  const int max_depth = options.max_depth.value_or(d.depth_bound);

  Search search(max_depth, options, d.stats);
  if (search.explore(root, 0)) {
    d.outcome = Outcome::Yes;
    d.trace = search.take_trace();
    d.final_pair = search.final_pair();
    return d;
  }

  // The root context is Q and never splits.
  MoveAnalysis root_analysis = analyze_moves(root);
  d.refusal = std::move(root_analysis.families);
  if (search.truncated()) {
    d.outcome = Outcome::Undecided;
  } else if (root_analysis.moves.empty() || mode == FieldMode::Closure) {
    d.outcome = Outcome::No;
  } else {
    d.outcome = Outcome::Undecided;
  }
  if (!root_analysis.moves.empty()) {
    for (auto& f : d.refusal)
      if (f.produced > 0)
        f.reason = "explored: " + std::to_string(f.produced) +
                   " move(s), none leads to an affine automorphism within the depth bound";
  }
  return d;
}

}  // namespace birat
