#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "birat/poly2.hpp"
#include "birat/rational.hpp"
#include "birat/tower.hpp"

namespace birat {

enum class Side { U, V };

inline Side opposite(Side s) { return s == Side::U ? Side::V : Side::U; }
inline const char* side_name(Side s) { return s == Side::U ? "u" : "v"; }

/// ET1 (side U) / ET1' (side V): component <- (component + a) / (c*other + b).
/// The search always emits c = 1.
struct Div1 {
  Side side = Side::U;
  Elem a;
  Elem b;
  Elem c = Elem(1);
};

/// ET2 / ET2': component <- component + q(other).
struct Sub2 {
  Side side = Side::U;
  UniPoly<Elem> q;
};

/// ET3: (u, v) <- (v, u).
struct Swap {};

using ETStep = std::variant<Div1, Sub2, Swap>;

std::string describe(const ETStep& step);

/// (u, v) with both components nonconstant, coefficients in ctx.
class MorphismPair {
 public:
  /// Throws ConstantComponent when either component is constant.
  MorphismPair(Poly2<Elem> u, Poly2<Elem> v, FieldCtx ctx);

  const Poly2<Elem>& u() const { return u_; }
  const Poly2<Elem>& v() const { return v_; }
  const Poly2<Elem>& component(Side s) const { return s == Side::U ? u_ : v_; }
  const FieldCtx& ctx() const { return ctx_; }

  /// The same pair with coefficients moved into a refined context.
  MorphismPair in(const FieldCtx& refined) const;

  friend bool operator==(const MorphismPair& a, const MorphismPair& b) {
    return a.u_ == b.u_ && a.v_ == b.v_;
  }

 private:
  Poly2<Elem> u_;
  Poly2<Elem> v_;
  FieldCtx ctx_;
};

int degree_sum(const MorphismPair& p);

/// Monomial q(t) = -lambda*t^k with deg(target + q(other)) < deg(target),
/// when one exists. Coefficients of both inputs must be units or zero
/// (see `regularize`); comparisons may raise SplitSignal.
std::optional<UniPoly<Elem>> et2_reducible(const Poly2<Elem>& target, const Poly2<Elem>& other);

struct DivSolution {
  FieldCtx ctx;
  Elem a;
  Elem b;
};

/// Per-branch outcome of the parametric division of num by den + b.
struct DivSystem {
  FieldCtx ctx;
  std::vector<UniPoly<Elem>> constraints;  // coefficients in b of the nonconstant remainder monomials
  UniPoly<Elem> a_of_b;                    // a = p(b)
  UniPoly<Elem> gcd;                       // monic gcd of constraints; zero when underdetermined
  std::vector<DivSolution> solutions;
};

/// All (a, b) in the mode's field with den + b dividing num + a, one entry
/// per branch. Requires deg num > deg den >= 1. Throws
/// SymbolicUnderdetermined when the constraints vanish identically.
std::vector<DivSolution> solve_div(const Poly2<Elem>& num, const Poly2<Elem>& den, const FieldCtx& ctx);
/// As solve_div but reports the system per branch and never throws
/// SymbolicUnderdetermined.
std::vector<DivSystem> solve_div_systems(const Poly2<Elem>& num, const Poly2<Elem>& den, const FieldCtx& ctx);

/// Throws NotDivisible or ConstantComponent.
MorphismPair apply_step(const MorphismPair& p, const ETStep& s);

struct Move {
  ETStep step;
  MorphismPair successor;
};

/// Why a move family produced nothing, or how much it produced.
struct FamilyReport {
  std::string move;    // "sub2-u", "sub2-v", "div1-u", "div1-v"
  int produced = 0;
  std::string reason;
  std::optional<std::string> gcd;  // constraint gcd in b, for div1 families
};

struct MoveAnalysis {
  std::vector<Move> moves;
  std::vector<FamilyReport> families;
};

/// Every single ET step that strictly lowers the degree sum, in the order
/// Sub2-U, Sub2-V, Div1-U, Div1-V, across all branches of the context.
std::vector<Move> reducing_moves(const MorphismPair& p);
MoveAnalysis analyze_moves(const MorphismPair& p);

/// Branchwise: deg u, deg v <= 1 and the linear part is invertible.
std::vector<Branch<bool>> is_affine_auto(const MorphismPair& p);

enum class Outcome { Yes, No, Undecided };
const char* outcome_name(Outcome o);

struct SearchStats {
  long nodes = 0;
  int max_depth = 0;
  long splits = 0;
};

struct TraceEntry {
  ETStep step;
  FieldCtx ctx;  // context the step's parameters live in
};

struct Decision {
  Outcome outcome = Outcome::No;
  Poly2<Rational> input_u;
  Poly2<Rational> input_v;
  FieldMode mode = FieldMode::Closure;
  std::vector<TraceEntry> trace;
  std::optional<MorphismPair> final_pair;  // YES only
  std::vector<FamilyReport> refusal;       // NO / UNDECIDED only
  SearchStats stats;
  int depth_bound = 0;
};

struct DecideOptions {
  std::optional<int> max_depth;  // defaults to degree_sum - 2
  std::function<void(const std::string&)> log;
};

/// Depth-first exhaustive search over degree-reducing ET steps.
/// Throws InvalidInput on a constant component.
Decision decide(const Poly2<Rational>& u, const Poly2<Rational>& v, FieldMode mode, const DecideOptions& options = {});

}  // namespace birat
