#pragma once

#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "birat/poly2.hpp"
#include "birat/rational.hpp"
#include "birat/unipoly.hpp"

namespace birat {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// Element of Q(b1, ..., bn) / (f1, ..., fn): a polynomial in the top
/// generator of its tower whose coefficients are elements of lower levels.
///
/// Representation is canonical and minimal: an element that does not depend
/// on the top generator lives at the parent level, and rationals carry no
/// tower at all. Two elements are equal iff their representations are.
class Elem {
 public:
  Elem() = default;
  Elem(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Elem(Rational q) : q_(std::move(q)) {}  // NOLINT

  /// Reduces p modulo the defining polynomial of t.
  static Elem from_poly(const TowerPtr& t, const UniPoly<Elem>& p);
  static Elem generator(const TowerPtr& t);

  int level() const;
  const TowerPtr& tower() const { return tower_; }
  bool is_rational() const { return !tower_; }
  const Rational& rational() const { return q_; }
  /// Representation in the top generator; only meaningful when !is_rational().
  const UniPoly<Elem>& poly() const { return poly_; }

  /// Identically zero in every point of the tower.
  bool is_zero() const { return tower_ ? poly_.is_zero() : q_.is_zero(); }
  /// Zero test that raises a SplitSignal on a zero divisor.
  bool test_zero() const;
  /// Inverse; raises a SplitSignal on a zero divisor and DivisionByZero on 0.
  Elem inverse() const;

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a);
  friend bool operator==(const Elem& a, const Elem& b);

 private:
  Elem(TowerPtr t, UniPoly<Elem> p) : tower_(std::move(t)), poly_(std::move(p)) {}
  static Elem normalized(const TowerPtr& t, UniPoly<Elem> p);

  TowerPtr tower_;
  Rational q_;
  UniPoly<Elem> poly_;
};

/// One generator on top of a parent tower. A null TowerPtr is Q itself.
class Tower {
 public:
  /// `defining` must be monic of degree >= 1 over the parent.
  static TowerPtr make(TowerPtr parent, std::string name, UniPoly<Elem> defining);

  const TowerPtr& parent() const { return parent_; }
  int height() const { return height_; }
  const std::string& name() const { return name_; }
  const UniPoly<Elem>& defining() const { return defining_; }
  int degree() const { return defining_.size() - 1; }

 private:
  Tower(TowerPtr parent, std::string name, UniPoly<Elem> defining);

  TowerPtr parent_;
  std::string name_;
  UniPoly<Elem> defining_;
  int height_;
};

inline int tower_height(const TowerPtr& t) { return t ? t->height() : 0; }

/// Raised by tower arithmetic when a zero divisor is met: `factor` is a
/// monic proper divisor of `node`'s defining polynomial.
class SplitSignal : public std::exception {
 public:
  SplitSignal(TowerPtr node, UniPoly<Elem> factor)
      : node_(std::move(node)), factor_(std::move(factor)) {}
  const char* what() const noexcept override { return "tower split required"; }
  const TowerPtr& node() const { return node_; }
  const UniPoly<Elem>& factor() const { return factor_; }

 private:
  TowerPtr node_;
  UniPoly<Elem> factor_;
};

enum class FieldMode { Rational, Closure };

/// A coefficient field: Q itself (RATIONAL), or a tower of adjoined
/// parameter roots over Q (CLOSURE).
class FieldCtx {
 public:
  FieldCtx() = default;
  explicit FieldCtx(FieldMode mode, TowerPtr tower = nullptr)
      : mode_(mode), tower_(std::move(tower)) {}

  FieldMode mode() const { return mode_; }
  const TowerPtr& tower() const { return tower_; }
  int height() const { return tower_height(tower_); }
  /// Generators bottom-up.
  std::vector<TowerPtr> chain() const;
  /// Tower node of generator `index` (1-based).
  TowerPtr node(int index) const;
  std::string next_generator_name() const { return "b" + std::to_string(height() + 1); }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.mode_ == b.mode_ && a.tower_ == b.tower_;
  }

 private:
  FieldMode mode_ = FieldMode::Closure;
  TowerPtr tower_;
};

/// The refined contexts produced by a zero divisor. Elements of the parent
/// context move into a branch with `import`.
struct Split {
  std::vector<FieldCtx> branches;
};

template <class T>
struct Branch {
  FieldCtx ctx;
  T value;
};

/// Maps an element into a refinement or extension of its tower.
Elem import(const Elem& e, const TowerPtr& target);
UniPoly<Elem> import(const UniPoly<Elem>& p, const TowerPtr& target);
Poly2<Elem> import(const Poly2<Elem>& p, const TowerPtr& target);

Split split_context(const FieldCtx& ctx, const SplitSignal& signal);

/// Runs fn(ctx); whenever it raises a SplitSignal, splits the context and
/// reruns fn in each branch. Results are in branch order. `splits`, when
/// given, is incremented once per split.
template <class Fn>
auto evaluate(const FieldCtx& ctx, Fn&& fn, long* splits = nullptr)
    -> std::vector<Branch<std::invoke_result_t<Fn&, const FieldCtx&>>> {
  using R = std::invoke_result_t<Fn&, const FieldCtx&>;
  std::vector<Branch<R>> out;
  std::vector<FieldCtx> pending{ctx};
  while (!pending.empty()) {
    FieldCtx current = std::move(pending.back());
    pending.pop_back();
    std::optional<SplitSignal> signal;
    try {
      out.push_back({current, fn(current)});
      continue;
    } catch (const SplitSignal& s) {
      signal = s;
    }
    if (splits) ++*splits;
    Split split = split_context(current, *signal);
    for (auto it = split.branches.rbegin(); it != split.branches.rend(); ++it)
      pending.push_back(std::move(*it));
  }
  return out;
}

/// New context with a root of f adjoined (defining polynomial = monic
/// squarefree part of f). Throws ConstantPolynomial / ZeroPolynomial, and
/// SplitSignal when a lower-level zero divisor is met.
FieldCtx adjoin_or_split(const FieldCtx& ctx, const UniPoly<Elem>& f);

/// Branchwise adjoin: one entry per branch of ctx.
std::vector<Branch<FieldCtx>> adjoin(const FieldCtx& ctx, const UniPoly<Elem>& f);
/// Branchwise semantic zero test.
std::vector<Branch<bool>> is_zero(const FieldCtx& ctx, const Elem& e);
/// Branchwise inverse; nullopt on branches where e vanishes. Throws
/// DivisionByZero when e is zero throughout.
std::vector<Branch<std::optional<Elem>>> invert(const FieldCtx& ctx, const Elem& e);
/// Monic gcd of the family, branchwise. All-zero input yields zero.
std::vector<Branch<UniPoly<Elem>>> uni_gcd(const FieldCtx& ctx, const std::vector<UniPoly<Elem>>& fs);

/// gcd of a family in the current context; may raise SplitSignal.
UniPoly<Elem> gcd_all(const std::vector<UniPoly<Elem>>& fs);

/// Complete ascending duplicate-free list of rational roots.
std::vector<Rational> rational_roots(const UniPoly<Rational>& f);

/// Raises SplitSignal if any coefficient is a zero divisor; afterwards every
/// stored coefficient is a unit.
void regularize(const Poly2<Elem>& p);

/// Converts a polynomial with rational coefficients.
UniPoly<Elem> to_elem(const UniPoly<Rational>& p);
Poly2<Elem> to_elem(const Poly2<Rational>& p);
/// Inverse of to_elem; nullopt if some coefficient is not rational.
std::optional<UniPoly<Rational>> to_rational(const UniPoly<Elem>& p);
std::optional<Poly2<Rational>> to_rational(const Poly2<Elem>& p);

}  // namespace birat
