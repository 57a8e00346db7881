#include "birat/tower.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace birat {

namespace {

// Walks t up to the given height; the element living there must be `expect`.
void check_compatible(const TowerPtr& high, const Elem& low) {
  if (low.is_rational()) return;
  TowerPtr t = high;
  while (t && t->height() > low.level()) t = t->parent();
  if (t != low.tower()) throw std::logic_error("elements from incompatible towers");
}

UniPoly<Elem> add_constant(const UniPoly<Elem>& p, const Elem& c) {
  std::vector<Elem> v = p.coeffs();
  if (v.empty()) v.emplace_back(0);
  v[0] = v[0] + c;
  return UniPoly<Elem>(std::move(v));
}

}  // namespace

// ---------------------------------------------------------------------------
// Elem

int Elem::level() const { return tower_height(tower_); }

Elem Elem::normalized(const TowerPtr& t, UniPoly<Elem> p) {
  if (p.is_zero()) return Elem();
  if (p.size() == 1) return p.coeff(0);
  return Elem(t, std::move(p));
}

Elem Elem::from_poly(const TowerPtr& t, const UniPoly<Elem>& p) {
  if (!t) {
    if (p.size() > 1) throw std::logic_error("polynomial element without a tower");
    return p.coeff(0);
  }
  return normalized(t, rem_monic(p, t->defining()));
}

Elem Elem::generator(const TowerPtr& t) { return from_poly(t, UniPoly<Elem>::variable()); }

Elem operator+(const Elem& a, const Elem& b) {
  if (a.level() < b.level()) return b + a;
  if (a.is_rational()) return Elem(a.q_ + b.q_);
  if (a.level() == b.level()) {
    if (a.tower_ != b.tower_) throw std::logic_error("elements from incompatible towers");
    return Elem::normalized(a.tower_, a.poly_ + b.poly_);
  }
  check_compatible(a.tower_, b);
  return Elem::normalized(a.tower_, add_constant(a.poly_, b));
}

Elem operator-(const Elem& a) {
  if (a.is_rational()) return Elem(-a.q_);
  return Elem(a.tower_, -a.poly_);
}

Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }

Elem operator*(const Elem& a, const Elem& b) {
  if (a.level() < b.level()) return b * a;
  if (a.is_rational()) return Elem(a.q_ * b.q_);
  if (b.is_zero()) return Elem();
  if (a.level() == b.level()) {
    if (a.tower_ != b.tower_) throw std::logic_error("elements from incompatible towers");
    return Elem::normalized(a.tower_, rem_monic(a.poly_ * b.poly_, a.tower_->defining()));
  }
  check_compatible(a.tower_, b);
  return Elem::normalized(a.tower_, a.poly_.scale(b));
}

bool operator==(const Elem& a, const Elem& b) {
  if (a.level() != b.level()) return false;
  if (a.is_rational()) return a.q_ == b.q_;
  return a.tower_ == b.tower_ && a.poly_ == b.poly_;
}

bool Elem::test_zero() const {
  if (is_zero()) return true;
  if (is_rational()) return false;
  UniPoly<Elem> g = gcd(poly_, tower_->defining());
  if (g.size() == 1) return false;
  throw SplitSignal(tower_, std::move(g));
}

Elem Elem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) return Elem(q_.inverse());
  auto [g, s] = ext_gcd(poly_, tower_->defining());
  if (g.size() != 1) throw SplitSignal(tower_, std::move(g));
  return from_poly(tower_, s);
}

// ---------------------------------------------------------------------------
// Tower

Tower::Tower(TowerPtr parent, std::string name, UniPoly<Elem> defining)
    : parent_(std::move(parent)),
      name_(std::move(name)),
      defining_(std::move(defining)),
      height_(tower_height(parent_) + 1) {}

TowerPtr Tower::make(TowerPtr parent, std::string name, UniPoly<Elem> defining) {
  if (defining.size() < 2) throw Error(ErrorCode::ConstantPolynomial, "defining polynomial must be nonconstant");
  if (!(defining.lead() == Elem(1))) throw std::logic_error("defining polynomial must be monic");
  for (const auto& c : defining.coeffs())
    if (c.level() > tower_height(parent)) throw std::logic_error("defining polynomial above its level");
  return TowerPtr(new Tower(std::move(parent), std::move(name), std::move(defining)));
}

std::vector<TowerPtr> FieldCtx::chain() const {
  std::vector<TowerPtr> out;
  for (TowerPtr t = tower_; t; t = t->parent()) out.push_back(t);
  std::reverse(out.begin(), out.end());
  return out;
}

TowerPtr FieldCtx::node(int index) const {
  TowerPtr t = tower_;
  while (t && t->height() > index) t = t->parent();
  if (!t || t->height() != index) throw Error(ErrorCode::InvalidInput, "unknown generator b" + std::to_string(index));
  return t;
}

// ---------------------------------------------------------------------------
// Import and splitting

Elem import(const Elem& e, const TowerPtr& target) {
  if (e.is_rational()) return e;
  TowerPtr t = target;
  while (t && t->height() > e.level()) t = t->parent();
  if (!t || t->height() != e.level()) throw std::logic_error("import into a lower tower");
  if (t == e.tower()) return e;
  std::vector<Elem> coeffs;
  coeffs.reserve(e.poly().coeffs().size());
  for (const auto& c : e.poly().coeffs()) coeffs.push_back(import(c, t->parent()));
  return Elem::from_poly(t, UniPoly<Elem>(std::move(coeffs)));
}

UniPoly<Elem> import(const UniPoly<Elem>& p, const TowerPtr& target) {
  std::vector<Elem> coeffs;
  coeffs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) coeffs.push_back(import(c, target));
  return UniPoly<Elem>(std::move(coeffs));
}

Poly2<Elem> import(const Poly2<Elem>& p, const TowerPtr& target) {
  return p.map_coeffs([&](const Elem& c) { return import(c, target); });
}

Split split_context(const FieldCtx& ctx, const SplitSignal& signal) {
  std::vector<TowerPtr> above;
  TowerPtr t = ctx.tower();
  while (t && t != signal.node()) {
    above.push_back(t);
    t = t->parent();
  }
  if (!t) throw std::logic_error("split signal from a foreign tower");
  const TowerPtr& node = signal.node();
  const UniPoly<Elem>& g = signal.factor();
  const UniPoly<Elem> h = quo_monic(node->defining(), g);

  Split out;
  for (const UniPoly<Elem>* f : {&g, &h}) {
    TowerPtr base = Tower::make(node->parent(), node->name(), *f);
    for (auto it = above.rbegin(); it != above.rend(); ++it)
      base = Tower::make(base, (*it)->name(), import((*it)->defining(), base));
    out.branches.emplace_back(ctx.mode(), base);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

FieldCtx adjoin_or_split(const FieldCtx& ctx, const UniPoly<Elem>& f) {
  if (ctx.mode() != FieldMode::Closure)
    throw Error(ErrorCode::InvalidInput, "cannot adjoin generators to the rational field");
  UniPoly<Elem> m = import(f, ctx.tower()).monic();
  if (m.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "adjoining a root of the zero polynomial");
  if (m.size() == 1) throw Error(ErrorCode::ConstantPolynomial, "nonzero constant has no root");
  UniPoly<Elem> sqf = squarefree_part(m);
  return FieldCtx(ctx.mode(), Tower::make(ctx.tower(), ctx.next_generator_name(), std::move(sqf)));
}

std::vector<Branch<FieldCtx>> adjoin(const FieldCtx& ctx, const UniPoly<Elem>& f) {
  return evaluate(ctx, [&](const FieldCtx& c) { return adjoin_or_split(c, f); });
}

std::vector<Branch<bool>> is_zero(const FieldCtx& ctx, const Elem& e) {
  return evaluate(ctx, [&](const FieldCtx& c) { return import(e, c.tower()).test_zero(); });
}

std::vector<Branch<std::optional<Elem>>> invert(const FieldCtx& ctx, const Elem& e) {
  if (e.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return evaluate(ctx, [&](const FieldCtx& c) -> std::optional<Elem> {
    Elem local = import(e, c.tower());
    if (local.is_zero()) return std::nullopt;
    return local.inverse();
  });
}

UniPoly<Elem> gcd_all(const std::vector<UniPoly<Elem>>& fs) {
  UniPoly<Elem> g;
  for (const auto& f : fs) {
    g = gcd(g, f);
    if (g.size() == 1) break;
  }
  return g;
}

std::vector<Branch<UniPoly<Elem>>> uni_gcd(const FieldCtx& ctx, const std::vector<UniPoly<Elem>>& fs) {
  return evaluate(ctx, [&](const FieldCtx& c) {
    std::vector<UniPoly<Elem>> local;
    local.reserve(fs.size());
    for (const auto& f : fs) local.push_back(import(f, c.tower()));
    return gcd_all(local);
  });
}

void regularize(const Poly2<Elem>& p) {
  for (const auto& [m, c] : p.terms()) c.test_zero();
}

UniPoly<Elem> to_elem(const UniPoly<Rational>& p) {
  std::vector<Elem> v;
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return UniPoly<Elem>(std::move(v));
}

Poly2<Elem> to_elem(const Poly2<Rational>& p) {
  return p.map_coeffs([](const Rational& c) { return Elem(c); });
}

std::optional<UniPoly<Rational>> to_rational(const UniPoly<Elem>& p) {
  std::vector<Rational> v;
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) return std::nullopt;
    v.push_back(c.rational());
  }
  return UniPoly<Rational>(std::move(v));
}

std::optional<Poly2<Rational>> to_rational(const Poly2<Elem>& p) {
  Poly2<Rational>::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_rational()) return std::nullopt;
    out.emplace(m, c.rational());
  }
  return Poly2<Rational>(std::move(out));
}

}  // namespace birat
