#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "birat/degree.hpp"
#include "birat/error.hpp"
#include "birat/unipoly.hpp"

namespace birat {

struct Monomial {
  std::uint32_t ex = 0;
  std::uint32_t ey = 0;

  int total() const { return static_cast<int>(ex + ey); }
  bool divides(const Monomial& m) const { return ex <= m.ex && ey <= m.ey; }

  friend Monomial operator*(Monomial a, Monomial b) { return {a.ex + b.ex, a.ey + b.ey}; }
  /// Requires b.divides(a).
  friend Monomial operator/(Monomial a, Monomial b) { return {a.ex - b.ex, a.ey - b.ey}; }
  friend bool operator==(Monomial, Monomial) = default;

  /// Graded lexicographic, x > y.
  friend std::strong_ordering operator<=>(Monomial a, Monomial b) {
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    return a.ex <=> b.ex;
  }
};

/// Sparse bivariate polynomial in x, y. Terms iterate in descending graded
/// lex order, so `begin()` is the leading term. Zero coefficients are never
/// stored (syntactically).
template <class C>
class Poly2 {
 public:
  using TermMap = std::map<Monomial, C, std::greater<Monomial>>;

  Poly2() = default;
  explicit Poly2(TermMap terms) : terms_(std::move(terms)) { normalize(); }

  static Poly2 constant(const C& c) { return term(c, {0, 0}); }
  static Poly2 term(const C& c, Monomial m) {
    Poly2 p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }
  static Poly2 x() { return term(C(1), {1, 0}); }
  static Poly2 y() { return term(C(1), {0, 1}); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Degree total_degree() const {
    return is_zero() ? Degree::neg_inf() : Degree(terms_.begin()->first.total());
  }
  bool is_constant() const { return is_zero() || terms_.begin()->first.total() == 0; }

  Monomial leading_monomial() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "leading monomial of zero");
    return terms_.begin()->first;
  }
  const C& leading_coeff() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
    return terms_.begin()->second;
  }

  /// Homogeneous top-degree part.
  Poly2 leading_form() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "leading form of zero");
    const int top = terms_.begin()->first.total();
    Poly2 out;
    for (const auto& [m, c] : terms_) {
      if (m.total() != top) break;
      out.terms_.emplace(m, c);
    }
    return out;
  }

  C coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  template <class F>
  auto map_coeffs(F&& f) const -> Poly2<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    typename Poly2<D>::TermMap out;
    for (const auto& [m, c] : terms_) out.emplace(m, f(c));
    return Poly2<D>(std::move(out));
  }

  Poly2 scale(const C& c) const {
    Poly2 out;
    if (c.is_zero()) return out;
    for (const auto& [m, a] : terms_) out.add_term(m, a * c);
    return out;
  }

  Poly2& operator+=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator-(const Poly2& a) {
    Poly2 out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  Poly2 pow(unsigned e) const {
    Poly2 result = constant(C(1)), base = *this;
    while (e) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e) base = base * base;
    }
    return result;
  }

  /// Adds c·m in place, dropping the term if it cancels.
  void add_term(Monomial m, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

 private:
  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero())
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  TermMap terms_;
};

/// p(sx, sy).
template <class C>
Poly2<C> substitute(const Poly2<C>& p, const Poly2<C>& sx, const Poly2<C>& sy) {
  std::vector<Poly2<C>> px{Poly2<C>::constant(C(1))}, py{Poly2<C>::constant(C(1))};
  auto power = [](std::vector<Poly2<C>>& cache, const Poly2<C>& base, std::uint32_t e) -> const Poly2<C>& {
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  Poly2<C> out;
  for (const auto& [m, c] : p.terms()) {
    const Poly2<C>& a = power(px, sx, m.ex);
    const Poly2<C>& b = power(py, sy, m.ey);
    out += (a * b).scale(c);
  }
  return out;
}

/// q(p) for a univariate q.
template <class C>
Poly2<C> compose(const UniPoly<C>& q, const Poly2<C>& p) {
  Poly2<C> acc;
  for (int i = q.size() - 1; i >= 0; --i) acc = acc * p + Poly2<C>::constant(q.coeff(i));
  return acc;
}

template <class C>
struct Division {
  Poly2<C> quotient;
  Poly2<C> remainder;
};

/// Single-divisor long division in graded lex order: p = q·d + r with no
/// term of r divisible by the leading monomial of d. Inverts the leading
/// coefficient of d, which for tower coefficients may raise a SplitSignal.
template <class C>
Division<C> divide_by(const Poly2<C>& p, const Poly2<C>& d) {
  if (d.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  const Monomial lm = d.leading_monomial();
  const C inv = d.leading_coeff().inverse();
  Division<C> out;
  Poly2<C> rest = p;
  while (!rest.is_zero()) {
    const auto& [m, c] = *rest.terms().begin();
    if (lm.divides(m)) {
      const Poly2<C> t = Poly2<C>::term(c * inv, m / lm);
      out.quotient += t;
      rest -= t * d;
    } else {
      const Poly2<C> t = Poly2<C>::term(c, m);
      out.remainder += t;
      rest -= t;
    }
  }
  return out;
}

}  // namespace birat
