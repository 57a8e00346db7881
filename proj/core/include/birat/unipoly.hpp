#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "birat/degree.hpp"
#include "birat/error.hpp"

namespace birat {

/// Dense univariate polynomial, coefficients indexed by exponent. The zero
/// polynomial is the empty sequence.
///
/// C must provide value semantics, construction from `long`, ring operators,
/// a syntactic `is_zero()`, a semantic `test_zero()` and `inverse()`. The last
/// two may throw a SplitSignal when C is a tower element.
template <class C>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  /// Constant polynomial; lets UniPoly serve as a coefficient type itself.
  explicit UniPoly(long n) : UniPoly(std::vector<C>{C(n)}) {}

  static UniPoly constant(const C& c) { return UniPoly(std::vector<C>{c}); }

  static UniPoly monomial(const C& c, int exponent) {
    std::vector<C> v(static_cast<std::size_t>(exponent) + 1, C(0));
    v.back() = c;
    return UniPoly(std::move(v));
  }

  static UniPoly variable() { return monomial(C(1), 1); }

  Degree degree() const {
    return coeffs_.empty() ? Degree::neg_inf() : Degree(static_cast<int>(coeffs_.size()) - 1);
  }
  int size() const { return static_cast<int>(coeffs_.size()); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Coefficient of t^i; zero outside the stored range.
  C coeff(int i) const {
    if (i < 0 || i >= size()) return C(0);
    return coeffs_[static_cast<std::size_t>(i)];
  }
  const C& lead() const {
    assert(!coeffs_.empty());
    return coeffs_.back();
  }
  const std::vector<C>& coeffs() const { return coeffs_; }

  C eval(const C& at) const {
    C acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  UniPoly derivative() const {
    std::vector<C> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      d.push_back(C(static_cast<long>(i)) * coeffs_[i]);
    return UniPoly(std::move(d));
  }

  /// Scales so the leading coefficient is one. May split.
  UniPoly monic() const {
    if (is_zero()) return *this;
    return scale(lead().inverse());
  }

  UniPoly scale(const C& c) const {
    std::vector<C> v;
    v.reserve(coeffs_.size());
    for (const auto& a : coeffs_) v.push_back(a * c);
    return UniPoly(std::move(v));
  }

  /// Every coefficient is semantically zero. May split.
  bool test_zero() const {
    for (const auto& c : coeffs_)
      if (!c.test_zero()) return false;
    return true;
  }

  /// Units of C[t] are the nonzero constants.
  UniPoly inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero polynomial");
    if (size() > 1)
      throw Error(ErrorCode::NonInvertibleLead, "polynomial of positive degree is not a unit");
    return constant(coeffs_[0].inverse());
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), C(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), C(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) {
    std::vector<C> v;
    v.reserve(a.coeffs_.size());
    for (const auto& c : a.coeffs_) v.push_back(-c);
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> v(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(v));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

template <class C>
struct UniDivision {
  UniPoly<C> quotient;
  UniPoly<C> remainder;
};

/// Euclidean division; inverts the leading coefficient of the divisor.
template <class C>
UniDivision<C> divmod(const UniPoly<C>& a, const UniPoly<C>& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  const int db = b.size() - 1;
  std::vector<C> r = a.coeffs();
  if (static_cast<int>(r.size()) <= db) return {UniPoly<C>(), a};
  const C inv = b.lead().inverse();
  std::vector<C> q(r.size() - static_cast<std::size_t>(db), C(0));
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    const C c = r[static_cast<std::size_t>(i)] * inv;
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] =
          r[static_cast<std::size_t>(i - db + j)] - c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly<C>(std::move(q)), UniPoly<C>(std::move(r))};
}

/// Remainder modulo a monic polynomial; never inverts.
template <class C>
UniPoly<C> rem_monic(const UniPoly<C>& a, const UniPoly<C>& f) {
  const int d = f.size() - 1;
  assert(d >= 0);
  if (a.size() <= d) return a;
  std::vector<C> r = a.coeffs();
  for (int i = static_cast<int>(r.size()) - 1; i >= d; --i) {
    const C c = r[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    for (int j = 0; j <= d; ++j)
      r[static_cast<std::size_t>(i - d + j)] =
          r[static_cast<std::size_t>(i - d + j)] - c * f.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(d));
  return UniPoly<C>(std::move(r));
}

/// Exact quotient by a monic divisor (remainder discarded).
template <class C>
UniPoly<C> quo_monic(const UniPoly<C>& a, const UniPoly<C>& f) {
  const int d = f.size() - 1;
  if (a.size() <= d) return {};
  std::vector<C> r = a.coeffs();
  std::vector<C> q(r.size() - static_cast<std::size_t>(d), C(0));
  for (int i = static_cast<int>(r.size()) - 1; i >= d; --i) {
    const C c = r[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(i - d)] = c;
    for (int j = 0; j <= d; ++j)
      r[static_cast<std::size_t>(i - d + j)] =
          r[static_cast<std::size_t>(i - d + j)] - c * f.coeffs()[static_cast<std::size_t>(j)];
  }
  return UniPoly<C>(std::move(q));
}

/// Monic gcd by Euclid. gcd(0, 0) = 0.
template <class C>
UniPoly<C> gcd(UniPoly<C> a, UniPoly<C> b) {
  while (!b.is_zero()) {
    UniPoly<C> r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class C>
struct ExtGcd {
  UniPoly<C> gcd;       // monic
  UniPoly<C> cofactor;  // s with s*a = gcd (mod b)
};

/// Extended Euclid tracking only the cofactor of `a`.
template <class C>
ExtGcd<C> ext_gcd(const UniPoly<C>& a, const UniPoly<C>& b) {
  UniPoly<C> r0 = a, r1 = b;
  UniPoly<C> s0 = UniPoly<C>::constant(C(1)), s1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UniPoly<C> s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  const C inv = r0.lead().inverse();
  return {r0.scale(inv), s0.scale(inv)};
}

/// Squarefree part f / gcd(f, f'), monic. Characteristic zero.
template <class C>
UniPoly<C> squarefree_part(const UniPoly<C>& f) {
  if (f.is_constant()) return f.monic();
  UniPoly<C> g = gcd(f, f.derivative());
  return divmod(f, g).quotient.monic();
}

}  // namespace birat
