#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

using birat::Poly2;
using birat::Rational;

Naive Naive::from(const Poly2<Rational>& p) {
  Naive n;
  for (const auto& [m, c] : p.terms()) n.terms[{m.ex, m.ey}] = c.raw();
  return n;
}

Naive Naive::constant(const mpq_class& c) {
  Naive n;
  if (c != 0) n.terms[{0, 0}] = c;
  return n;
}

Naive Naive::x() {
  Naive n;
  n.terms[{1, 0}] = 1;
  return n;
}

Naive Naive::y() {
  Naive n;
  n.terms[{0, 1}] = 1;
  return n;
}

int Naive::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, static_cast<int>(e.first + e.second));
  return d;
}

mpq_class Naive::eval(const mpq_class& x, const mpq_class& y) const {
  mpq_class out = 0;
  for (const auto& [e, c] : terms) {
    mpq_class t = c;
    for (unsigned i = 0; i < e.first; ++i) t *= x;
    for (unsigned j = 0; j < e.second; ++j) t *= y;
    out += t;
  }
  return out;
}

namespace {

void accumulate(Naive& into, std::pair<unsigned, unsigned> e, const mpq_class& c) {
  mpq_class& slot = into.terms[e];
  slot += c;
  if (slot == 0) into.terms.erase(e);
}

}  // namespace

Naive Naive::operator+(const Naive& o) const {
  Naive out = *this;
  for (const auto& [e, c] : o.terms) accumulate(out, e, c);
  return out;
}

Naive Naive::operator-(const Naive& o) const {
  Naive out = *this;
  for (const auto& [e, c] : o.terms) accumulate(out, e, -c);
  return out;
}

Naive Naive::operator*(const Naive& o) const {
  Naive out;
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) accumulate(out, {e1.first + e2.first, e1.second + e2.second}, c1 * c2);
  return out;
}

Naive Naive::pow(unsigned e) const {
  Naive out = constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

NaiveDivision divide(const Naive& f, const Naive& g) {
  // lex order with x > y: the map's largest key is the leading term
  auto lead = [](const Naive& p) { return *p.terms.rbegin(); };
  const auto [ge, gc] = lead(g);
  NaiveDivision out;
  Naive rest = f;
  while (!rest.is_zero()) {
    const auto [re, rc] = lead(rest);
    Naive t;
    if (re.first >= ge.first && re.second >= ge.second) {
      t.terms[{re.first - ge.first, re.second - ge.second}] = rc / gc;
      out.quotient = out.quotient + t;
      rest = rest - t * g;
    } else {
      t.terms[re] = rc;
      out.remainder = out.remainder + t;
      rest = rest - t;
    }
  }
  return out;
}

std::optional<Naive> exact_quotient(const Naive& f, const Naive& g) {
  if (g.is_zero()) return std::nullopt;
  NaiveDivision d = divide(f, g);
  if (!d.remainder.is_zero()) return std::nullopt;
  return d.quotient;
}

Poly2<Rational> random_poly(Rng& rng, int max_degree, long c, int max_terms) {
  std::map<std::pair<unsigned, unsigned>, long> chosen;  // repeated monomials are redrawn, not summed
  const int n = static_cast<int>(rng.range(1, max_terms));
  for (int i = 0; i < n; ++i) {
    const auto total = static_cast<unsigned>(rng.range(0, max_degree));
    const auto ex = static_cast<unsigned>(rng.range(0, total));
    chosen[{ex, total - ex}] = rng.range(-c, c);
  }
  Poly2<Rational> p;
  for (const auto& [e, coef] : chosen) p.add_term({e.first, e.second}, Rational(coef));
  return p;
}

Poly2<Rational> random_fraction_poly(Rng& rng, int max_degree, long c, int max_terms) {
  Poly2<Rational> p;
  const int n = static_cast<int>(rng.range(1, max_terms));
  for (int i = 0; i < n; ++i) {
    const auto total = static_cast<unsigned>(rng.range(0, max_degree));
    const auto ex = static_cast<unsigned>(rng.range(0, total));
    p.add_term({ex, total - ex}, Rational(birat::Integer(rng.range(-c, c)), birat::Integer(rng.range(1, c))));
  }
  return p;
}

Poly2<Rational> to_poly(const Naive& n) {
  Poly2<Rational> p;
  for (const auto& [e, c] : n.terms) p.add_term({e.first, e.second}, Rational(c));
  return p;
}

namespace {

Naive substitute(const Naive& p, const Naive& sx, const Naive& sy) {
  Naive out;
  for (const auto& [e, c] : p.terms) out = out + Naive::constant(c) * sx.pow(e.first) * sy.pow(e.second);
  return out;
}

std::pair<Naive, Naive> random_affine(Rng& rng) {
  long a, b, c, d;
  do {
    a = rng.range(-2, 2);
    b = rng.range(-2, 2);
    c = rng.range(-2, 2);
    d = rng.range(-2, 2);
  } while (a * d - b * c == 0);
  const Naive x = Naive::x(), y = Naive::y();
  return {Naive::constant(a) * x + Naive::constant(b) * y + Naive::constant(rng.range(-3, 3)),
          Naive::constant(c) * x + Naive::constant(d) * y + Naive::constant(rng.range(-3, 3))};
}

}  // namespace

SacProduct random_sac_product(Rng& rng, int max_degree_sum, int max_factors) {
  SacProduct out{Naive::x(), Naive::y(), {}};
  const Naive x = Naive::x(), y = Naive::y();
  for (int attempt = 0; attempt < 4 * max_factors && static_cast<int>(out.factors.size()) < max_factors; ++attempt) {
    std::pair<Naive, Naive> sigma;
    const long kind = out.factors.size() % 2 == 0 ? 0 : rng.range(0, 3);
    if (kind == 0 || kind == 1) {
      sigma = random_affine(rng);
    } else if (kind == 2) {
      sigma = {x, x * y};
    } else {
      // y -> y*p(x) with p monic of degree 2: a product of translated copies
      // of (x, xy), over the algebraic closure when p has no rational root
      const Naive p = x * x + Naive::constant(rng.range(-3, 3)) * x + Naive::constant(rng.range(-3, 3));
      sigma = {x, y * p};
    }
    Naive u = substitute(out.u, sigma.first, sigma.second);
    Naive v = substitute(out.v, sigma.first, sigma.second);
    if (u.degree() + v.degree() > max_degree_sum) continue;
    out.u = std::move(u);
    out.v = std::move(v);
    out.factors.push_back(std::move(sigma));
  }
  return out;
}

std::vector<Cx> complex_roots(const std::vector<Cx>& coeffs) {
  std::vector<Cx> monic = coeffs;
  while (!monic.empty() && std::abs(monic.back()) == 0.0) monic.pop_back();
  const std::size_t n = monic.size() - 1;
  const Cx lead = monic.back();
  for (auto& c : monic) c /= lead;
  auto eval = [&](Cx z) {
    Cx acc = 0;
    for (std::size_t i = monic.size(); i-- > 0;) acc = acc * z + monic[i];
    return acc;
  };
  double bound = 1;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(monic[i]));
  std::vector<Cx> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(0.5 * bound, 0.4 + 2 * M_PI * static_cast<double>(k) / n);
  for (int iter = 0; iter < 2000; ++iter) {
    double moved = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Cx denom = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) denom *= z[k] - z[j];
      const Cx step = eval(z[k]) / denom;
      z[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15) break;
  }
  // a few Newton polishing steps
  for (auto& r : z) {
    for (int i = 0; i < 3; ++i) {
      Cx f = 0, df = 0;
      for (std::size_t j = monic.size(); j-- > 0;) {
        df = df * r + f;
        f = f * r + monic[j];
      }
      if (std::abs(df) > 1e-300) r -= f / df;
    }
  }
  return z;
}

Cx numeric(const birat::Elem& e, const std::vector<Cx>& values) {
  if (e.is_rational()) return e.rational().to_double();
  const Cx z = values.at(static_cast<std::size_t>(e.level() - 1));
  Cx acc = 0;
  const auto& cs = e.poly().coeffs();
  for (std::size_t i = cs.size(); i-- > 0;) acc = acc * z + numeric(cs[i], values);
  return acc;
}

std::vector<Cx> embed(const birat::TowerPtr& tower, Rng& rng) {
  std::vector<birat::TowerPtr> chain;
  for (auto t = tower; t; t = t->parent()) chain.push_back(t);
  std::reverse(chain.begin(), chain.end());
  std::vector<Cx> values;
  for (const auto& node : chain) {
    std::vector<Cx> cs;
    for (const auto& c : node->defining().coeffs()) cs.push_back(numeric(c, values));
    const auto roots = complex_roots(cs);
    values.push_back(roots[static_cast<std::size_t>(rng.range(0, static_cast<long>(roots.size()) - 1))]);
  }
  return values;
}

}  // namespace oracle
