#include <algorithm>
#include <map>
#include <set>

#include "birat/tower.hpp"

namespace birat {

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        Integer d = abs(Integer(x - ys));
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::map<Integer, unsigned> factorize(Integer n) {
  std::map<Integer, unsigned> out;
  n = abs(n);
  for (unsigned long p = 2; p < 10000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  factor_into(n, out);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly<Rational>& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "rational roots of the zero polynomial");
  Integer lcm = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : f.coeffs()) ints.push_back(c.numerator() * (lcm / c.denominator()));

  std::set<Rational> roots;
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  const Integer& a0 = ints[low];
  const Integer& an = ints.back();
  if (ints.size() - low > 1) {
    const auto ps = divisors(a0);
    const auto qs = divisors(an);
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        for (int sign : {1, -1}) {
          Rational r(Integer(sign * p), q);
          if (roots.count(r)) continue;
          if (f.eval(r).is_zero()) roots.insert(r);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace birat
