#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "birat/poly2.hpp"
#include "birat/rational.hpp"
#include "birat/tower.hpp"

namespace birat {

/// Variables understood by the text grammar.
///   x, y    plane coordinates
///   t       indeterminate of an ET2 polynomial q(t)
///   b       free divisibility parameter (refusal reports)
///   b1, b2  tower generators
struct Var {
  static constexpr unsigned x = 0, y = 1, t = 2, b = 3;
  static constexpr unsigned generator(unsigned k) { return 3 + k; }
  static std::string name(unsigned id);
};

/// Sparse multivariate polynomial over Q: the lowered form of a parsed
/// expression before it is mapped to a concrete coefficient domain.
class SymPoly {
 public:
  using Exponents = std::vector<unsigned>;  // indexed by Var id, no trailing zeros
  using TermMap = std::map<Exponents, Rational>;

  SymPoly() = default;
  static SymPoly constant(const Rational& c);
  static SymPoly variable(unsigned id);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest Var id with a nonzero exponent, or -1.
  int max_var() const;
  bool uses(unsigned id) const;

  void add_term(Exponents e, const Rational& c);
  friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator-(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator-(const SymPoly& a);
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly pow(unsigned e) const;
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

struct ParseOptions {
  unsigned max_exponent = 10000;
};

/// Parses the expression grammar (precedence low to high):
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | juxtaposition) factor)*
///   factor := base ('^' uint)?
///   base   := rational | var | '(' expr ')' | '-' factor
/// Throws SyntaxError (1-based position) or Error(ExponentOverflow).
SymPoly parse_expr(std::string_view text, const ParseOptions& options = {});

/// Polynomial in x and y over Q.
Poly2<Rational> parse_poly(std::string_view text, const ParseOptions& options = {});
/// Polynomial in x and y over the tower of ctx (generators b1..bn allowed).
Poly2<Elem> parse_poly(std::string_view text, const FieldCtx& ctx);
/// Tower element (generators only).
Elem parse_elem(std::string_view text, const FieldCtx& ctx);
/// Univariate polynomial in `var` over the tower of ctx.
UniPoly<Elem> parse_unipoly(std::string_view text, const FieldCtx& ctx, unsigned var);

/// Lowers a SymPoly whose variables are tower generators (plus optionally
/// x, y or a univariate indeterminate) into the given domain.
Elem to_elem(const SymPoly& p, const FieldCtx& ctx);

std::string render_poly(const Poly2<Rational>& p);
std::string render_poly(const Poly2<Elem>& p);
std::string render_elem(const Elem& e);
std::string render_unipoly(const UniPoly<Elem>& p, unsigned var);
std::string render_unipoly(const UniPoly<Rational>& p, unsigned var);
/// Expands an element into a polynomial in the generators.
SymPoly expand(const Elem& e);

}  // namespace birat
