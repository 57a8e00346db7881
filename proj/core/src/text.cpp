#include "birat/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace birat {

// ---------------------------------------------------------------------------
// SymPoly

std::string Var::name(unsigned id) {
  switch (id) {
    case x: return "x";
    case y: return "y";
    case t: return "t";
    case b: return "b";
    default: return "b" + std::to_string(id - 3);
  }
}

namespace {

void trim_exponents(SymPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

SymPoly::Exponents multiply(const SymPoly::Exponents& a, const SymPoly::Exponents& b) {
  SymPoly::Exponents out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

unsigned exponent_of(const SymPoly::Exponents& e, unsigned id) { return id < e.size() ? e[id] : 0; }

}  // namespace

SymPoly SymPoly::constant(const Rational& c) {
  SymPoly p;
  p.add_term({}, c);
  return p;
}

SymPoly SymPoly::variable(unsigned id) {
  SymPoly p;
  Exponents e(id + 1, 0);
  e[id] = 1;
  p.add_term(std::move(e), Rational(1));
  return p;
}

int SymPoly::max_var() const {
  int m = -1;
  for (const auto& [e, c] : terms_) m = std::max(m, static_cast<int>(e.size()) - 1);
  return m;
}

bool SymPoly::uses(unsigned id) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return exponent_of(kv.first, id) > 0; });
}

void SymPoly::add_term(Exponents e, const Rational& c) {
  if (c.is_zero()) return;
  trim_exponents(e);
  auto [it, inserted] = terms_.try_emplace(std::move(e), c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
  SymPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

SymPoly operator-(const SymPoly& a) {
  SymPoly out;
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
  return out;
}

SymPoly operator-(const SymPoly& a, const SymPoly& b) { return a + (-b); }

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(multiply(ea, eb), ca * cb);
  return out;
}

SymPoly SymPoly::pow(unsigned e) const {
  if (terms_.size() == 1) {
    const auto& [ex, c] = *terms_.begin();
    Exponents scaled = ex;
    for (auto& v : scaled) v *= e;
    SymPoly out;
    out.add_term(std::move(scaled), birat::pow(c, e));
    return out;
  }
  SymPoly result = constant(Rational(1)), base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Number, Var, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t pos = 0;  // 1-based character position
  std::string text;     // literal text for numbers
  bool integer = true;
  unsigned var = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = char_pos_ + 1;
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const unsigned char c = static_cast<unsigned char>(s_[i_]);
      if (std::isdigit(c)) {
        lex_number(t);
      } else if (c == 'x' || c == 'y' || c == 't' || c == 'b') {
        t.kind = Tok::Var;
        advance(1);
        if (c == 'x') {
          t.var = Var::x;
        } else if (c == 'y') {
          t.var = Var::y;
        } else if (c == 't') {
          t.var = Var::t;
        } else {
          std::string digits;
          while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            digits += s_[i_];
            advance(1);
          }
          if (digits.empty()) {
            t.var = Var::b;
          } else {
            if (digits[0] == '0' || digits.size() > 6) throw SyntaxError(t.pos, "invalid generator name 'b" + digits + "'");
            t.var = Var::generator(static_cast<unsigned>(std::stoul(digits)));
          }
        }
      } else if (c == '+') {
        t.kind = Tok::Plus;
        advance(1);
      } else if (c == '-') {
        t.kind = Tok::Minus;
        advance(1);
      } else if (s_.substr(i_, 3) == "\xE2\x88\x92") {  // U+2212 MINUS SIGN
        t.kind = Tok::Minus;
        i_ += 3;
        ++char_pos_;
      } else if (c == '*') {
        t.kind = Tok::Star;
        advance(1);
      } else if (c == '^') {
        t.kind = Tok::Caret;
        advance(1);
      } else if (c == '(') {
        t.kind = Tok::LParen;
        advance(1);
      } else if (c == ')') {
        t.kind = Tok::RParen;
        advance(1);
      } else {
        throw SyntaxError(t.pos, std::string("unexpected character '") + s_[i_] + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t n) {
    i_ += n;
    char_pos_ += n;
  }

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance(1);
  }

  std::string digits() {
    std::string d;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      d += s_[i_];
      advance(1);
    }
    return d;
  }

  void lex_number(Token& t) {
    t.kind = Tok::Number;
    t.text = digits();
    const std::size_t save_i = i_, save_pos = char_pos_;
    skip_space();
    if (i_ < s_.size() && s_[i_] == '/') {
      advance(1);
      skip_space();
      const std::size_t den_pos = char_pos_ + 1;
      std::string den = digits();
      if (den.empty()) throw SyntaxError(den_pos, "expected denominator after '/'");
      if (std::all_of(den.begin(), den.end(), [](char ch) { return ch == '0'; }))
        throw SyntaxError(den_pos, "zero denominator");
      t.text += "/" + den;
      t.integer = false;
    } else {
      i_ = save_i;
      char_pos_ = save_pos;
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t char_pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

  SymPoly run() {
    if (peek().kind == Tok::End) throw SyntaxError(peek().pos, "empty expression");
    SymPoly p = expr();
    if (peek().kind != Tok::End) throw SyntaxError(peek().pos, "unexpected token");
    return p;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& next() { return toks_[k_++]; }

  SymPoly expr() {
    SymPoly acc = term();
    for (;;) {
      if (peek().kind == Tok::Plus) {
        next();
        acc = acc + term();
      } else if (peek().kind == Tok::Minus) {
        next();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  static bool starts_base(Tok k) { return k == Tok::Number || k == Tok::Var || k == Tok::LParen; }

  SymPoly term() {
    SymPoly acc = factor();
    for (;;) {
      if (peek().kind == Tok::Star) {
        next();
        acc = acc * factor();
      } else if (starts_base(peek().kind)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  SymPoly factor() {
    if (peek().kind == Tok::Minus) {
      next();
      return -factor();
    }
    SymPoly b = base();
    if (peek().kind == Tok::Caret) {
      next();
      const Token& e = next();
      if (e.kind != Tok::Number || !e.integer) throw SyntaxError(e.pos, "exponent must be a nonnegative integer");
      Integer value(e.text);
      if (value > opts_.max_exponent)
        throw Error(ErrorCode::ExponentOverflow, "exponent " + e.text + " at position " + std::to_string(e.pos) +
                                                     " exceeds bound " + std::to_string(opts_.max_exponent));
      b = b.pow(static_cast<unsigned>(value.get_ui()));
    }
    return b;
  }

  SymPoly base() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return SymPoly::constant(Rational::parse(t.text));
      case Tok::Var: return SymPoly::variable(t.var);
      case Tok::LParen: {
        SymPoly inner = expr();
        if (peek().kind != Tok::RParen) throw SyntaxError(peek().pos, "expected ')'");
        next();
        return inner;
      }
      case Tok::End: throw SyntaxError(t.pos, "unexpected end of input");
      default: throw SyntaxError(t.pos, "expected a number, variable or '('");
    }
  }

  std::vector<Token> toks_;
  const ParseOptions& opts_;
  std::size_t k_ = 0;
};

Monomial plane_monomial(const SymPoly::Exponents& e) { return {exponent_of(e, Var::x), exponent_of(e, Var::y)}; }

void require_only(const SymPoly& p, const std::vector<unsigned>& allowed, int max_generator) {
  for (const auto& [e, c] : p.terms()) {
    for (unsigned id = 0; id < e.size(); ++id) {
      if (e[id] == 0) continue;
      const bool ok = std::find(allowed.begin(), allowed.end(), id) != allowed.end() ||
                      (id > Var::b && static_cast<int>(id - Var::b) <= max_generator);
      if (!ok) throw Error(ErrorCode::InvalidInput, "variable '" + Var::name(id) + "' is not allowed here");
    }
  }
}

// Generator powers are cached per (generator, exponent) while lowering.
class ElemBuilder {
 public:
  explicit ElemBuilder(const FieldCtx& ctx) : ctx_(ctx) {}

  Elem monomial(const SymPoly::Exponents& e) {
    Elem out(1);
    for (unsigned id = Var::b + 1; id < e.size(); ++id) {
      if (e[id] == 0) continue;
      out = out * power(id - Var::b, e[id]);
    }
    return out;
  }

 private:
  const Elem& power(unsigned k, unsigned e) {
    auto& cache = powers_[k];
    if (cache.empty()) {
      cache.emplace_back(1);
      cache.push_back(Elem::generator(ctx_.node(static_cast<int>(k))));
    }
    while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
    return cache[e];
  }

  const FieldCtx& ctx_;
  std::map<unsigned, std::vector<Elem>> powers_;
};

}  // namespace

SymPoly parse_expr(std::string_view text, const ParseOptions& options) {
  return Parser(Lexer(text).run(), options).run();
}

Poly2<Rational> parse_poly(std::string_view text, const ParseOptions& options) {
  SymPoly p = parse_expr(text, options);
  require_only(p, {Var::x, Var::y}, 0);
  Poly2<Rational> out;
  for (const auto& [e, c] : p.terms()) out.add_term(plane_monomial(e), c);
  return out;
}

Elem to_elem(const SymPoly& p, const FieldCtx& ctx) {
  require_only(p, {}, ctx.height());
  ElemBuilder builder(ctx);
  Elem out;
  for (const auto& [e, c] : p.terms()) out = out + builder.monomial(e) * Elem(c);
  return out;
}

Poly2<Elem> parse_poly(std::string_view text, const FieldCtx& ctx) {
  SymPoly p = parse_expr(text);
  require_only(p, {Var::x, Var::y}, ctx.height());
  ElemBuilder builder(ctx);
  Poly2<Elem> out;
  for (const auto& [e, c] : p.terms()) out.add_term(plane_monomial(e), builder.monomial(e) * Elem(c));
  return out;
}

Elem parse_elem(std::string_view text, const FieldCtx& ctx) { return to_elem(parse_expr(text), ctx); }

UniPoly<Elem> parse_unipoly(std::string_view text, const FieldCtx& ctx, unsigned var) {
  SymPoly p = parse_expr(text);
  require_only(p, {var}, ctx.height());
  ElemBuilder builder(ctx);
  std::vector<Elem> coeffs;
  for (const auto& [e, c] : p.terms()) {
    const unsigned k = exponent_of(e, var);
    if (coeffs.size() <= k) coeffs.resize(k + 1, Elem(0));
    SymPoly::Exponents rest = e;
    if (var < rest.size()) rest[var] = 0;
    coeffs[k] = coeffs[k] + builder.monomial(rest) * Elem(c);
  }
  return UniPoly<Elem>(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Printer

namespace {

class TermWriter {
 public:
  /// Appends c·monomial; `monomial` is the rendered variable part, possibly empty.
  void add(const Rational& c, const std::string& monomial) {
    const bool negative = c.sign() < 0;
    const Rational mag = c.abs();
    std::string body;
    if (monomial.empty())
      body = mag.str();
    else if (mag.is_one())
      body = monomial;
    else
      body = mag.str() + "*" + monomial;
    append(negative, body);
  }

  /// Appends (group)·monomial for a multi-term coefficient.
  void add_group(const std::string& group, const std::string& monomial) {
    append(false, "(" + group + ")" + (monomial.empty() ? "" : "*" + monomial));
  }

  std::string str() const { return out_.empty() ? "0" : out_; }

 private:
  void append(bool negative, const std::string& body) {
    if (out_.empty())
      out_ = (negative ? "-" : "") + body;
    else
      out_ += (negative ? " - " : " + ") + body;
  }

  std::string out_;
};

std::string join_factors(const std::vector<std::pair<unsigned, unsigned>>& factors) {
  std::string out;
  for (const auto& [id, e] : factors) {
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += Var::name(id);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string plane_text(Monomial m) { return join_factors({{Var::x, m.ex}, {Var::y, m.ey}}); }

std::string generator_text(const SymPoly::Exponents& e) {
  std::vector<std::pair<unsigned, unsigned>> f;
  for (unsigned id = Var::b + 1; id < e.size(); ++id) f.emplace_back(id, e[id]);
  return join_factors(f);
}

std::string concat(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

// Graded lex over generators with b1 > b2 > ...
std::vector<std::pair<SymPoly::Exponents, Rational>> ordered_generator_terms(const SymPoly& p) {
  std::vector<std::pair<SymPoly::Exponents, Rational>> terms(p.terms().begin(), p.terms().end());
  auto total = [](const SymPoly::Exponents& e) {
    unsigned s = 0;
    for (unsigned v : e) s += v;
    return s;
  };
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    const unsigned ta = total(a.first), tb = total(b.first);
    if (ta != tb) return ta > tb;
    const std::size_t n = std::max(a.first.size(), b.first.size());
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned ea = exponent_of(a.first, static_cast<unsigned>(i));
      const unsigned eb = exponent_of(b.first, static_cast<unsigned>(i));
      if (ea != eb) return ea > eb;
    }
    return false;
  });
  return terms;
}

std::string render_generators(const SymPoly& p) {
  TermWriter w;
  for (const auto& [e, c] : ordered_generator_terms(p)) w.add(c, generator_text(e));
  return w.str();
}

void add_elem_term(TermWriter& w, const Elem& c, const std::string& monomial) {
  if (c.is_rational()) {
    w.add(c.rational(), monomial);
    return;
  }
  SymPoly s = expand(c);
  if (s.terms().size() == 1) {
    const auto& [e, r] = *s.terms().begin();
    w.add(r, concat(generator_text(e), monomial));
  } else {
    w.add_group(render_generators(s), monomial);
  }
}

}  // namespace

SymPoly expand(const Elem& e) {
  if (e.is_rational()) return SymPoly::constant(e.rational());
  const unsigned id = Var::generator(static_cast<unsigned>(e.level()));
  SymPoly out;
  SymPoly power = SymPoly::constant(Rational(1));
  const SymPoly gen = SymPoly::variable(id);
  for (const auto& c : e.poly().coeffs()) {
    if (!c.is_zero()) out = out + expand(c) * power;
    power = power * gen;
  }
  return out;
}

std::string render_poly(const Poly2<Rational>& p) {
  TermWriter w;
  for (const auto& [m, c] : p.terms()) w.add(c, plane_text(m));
  return w.str();
}

std::string render_poly(const Poly2<Elem>& p) {
  TermWriter w;
  for (const auto& [m, c] : p.terms()) add_elem_term(w, c, plane_text(m));
  return w.str();
}

std::string render_elem(const Elem& e) {
  if (e.is_rational()) return e.rational().str();
  return render_generators(expand(e));
}

std::string render_unipoly(const UniPoly<Elem>& p, unsigned var) {
  TermWriter w;
  for (int i = p.size() - 1; i >= 0; --i) {
    const Elem& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    add_elem_term(w, c, join_factors({{var, static_cast<unsigned>(i)}}));
  }
  return w.str();
}

std::string render_unipoly(const UniPoly<Rational>& p, unsigned var) {
  TermWriter w;
  for (int i = p.size() - 1; i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    w.add(c, join_factors({{var, static_cast<unsigned>(i)}}));
  }
  return w.str();
}

}  // namespace birat
