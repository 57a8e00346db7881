#include "birat/rational.hpp"

#include <ostream>

#include "birat/error.hpp"

namespace birat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::NonInvertibleLead: return "NonInvertibleLead";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SymbolicUnderdetermined: return "SymbolicUnderdetermined";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ConstantComponent: return "ConstantComponent";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
  }
  return "Unknown";
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw Error(ErrorCode::SyntaxError, "invalid rational literal '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
  return Rational(q);
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  Rational r;
  r.value_ = 1 / value_;
  return r;
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = ::abs(value_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.value_.get_str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
  return Rational(num, den);
}

}  // namespace birat
