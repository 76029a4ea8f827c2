#include "jlpath/rational.hpp"

#include "jlpath/error.hpp"

#include <functional>

namespace jlpath {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DiagonalViolation: return "DiagonalViolation";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::ZeroAsymmetry: return "ZeroAsymmetry";
    case ErrorCode::MalformedDatum: return "MalformedDatum";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::LevelViolation: return "LevelViolation";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ImaginaryIndex: return "ImaginaryIndex";
    case ErrorCode::RealIndex: return "RealIndex";
    case ErrorCode::TableTooSmall: return "TableTooSmall";
    case ErrorCode::PreconditionFalsified: return "PreconditionFalsified";
    case ErrorCode::NotShortening: return "NotShortening";
    case ErrorCode::NoOccurrence: return "NoOccurrence";
    case ErrorCode::EnumerationBound: return "EnumerationBound";
    case ErrorCode::WitnessMissing: return "WitnessMissing";
    case ErrorCode::TruncationIncomparable: return "TruncationIncomparable";
    case ErrorCode::RootMismatch: return "RootMismatch";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

bool is_bound_error(ErrorCode code) {
  return code == ErrorCode::BoundExceeded || code == ErrorCode::TableTooSmall ||
         code == ErrorCode::EnumerationBound;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

namespace {

long checked(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::OutOfRange, "integer overflow: " + z.get_str());
  return z.get_si();
}

}  // namespace

long floor_long(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return checked(q);
}

long ceil_long(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return checked(q);
}

long to_long(const Rational& value) {
  if (!is_integer(value)) throw Error(ErrorCode::OutOfRange, "not an integer: " + format_rational(value));
  return checked(value.get_num());
}

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_rational(const Rational& value) {
  std::size_t seed = 0;
  const auto& num = value.get_num();
  const auto& den = value.get_den();
  hash_combine(seed, num.fits_slong_p() ? std::hash<long>{}(num.get_si()) : std::hash<std::string>{}(num.get_str()));
  hash_combine(seed, den.fits_slong_p() ? std::hash<long>{}(den.get_si()) : std::hash<std::string>{}(den.get_str()));
  return seed;
}

}  // namespace jlpath
