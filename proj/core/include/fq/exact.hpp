#pragma once

// Exact integer/rational scalar types (GMP-backed) plus Gaussian rationals
// and the decimal/fraction string parser used by model files.

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fq {

using Int = mpz_class;
using Rat = mpq_class;
using cplx = std::complex<double>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline double to_double(const Rat& r) { return r.get_d(); }

inline Rat rat_from_double(double x) { return Rat(x); }  // exact binary value

// A real number given as a string. "p/q" parses as an exact rational;
// a plain decimal parses to its exact decimal value but is flagged as
// standing in for an irrational parameter (the flag is carried into
// run metadata, never used to change arithmetic).
struct ParsedReal {
  Rat value;
  bool assumed_irrational = false;

  double d() const { return value.get_d(); }
};

inline ParsedReal parse_real(const std::string& text) {
  if (text.empty()) throw Error("empty numeric string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
    r.canonicalize();
    return ParsedReal{r, false};
  }
  auto dot = text.find('.');
  auto exp = text.find_first_of("eE");
  if (dot == std::string::npos && exp == std::string::npos) {
    Int z;
    if (z.set_str(text, 10) != 0) throw Error("bad integer literal: " + text);
    return ParsedReal{Rat(z), false};
  }
  if (exp != std::string::npos) {
    // scientific notation: fall back to the exact value of the double
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw Error("bad numeric literal: " + text);
    return ParsedReal{Rat(v), true};
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  bool neg = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    neg = digits[0] == '-';
    digits = digits.substr(1);
  }
  if (digits.empty()) throw Error("bad decimal literal: " + text);
  Int num;
  if (num.set_str(digits, 10) != 0) throw Error("bad decimal literal: " + text);
  Int den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  Rat r(neg ? -num : num, den);
  r.canonicalize();
  return ParsedReal{r, frac_len > 0};
}

// Gaussian rational: exact complex number with rational real/imag parts.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit GaussRat(long r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }
  cplx d() const { return {re.get_d(), im.get_d()}; }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat operator/(const GaussRat& o) const {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw Error("division by zero GaussRat");
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace fq
