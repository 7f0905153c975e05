#include "flagcone/exact.hpp"

#include <cctype>

namespace flagcone {

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto parse_int = [&](const std::string& part) -> Integer {
    if (part.empty() || part == "-" || part == "+")
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    for (std::size_t k = start; k < part.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(part[k])))
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    return Integer(part[0] == '+' ? part.substr(1) : part);
  };

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Integer scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const Integer f = frac.empty() ? Integer(0) : parse_int(frac);
    const Integer w = parse_int(whole);
    Integer num = (negative ? -w : w) * scale + f;
    if (negative) num = -num;
    return Rational(num, scale);
  }
  return Rational(parse_int(s));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

long long to_integer(const Rational& q) {
  if (boost::multiprecision::denominator(q) != 1)
    throw std::domain_error("expected an integer, got " + to_string(q));
  return boost::multiprecision::numerator(q).convert_to<long long>();
}

std::string to_string(const GaussRational& z) {
  if (z.imag() == 0) return to_string(z.real());
  if (z.real() == 0) return to_string(z.imag()) + "i";
  const bool neg = z.imag() < 0;
  return to_string(z.real()) + (neg ? "-" : "+") + to_string(neg ? Rational(-z.imag()) : z.imag()) + "i";
}

QMatrix to_qmatrix(const RationalMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q(r, c) = GaussRational(m(r, c));
  return q;
}

QMatrix conjugate_transpose(const QMatrix& m) {
  QMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c).conj();
  return t;
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  QVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && !v[c].is_zero()) out[r] += m(r, c) * v[c];
  return out;
}

QMatrix kronecker(const QMatrix& a, const QMatrix& b) {
  QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

}  // namespace flagcone
