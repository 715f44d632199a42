#ifndef RADARNET_DELAY_POLY_HPP
#define RADARNET_DELAY_POLY_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace radarnet {

using Rational = boost::multiprecision::cpp_rational;

// Polynomial in the unit-delay variable z^-1: exponent e holds the
// coefficient of z^-e. Coefficient domain is either exact rationals (for
// algebraic identities) or doubles with a pruning tolerance (for
// signal-derived data). Zero coefficients are never stored.
template <class C>
class DelayPoly {
 public:
  DelayPoly() = default;

  static DelayPoly monomial(const C& c, int exponent) {
    DelayPoly p;
    if (exponent < 0) throw std::invalid_argument("DelayPoly: negative exponent");
    if (!(c == C(0))) p.terms_[exponent] = c;
    return p;
  }

  static DelayPoly from_coeffs(const std::vector<C>& ascending) {
    DelayPoly p;
    for (std::size_t e = 0; e < ascending.size(); ++e)
      if (!(ascending[e] == C(0))) p.terms_[static_cast<int>(e)] = ascending[e];
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  // term with the largest delay exponent
  std::pair<C, int> leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->second, it->first};
  }

  int max_exponent() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  C coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? C(0) : it->second;
  }

  const std::map<int, C>& terms() const { return terms_; }

  void add_term(const C& c, int exponent) {
    if (exponent < 0) throw std::invalid_argument("DelayPoly: negative exponent");
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
      if (!(c == C(0))) terms_[exponent] = c;
    } else {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

  DelayPoly operator+(const DelayPoly& o) const {
    DelayPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(c, e);
    return r;
  }

  DelayPoly operator-(const DelayPoly& o) const {
    DelayPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(C(0) - c, e);
    return r;
  }

  DelayPoly operator*(const DelayPoly& o) const {
    DelayPoly r;
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.add_term(c1 * c2, e1 + e2);
    return r;
  }

  bool operator==(const DelayPoly& o) const { return terms_ == o.terms_; }

 private:
  std::map<int, C> terms_;
};

using RationalPoly = DelayPoly<Rational>;
using FloatPoly = DelayPoly<double>;

namespace poly_detail {

inline std::string coeff_to_string(const Rational& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

inline std::string coeff_to_string(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

inline Rational coeff_from_string_tag(const std::string& s, Rational*) {
  return Rational(s);
}

inline double coeff_from_string_tag(const std::string& s, double*) {
  return std::stod(s);
}

}  // namespace poly_detail

// "c0 + c1 z^-1 + ..." printer; zero polynomial prints "0".
template <class C>
std::string to_string(const DelayPoly<C>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += poly_detail::coeff_to_string(c);
    if (e > 0) out += " z^-" + std::to_string(e);
  }
  return out;
}

template <class C>
DelayPoly<C> parse_poly(const std::string& text) {
  DelayPoly<C> p;
  std::string s = text;
  // split on '+' (terms carry their own sign in the coefficient)
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find('+', pos);
    std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
    pos = next == std::string::npos ? s.size() : next + 1;
    // trim
    const auto b = term.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = term.find_last_not_of(" \t");
    term = term.substr(b, e - b + 1);
    if (term == "0") continue;
    int exponent = 0;
    std::string coeff_str = term;
    const auto zpos = term.find("z^-");
    if (zpos != std::string::npos) {
      exponent = std::stoi(term.substr(zpos + 3));
      coeff_str = term.substr(0, zpos);
      const auto ce = coeff_str.find_last_not_of(" \t");
      coeff_str = (ce == std::string::npos) ? "1" : coeff_str.substr(0, ce + 1);
      if (coeff_str.empty()) coeff_str = "1";
    }
    p.add_term(poly_detail::coeff_from_string_tag(coeff_str, static_cast<C*>(nullptr)),
               exponent);
  }
  return p;
}

}  // namespace radarnet

#endif  // RADARNET_DELAY_POLY_HPP
