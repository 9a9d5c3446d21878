#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>

#include "twistkit/errors.hpp"

namespace twistkit {

// Sparse polynomial in q with integer coefficients and integer (possibly
// negative) exponents.  Prints like "-2*q + 1 - 2*q^-1": terms in descending
// exponent, unit coefficients elided, '*' between coefficient and q.
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(long long c) {
    if (c) coef_[0] = c;
  }
  static Laurent monomial(long long c, int e) {
    Laurent p;
    if (c) p.coef_[e] = c;
    return p;
  }

  bool zero() const { return coef_.empty(); }
  long long coeff(int e) const {
    auto it = coef_.find(e);
    return it == coef_.end() ? 0 : it->second;
  }
  int min_degree() const { return zero() ? 0 : coef_.begin()->first; }
  int max_degree() const { return zero() ? 0 : coef_.rbegin()->first; }
  const std::map<int, long long>& terms() const { return coef_; }

  void add_term(long long c, int e) {
    if (!c) return;
    auto it = coef_.emplace(e, 0).first;
    it->second += c;
    if (it->second == 0) coef_.erase(it);
  }

  Laurent& operator+=(const Laurent& o) {
    for (auto [e, c] : o.coef_) add_term(c, e);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto [e, c] : o.coef_) add_term(-c, e);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  Laurent operator-() const {
    Laurent p;
    for (auto [e, c] : coef_) p.coef_[e] = -c;
    return p;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.coef_ == b.coef_; }
  // Arbitrary but stable total order, for use as a map key.
  friend bool operator<(const Laurent& a, const Laurent& b) { return a.coef_ < b.coef_; }

  Laurent shifted(int k) const {
    Laurent p;
    for (auto [e, c] : coef_) p.coef_[e + k] = c;
    return p;
  }

  long long at_one() const {
    long long s = 0;
    for (auto [e, c] : coef_) s += c;
    return s;
  }
  // d/dq evaluated at q = 1.
  long long derivative_at_one() const {
    long long s = 0;
    for (auto [e, c] : coef_) s += c * e;
    return s;
  }
  long long constant_term() const { return coeff(0); }
  Laurent without_constant() const {
    Laurent p = *this;
    p.coef_.erase(0);
    return p;
  }

  friend bool equal_up_to_shift(const Laurent& a, const Laurent& b) {
    if (a.zero() || b.zero()) return a.zero() == b.zero();
    return a.shifted(b.min_degree() - a.min_degree()) == b;
  }

  std::string to_string() const {
    if (zero()) return "0";
    std::string out;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
      auto [e, c] = *it;
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      long long m = c < 0 ? -c : c;
      if (e == 0) {
        out += std::to_string(m);
      } else {
        if (m != 1) out += std::to_string(m) + "*";
        out += "q";
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

  static Laurent parse(const std::string& text) {
    Laurent p;
    size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace((unsigned char)text[i])) i++;
    };
    auto parse_int = [&](bool sign_ok) -> long long {
      skip_ws();
      size_t start = i;
      if (sign_ok && i < text.size() && (text[i] == '+' || text[i] == '-')) i++;
      size_t digits = i;
      while (i < text.size() && std::isdigit((unsigned char)text[i])) i++;
      if (i == digits) throw ParseError("expected integer", 1, (int)i + 1);
      return std::stoll(text.substr(start, i - start));
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty polynomial", 1, 1);
    bool first = true;
    while (true) {
      skip_ws();
      if (i == text.size()) break;
      long long sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        if (text[i] == '-') sign = -1;
        i++;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-' between terms", 1, (int)i + 1);
      }
      first = false;
      long long c = 1;
      bool have_coeff = false;
      if (i < text.size() && std::isdigit((unsigned char)text[i])) {
        c = parse_int(false);
        have_coeff = true;
        skip_ws();
        if (i < text.size() && text[i] == '*') {
          i++;
          skip_ws();
        } else if (i < text.size() && text[i] == 'q') {
          throw ParseError("expected '*' between coefficient and q", 1, (int)i + 1);
        }
      }
      int e = 0;
      if (i < text.size() && text[i] == 'q') {
        i++;
        e = 1;
        if (i < text.size() && text[i] == '^') {
          i++;
          e = (int)parse_int(true);
        }
      } else if (!have_coeff) {
        throw ParseError("expected term", 1, (int)i + 1);
      }
      p.add_term(sign * c, e);
    }
    return p;
  }

 private:
  std::map<int, long long> coef_;
};

}  // namespace twistkit
