#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace prepot {

// Arbitrary-precision rational, always held in lowest terms with a positive
// denominator.
using ExactRational = boost::multiprecision::cpp_rational;

inline ExactRational make_rational(long long num, long long den = 1) { return ExactRational(num, den); }

inline std::string to_string(const ExactRational& r) { return r.str(); }

// Dense polynomial in one variable with exact coefficients, lowest degree first.
class RationalPoly {
public:
  RationalPoly() = default;
  RationalPoly(std::initializer_list<ExactRational> coeffs) : c_(coeffs) { trim(); }
  explicit RationalPoly(std::vector<ExactRational> coeffs) : c_(std::move(coeffs)) { trim(); }

  // Coefficient of z^k; zero past the stored degree.
  ExactRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : ExactRational(0); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  RationalPoly derivative() const {
    std::vector<ExactRational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long long>(k));
    return RationalPoly(std::move(d));
  }

  friend RationalPoly operator+(const RationalPoly& p, const RationalPoly& q) {
    std::vector<ExactRational> r(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = p.coeff(k) + q.coeff(k);
    return RationalPoly(std::move(r));
  }
  friend RationalPoly operator-(const RationalPoly& p, const RationalPoly& q) { return p + q * ExactRational(-1); }
  friend RationalPoly operator*(const RationalPoly& p, const RationalPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<ExactRational> r(p.c_.size() + q.c_.size() - 1);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return RationalPoly(std::move(r));
  }
  friend RationalPoly operator*(const RationalPoly& p, const ExactRational& s) {
    std::vector<ExactRational> r = p.c_;
    for (auto& v : r) v *= s;
    return RationalPoly(std::move(r));
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<ExactRational> c_;
};

} // namespace prepot
