#pragma once

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "psl/linalg.hpp"

namespace psl {

// Exponent triple (i, j, k) of x0^i x1^j x2^k.
struct Mono {
  int e[3] = {0, 0, 0};
  int degree() const { return e[0] + e[1] + e[2]; }
  bool operator==(const Mono&) const = default;
};

// Display order: degree first, then lexicographic with x0 > x1 > x2
// (x0^d comes before x0^{d-1} x1, ..., x2^d last). Fixed globally.
struct MonoBefore {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
    return a.e[1] > b.e[1];
  }
};

// All monomials of the given degree in display order; empty for d < 0.
inline std::vector<Mono> monomial_basis(int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back(Mono{{i, j, d - i - j}});
  return out;
}

inline std::size_t monomial_space_dim(int d) {
  return d < 0 ? 0 : static_cast<std::size_t>((d + 1) * (d + 2) / 2);
}

// Homogeneous polynomial in x0, x1, x2 over the field F. The degree is an
// explicit tag so the zero form of each degree is a distinct, well-typed
// value (empty coefficient map).
template <class F>
class Form {
public:
  using Elem = typename F::Elem;
  using CoeffMap = std::map<Mono, Elem, MonoBefore>;

  Form(F field, int degree) : field_(field), degree_(degree), coeffs_() {
    if (degree < 0) fail("BadDegree", "form degree must be >= 0");
  }

  static Form zero(F field, int degree) { return Form(field, degree); }

  static Form monomial(F field, const Mono& m, Elem c) {
    Form f(field, m.degree());
    f.set(m, std::move(c));
    return f;
  }

  static Form variable(F field, int which) {
    Mono m;
    m.e[which] = 1;
    return monomial(field, m, field.one());
  }

  static Form constant(F field, Elem c) {
    Form f(field, 0);
    f.set(Mono{}, std::move(c));
    return f;
  }

  // Linear form c0*x0 + c1*x1 + c2*x2.
  static Form linear(F field, std::array<Elem, 3> c) {
    Form f(field, 1);
    for (int v = 0; v < 3; ++v) {
      Mono m;
      m.e[v] = 1;
      f.set(m, c[v]);
    }
    return f;
  }

  const F& field() const { return field_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const CoeffMap& coeffs() const { return coeffs_; }

  Elem coeff(const Mono& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? field_.zero() : it->second;
  }

  void set(const Mono& m, Elem c) {
    if (m.degree() != degree_) fail("DegreeMismatch", "monomial degree differs from form degree");
    if (field_.is_zero(c))
      coeffs_.erase(m);
    else
      coeffs_[m] = std::move(c);
  }

  Form operator+(const Form& o) const {
    require_same_degree(o);
    Form r = *this;
    for (const auto& [m, c] : o.coeffs_) r.set(m, field_.add(r.coeff(m), c));
    return r;
  }

  Form operator-(const Form& o) const {
    require_same_degree(o);
    Form r = *this;
    for (const auto& [m, c] : o.coeffs_) r.set(m, field_.sub(r.coeff(m), c));
    return r;
  }

  Form operator-() const {
    Form r(field_, degree_);
    for (const auto& [m, c] : coeffs_) r.coeffs_[m] = field_.neg(c);
    return r;
  }

  Form operator*(const Form& o) const {
    Form r(field_, degree_ + o.degree_);
    for (const auto& [m1, c1] : coeffs_)
      for (const auto& [m2, c2] : o.coeffs_) {
        Mono m{{m1.e[0] + m2.e[0], m1.e[1] + m2.e[1], m1.e[2] + m2.e[2]}};
        r.set(m, field_.add(r.coeff(m), field_.mul(c1, c2)));
      }
    return r;
  }

  Form scaled(const Elem& s) const {
    Form r(field_, degree_);
    if (field_.is_zero(s)) return r;
    for (const auto& [m, c] : coeffs_) r.coeffs_[m] = field_.mul(c, s);
    return r;
  }

  bool operator==(const Form& o) const {
    if (degree_ != o.degree_) return false;
    if (coeffs_.size() != o.coeffs_.size()) return false;
    for (const auto& [m, c] : coeffs_) {
      auto it = o.coeffs_.find(m);
      if (it == o.coeffs_.end() || !field_.eq(c, it->second)) return false;
    }
    return true;
  }

  Elem eval(const std::array<Elem, 3>& x) const {
    Elem acc = field_.zero();
    for (const auto& [m, c] : coeffs_) {
      Elem t = c;
      for (int v = 0; v < 3; ++v)
        for (int e = 0; e < m.e[v]; ++e) t = field_.mul(t, x[v]);
      acc = field_.add(acc, t);
    }
    return acc;
  }

  // Coefficient vector in the display order of monomial_basis(degree).
  std::vector<Elem> coeff_vector() const {
    auto basis = monomial_basis(degree_);
    std::vector<Elem> v;
    v.reserve(basis.size());
    for (const auto& m : basis) v.push_back(coeff(m));
    return v;
  }

  static Form from_coeff_vector(F field, int degree, const std::vector<Elem>& v) {
    auto basis = monomial_basis(degree);
    if (v.size() != basis.size()) fail("ShapeMismatch", "coefficient vector length mismatch");
    Form f(field, degree);
    for (std::size_t i = 0; i < basis.size(); ++i) f.set(basis[i], v[i]);
    return f;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
      std::string cs = field_.to_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      std::string mag = neg ? cs.substr(1) : cs;
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (m.e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(v);
        if (m.e[v] > 1) mono += "^" + std::to_string(m.e[v]);
      }
      std::string term;
      if (mono.empty())
        term = mag;
      else if (mag == "1")
        term = mono;
      else
        term = mag + "*" + mono;
      if (first) {
        out = neg ? "-" + term : term;
        first = false;
      } else {
        out += neg ? " - " : " + ";
        out += term;
      }
    }
    return out;
  }

  // Parses the canonical syntax: terms `c*x0^i*x1^j*x2^k` joined by +/-.
  // The coefficient may be omitted; coefficients are field scalars
  // (a/b rationals or integers mod p). The form must be homogeneous; its
  // degree is inferred, and `expect_degree` (if >= 0) overrides the tag for
  // the zero form and is checked otherwise.
  static Form parse(F field, const std::string& text, int expect_degree = -1);

private:
  void require_same_degree(const Form& o) const {
    if (degree_ != o.degree_) fail("DegreeMismatch", "form degrees differ");
  }

  F field_;
  int degree_;
  CoeffMap coeffs_;
};

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline std::string take_number(const std::string& s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && s[i] == '/') {
    std::size_t save = i;
    ++i;
    std::size_t den = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den) i = save; // lone '/', not part of the number
  }
  return s.substr(start, i - start);
}

} // namespace detail

template <class F>
Form<F> Form<F>::parse(F field, const std::string& text, int expect_degree) {
  std::size_t i = 0;
  detail::skip_ws(text, i);
  if (i == text.size()) fail("BadForm", "empty form string");
  std::map<Mono, Elem, MonoBefore> acc;
  int degree = -1;
  bool any_term = false;
  while (i < text.size()) {
    detail::skip_ws(text, i);
    bool neg = false;
    if (any_term) {
      if (text[i] == '+') {
        ++i;
      } else if (text[i] == '-') {
        neg = true;
        ++i;
      } else {
        fail("BadForm", "expected '+' or '-' at position " + std::to_string(i) + " in '" + text + "'");
      }
    } else if (text[i] == '-') {
      neg = true;
      ++i;
    } else if (text[i] == '+') {
      ++i;
    }
    detail::skip_ws(text, i);
    // one term: scalar and/or variable powers, '*'-separated
    Elem coef = field.one();
    Mono mono;
    bool saw_factor = false;
    while (true) {
      detail::skip_ws(text, i);
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::string num = detail::take_number(text, i);
        coef = field.mul(coef, field.parse(num));
        saw_factor = true;
      } else if (i < text.size() && text[i] == 'x') {
        ++i;
        if (i >= text.size() || text[i] < '0' || text[i] > '2')
          fail("BadForm", "expected variable x0, x1 or x2 in '" + text + "'");
        int var = text[i] - '0';
        ++i;
        int exp = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          std::size_t start = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (i == start) fail("BadForm", "missing exponent in '" + text + "'");
          exp = std::stoi(text.substr(start, i - start));
        }
        mono.e[var] += exp;
        saw_factor = true;
      } else {
        break;
      }
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!saw_factor) fail("BadForm", "empty term in '" + text + "'");
    if (neg) coef = field.neg(coef);
    if (!field.is_zero(coef)) {
      if (degree < 0)
        degree = mono.degree();
      else if (degree != mono.degree())
        fail("InhomogeneousForm", "mixed degrees in '" + text + "'");
      auto it = acc.find(mono);
      Elem next = it == acc.end() ? coef : field.add(it->second, coef);
      if (field.is_zero(next)) {
        if (it != acc.end()) acc.erase(it);
      } else {
        acc[mono] = next;
      }
    }
    any_term = true;
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] != '+' && text[i] != '-')
      fail("BadForm", "unexpected character '" + std::string(1, text[i]) + "' in '" + text + "'");
  }
  if (acc.empty()) {
    // cancellation or literal zero; degree comes from context
    return Form<F>(field, expect_degree >= 0 ? expect_degree : (degree >= 0 ? degree : 0));
  }
  if (degree < 0) degree = 0;
  if (expect_degree >= 0 && degree != expect_degree)
    fail("DegreeMismatch", "form '" + text + "' has degree " + std::to_string(degree) +
                               ", expected " + std::to_string(expect_degree));
  Form<F> f(field, degree);
  for (auto& [m, c] : acc) f.set(m, c);
  return f;
}

// Matrix of "multiply by f" from the degree-d coordinate space to the
// degree-(d + deg f) space, both in monomial display order.
template <class F>
Mat<F> multiplication_map(const Form<F>& f, int d) {
  const F& K = f.field();
  int e = f.degree();
  auto src = monomial_basis(d);
  auto dst = monomial_basis(d + e);
  Mat<F> m(K, dst.size(), src.size());
  std::map<Mono, std::size_t, MonoBefore> dst_index;
  for (std::size_t r = 0; r < dst.size(); ++r) dst_index[dst[r]] = r;
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (const auto& [fm, fc] : f.coeffs()) {
      Mono t{{fm.e[0] + src[c].e[0], fm.e[1] + src[c].e[1], fm.e[2] + src[c].e[2]}};
      m.at(dst_index.at(t), c) = K.add(m.at(dst_index.at(t), c), fc);
    }
  }
  return m;
}

// Exact division: returns g / l when l divides g, nullopt otherwise.
template <class F>
std::optional<Form<F>> try_divide(const Form<F>& g, const Form<F>& l) {
  if (l.is_zero()) fail("DivisionByZero", "division by zero form");
  if (g.is_zero()) return Form<F>::zero(g.field(), std::max(0, g.degree() - l.degree()));
  int d = g.degree() - l.degree();
  if (d < 0) return std::nullopt;
  auto sol = solve(multiplication_map(l, d), g.coeff_vector());
  if (!sol) return std::nullopt;
  auto h = Form<F>::from_coeff_vector(g.field(), d, *sol);
  if (!(h * l == g)) return std::nullopt; // solve() picked a non-solution only if inconsistent, re-check anyway
  return h;
}

template <class F>
bool divides(const Form<F>& l, const Form<F>& g) {
  return try_divide(g, l).has_value();
}

// Linear independence of equal-degree forms as coefficient vectors.
template <class F>
bool linearly_independent(const std::vector<Form<F>>& forms) {
  if (forms.empty()) return true;
  const F& K = forms.front().field();
  int d = forms.front().degree();
  Mat<F> m(K, forms.size(), monomial_space_dim(d));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].degree() != d) fail("DegreeMismatch", "independence test needs equal degrees");
    auto v = forms[i].coeff_vector();
    for (std::size_t j = 0; j < v.size(); ++j) m.at(i, j) = v[j];
  }
  return rank(std::move(m)) == forms.size();
}

} // namespace psl
