#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace psl {

// Raised for malformed inputs and violated preconditions. `code` is a short
// machine-readable tag ("DegreeMismatch", "NotSquare", ...) surfaced through
// the C API and the CLI error reports.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

enum class FieldKind { Rationals, Prime };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  unsigned p = 0; // modulus when kind == Prime

  static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }
  static FieldSpec prime(unsigned p);

  bool operator==(const FieldSpec&) const = default;
  std::string name() const {
    return kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(p);
  }
  // Accepts "Q" or "F<p>" / "Fp<p>".
  static FieldSpec parse(const std::string& s);
};

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldSpec FieldSpec::prime(unsigned p) {
  if (!is_prime(p) || p > 97) fail("BadField", "prime field modulus must be a prime <= 97, got " + std::to_string(p));
  return {FieldKind::Prime, p};
}

inline FieldSpec FieldSpec::parse(const std::string& s) {
  if (s == "Q" || s == "q") return rationals();
  std::string t = s;
  if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) {
    t = t.substr(1);
    if (!t.empty() && t[0] == 'p') t = t.substr(1);
    try {
      return prime(static_cast<unsigned>(std::stoul(t)));
    } catch (const Error&) {
      throw;
    } catch (...) {
      // fall through
    }
  }
  fail("BadField", "cannot parse field '" + s + "' (expected Q or F<p>)");
}

// Field of rationals backed by GMP. Field objects are cheap value types that
// all containers (forms, matrices) carry along; every element is created and
// combined through the field object so that the two scalar backends share one
// code path.
class Rationals {
public:
  using Elem = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long n) const { return Elem(n); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) fail("DivisionByZero", "inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  Elem parse(const std::string& s) const {
    try {
      Elem e(s);
      if (e.get_den() == 0) fail("BadScalar", "zero denominator in '" + s + "'");
      e.canonicalize();
      return e;
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail("BadScalar", "cannot parse rational '" + s + "'");
    }
  }

  bool operator==(const Rationals&) const { return true; }
};

// Prime field F_p, p <= 97. Elements are canonical residues in [0, p).
class PrimeField {
public:
  using Elem = std::uint32_t;

  PrimeField() : p_(2) {}
  explicit PrimeField(unsigned p) : p_(p) {
    if (!is_prime(p) || p > 97) fail("BadField", "bad prime field modulus " + std::to_string(p));
  }

  FieldSpec spec() const { return FieldSpec::prime(p_); }
  unsigned modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) fail("DivisionByZero", "inverse of zero in F_" + std::to_string(p_));
    // p is tiny; Fermat via repeated squaring
    Elem r = 1, base = a % p_;
    unsigned e = p_ - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string to_string(Elem a) const { return std::to_string(a); }

  Elem parse(const std::string& s) const {
    try {
      long v = std::stol(s);
      return from_int(v);
    } catch (...) {
      fail("BadScalar", "cannot parse F_" + std::to_string(p_) + " scalar '" + s + "'");
    }
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
  unsigned p_;
};

// Calls fn with the field object matching a runtime FieldSpec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& fs, Fn&& fn) {
  if (fs.kind == FieldKind::Rationals) return fn(Rationals{});
  return fn(PrimeField{fs.p});
}

} // namespace psl
