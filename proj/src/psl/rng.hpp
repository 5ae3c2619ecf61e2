#pragma once

#include <cstdint>

#include "psl/morphism.hpp"

namespace psl {

// splitmix64: tiny, seedable, platform-independent. Substreams are derived
// by hashing (seed, stream ids), so parallel and serial scans agree.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    Rng r(seed);
    r.state_ = mix(mix(seed ^ 0x9e3779b97f4a7c15ULL, a), b);
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound), bound >= 1; rejection keeps it unbiased
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  long range(long lo, long hi) { // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

private:
  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = (h ^ (h >> 33)) * 0xff51afd7ed558ccdULL;
    return h ^ (h >> 33);
  }

  std::uint64_t state_;
};

// Random scalars: uniform over F_p; integers in [-9, 9] over Q.
inline Rationals::Elem random_scalar(const Rationals& K, Rng& rng) {
  return K.from_int(rng.range(-9, 9));
}

inline PrimeField::Elem random_scalar(const PrimeField& K, Rng& rng) {
  return static_cast<PrimeField::Elem>(rng.below(K.modulus()));
}

template <class F>
typename F::Elem random_nonzero_scalar(const F& K, Rng& rng) {
  for (;;) {
    auto s = random_scalar(K, rng);
    if (!K.is_zero(s)) return s;
  }
}

// Dense random form of the given degree.
template <class F>
Form<F> random_form(const F& K, int degree, Rng& rng) {
  Form<F> f(K, degree);
  for (const auto& m : monomial_basis(degree)) f.set(m, random_scalar(K, rng));
  return f;
}

template <class F>
Form<F> random_nonzero_form(const F& K, int degree, Rng& rng) {
  for (;;) {
    auto f = random_form(K, degree, rng);
    if (!f.is_zero()) return f;
  }
}

template <class F>
Mat<F> random_matrix(const F& K, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat<F> m(K, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(K, rng);
  return m;
}

template <class F>
Mat<F> random_invertible_matrix(const F& K, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = random_matrix(K, n, n, rng);
    if (rank(m) == n) return m;
  }
}

// Random morphism with dense entries of the forced degrees.
template <class F>
Morphism<F> random_morphism(const F& K, const TwistList& src, const TwistList& tgt, Rng& rng) {
  Morphism<F> phi(K, src, tgt);
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      int d = phi.entry_degree(i, j);
      if (d >= 0) phi.set(i, j, random_form(K, d, rng));
    }
  return phi;
}

// Unipotent automorphism of (+)O(a): identity diagonal blocks, random forms
// strictly below (twist-raising positions only).
template <class F>
Morphism<F> random_unipotent(const F& K, const TwistList& tw, Rng& rng) {
  Morphism<F> nu = identity_morphism(K, tw);
  for (std::size_t i = 0; i < tw.size(); ++i)
    for (std::size_t j = 0; j < tw.size(); ++j)
      if (tw[i] > tw[j]) nu.set(i, j, random_form(K, tw[i] - tw[j], rng));
  return nu;
}

} // namespace psl
