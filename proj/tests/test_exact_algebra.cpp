#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psl/linalg.hpp"
#include "psl/poly.hpp"
#include "psl/rng.hpp"

using namespace psl;

TEST_CASE("field arithmetic") {
  Rationals Q;
  CHECK(Q.eq(Q.add(Q.parse("3/4"), Q.parse("1/6")), Q.parse("11/12")));
  CHECK(Q.is_zero(Q.sub(Q.one(), Q.one())));
  CHECK(Q.eq(Q.inv(Q.parse("-2/3")), Q.parse("-3/2")));
  CHECK_THROWS_AS(Q.inv(Q.zero()), Error);

  PrimeField F7(7);
  for (unsigned a = 1; a < 7; ++a) CHECK(F7.mul(a, F7.inv(a)) == F7.one());
  CHECK(F7.from_int(-3) == 4);
  CHECK_THROWS_AS(PrimeField(6), Error);
  CHECK_THROWS_AS(PrimeField(101), Error);
  CHECK(FieldSpec::parse("F7") == FieldSpec::prime(7));
  CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
  CHECK_THROWS_AS(FieldSpec::parse("R"), Error);
}

TEST_CASE("monomial basis sizes and order") {
  CHECK(monomial_basis(2).size() == 6);
  CHECK(monomial_basis(0).size() == 1);
  CHECK(monomial_basis(-1).empty());
  for (int d = 0; d <= 10; ++d)
    CHECK(monomial_basis(d).size() == static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  // display order: x0^2, x0*x1, x0*x2, x1^2, x1*x2, x2^2
  auto b = monomial_basis(2);
  CHECK(b.front() == Mono{{2, 0, 0}});
  CHECK(b[1] == Mono{{1, 1, 0}});
  CHECK(b.back() == Mono{{0, 0, 2}});
}

TEST_CASE("multiplication map examples") {
  Rationals Q;
  auto x0 = Form<Rationals>::variable(Q, 0);

  // multiply by x0 from degree 0: the 3x1 map sending 1 to x0
  auto m = multiplication_map(x0, 0);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 1);
  CHECK(Q.eq(m.at(0, 0), Q.one()));
  CHECK(Q.is_zero(m.at(1, 0)));
  CHECK(Q.is_zero(m.at(2, 0)));

  // zero form of degree 2 from degree 1: zero map into the cubic space
  auto z = multiplication_map(Form<Rationals>::zero(Q, 2), 1);
  CHECK(z.rows() == 10);
  CHECK(z.cols() == 3);
  CHECK(rank(z) == 0);

  // f = x0*x1 + x2^2 from degree 1: full column rank
  auto x1 = Form<Rationals>::variable(Q, 1);
  auto x2 = Form<Rationals>::variable(Q, 2);
  auto mm = multiplication_map(x0 * x1 + x2 * x2, 1);
  CHECK(mm.rows() == 10);
  CHECK(mm.cols() == 3);
  CHECK(rank(mm) == 3);
  // echelon oracle: rank is invariant under a random invertible row operation
  Rng rng(7);
  auto mm2 = random_invertible_matrix(Q, 10, rng).mul(mm);
  CHECK(rank(mm2) == 3);
}

TEST_CASE("multiplication maps compose multiplicatively") {
  Rng rng(11);
  auto check_over = [&](auto K) {
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_form(K, 2, rng);
      auto g = random_form(K, 1, rng);
      int d = static_cast<int>(rng.below(3));
      auto lhs = multiplication_map(f * g, d);
      auto rhs = multiplication_map(f, d + 1).mul(multiplication_map(g, d));
      CHECK(lhs == rhs);
    }
  };
  check_over(Rationals{});
  check_over(PrimeField{5});
}

TEST_CASE("rank, kernel, image, solve") {
  Rationals Q;
  auto id3 = Mat<Rationals>::identity(Q, 3);
  CHECK(rank(id3) == 3);
  CHECK(kernel_basis(id3).dim() == 0);

  Mat<Rationals> zero25(Q, 2, 5);
  CHECK(kernel_basis(zero25).dim() == 5);

  PrimeField F5(5);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(F5, 4, 6, rng);
    auto r = rank(m);
    CHECK(r + kernel_basis(m).dim() == 6);
    CHECK(image_basis(m).dim() == r);
    auto g = random_invertible_matrix(F5, 4, rng);
    CHECK(rank(g.mul(m)) == r);
    // kernel vectors actually die
    auto ker = kernel_basis(m);
    for (std::size_t i = 0; i < ker.dim(); ++i) {
      std::vector<PrimeField::Elem> v(6);
      for (std::size_t j = 0; j < 6; ++j) v[j] = ker.basis().at(i, j);
      for (auto& c : m.apply(v)) CHECK(F5.is_zero(c));
    }
  }

  // solve: consistent and inconsistent systems
  Mat<Rationals> a(Q, 2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 2;
  a.at(1, 1) = 4;
  auto sol = solve(a, {mpq_class(3), mpq_class(6)});
  REQUIRE(sol.has_value());
  CHECK(a.apply(*sol) == std::vector<mpq_class>{3, 6});
  CHECK_FALSE(solve(a, {mpq_class(3), mpq_class(7)}).has_value());
}

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
  // independent oracle: prod_{i<k} (q^m - q^i) / (q^k - q^i)
  auto oracle = [](unsigned m, unsigned k, unsigned q) -> mpz_class {
    mpz_class num = 1, den = 1, qi = 1;
    for (unsigned i = 0; i < k; ++i) {
      mpz_class qm, qk;
      mpz_pow_ui(qm.get_mpz_t(), mpz_class(q).get_mpz_t(), m);
      mpz_pow_ui(qk.get_mpz_t(), mpz_class(q).get_mpz_t(), k);
      num *= qm - qi;
      den *= qk - qi;
      qi *= q;
    }
    return num / den;
  };

  CHECK(gaussian_binomial(2, 1, 2) == 3);
  CHECK(gaussian_binomial(4, 2, 2) == oracle(4, 2, 2));
  CHECK(oracle(4, 2, 2) == 35);

  for (unsigned q : {2u, 3u})
    for (unsigned m = 1; m <= 4; ++m)
      for (unsigned k = 0; k <= m; ++k) {
        PrimeField K(q);
        std::vector<Subspace<PrimeField>> seen;
        unsigned long count = 0;
        enumerate_subspaces(K, m, k, [&](const Subspace<PrimeField>& s) {
          CHECK(s.dim() == k);
          for (const auto& o : seen) CHECK(!(o == s));
          if (seen.size() < 50) seen.push_back(s);
          ++count;
          return true;
        });
        CHECK(mpz_class(count) == oracle(m, k, q));
      }

  // m=3, k=0: exactly the zero subspace
  PrimeField F3(3);
  auto zs = all_subspaces(F3, 3, 0);
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].dim() == 0);

  // budget error carries the bound
  CHECK_THROWS_WITH_AS(enumerate_subspaces(PrimeField(97), 4, 2, [](auto&&) { return true; }, 10),
                       doctest::Contains("budget"), Error);
}

TEST_CASE("form parse/print round trip") {
  Rationals Q;
  auto f = Form<Rationals>::parse(Q, "3/2*x0^2*x1 - x2^3 + x0*x1*x2");
  CHECK(f.degree() == 3);
  CHECK(Q.eq(f.coeff(Mono{{2, 1, 0}}), Q.parse("3/2")));
  CHECK(Q.eq(f.coeff(Mono{{0, 0, 3}}), Q.parse("-1")));
  CHECK(Form<Rationals>::parse(Q, f.to_string()) == f);

  PrimeField F7(7);
  Rng rng(5);
  for (int d = 0; d <= 4; ++d)
    for (int t = 0; t < 5; ++t) {
      auto g = random_form(F7, d, rng);
      CHECK(Form<PrimeField>::parse(F7, g.to_string(), d) == g);
      auto h = random_form(Q, d, rng);
      CHECK(Form<Rationals>::parse(Q, h.to_string(), d) == h);
    }

  // zero form: degree from context
  auto z = Form<Rationals>::parse(Q, "0", 4);
  CHECK(z.is_zero());
  CHECK(z.degree() == 4);
  // cancellation
  CHECK(Form<Rationals>::parse(Q, "x0 - x0", 1).is_zero());

  CHECK_THROWS_AS(Form<Rationals>::parse(Q, "x0 + x1^2"), Error);        // inhomogeneous
  CHECK_THROWS_AS(Form<Rationals>::parse(Q, "x3"), Error);               // no such variable
  CHECK_THROWS_AS(Form<Rationals>::parse(Q, "x0 x1"), Error);            // missing operator
  CHECK_THROWS_AS(Form<Rationals>::parse(Q, "x0^2", 3), Error);          // degree mismatch
}

TEST_CASE("form division") {
  Rationals Q;
  auto x0 = Form<Rationals>::variable(Q, 0);
  auto x1 = Form<Rationals>::variable(Q, 1);
  auto g = (x0 + x1) * (x0 * x0 + x1 * x1);
  auto quot = try_divide(g, x0 + x1);
  REQUIRE(quot.has_value());
  CHECK(*quot == x0 * x0 + x1 * x1);
  CHECK_FALSE(try_divide(g, x0 + x1 + Form<Rationals>::variable(Q, 2)).has_value());
  CHECK(divides(x0, x0 * x1));
  CHECK_FALSE(divides(x0, x1 * x1));
}

TEST_CASE("rng substreams are deterministic") {
  auto a = Rng::substream(42, 7, 9);
  auto b = Rng::substream(42, 7, 9);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  auto c = Rng::substream(42, 7, 10);
  bool differs = false;
  auto a2 = Rng::substream(42, 7, 9);
  for (int i = 0; i < 10; ++i) differs |= (a2.next() != c.next());
  CHECK(differs);
}
