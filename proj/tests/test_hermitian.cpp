#include <doctest.h>

#include "covol/error.hpp"
#include "covol/hermitian.hpp"
#include "support/generators.hpp"

using namespace covol;
using namespace covol::hermitian;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::DomainError;
}

}  // namespace

TEST_CASE("fields") {
  const auto F = make_field(7);
  CHECK(F.D() == 7);
  CHECK(F.c() == 2);
  // omega^2 = omega - 2
  CHECK(mul({0, 1}, {0, 1}, F) == RingElem(-2, 1));
  CHECK(make_field(3).c() == 1);
  CHECK(code_of([] { make_field(5); }) == Errc::EvenDiscriminant);
  CHECK(code_of([] { make_field(4); }) == Errc::EvenDiscriminant);
  CHECK(code_of([] { make_field(27); }) == Errc::NotSquarefree);
}

TEST_CASE("ring elements") {
  const auto F = make_field(3);
  const RingElem w(0, 1);
  CHECK(w.conj() == RingElem(1, -1));
  CHECK(norm(w, F) == 1);
  CHECK(norm(RingElem(3), F) == 9);
  // -1 + 2 omega = sqrt(-3)
  CHECK(norm(RingElem(-1, 2), F) == 3);
  CHECK(mul(RingElem(-1, 2), RingElem(-1, 2), F) == RingElem(-3));
  gen::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto G = make_field(gen::pick(rng, gen::kDiscriminants));
    const auto x = gen::random_elem(rng, 20), y = gen::random_elem(rng, 20);
    CHECK(norm(mul(x, y, G), G) == norm(x, G) * norm(y, G));
    CHECK(mul(x, y, G).conj() == mul(x.conj(), y.conj(), G));
    CHECK(mul(x, x.conj(), G) == RingElem(norm(x, G), 0));
    if (!x.is_zero()) CHECK(norm(x, G) > 0);
  }
}

TEST_CASE("field elements") {
  const FieldElem x(Rational(1, 2), Rational(3), 2);
  CHECK((x * x.inverse()).a() == 1);
  CHECK((x * x.inverse()).b() == 0);
  CHECK(x.norm() == Rational(1, 4) + Rational(3, 2) + 18);
}

TEST_CASE("determinants") {
  const auto F7 = make_field(7), F3 = make_field(3);
  CHECK(det_gram(diagonal(F7, {1, -1})) == -1);
  CHECK(det_gram(lattice_G(F3)) == -9);
  CHECK(det_gram(direct_sum(hyperbolic_plane(F7), diagonal(F7, {1}))) == -1);
  CHECK(det_gram(gen::pi_modular_plane(F7)) == -7);
}

TEST_CASE("signatures") {
  const auto F = make_field(7);
  CHECK(signature(diagonal(F, {1, -1, -1})) == std::pair{1, 2});
  CHECK(signature(lattice_G(F)) == std::pair{1, 1});
  CHECK(signature(diagonal(F, {1, 1, 1, -1})) == std::pair{3, 1});
  CHECK(signature(rescale(diagonal(F, {1, -1, -1}), -1)) == std::pair{2, 1});
  const HermitianLattice degenerate(F, {{RingElem(1), RingElem(1)}, {RingElem(1), RingElem(1)}});
  CHECK(code_of([&] { signature(degenerate); }) == Errc::Degenerate);
}

TEST_CASE("construction checks") {
  const auto F = make_field(7);
  CHECK(code_of([&] { HermitianLattice(F, {{RingElem(1), RingElem(0, 1)}, {RingElem(0, 1), RingElem(1)}}); }) ==
        Errc::InvariantViolation);
  CHECK(code_of([&] { HermitianLattice(F, {{RingElem(1, 1)}}); }) == Errc::InvariantViolation);
  CHECK(code_of([&] { direct_sum(diagonal(F, {1}), diagonal(make_field(3), {1})); }) == Errc::FieldMismatch);
}

TEST_CASE("unimodularity") {
  const auto F = make_field(7);
  CHECK(is_unimodular(diagonal(F, {1, -1, -1, -1})));
  CHECK_FALSE(is_unimodular(lattice_G(F)));
  CHECK(is_unimodular(hyperbolic_plane(F)));
  CHECK(rescale(diagonal(F, {1, -1}), 3) == diagonal(F, {3, -3}));
  CHECK(direct_sum(diagonal(F, {1}), diagonal(F, {-1})) == diagonal(F, {1, -1}));
}

TEST_CASE("parsing") {
  const auto L = parse_lattice(R"({"D": 7, "gram": [[[1,0],[0,0]],[[0,0],[-1,0]]]})");
  CHECK(L == diagonal(make_field(7), {1, -1}));
  const auto big = parse_lattice(R"({"D": 7, "gram": [[["123456789012345678901234567890",0]]]})");
  CHECK(big.at(0, 0).a == Integer("123456789012345678901234567890"));
  CHECK(code_of([] { parse_lattice("{\"D\": 7, \"gram\": [[[1,0]"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_lattice(R"({"gram": [[[1,0]]]})"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_lattice(R"({"D": 7, "gram": [[[1,0],[0,0]]]})"); }) == Errc::InvariantViolation);
  CHECK(code_of([] { parse_lattice(R"({"D": 7, "gram": [[[1,0,4]]]})"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_lattice(R"({"D": 7, "gram": [[["x",0]]]})"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_lattice(R"({"D": 7, "gram": [[[1,0],[2,1]],[[2,1],[1,0]]]})"); }) ==
        Errc::InvariantViolation);
  CHECK(code_of([] { parse_lattice(R"({"D": 7, "gram": [[[1,1]]]})"); }) == Errc::InvariantViolation);
  CHECK(code_of([] { parse_lattice(R"({"D": 7, "gram": [[[1,0],[1,0]],[[1,0],[1,0]]]})"); }) ==
        Errc::InvariantViolation);
  CHECK(code_of([] { parse_lattice(R"({"D": 5, "gram": [[[1,0]]]})"); }) == Errc::InvariantViolation);
}

TEST_CASE("property: serialization round trip") {
  gen::Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto F = make_field(gen::pick(rng, gen::kDiscriminants));
    const auto L = gen::random_lattice(rng, F, int(gen::uniform(rng, 1, 5)), 30);
    CHECK(parse_lattice(serialize_lattice(L)) == L);
  }
}

TEST_CASE("property: signature additivity and det multiplicativity") {
  gen::Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto F = make_field(gen::pick(rng, gen::kDiscriminants));
    const auto A = gen::random_lattice(rng, F, int(gen::uniform(rng, 1, 4)), 5);
    const auto B = gen::random_lattice(rng, F, int(gen::uniform(rng, 1, 4)), 5);
    const auto S = direct_sum(A, B);
    const auto [pa, qa] = signature(A);
    const auto [pb, qb] = signature(B);
    CHECK(signature(S) == std::pair{pa + pb, qa + qb});
    CHECK(det_gram(S) == det_gram(A) * det_gram(B));
    CHECK(S.rank() == A.rank() + B.rank());
  }
}

TEST_CASE("property: rescaling") {
  gen::Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const auto F = make_field(gen::pick(rng, gen::kDiscriminants));
    const auto L = gen::random_lattice(rng, F, int(gen::uniform(rng, 1, 5)), 6);
    const long c = gen::pick(rng, {-3, -1, 2, 5, 7});
    Integer factor = 1;
    for (std::size_t i = 0; i < L.rank(); ++i) factor *= c;
    CHECK(det_gram(rescale(L, c)) == factor * det_gram(L));
    const auto [p, q] = signature(L);
    CHECK(signature(rescale(L, c)) == (c > 0 ? std::pair{p, q} : std::pair{q, p}));
  }
}

TEST_CASE("property: characteristic polynomial and base change") {
  gen::Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const auto F = make_field(gen::pick(rng, gen::kDiscriminants));
    const int r = int(gen::uniform(rng, 1, 5));
    const auto L = gen::random_lattice(rng, F, r, 6);
    const auto cp = characteristic_polynomial(L);
    REQUIRE(cp.size() == std::size_t(r + 1));
    CHECK(cp[r] == 1);
    CHECK(cp[0] == (r % 2 ? -det_gram(L) : det_gram(L)));
    Integer trace = 0;
    for (int i = 0; i < r; ++i) trace += L.at(i, i).a;
    CHECK(cp[r - 1] == -trace);
    const auto M = change_basis(L, gen::random_unimodular(rng, F, r, 8));
    CHECK(det_gram(M) == det_gram(L));
    CHECK(signature(M) == signature(L));
  }
}

TEST_CASE("property: signature (1, n) generator") {
  gen::Rng rng(37);
  for (int t = 0; t < 60; ++t) {
    const auto F = make_field(gen::pick(rng, gen::kDiscriminants));
    const int n = int(gen::uniform(rng, 3, 7));
    const auto L = gen::random_signature_1n(rng, F, n);
    CHECK(L.rank() == std::size_t(n + 1));
    CHECK(signature(L) == std::pair{1, n});
  }
}
