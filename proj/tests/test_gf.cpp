#include <gtest/gtest.h>

#include <random>
#include <set>

#include "surflines/gf.hpp"

using namespace surflines;

namespace {

// Schoolbook product of packed elements, reduced by the monic modulus. Kept
// independent of the library's table code.
std::uint32_t ref_mul(const Field& F, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t p = F.p();
  const unsigned k = F.k();
  std::vector<std::uint64_t> da(k), db(k), prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto& mod = F.modulus();
  for (int deg = 2 * k - 1; deg >= static_cast<int>(k); --deg) {
    const std::uint64_t c = prod[deg];
    if (!c) continue;
    for (unsigned i = 0; i <= k; ++i) prod[deg - k + i] = (prod[deg - k + i] + (p - c) * mod[i]) % p;
  }
  std::uint64_t v = 0;
  for (int i = k - 1; i >= 0; --i) v = v * p + prod[i];
  return static_cast<std::uint32_t>(v);
}

std::uint32_t ref_add(const Field& F, std::uint32_t a, std::uint32_t b) {
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < F.k(); ++i) {
    out += ((a % F.p() + b % F.p()) % F.p()) * scale;
    a /= F.p();
    b /= F.p();
    scale *= F.p();
  }
  return out;
}

}  // namespace

TEST(Field, Gf4UsesTheUniqueIrreducibleQuadratic) {
  auto F = make_field(2, 2);
  EXPECT_EQ(F->q(), 4u);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(Field, Gf9ElementOrdersDivideEight) {
  auto F = make_field(3, 2);
  for (std::uint32_t v = 1; v < 9; ++v) {
    EXPECT_EQ(8u % F->order(Elem{v}), 0u);
    EXPECT_EQ(F->pow(Elem{v}, 8), F->one());
  }
  // least monic irreducible quadratic over GF(3) by packed value is t^2+1
  EXPECT_EQ(F->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, CompositeCharacteristicRejected) {
  try {
    make_field(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
}

TEST(Field, ReducibleModulusRejected) {
  // t^2 + 1 = (t+1)^2 over GF(2)
  try {
    make_field(2, 2, std::vector<std::uint32_t>{1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReducibleModulus);
  }
  try {
    make_field(2, 3, std::vector<std::uint32_t>{1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
}

TEST(Field, SpecStrings) {
  auto F = parse_field_spec("3^2");
  EXPECT_EQ(F->q(), 9u);
  EXPECT_EQ(F->spec(), "3^2/1,0,1");
  auto G = parse_field_spec("3^2/2,2,1");  // t^2 + 2t + 2
  EXPECT_EQ(G->modulus(), (std::vector<std::uint32_t>{2, 2, 1}));
  EXPECT_EQ(parse_field_spec("7")->q(), 7u);
  EXPECT_THROW(parse_field_spec("3^2/1,0,2"), Error);
  EXPECT_THROW(parse_field_spec("x^2"), Error);
  EXPECT_EQ(parse_field_spec(G->spec())->modulus(), G->modulus());
}

TEST(Field, ElementTextRoundTrip) {
  for (auto spec : {"2^4", "3^3", "5^2", "37^2"}) {
    auto F = parse_field_spec(spec);
    for (std::uint32_t v = 0; v < F->q(); v += 1 + F->q() / 97) EXPECT_EQ(F->parse(F->format(Elem{v})), Elem{v});
  }
  auto F = make_field(3, 2);
  EXPECT_EQ(F->format(Elem{5}), "21");  // 2 + t
  EXPECT_THROW(F->parse("3"), Error);
}

TEST(Field, FrobeniusOnGf4Generator) {
  auto F = make_field(2, 2);
  const Elem g = F->generator();
  EXPECT_EQ(g, Elem{2});
  // t^2 = t + 1 mod t^2+t+1
  EXPECT_EQ(F->frobenius(g, 1), F->add(g, F->one()));
}

TEST(Field, FrobeniusInvolutionOnGf9) {
  auto F = make_field(3, 2);
  for (std::uint32_t v = 0; v < 9; ++v) EXPECT_EQ(F->frobenius(F->frobenius(Elem{v}, 1), 1), Elem{v});
  auto P = make_field(7, 1);
  for (std::uint32_t v = 0; v < 7; ++v) EXPECT_EQ(P->frobenius(Elem{v}, 3), Elem{v});
}

TEST(Field, FrobeniusFixesExactlyPrimeField) {
  for (auto [p, k] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}}) {
    auto F = make_field(p, k);
    std::uint32_t fixed = 0;
    for (std::uint32_t v = 0; v < F->q(); ++v)
      if (F->frobenius(Elem{v}, 1) == Elem{v}) {
        ++fixed;
        EXPECT_TRUE(F->is_prime_field_elem(Elem{v}));
      }
    EXPECT_EQ(fixed, p);
  }
}

TEST(Embedding, BasicCases) {
  auto F2 = make_field(2, 1), F4 = make_field(2, 2), F8 = make_field(2, 3);
  EXPECT_EQ(embed(F2, F2->one(), F4), F4->one());
  try {
    Embedding bad(F4, F8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoEmbedding);
  }
}

TEST(Embedding, PrimeFieldLandsOnFrobeniusFixedPoints) {
  auto F3 = make_field(3, 1), F9 = make_field(3, 2);
  std::set<std::uint32_t> fixed, image;
  for (std::uint32_t v = 0; v < 9; ++v)
    if (F9->pow(Elem{v}, 3) == Elem{v}) fixed.insert(v);
  Embedding emb(F3, F9);
  for (std::uint32_t v = 0; v < 3; ++v) image.insert(emb(Elem{v}).v);
  EXPECT_EQ(fixed.size(), 3u);
  EXPECT_EQ(image, fixed);
}

TEST(Embedding, IsARingHomomorphismCommutingWithFrobenius) {
  for (auto [p, k, K] : {std::tuple{2u, 2u, 4u}, {3u, 1u, 4u}, {2u, 3u, 6u}, {5u, 1u, 2u}, {3u, 2u, 4u}}) {
    auto S = make_field(p, k), T = make_field(p, K);
    Embedding emb(S, T);
    EXPECT_EQ(emb(S->one()), T->one());
    for (std::uint32_t a = 0; a < S->q(); ++a) {
      EXPECT_EQ(emb(S->frobenius(Elem{a}, 1)), T->frobenius(emb(Elem{a}), 1));
      for (std::uint32_t b = 0; b < S->q(); ++b) {
        EXPECT_EQ(emb(S->mul(Elem{a}, Elem{b})), T->mul(emb(Elem{a}), emb(Elem{b})));
        EXPECT_EQ(emb(S->add(Elem{a}, Elem{b})), T->add(emb(Elem{a}), emb(Elem{b})));
      }
    }
  }
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {};

TEST_P(FieldAxioms, ExhaustiveAgreementWithReferenceArithmetic) {
  auto [p, k] = GetParam();
  auto F = make_field(p, k);
  const std::uint32_t q = F->q();
  // exhaustive pairs up to q = 1024, a stride above
  const std::uint32_t stride = q <= 1024 ? 1 : 61;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = a % stride; b < q; b += stride) {
      ASSERT_EQ(F->mul(Elem{a}, Elem{b}).v, ref_mul(*F, a, b));
      ASSERT_EQ(F->add(Elem{a}, Elem{b}).v, ref_add(*F, a, b));
    }
    if (a) {
      ASSERT_EQ(F->mul(Elem{a}, F->inv(Elem{a})), F->one());
      ASSERT_EQ(F->pow(Elem{a}, q - 1), F->one());
    }
    ASSERT_EQ(F->add(Elem{a}, F->neg(Elem{a})), F->zero());
  }
}

TEST_P(FieldAxioms, AssociativeAndDistributive) {
  auto [p, k] = GetParam();
  auto F = make_field(p, k);
  const std::uint32_t q = F->q();
  auto check = [&](Elem a, Elem b, Elem c) {
    ASSERT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
    ASSERT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
    ASSERT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
  };
  if (q <= 256) {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) check(Elem{a}, Elem{b}, Elem{c});
  } else {
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    for (int i = 0; i < 200000; ++i) check(Elem{pick(rng)}, Elem{pick(rng)}, Elem{pick(rng)});
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{2u, 2u},
                                           std::pair{5u, 1u}, std::pair{2u, 3u}, std::pair{3u, 2u},
                                           std::pair{2u, 4u}, std::pair{5u, 2u}, std::pair{3u, 3u},
                                           std::pair{2u, 8u}, std::pair{7u, 2u}));

INSTANTIATE_TEST_SUITE_P(LargerFields, FieldAxioms,
                         ::testing::Values(std::pair{3u, 6u}, std::pair{2u, 12u}, std::pair{31u, 2u}));

TEST(Field, PolynomialFallbackAboveTableLimit) {
  auto F = make_field(2, 17);
  EXPECT_FALSE(F->has_tables());
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::uint32_t> pick(1, F->q() - 1);
  for (int i = 0; i < 2000; ++i) {
    Elem a{pick(rng)}, b{pick(rng)};
    EXPECT_EQ(F->mul(a, b).v, ref_mul(*F, a.v, b.v));
    EXPECT_EQ(F->mul(a, F->inv(a)), F->one());
  }
}

TEST(Field, ModulusSelectionIsDeterministic) {
  for (unsigned k = 1; k <= 5; ++k) {
    auto a = make_field(3, k), b = make_field(3, k);
    EXPECT_TRUE(a->same_as(*b));
    EXPECT_TRUE(is_irreducible(a->modulus(), 3));
  }
  // GF(8): t^3 + t + 1 precedes t^3 + t^2 + 1
  EXPECT_EQ(make_field(2, 3)->modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
}
