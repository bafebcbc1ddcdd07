#include <doctest.h>

#include "multab/errors.hpp"
#include "multab/gfpoly.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

using namespace multab;
using namespace multab::gfpoly;

namespace {

uint64_t ipow(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

TEST_SUITE_BEGIN("gfpoly");

TEST_CASE("rank/unrank is a bijection") {
    for (uint32_t p : {2u, 3u, 5u}) {
        for (uint32_t n : {0u, 1u, 3u}) {
            std::set<std::vector<uint32_t>> seen;
            for (uint64_t r = 0; r < ipow(p, n); ++r) {
                const MonicPoly f = unrank(p, n, r);
                CHECK(f.degree() == n);
                CHECK(rank_of(f) == r);
                seen.insert(f.coeffs);
            }
            CHECK(seen.size() == ipow(p, n));
        }
    }
    CHECK_THROWS_AS(unrank(2, 64, 0), ResourceError); // rank space overflow
}

TEST_CASE("to_string spells small polynomials") {
    CHECK(one(2).to_string() == "1");
    CHECK(unrank(2, 1, 0).to_string() == "x");
    CHECK(unrank(2, 1, 1).to_string() == "x+1");
    CHECK(unrank(3, 2, 7).to_string() == "x^2+2x+1");
}

TEST_CASE("poly_mul multiplies with carries in F_p") {
    // (x+1)^2 = x^2+2x+1 over F_3, = x^2+1 over F_2
    const MonicPoly xp1_3 = unrank(3, 1, 1);
    CHECK(rank_of(poly_mul(xp1_3, xp1_3)) == 7); // 1 + 2*3 = 7
    const MonicPoly xp1_2 = unrank(2, 1, 1);
    CHECK(rank_of(poly_mul(xp1_2, xp1_2)) == 1); // x^2+1
    // multiplication by 1 is the identity
    CHECK(poly_mul(one(5), unrank(5, 3, 77)) == unrank(5, 3, 77));
}

TEST_CASE("poly_divides and poly_divexact invert poly_mul") {
    for (uint32_t p : {2u, 3u}) {
        for (uint64_t ra = 0; ra < ipow(p, 2); ++ra) {
            for (uint64_t rb = 0; rb < ipow(p, 3); ++rb) {
                const MonicPoly a = unrank(p, 2, ra), b = unrank(p, 3, rb);
                const MonicPoly ab = poly_mul(a, b);
                MonicPoly quot;
                REQUIRE(poly_divides(ab, a, &quot));
                CHECK(quot == b);
                CHECK(poly_divexact(ab, b) == a);
            }
        }
    }
    // x does not divide x+1
    CHECK_FALSE(poly_divides(unrank(2, 1, 1), unrank(2, 1, 0)));
    CHECK_THROWS_AS(poly_divexact(unrank(2, 1, 1), unrank(2, 1, 0)),
                    std::invalid_argument);
}

TEST_CASE("sieve prime flags match exhaustive trial division") {
    for (uint32_t p : {2u, 3u}) {
        const uint32_t N = p == 2 ? 9 : 6;
        SpfTable table(p, N);
        for (uint32_t n = 1; n <= N; ++n)
            for (uint64_t r = 0; r < ipow(p, n); ++r)
                CHECK(table.is_prime(n, r) == is_irreducible(unrank(p, n, r)));
    }
}

TEST_CASE("prime counts per degree match the classical table") {
    SpfTable t2(2, 10);
    const uint64_t expect2[] = {0, 2, 1, 2, 3, 6, 9, 18, 30, 56, 99};
    for (uint32_t d = 1; d <= 10; ++d) CHECK(t2.prime_count(d) == expect2[d]);

    SpfTable t3(3, 6);
    const uint64_t expect3[] = {0, 3, 3, 8, 18, 48, 116};
    for (uint32_t d = 1; d <= 6; ++d) CHECK(t3.prime_count(d) == expect3[d]);

    SpfTable t5(5, 4);
    const uint64_t expect5[] = {0, 5, 10, 40, 150};
    for (uint32_t d = 1; d <= 4; ++d) CHECK(t5.prime_count(d) == expect5[d]);
}

TEST_CASE("spf entry is the (degree, rank)-smallest prime divisor") {
    SpfTable table(2, 8);
    for (uint32_t n = 1; n <= 8; ++n) {
        for (uint64_t r = 0; r < ipow(2, n); ++r) {
            const MonicPoly f = unrank(2, n, r);
            const MonicPoly spf = table.prime_poly(table.spf_index(n, r));
            CHECK(poly_divides(f, spf));
            // no prime strictly smaller in (degree, rank) order divides f
            bool smaller_divisor = false;
            for (uint32_t d = 1; d <= spf.degree() && !smaller_divisor; ++d) {
                const uint64_t lim = d < spf.degree() ? ipow(2, d) : rank_of(spf);
                for (uint64_t s = 0; s < lim; ++s)
                    if (table.is_prime(d, s) && poly_divides(f, unrank(2, d, s))) {
                        smaller_divisor = true;
                        break;
                    }
            }
            CHECK_FALSE(smaller_divisor);
        }
    }
}

TEST_CASE("factorize reproduces the product and orders terms") {
    for (uint32_t p : {2u, 3u}) {
        const uint32_t N = p == 2 ? 10 : 6;
        SpfTable table(p, N);
        for (uint64_t r = 0; r < ipow(p, N); ++r) {
            const MonicPoly f = unrank(p, N, r);
            const Factorization fact = factorize(f, table);
            CHECK(fact.total_degree() == N);
            MonicPoly prod = one(p);
            for (size_t i = 0; i < fact.terms.size(); ++i) {
                const auto& t = fact.terms[i];
                CHECK(table.is_prime(t.degree, t.rank));
                CHECK(t.multiplicity >= 1);
                if (i > 0) {
                    const auto& prev = fact.terms[i - 1];
                    CHECK(std::pair(prev.degree, prev.rank) <
                          std::pair(t.degree, t.rank));
                }
                for (uint32_t m = 0; m < t.multiplicity; ++m)
                    prod = poly_mul(prod, unrank(p, t.degree, t.rank));
            }
            CHECK(prod == f);
        }
    }
}

TEST_CASE("factorization of the constant 1 is empty") {
    SpfTable table(2, 3);
    const Factorization fact = factorize(one(2), table);
    CHECK(fact.terms.empty());
    CHECK(fact.total_degree() == 0);
    CHECK(fact.mobius() == 1);
    CHECK(fact.squarefree());
    CHECK(fact.squarefull());
    CHECK(fact.largest_prime_degree() == 0);
    CHECK(fact.smallest_prime_degree() == UINT32_MAX);
}

TEST_CASE("mobius, squarefree and squarefull flags") {
    SpfTable table(2, 6);
    // x^2(x+1) -> not squarefree, not squarefull
    const MonicPoly f1 = poly_mul(poly_mul(unrank(2, 1, 0), unrank(2, 1, 0)),
                                  unrank(2, 1, 1));
    const Factorization fa = factorize(f1, table);
    CHECK(fa.mobius() == 0);
    CHECK_FALSE(fa.squarefree());
    CHECK_FALSE(fa.squarefull());
    // x(x+1)(x^2+x+1) -> squarefree with 3 primes
    const MonicPoly f2 = poly_mul(poly_mul(unrank(2, 1, 0), unrank(2, 1, 1)),
                                  unrank(2, 2, 3));
    const Factorization fb = factorize(f2, table);
    CHECK(fb.mobius() == -1);
    CHECK(fb.squarefree());
    CHECK(fb.distinct_primes() == 3);
    CHECK(fb.factor_count_with_multiplicity() == 3);
    CHECK(fb.smallest_prime_degree() == 1);
    CHECK(fb.largest_prime_degree() == 2);
    // x^2 (x+1)^3 -> squarefull
    MonicPoly f3 = one(2);
    for (int i = 0; i < 2; ++i) f3 = poly_mul(f3, unrank(2, 1, 0));
    for (int i = 0; i < 3; ++i) f3 = poly_mul(f3, unrank(2, 1, 1));
    CHECK(factorize(f3, table).squarefull());
}

TEST_CASE("factorization_type is the degree multiset") {
    SpfTable table(2, 6);
    // x(x+1)(x^2+x+1), type 2,1,1
    const MonicPoly f = poly_mul(poly_mul(unrank(2, 1, 0), unrank(2, 1, 1)),
                                 unrank(2, 2, 3));
    CHECK(factorization_type(f, table).to_string() == "2,1,1");
    CHECK(factorization_type(one(2), table).parts.empty());
}

TEST_CASE("ProductScanner enumerates exactly the multiples") {
    for (uint32_t p : {2u, 3u}) {
        SpfTable table(p, 7);
        for (uint64_t ra = 0; ra < ipow(p, 3); ++ra) {
            const MonicPoly a = unrank(p, 3, ra);
            const uint32_t m = 4;
            std::multiset<uint64_t> scanned;
            ProductScanner scan(a, m);
            do {
                CHECK(scan.product_degree() == 7);
                scanned.insert(scan.product_rank());
            } while (scan.next());
            CHECK(scanned.size() == ipow(p, m));
            std::multiset<uint64_t> direct;
            for (uint64_t rb = 0; rb < ipow(p, m); ++rb)
                direct.insert(rank_of(poly_mul(a, unrank(p, m, rb))));
            CHECK(scanned == direct);
        }
    }
}

TEST_CASE("entry budget is enforced") {
    CHECK_THROWS_AS(SpfTable(2, 20, 1000), ResourceError);
    CHECK_THROWS_AS(SpfTable(5, 12, 10), ResourceError);
    SpfTable ok(2, 10, 3000); // sum of 2^d for d <= 10 is 2047
    CHECK(ok.entries() == 2047);
}

TEST_CASE("is_irreducible trial budget is enforced") {
    // degree 40 would need ~2^20 trial divisors; a budget of 10 must refuse
    CHECK_THROWS_AS(is_irreducible(unrank(2, 40, 12345), 10), ResourceError);
}

TEST_SUITE_END();
