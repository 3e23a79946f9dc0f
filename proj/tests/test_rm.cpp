#include <gtest/gtest.h>

#include <set>

#include "bchlab/rm/rm_equiv.hpp"
#include "bchlab/wsearch/search.hpp"

using namespace bchlab;

TEST(RmLeaders, SelectionRule) {
    EXPECT_EQ(rm_coset_leaders(6, 2), (std::vector<int>{1, 3, 5, 7, 9, 11, 13, 21}));
    EXPECT_EQ(rm_coset_leaders(3, 1), (std::vector<int>{1}));
    for (int m = 2; m <= 8; ++m) EXPECT_TRUE(rm_coset_leaders(m, m - 1).empty());
    EXPECT_THROW((void)rm_coset_leaders(3, 3), Error);
    for (int m = 3; m <= 7; ++m)
        for (int r = 0; r < m; ++r) EXPECT_EQ(rm_bch_code(m, r, BinaryField::default_primitive_poly(m)).k(), rm_dimension(m, r)) << m << r;
}

TEST(RmPermutation, SmallFieldAndBijection) {
    const RmPermutation pi(BinaryField(3, 0xB));
    EXPECT_EQ(pi(5), 6);
    EXPECT_EQ(pi(1), 0);
    const std::vector<int> expect{-1, 0, 1, 3, 2, 6, 4, 5};
    for (int i = 1; i <= 7; ++i) EXPECT_EQ(pi(i), expect[static_cast<std::size_t>(i)]);
    for (int m = 2; m <= 8; ++m) {
        const RmPermutation p(BinaryField{m});
        std::set<int> img;
        for (int i = 1; i <= p.n(); ++i) {
            img.insert(p(i));
            EXPECT_EQ(p.inverse(p(i)), i);
        }
        EXPECT_EQ(static_cast<int>(img.size()), p.n());
        EXPECT_EQ(*img.begin(), 0);
        EXPECT_EQ(*img.rbegin(), p.n() - 1);
    }
}

TEST(ExtendAndPermute, OrderingParityAndRoundTrip) {
    const RmPermutation pi(BinaryField(3, 0xB));
    // single 1 at c_j lands at the position listed in (p, c0, c1, c3, c2, c6, c4, c5)
    const std::vector<int> order{0, 1, 3, 2, 6, 4, 5};
    for (int j = 1; j <= 7; ++j) {
        const auto v = extend_and_permute(CyclicWord::from_exponents(7, {order[static_cast<std::size_t>(j - 1)]}), pi);
        EXPECT_TRUE(v.test(0));
        EXPECT_TRUE(v.test(j));
        EXPECT_EQ(v.weight(), 2);
    }
    EXPECT_TRUE(extend_and_permute(CyclicWord(7), pi).is_zero());
    const auto code = rm_bch_code(6, 2, BinaryField::default_primitive_poly(6));
    const RmPermutation p6(code.field());
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        CyclicWord c(63);
        for (int j = 0; j < 63; ++j)
            if (rng() & 1) c.set(j);
        const auto v = extend_and_permute(c, p6);
        EXPECT_EQ(v.weight() % 2, 0);
        EXPECT_EQ(puncture_and_unpermute(v, p6), c);
    }
    EXPECT_THROW((void)extend_and_permute(CyclicWord(15), p6), Error);
}

TEST(RmCode, DimensionAndDistance) {
    for (int m = 2; m <= 6; ++m)
        for (int r = 0; r < m; ++r) {
            const auto rm = RmCode::make(r, m);
            EXPECT_EQ(rm.k(), rm_dimension(m, r));
            EXPECT_EQ(rm.generator().rank(), rm.k());
        }
    // exhaustive minimum weight of R(1,4) and R(2,4)
    for (int r : {1, 2}) {
        const auto rm = RmCode::make(r, 4);
        int best = 1 << 4;
        for (long long mask = 1; mask < (1LL << rm.k()); ++mask) {
            CyclicWord v(16);
            for (int i = 0; i < rm.k(); ++i)
                if (mask >> i & 1) v ^= rm.rows[static_cast<std::size_t>(i)];
            best = std::min(best, v.weight());
        }
        EXPECT_EQ(best, 1 << (4 - r));
    }
    // the punctured code is the BCH code, so its distance is 2^(m-r) - 1
    for (auto [m, r] : {std::pair{5, 1}, std::pair{6, 2}, std::pair{6, 3}, std::pair{6, 1}}) {
        const auto rep = min_weight_search(rm_bch_code(m, r, BinaryField::default_primitive_poly(m)));
        ASSERT_TRUE(rep.exhaustive);
        EXPECT_EQ(rep.min_weight, (1 << (m - r)) - 1) << m << " " << r;
    }
}

TEST(RmEquivalence, RowSpaces) {
    EXPECT_TRUE(verify_rm_equivalence(3, 1, 0xB));
    EXPECT_TRUE(verify_rm_equivalence(6, 2, BinaryField::default_primitive_poly(6)));
    EXPECT_EQ(rm_bch_code(6, 2, BinaryField::default_primitive_poly(6)).k(), 22);
    for (int m = 2; m <= 7; ++m)
        for (int r = 0; r < m; ++r) EXPECT_TRUE(verify_rm_equivalence(m, r, BinaryField::default_primitive_poly(m))) << m << r;
    // another primitive polynomial gives another permutation, still equivalent
    EXPECT_TRUE(verify_rm_equivalence(6, 2, 0x6D));
    EXPECT_TRUE(verify_rm_equivalence(3, 1, 0xD));
}

TEST(RmEquivalence, WrongPermutationIsDetected) {
    // the identity coordinate order is not an equivalence for R(1,4)
    const auto code = rm_bch_code(4, 1, BinaryField::default_primitive_poly(4));
    std::vector<CyclicWord> ext;
    for (const auto& row : code.systematic().rows) {
        CyclicWord v(16);
        if (row.weight() & 1) v.set(0);
        for (int j = 0; j < 15; ++j)
            if (row.test(j)) v.set(j + 1);
        ext.push_back(v);
    }
    EXPECT_FALSE(same_row_space(RmCode::rows_matrix(ext), RmCode::make(1, 4).generator()));
}

TEST(RmStar, Cyclic) {
    EXPECT_TRUE(verify_rmstar_cyclic(3, 1, 0xB, 16));
    EXPECT_TRUE(verify_rmstar_cyclic(6, 2, BinaryField::default_primitive_poly(6), 500));
    EXPECT_TRUE(verify_rmstar_cyclic(5, 2, BinaryField::default_primitive_poly(5), 1 << 16));
}

TEST(RmStar, GeneratorRoots) {
    const BinaryField f3(3, 0xB);
    EXPECT_EQ(poly_roots(rmstar_generator(3, 1, f3), f3), (std::vector<int>{1, 2, 4}));
    EXPECT_TRUE(verify_generator_roots(3, 1, 0xB));
    EXPECT_TRUE(verify_generator_roots(6, 2, BinaryField::default_primitive_poly(6)));
    // the generator equals the BCH generator from the coset rule
    for (int m = 3; m <= 7; ++m)
        for (int r = 0; r < m; ++r) {
            const BinaryField f{m};
            EXPECT_EQ(rmstar_generator(m, r, f), rm_bch_code(m, r, f.prim_poly()).generator()) << m << r;
        }
    for (int m = 2; m <= 10; ++m)
        for (int r = 0; r < m; ++r) EXPECT_TRUE(root_count_identity(m, r));
}
