#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kfb/constructors.hpp"
#include "kfb/invariants.hpp"

using namespace kfb;

namespace {

// Reverse oracle: the claimed quotient times the denominator must reproduce
// (t^{pq}-1)(t-1) exactly in Z[t].
void check_torus_alexander(int p, int q, const AlexPoly& a) {
    const int genus = (p - 1) * (q - 1) / 2;
    std::vector<long long> quot(2 * genus + 1, 0);
    for (const auto& term : a.terms()) quot[term.exponent + genus] = term.sign;

    auto mul = [](const std::vector<long long>& x, const std::vector<long long>& y) {
        std::vector<long long> out(x.size() + y.size() - 1, 0);
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
        return out;
    };
    auto cyc = [](int n) {
        std::vector<long long> v(n + 1, 0);
        v[0] = -1;
        v[n] = 1;
        return v;
    };
    auto lhs = mul(mul(quot, cyc(p)), cyc(q));
    auto rhs = mul(cyc(p * q), cyc(1));
    REQUIRE(lhs == rhs);
}

} // namespace

TEST_CASE("torus Alexander polynomials match the exact division oracle") {
    AlexPoly t23 = torus_alexander(2, 3);
    CHECK(t23.terms() == std::vector<AlexTerm>{{1, 1}, {0, -1}, {-1, 1}});
    check_torus_alexander(2, 3, t23);

    AlexPoly t34 = torus_alexander(3, 4);
    CHECK(t34.terms() ==
          std::vector<AlexTerm>{{3, 1}, {2, -1}, {0, 1}, {-2, -1}, {-3, 1}});
    check_torus_alexander(3, 4, t34);

    AlexPoly t25 = torus_alexander(2, 5);
    CHECK(t25.terms() ==
          std::vector<AlexTerm>{{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}});
    check_torus_alexander(2, 5, t25);

    for (auto [p, q] : {std::pair{2, 7}, {3, 5}, {4, 5}, {3, 7}, {5, 6}})
        check_torus_alexander(p, q, torus_alexander(p, q));

    CHECK_THROWS_AS(torus_alexander(2, 4), InputError);
    CHECK_THROWS_AS(torus_alexander(1, 3), InputError);
}

TEST_CASE("AlexPoly invariants are enforced") {
    CHECK_THROWS_AS(AlexPoly::from_terms({{1, 1}, {0, 1}, {-1, 1}}), InputError);
    CHECK_THROWS_AS(AlexPoly::from_terms({{1, 1}, {0, -1}}), InputError);
    CHECK_THROWS_AS(AlexPoly::from_terms({{1, 1}, {0, -1}, {-2, 1}}), InputError);
    CHECK_THROWS_AS(AlexPoly::from_terms({}), InputError);
}

TEST_CASE("staircase of the trefoil is the three-generator model") {
    FilteredComplex c = staircase_torus(2, 3);
    CHECK(write_cfk(c) ==
          "symmetric\n"
          "gen x0 1 0\n"
          "gen x1 0 -1\n"
          "gen x2 -1 -2\n"
          "d x1 = U^1 x0 + x2\n");
    CHECK(tau(c) == 1);
    CHECK(torsion_order(c).ord == 1);
}

TEST_CASE("staircase of the unknot polynomial is a single generator") {
    FilteredComplex c = staircase_from_alexander(AlexPoly::from_terms({{0, 1}}));
    CHECK(c.size() == 1);
    CHECK(c.arrows().empty());
    CHECK(validate(c).ok());
}

TEST_CASE("staircases validate, are symmetric, and hit the torus formulas") {
    for (auto [p, q] :
         {std::pair{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {4, 5}}) {
        FilteredComplex c = staircase_torus(p, q);
        CHECK(validate(c).ok());
        CHECK(find_symmetry(c).has_value());
        CHECK(tau(c) == (p - 1) * (q - 1) / 2);
        CHECK(torsion_order(c).ord == std::min(p, q) - 1);
    }
    FilteredComplex t34 = staircase_torus(3, 4);
    CHECK(t34.size() == 5);
}

TEST_CASE("tensor product: unit, additivity, closure under d^2 = 0") {
    FilteredComplex tr = staircase_torus(2, 3);
    FilteredComplex u = staircase_from_alexander(AlexPoly::from_terms({{0, 1}}));

    FilteredComplex tu = tensor_product(tr, u);
    CHECK(tu.size() == 3);
    CHECK(tau(tu) == 1);
    CHECK(torsion_order(tu).ord == 1);
    // isomorphic copy: identical gradings and arrow structure entrywise
    for (int g = 0; g < 3; ++g) {
        CHECK(tu.gen(g).alexander == tr.gen(g).alexander);
        CHECK(tu.gen(g).maslov == tr.gen(g).maslov);
    }
    CHECK(tu.arrows() == tr.arrows());

    FilteredComplex sq = tensor_product(tr, tr);
    CHECK(sq.size() == 9);
    CHECK(tau(sq) == 2);

    // tau additivity on staircase pairs
    for (auto [a, b] : {std::pair{std::pair{2, 3}, std::pair{3, 4}},
                        {std::pair{2, 5}, std::pair{2, 3}},
                        {std::pair{3, 4}, std::pair{3, 5}}}) {
        FilteredComplex c1 = staircase_torus(a.first, a.second);
        FilteredComplex c2 = staircase_torus(b.first, b.second);
        CHECK(tau(tensor_product(c1, c2)) == tau(c1) + tau(c2));
    }

    // d^2 = 0 (and all other laws) on random bundled pairs
    std::vector<FilteredComplex> pool;
    for (const auto& label : bundled_labels()) pool.push_back(load_bundled(label));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& c1 = pool[rng() % pool.size()];
        const auto& c2 = pool[rng() % pool.size()];
        CHECK(validate(tensor_product(c1, c2)).ok());
    }
}

TEST_CASE("bundled library loads, validates, and matches the constructors") {
    CHECK(load_bundled("unknot").size() == 1);
    CHECK(load_bundled("T(3,4)").size() == 5);

    FilteredComplex t45 = load_bundled("T(4,5)");
    CHECK(t45.size() == 7);
    CHECK(tau(t45) == 6);
    CHECK(torsion_order(t45).ord == 3);

    CHECK_THROWS_AS(load_bundled("T(9,9)"), InputError);

    // shipped files agree with staircase_from_alexander bit for bit
    for (auto [label, p, q] : {std::tuple{"T(2,3)", 2, 3},
                               {"T(2,5)", 2, 5},
                               {"T(2,7)", 2, 7},
                               {"T(3,4)", 3, 4},
                               {"T(3,5)", 3, 5},
                               {"T(4,5)", 4, 5}}) {
        CHECK(write_cfk(load_bundled(label)) == write_cfk(staircase_torus(p, q)));
    }
    CHECK(write_cfk(load_bundled("tt(3,4;2,1)")) == write_cfk(staircase_torus(3, 5)));
    CHECK(write_cfk(load_bundled("tt(4,5;3,0)")) == write_cfk(staircase_torus(4, 5)));
}
