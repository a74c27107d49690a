#include <doctest.h>

#include "kzero/root_datum.hpp"

#include <random>
#include <set>

using namespace kzero;

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

std::vector<RootDatum> all_fixtures() {
    std::vector<RootDatum> out;
    for (const auto& n : fixtures::names()) out.push_back(*fixtures::by_name(n));
    return out;
}

}  // namespace

TEST_CASE("validate_root_datum") {
    CHECK(validate_root_datum({1, {v({2})}, {v({1})}, "SL2"}).ok);

    Verdict bad_diag = validate_root_datum({1, {v({3})}, {v({1})}, ""});
    CHECK_FALSE(bad_diag.ok);
    CHECK(bad_diag.axiom == "Cartan diagonal");

    // affine A1^(1): Cartan [[2,-2],[-2,2]], independent roots and coroots in Z^3
    Verdict affine = validate_root_datum(
        {3, {v({1, 0, 0}), v({0, 1, 0})}, {v({2, -2, 1}), v({-2, 2, 1})}, "affine"});
    CHECK_FALSE(affine.ok);
    CHECK(affine.axiom == "finite type");
    CHECK(affine.detail.find("{0,1}") != std::string::npos);

    CHECK(validate_root_datum({2, {}, {}, "T2"}).ok);
    CHECK_FALSE(validate_root_datum({2, {v({1})}, {v({2, 0})}, ""}).ok);
    CHECK_THROWS_AS(RootDatum({1, {v({3})}, {v({1})}, ""}), InvalidRootDatum);
}

TEST_CASE("is_dominant") {
    CHECK(is_dominant(fixtures::sl2(), v({3})));
    CHECK_FALSE(is_dominant(fixtures::sl2(), v({-1})));
    CHECK_FALSE(is_dominant(fixtures::gl2(), v({2, 5})));
    CHECK(is_dominant(fixtures::torus(2), v({-4, 7})));
}

TEST_CASE("dominance_leq examples") {
    auto sl2 = fixtures::sl2();
    CHECK(dominance_leq(sl2, v({1}), v({3})));
    CHECK_FALSE(dominance_leq(sl2, v({0}), v({3})));
    CHECK(dominance_leq(fixtures::sl3(), v({0, 0}), v({1, 1})));
    // difference outside the span of the roots
    CHECK_FALSE(dominance_leq(fixtures::gl2(), v({0, 0}), v({1, 0})));
    CHECK(dominance_leq(fixtures::gl2(), v({0, 0}), v({1, -1})));
}

TEST_CASE("Weyl group orders by closure") {
    CHECK(weyl_group(fixtures::sl2()).order() == 2);
    CHECK(weyl_group(fixtures::sl3()).order() == 6);
    CHECK(weyl_group(fixtures::sp4()).order() == 8);
    CHECK(weyl_group(fixtures::g2()).order() == 12);
    CHECK(weyl_group(fixtures::torus(2)).order() == 1);
    CHECK_THROWS_AS(weyl_group(fixtures::g2(), 5), WeylClosureOverflow);
    for (const auto& g : weyl_group(fixtures::g2()).generators) CHECK(g * g == IntMatrix::identity(2));
}

TEST_CASE("orbits and dominant representatives") {
    auto sl3 = fixtures::sl3();
    CHECK(orbit(fixtures::sl2(), v({3})) == std::vector<Weight>{v({-3}), v({3})});
    CHECK(orbit(sl3, v({1, 0})).size() == 3);
    CHECK(orbit(fixtures::g2(), v({0, 0})) == std::vector<Weight>{v({0, 0})});

    CHECK(dominant_representative(fixtures::sl2(), v({-3})) == v({3}));
    // brute force: the unique dominant element of the orbit
    for (const auto& w : {v({-1, 1}), v({2, -3}), v({-4, -1})}) {
        std::vector<Weight> dom;
        for (const auto& x : orbit(sl3, w))
            if (is_dominant(sl3, x)) dom.push_back(x);
        REQUIRE(dom.size() == 1);
        CHECK(dominant_representative(sl3, w) == dom[0]);
    }
    CHECK(dominant_representative(sl3, v({2, 1})) == v({2, 1}));
}

TEST_CASE("root system sizes") {
    CHECK(fixtures::sl3().positive_roots().size() == 3);
    CHECK(fixtures::sp4().positive_roots().size() == 4);
    CHECK(fixtures::g2().positive_roots().size() == 6);
    CHECK(fixtures::g2().positive_coroots().size() == 6);
    CHECK(fixtures::sl2().two_rho() == v({2}));
    CHECK(fixtures::pgl2().two_rho() == v({1}));
}

TEST_CASE("root_data_isomorphic") {
    CHECK(root_data_isomorphic(fixtures::sl2(), fixtures::sl2()).has_value());
    CHECK_FALSE(root_data_isomorphic(fixtures::sl2(), fixtures::pgl2()).has_value());
    CHECK_FALSE(root_data_isomorphic(fixtures::sl3(), fixtures::pgl3()).has_value());
    CHECK_FALSE(root_data_isomorphic(fixtures::sp4(), fixtures::so5()).has_value());
    CHECK(root_data_isomorphic(fixtures::torus(2), fixtures::torus(2)).has_value());
    CHECK_FALSE(root_data_isomorphic(fixtures::torus(2), fixtures::torus(1)).has_value());

    // SL3 with swapped simple-root order
    auto sl3 = fixtures::sl3();
    RootDatumData swapped{2, {sl3.simple_roots()[1], sl3.simple_roots()[0]},
                          {sl3.simple_coroots()[1], sl3.simple_coroots()[0]}, "SL3'"};
    auto iso = root_data_isomorphic(sl3, RootDatum(swapped));
    REQUIRE(iso.has_value());
    RootDatum swapped_d(swapped);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(iso->weight_map.apply(swapped_d.simple_roots()[j]) == sl3.simple_roots()[iso->permutation[j]]);
        CHECK(iso->coweight_map.apply(swapped_d.simple_coroots()[j]) ==
              sl3.simple_coroots()[iso->permutation[j]]);
    }

    // GL2 in a skewed basis of Z^2
    IntMatrix g = IntMatrix::from_rows({{2, 1}, {1, 1}}, 2);
    auto gl2 = fixtures::gl2();
    auto ginv_t = unimodular_inverse(g)->transposed();
    RootDatum skewed({2, {g.apply(gl2.simple_roots()[0])}, {ginv_t.apply(gl2.simple_coroots()[0])}, ""});
    auto giso = root_data_isomorphic(gl2, skewed);
    REQUIRE(giso.has_value());
    CHECK(giso->weight_map.apply(skewed.simple_roots()[0]) == gl2.simple_roots()[0]);
    CHECK_FALSE(root_data_isomorphic(gl2, fixtures::sl2_x_pgl2()).has_value());
}

TEST_CASE("property: Weyl group permutes roots, orbit sizes divide |W|") {
    for (const auto& d : all_fixtures()) {
        auto w = weyl_group(d);
        std::set<Weight> roots;
        for (const auto& a : d.positive_roots()) {
            roots.insert(a);
            roots.insert(negate(a));
        }
        for (const auto& g : w.elements) {
            std::set<Weight> image;
            for (const auto& a : roots) image.insert(g.apply(a));
            CHECK(image == roots);
        }
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b) {
                Weight x = d.rank() == 1 ? v({a}) : v({a, b});
                CHECK(w.order() % orbit(d, x).size() == 0);
            }
    }
}

TEST_CASE("property: dominance is a partial order and w mu <= mu") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (const auto& name : {"SL3", "Sp4", "G2", "GL2"}) {
        auto d = *fixtures::by_name(name);
        auto rnd = [&] { return v({coord(rng), coord(rng)}); };
        for (int t = 0; t < 300; ++t) {
            Weight a = rnd(), b = rnd(), c = rnd();
            CHECK(dominance_leq(d, a, a));
            if (a != b) CHECK_FALSE((dominance_leq(d, a, b) && dominance_leq(d, b, a)));
            if (dominance_leq(d, a, b) && dominance_leq(d, b, c)) CHECK(dominance_leq(d, a, c));
        }
        for (long a = 0; a <= 3; ++a)
            for (long b = 0; b <= 3; ++b) {
                Weight mu = v({a, b});
                if (!is_dominant(d, mu)) continue;
                for (const auto& x : orbit(d, mu)) CHECK(dominance_leq(d, x, mu));
            }
    }
}
