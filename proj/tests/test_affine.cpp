#include <catch2/catch_amalgamated.hpp>

#include <coxtools/affine.hpp>

#include <random>
#include <set>

using namespace cox;

static QVec qv(std::vector<long> v) {
    QVec out;
    for (long x : v) out.push_back(Rational(x));
    return out;
}

TEST_CASE("root system catalog") {
    struct Row {
        const char* name;
        size_t count;
    };
    for (Row row : {Row{"A1", 2}, Row{"A2", 6}, Row{"A3", 12}, Row{"A4", 20}, Row{"B2", 8},
                    Row{"B3", 18}, Row{"C2", 8}, Row{"C3", 18}, Row{"D4", 24}, Row{"G2", 12}}) {
        auto d = cartan_catalog(row.name);
        CHECK(d.roots.size() == row.count);
        CHECK(d.pos_roots.size() == row.count / 2);
        CHECK(d.is_positive_root(d.highest));
        for (const auto& a : d.simples) CHECK(d.is_positive_root(a));
    }
    CHECK_THROWS_AS(cartan_catalog("E8"), std::invalid_argument);

    auto B2 = cartan_catalog("B2");
    CHECK(B2.highest == qv({1, 1}));
    CHECK(B2.coroot(qv({0, 1})) == qv({0, 2}));
}

TEST_CASE("affine systems construct with matching generator orders") {
    for (const char* name : {"At1", "At2", "Bt2", "Ct2", "Gt2"}) {
        AffineSystem W{name};
        CHECK(W.cox().rank() == W.rank() + 1);
        CHECK_FALSE(W.cox().is_finite());
    }
    CHECK_THROWS_AS(AffineSystem("A2"), std::invalid_argument);
}

TEST_CASE("affine reflections act correctly") {
    AffineSystem W("Bt2");
    // s_{alpha,k} v = v - ((v|alpha) - k) alpha^vee
    AffineElement s = W.reflection({qv({1, 0}), 1});
    CHECK(s.apply(qv({0, 0})) == qv({2, 0}));
    CHECK(s.apply(qv({1, 0})) == qv({1, 0}));
    CHECK(s * s == W.identity());

    auto r = W.as_reflection(s);
    REQUIRE(r.has_value());
    CHECK(r->root == qv({1, 0}));
    CHECK(r->k == 1);
    for (const auto& alpha : W.datum().pos_roots)
        for (long k = -2; k <= 2; ++k) {
            auto back = W.as_reflection(W.reflection({alpha, k}));
            REQUIRE(back.has_value());
            CHECK(back->root == alpha);
            CHECK(back->k == k);
        }
    CHECK_FALSE(W.as_reflection(W.from_word({0, 1})).has_value());
    CHECK_FALSE(W.as_reflection(W.identity()).has_value());
}

TEST_CASE("translation identity in the affine B2 group") {
    AffineSystem W("Bt2");
    QVec a1 = qv({1, -1}), a2 = qv({1, 0}), atil = qv({1, 1});
    AffineElement lhs = W.reflection({a1, 1}) * W.reflection({a1, 0}) * W.reflection({atil, 1}) *
                        W.reflection({atil, 0});
    AffineElement rhs = W.reflection({a2, 1}) * W.reflection({a2, 0});
    CHECK(lhs == rhs);
    CHECK(lhs == W.translation(qv({2, 0})));
    CHECK(lhs.is_translation());
    CHECK(W.length(lhs) == 6);
}

TEST_CASE("words, lengths, and the bridge to the Tits representation") {
    std::mt19937 rng(7);
    for (const char* name : {"At1", "At2", "Bt2", "Gt2"}) {
        AffineSystem W{name};
        std::uniform_int_distribution<int> gen(0, W.rank());
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> word;
            for (int i = 0; i < 12; ++i) word.push_back(gen(rng));
            AffineElement x = W.from_word(word);
            auto rw = W.reduced_word(x);
            CHECK(rw.size() <= word.size());
            CHECK(W.from_word(rw) == x);
            CHECK(W.to_cox(x) == W.cox().from_word(word));
            CHECK(W.from_cox(W.to_cox(x)) == x);
        }
        // homomorphism property of the bridge
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> wa, wb;
            for (int i = 0; i < 8; ++i) {
                wa.push_back(gen(rng));
                wb.push_back(gen(rng));
            }
            AffineElement x = W.from_word(wa), y = W.from_word(wb);
            CHECK(W.to_cox(x * y) == W.to_cox(x) * W.to_cox(y));
        }
    }
}

TEST_CASE("ellipticity") {
    AffineSystem W("Bt2");
    CHECK(W.is_elliptic(W.identity()));
    CHECK(W.is_elliptic(W.generator(0)));
    CHECK(W.is_elliptic(W.generator(2)));
    CHECK(W.is_elliptic(W.from_word({0, 1})));
    CHECK_FALSE(W.is_elliptic(W.translation(qv({2, 0}))));

    AffineSystem At1("At1");
    // product of two distinct affine reflections on a line is a translation
    CHECK_FALSE(At1.is_elliptic(At1.from_word({0, 1})));
}

TEST_CASE("projection to the finite quotient") {
    AffineSystem W("Bt2");
    AffineElement s = W.reflection({qv({1, 0}), 3});
    CHECK(W.project_p(s) == W.datum().reflection_matrix(qv({1, 0})));
    CHECK(W.project_p(W.translation(qv({2, 0}))) == Matrix<Rational>::identity(2));
}

TEST_CASE("generation of the whole affine group") {
    AffineSystem W("Bt2");
    QVec a1 = qv({1, -1}), a2 = qv({0, 1}), atil = qv({1, 1});
    CHECK(W.generates_whole({{a1, 0}, {a2, 0}, {atil, 1}}));
    // no translations at all
    CHECK_FALSE(W.generates_whole({{a1, 0}, {a2, 0}}));
    // long roots only: the linear parts generate a proper reflection subgroup
    CHECK_FALSE(W.generates_whole({{a1, 0}, {a1, 1}, {atil, 0}, {atil, 1}}));
    // doubled level: translation kernel has index > 1
    CHECK_FALSE(W.generates_whole({{a1, 0}, {a2, 0}, {atil, 2}}));

    for (const char* name : {"At1", "At2", "Ct2", "Gt2"}) {
        AffineSystem A{name};
        std::vector<AffineReflection> gens;
        for (const auto& s : A.datum().simples) gens.push_back({s, 0});
        gens.push_back({A.datum().highest, 1});
        CHECK(A.generates_whole(gens));
        gens.pop_back();
        CHECK_FALSE(A.generates_whole(gens));
    }
}

TEST_CASE("reflection conjugacy classes") {
    AffineSystem B("Bt2");
    std::set<std::string> keys;
    for (const auto& alpha : B.datum().pos_roots)
        for (long k = -3; k <= 3; ++k) keys.insert(B.class_key({alpha, k}));
    CHECK(keys.size() == 3);

    AffineSystem A("At2");
    keys.clear();
    for (const auto& alpha : A.datum().pos_roots)
        for (long k = -3; k <= 3; ++k) keys.insert(A.class_key({alpha, k}));
    CHECK(keys.size() == 1);

    AffineSystem G("Gt2");
    keys.clear();
    for (const auto& alpha : G.datum().pos_roots)
        for (long k = -3; k <= 3; ++k) keys.insert(G.class_key({alpha, k}));
    CHECK(keys.size() == 2);

    // invariance under conjugation
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> gen(0, B.rank());
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> word;
        for (int i = 0; i < 10; ++i) word.push_back(gen(rng));
        AffineElement w = B.from_word(word);
        AffineReflection r{B.datum().pos_roots[static_cast<size_t>(trial) % 4],
                           static_cast<long>(trial % 5) - 2};
        auto conj = B.as_reflection(w * B.reflection(r) * w.inverse());
        REQUIRE(conj.has_value());
        CHECK(B.class_key(*conj) == B.class_key(r));
    }
}

TEST_CASE("affine parabolic closure") {
    AffineSystem W("Bt2");
    auto whole = W.parabolic_closure({W.translation(qv({2, 0}))});
    CHECK(whole.whole);

    auto single = W.parabolic_closure({W.reflection({qv({1, -1}), 0})});
    CHECK_FALSE(single.whole);
    CHECK(single.rank == 1);
    REQUIRE(single.reflections.size() == 1);
    CHECK(single.reflections[0] == W.reflection({qv({1, -1}), 0}));

    auto hyper = W.parabolic_closure({W.reflection({qv({1, 1}), 1})});
    CHECK(hyper.rank == 1);
    CHECK(hyper.reflections.size() == 1);

    // a rotation about the origin is contained in the finite copy of B2
    auto rot = W.parabolic_closure({W.from_word({0, 1})});
    CHECK_FALSE(rot.whole);
    CHECK(rot.rank == 2);
    CHECK(rot.reflections.size() == 4);

    // rotation about the lattice point e1 + e2: again a full B2 copy
    AffineElement t = W.translation(qv({1, 1}));
    auto shifted = W.parabolic_closure({t * W.from_word({0, 1}) * t.inverse()});
    CHECK(shifted.rank == 2);
    CHECK(shifted.reflections.size() == 4);

    CHECK(W.parabolic_closure({}).rank == 0);
    CHECK(W.parabolic_closure({W.identity()}).reflections.empty());
}

TEST_CASE("reduced reflection factorizations of elliptic elements") {
    AffineSystem W("Bt2");
    auto R = W.red_T(W.from_word({0, 1}));
    CHECK(!R.empty());
    Element target = W.to_cox(W.from_word({0, 1}));
    for (const auto& f : R) {
        REQUIRE(f.size() == 2);
        CHECK(f[0] * f[1] == target);
    }
    CHECK(W.red_T(W.identity()) == std::vector<std::vector<Element>>{{}});
    CHECK(W.red_T(W.generator(0)).size() == 1);
    CHECK_THROWS_AS(W.red_T(W.translation(qv({2, 0}))), std::runtime_error);
}
