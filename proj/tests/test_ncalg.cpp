#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrs/ncalg.hpp"

#include <random>
#include <set>

using namespace qrs;

namespace {

Algebra generic(int n) { return Algebra(make_spec(n, Regime::generic)); }

Word W(std::initializer_list<std::pair<int, int>> letters, Copy copy = Copy::left) {
    Word w;
    for (auto [r, c] : letters) w.push_back(make_letter(r, c, copy));
    return w;
}

NCPoly rand_poly(const Algebra& alg, std::mt19937_64& rng, int max_len, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms), len(0, max_len),
        idx(1, alg.n()), coefd(-3, 3);
    NCPoly p = alg.zero();
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Word w;
        int L = len(rng);
        for (int i = 0; i < L; ++i) w.push_back(make_letter(idx(rng), idx(rng)));
        int c = coefd(rng);
        if (c == 0) c = 1;
        p.add_term(w, alg.scalar(c));
    }
    return p;
}

} // namespace

TEST_CASE("rewrite_pair reproduces the defining relations") {
    Algebra alg = generic(2);
    const RatFunc one = alg.scalar_one();

    // a12 * a11 -> r^-1 a11 a12
    NCPoly p = alg.rewrite_pair(Letter{Copy::left, 1, 2}, Letter{Copy::left, 1, 1});
    CHECK(p.term_count() == 1);
    CHECK(p.coeff(W({{1, 1}, {1, 2}})) == alg.r().reciprocal());

    // a21 * a12 -> r s a12 a21
    p = alg.rewrite_pair(Letter{Copy::left, 2, 1}, Letter{Copy::left, 1, 2});
    CHECK(p.term_count() == 1);
    CHECK(p.coeff(W({{1, 2}, {2, 1}})) == alg.r() * alg.s());

    // a21 * a11 -> s a11 a21
    p = alg.rewrite_pair(Letter{Copy::left, 2, 1}, Letter{Copy::left, 1, 1});
    CHECK(p.coeff(W({{1, 1}, {2, 1}})) == alg.s());

    // a22 * a11 -> a11 a22 - (r - s) a12 a21
    p = alg.rewrite_pair(Letter{Copy::left, 2, 2}, Letter{Copy::left, 1, 1});
    CHECK(p.term_count() == 2);
    CHECK(p.coeff(W({{1, 1}, {2, 2}})) == one);
    CHECK(p.coeff(W({{1, 2}, {2, 1}})) == -(alg.r() - alg.s()));

    CHECK_THROWS_AS(alg.rewrite_pair(Letter{Copy::left, 1, 1}, Letter{Copy::left, 2, 2}),
                    std::logic_error);
}

TEST_CASE("normalize: frozen desk examples") {
    Algebra alg = generic(2);

    // a12 a11 -> r^-1 a11 a12
    NCPoly p = alg.normal_form(W({{1, 2}, {1, 1}}));
    CHECK(p.term_count() == 1);
    CHECK(p.coeff(W({{1, 1}, {1, 2}})) == alg.r().reciprocal());

    // a22 a11 a11: value pinned by two independent strategies below;
    // the agreed coefficients are a11a11a22 with 1 and a11a12a21 with -(r^2-s^2)/r.
    Word w = W({{2, 2}, {1, 1}, {1, 1}});
    NCPoly nf = alg.normal_form(w);
    NCPoly raw = alg.zero();
    raw.add_term(w, alg.scalar_one());
    NCPoly left = alg.normalize_with_strategy(raw, RewriteStrategy::leftmost);
    NCPoly right = alg.normalize_with_strategy(raw, RewriteStrategy::rightmost);
    CHECK(left == right);
    CHECK(nf == left);
    CHECK(nf.term_count() == 2);
    CHECK(nf.coeff(W({{1, 1}, {1, 1}, {2, 2}})) == alg.scalar_one());
    RatFunc expected = -(alg.r() * alg.r() - alg.s() * alg.s()) / alg.r();
    CHECK(nf.coeff(W({{1, 1}, {1, 2}, {2, 1}})) == expected);

    // the mixed-index relation itself normalizes to zero
    NCPoly rel = alg.zero();
    rel.add_term(W({{1, 1}, {2, 2}}), alg.scalar_one());
    rel.add_term(W({{2, 2}, {1, 1}}), -alg.scalar_one());
    rel.add_term(W({{1, 2}, {2, 1}}), -(alg.r() - alg.s()));
    CHECK(alg.normalize(rel).is_zero());
}

TEST_CASE("nc_mul basics") {
    Algebra alg = generic(2);
    NCPoly a11 = alg.generator(1, 1), a12 = alg.generator(1, 2), a22 = alg.generator(2, 2);

    NCPoly p = alg.mul(a11, a12);
    CHECK(p.term_count() == 1);
    CHECK(p.coeff(W({{1, 1}, {1, 2}})) == alg.scalar_one());

    // (a11 + a22) * a11 = a11 a11 + a11 a22 - (r-s) a12 a21
    NCPoly q = alg.mul(a11 + a22, a11);
    CHECK(q.term_count() == 3);
    CHECK(q.coeff(W({{1, 1}, {1, 1}})) == alg.scalar_one());
    CHECK(q.coeff(W({{1, 1}, {2, 2}})) == alg.scalar_one());
    CHECK(q.coeff(W({{1, 2}, {2, 1}})) == -(alg.r() - alg.s()));

    CHECK(alg.mul(p, alg.zero()).is_zero());

    Algebra other = generic(3);
    CHECK_THROWS_AS(alg.mul(a11, other.generator(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(a11 + other.generator(1, 1), std::invalid_argument);
}

TEST_CASE("all four relation families normalize to zero for n <= 4") {
    for (int n = 2; n <= 4; ++n) {
        Algebra alg = generic(n);
        const RatFunc one = alg.scalar_one();
        auto word2 = [](int r1, int c1, int r2, int c2) {
            Word w;
            w.push_back(make_letter(r1, c1));
            w.push_back(make_letter(r2, c2));
            return w;
        };
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = k + 1; l <= n; ++l) {
                        NCPoly rel = alg.zero();
                        // a_ik a_il = r a_il a_ik
                        rel.add_term(word2(i, k, i, l), one);
                        rel.add_term(word2(i, l, i, k), -alg.r());
                        CHECK(alg.normalize(rel).is_zero());
                        // a_ik a_jk = s^-1 a_jk a_ik
                        rel = alg.zero();
                        rel.add_term(word2(i, k, j, k), one);
                        rel.add_term(word2(j, k, i, k), -alg.s().reciprocal());
                        CHECK(alg.normalize(rel).is_zero());
                        // r a_il a_jk = s^-1 a_jk a_il
                        rel = alg.zero();
                        rel.add_term(word2(i, l, j, k), alg.r());
                        rel.add_term(word2(j, k, i, l), -alg.s().reciprocal());
                        CHECK(alg.normalize(rel).is_zero());
                        // a_ik a_jl - a_jl a_ik = (r-s) a_il a_jk
                        rel = alg.zero();
                        rel.add_term(word2(i, k, j, l), one);
                        rel.add_term(word2(j, l, i, k), -one);
                        rel.add_term(word2(i, l, j, k), -(alg.r() - alg.s()));
                        CHECK(alg.normalize(rel).is_zero());
                    }
    }
}

TEST_CASE("normalization terminates on random degree-6 inputs for n <= 4") {
    std::mt19937_64 rng(2024);
    for (int n = 2; n <= 4; ++n) {
        Algebra alg = generic(n);
        for (int trial = 0; trial < 20; ++trial) {
            NCPoly p = rand_poly(alg, rng, 6, 3);
            NCPoly nf = alg.normalize(p);
            for (const auto& [w, c] : nf.terms()) CHECK(word_is_normal(w));
        }
    }
}

TEST_CASE("confluence: three strategies agree on random inputs at n = 3") {
    std::mt19937_64 rng(4711);
    Algebra alg = generic(3);
    for (int trial = 0; trial < 60; ++trial) {
        NCPoly p = rand_poly(alg, rng, 5, 3);
        NCPoly a = alg.normalize_with_strategy(p, RewriteStrategy::leftmost);
        NCPoly b = alg.normalize_with_strategy(p, RewriteStrategy::rightmost);
        NCPoly c = alg.normalize_with_strategy(p, RewriteStrategy::random_descent, trial);
        CHECK(a == b);
        CHECK(a == c);
        CHECK(a == alg.normalize(p));   // production path agrees
    }
}

TEST_CASE("normalize is idempotent and a homomorphism") {
    std::mt19937_64 rng(99);
    Algebra alg = generic(3);
    for (int trial = 0; trial < 30; ++trial) {
        NCPoly u = rand_poly(alg, rng, 3, 2), v = rand_poly(alg, rng, 3, 2);
        NCPoly nu = alg.normalize(u);
        CHECK(alg.normalize(nu) == nu);
        CHECK(alg.mul(u, v) == alg.mul(alg.normalize(u), alg.normalize(v)));
    }
}

TEST_CASE("rewriting preserves the degree grading") {
    std::mt19937_64 rng(31337);
    Algebra alg = generic(3);
    for (int trial = 0; trial < 30; ++trial) {
        NCPoly p = rand_poly(alg, rng, 5, 3);
        std::set<std::size_t> in_lengths;
        for (const auto& [w, c] : p.terms()) in_lengths.insert(w.size());
        NCPoly nf = alg.normalize(p);
        for (const auto& [w, c] : nf.terms()) CHECK(in_lengths.count(w.size()) == 1);
    }
}

TEST_CASE("coproduct on generators and the unit") {
    Algebra alg = generic(2);
    const Algebra& T = alg.tensor_algebra();

    NCPoly d = alg.coproduct(alg.generator(1, 1));
    CHECK(d.term_count() == 2);
    Word w1, w2;
    w1.push_back(make_letter(1, 1, Copy::left));
    w1.push_back(make_letter(1, 1, Copy::right));
    w2.push_back(make_letter(1, 2, Copy::left));
    w2.push_back(make_letter(2, 1, Copy::right));
    CHECK(d.coeff(w1) == T.scalar_one());
    CHECK(d.coeff(w2) == T.scalar_one());

    CHECK(alg.coproduct(alg.one()) == T.one());
}

TEST_CASE("coproduct of the n=2 row determinant is group-like") {
    Algebra alg = generic(2);
    const Algebra& T = alg.tensor_algebra();

    // rdet = a11 a22 - r a12 a21
    NCPoly det = alg.mul(alg.generator(1, 1), alg.generator(2, 2)) -
                 alg.mul(alg.generator(1, 2), alg.generator(2, 1)).scaled(alg.r());
    NCPoly detL = T.mul(T.generator(1, 1, Copy::left), T.generator(2, 2, Copy::left)) -
                  T.mul(T.generator(1, 2, Copy::left), T.generator(2, 1, Copy::left)).scaled(T.r());
    NCPoly detR = T.mul(T.generator(1, 1, Copy::right), T.generator(2, 2, Copy::right)) -
                  T.mul(T.generator(1, 2, Copy::right), T.generator(2, 1, Copy::right)).scaled(T.r());
    CHECK(alg.coproduct(det) == T.mul(detL, detR));
}

TEST_CASE("coproduct is an algebra map on random small inputs at n = 2") {
    std::mt19937_64 rng(555);
    Algebra alg = generic(2);
    const Algebra& T = alg.tensor_algebra();
    for (int trial = 0; trial < 15; ++trial) {
        NCPoly p = rand_poly(alg, rng, 2, 2), q = rand_poly(alg, rng, 2, 2);
        CHECK(alg.coproduct(alg.mul(p, q)) == T.mul(alg.coproduct(p), alg.coproduct(q)));
    }
}

TEST_CASE("counit") {
    Algebra alg = generic(3);
    CHECK(alg.counit(alg.generator(1, 2)).is_zero());
    CHECK(alg.counit(alg.mul(alg.generator(1, 1), alg.generator(2, 2))).is_one());

    // counit of the n=3 row determinant: only the identity permutation survives
    NCPoly det = alg.zero();
    int perm[3];
    std::vector<std::array<int, 3>> perms = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                             {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    std::vector<int> inv = {0, 1, 1, 2, 2, 3};
    for (std::size_t k = 0; k < perms.size(); ++k) {
        Word w;
        for (int i = 0; i < 3; ++i) {
            perm[i] = perms[k][i];
            w.push_back(make_letter(i + 1, perm[i]));
        }
        det.add_term(w, (-alg.r()).pow(inv[k]));
    }
    det = alg.normalize(det);
    CHECK(alg.counit(det).is_one());
}

TEST_CASE("counit axiom on generators: (eps ox id) o Delta = id = (id ox eps) o Delta") {
    Algebra alg = generic(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            NCPoly d = alg.coproduct(alg.generator(i, j));
            NCPoly left_applied = alg.zero();    // eps on left copy
            NCPoly right_applied = alg.zero();   // eps on right copy
            for (const auto& [w, c] : d.terms()) {
                Word lpart, rpart;
                for (LetterCode lc : w) {
                    Letter l = decode_letter(lc);
                    (l.copy == Copy::left ? lpart : rpart).push_back(lc);
                }
                bool ldiag = true, rdiag = true;
                for (LetterCode lc : lpart) {
                    Letter l = decode_letter(lc);
                    if (l.row != l.col) ldiag = false;
                }
                for (LetterCode lc : rpart) {
                    Letter l = decode_letter(lc);
                    if (l.row != l.col) rdiag = false;
                }
                if (ldiag) {
                    Word downgraded;
                    for (LetterCode lc : rpart) {
                        Letter l = decode_letter(lc);
                        downgraded.push_back(make_letter(l.row, l.col, Copy::left));
                    }
                    left_applied.add_term(downgraded, c);
                }
                if (rdiag) right_applied.add_term(lpart, c);
            }
            left_applied = NCPoly(alg.spec_ptr()) + left_applied.scaled(alg.scalar_one());
            CHECK(left_applied.coeff(W({{i, j}})) == alg.scalar_one());
            CHECK(left_applied.term_count() == 1);
            CHECK(right_applied.coeff(W({{i, j}})) == alg.scalar_one());
            CHECK(right_applied.term_count() == 1);
        }
}

TEST_CASE("free algebra performs no rewriting") {
    AlgebraSpec sp = make_spec(2, Regime::generic);
    sp.relations = RelationSet::free_algebra;
    Algebra alg(sp);
    Word w = W({{2, 2}, {1, 1}});
    NCPoly p = alg.normal_form(w);
    CHECK(p.term_count() == 1);
    CHECK(p.coeff(w) == alg.scalar_one());
}

TEST_CASE("corrupt rewrite hook breaks the mixed-index relation") {
    AlgebraSpec sp = make_spec(2, Regime::generic);
    sp.corrupt_rewrite = true;
    Algebra alg(sp);
    NCPoly rel = alg.zero();
    rel.add_term(W({{1, 1}, {2, 2}}), alg.scalar_one());
    rel.add_term(W({{2, 2}, {1, 1}}), -alg.scalar_one());
    rel.add_term(W({{1, 2}, {2, 1}}), -(alg.r() - alg.s()));
    CHECK(!alg.normalize(rel).is_zero());
}

TEST_CASE("deterministic rendering") {
    Algebra alg = generic(2);
    NCPoly det = alg.mul(alg.generator(1, 1), alg.generator(2, 2)) -
                 alg.mul(alg.generator(1, 2), alg.generator(2, 1)).scaled(alg.r());
    CHECK(det.to_string() == "a11*a22 - r*a12*a21");
    CHECK(alg.zero().to_string() == "0");
    CHECK(alg.one().to_string() == "1");

    NCPoly d = alg.coproduct(alg.generator(1, 1));
    CHECK(d.to_string() == "L11*R11 + L12*R21");
}

TEST_CASE("word serialization triples") {
    Word w = W({{1, 2}});
    w.push_back(make_letter(2, 1, Copy::right));
    auto t = word_triples(w);
    REQUIRE(t.size() == 2);
    CHECK(t[0] == std::array<int, 3>{0, 1, 2});
    CHECK(t[1] == std::array<int, 3>{1, 2, 1});
}

TEST_CASE("letter names switch to bracket form past index 9") {
    CHECK(letter_name(make_letter(1, 2)) == "a12");
    CHECK(letter_name(make_letter(12, 3)) == "a[12,3]");
    CHECK(letter_name(make_letter(1, 2, Copy::right), Flavor::tensor_square) == "R12");
    CHECK_THROWS_AS(make_letter(0, 1), std::out_of_range);
    CHECK_THROWS_AS(make_letter(1, 16), std::out_of_range);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_spec(0, Regime::generic), std::invalid_argument);
    CHECK_THROWS_AS(make_spec(16, Regime::generic), std::invalid_argument);
    CHECK_THROWS_AS(make_spec(2, Regime::numeric, "0", "1"), std::invalid_argument);
    CHECK_THROWS_AS(regime_from_name("bogus"), std::invalid_argument);
    CHECK(regime_from_name(regime_name(Regime::q_negative)) == Regime::q_negative);

    Algebra alg = generic(2);
    CHECK_THROWS_AS(alg.generator(1, 3), std::out_of_range);
    CHECK_THROWS_AS(alg.generator(1, 1, Copy::right), std::invalid_argument);
    CHECK_THROWS_AS(alg.counit(alg.coproduct(alg.one())), std::invalid_argument);
}
