#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qoz/cones.hpp"
#include "qoz/mpoly.hpp"
#include "qoz/zetalg.hpp"

using namespace qoz;

static TowerPtr Q() { return std::make_shared<FieldTower>(); }

static QOPair pair_of(TowerPtr T, const std::string& t, std::vector<std::string> vars,
                      std::vector<int> nu = {}) {
    MPoly h = parse(*T, t, vars);
    FormExponents fe;
    if (nu.empty())
        fe.nu.assign(vars.size() - 1, 1);
    else
        fe.nu = nu;
    return make_qopair(T, h, fe);
}

static std::vector<Int> iv(std::vector<long> v) {
    std::vector<Int> r;
    for (long x : v) r.push_back(Int(x));
    return r;
}

TEST_CASE("newton path: z^2 - x1^3") {
    auto T = Q();
    QOPair p = pair_of(T, "z^2 - x1^3", {"x1", "z"});
    NewtonPath path = build_newton_path(p);
    REQUIRE(path.r() == 1);
    CHECK(path.vertex_x[0] == iv({3}));
    CHECK(path.vertex_z[0] == 0);
    CHECK(path.vertex_x[1] == iv({0}));
    CHECK(path.vertex_z[1] == 2);
    const EdgeData& e = path.edges[0];
    CHECK(e.n1 == 2);
    CHECK(e.b == iv({3}));
    CHECK(e.lambda[0] == Rat(3, 2));
    CHECK(e.M == iv({6}));
    CHECK(e.c == iv({1}));
    CHECK(e.p == iv({2}));
    CHECK(e.bbar == iv({3}));
    REQUIRE(e.w.size() == 1);
    CHECK(e.w[0] == iv({2, 3}));
    CHECK(e.v == 1);
    CHECK(e.lattice_len == 1);
    // face polynomial w - 1, root 1
    REQUIRE(e.roots.size() == 1);
    CHECK(T->up_deg(e.roots[0].factor) == 1);
    CHECK(T->is_zero(T->up_eval(e.roots[0].factor, AlgNum(1L))));
}

TEST_CASE("newton path: (z^2-x1^3)^2 + x1^7") {
    auto T = Q();
    QOPair p = pair_of(T, "(z^2-x1^3)^2+x1^7", {"x1", "z"});
    NewtonPath path = build_newton_path(p);
    REQUIRE(path.r() == 1);
    const EdgeData& e = path.edges[0];
    CHECK(e.n1 == 2);
    CHECK(e.b == iv({3}));
    CHECK(e.lattice_len == 2);
    CHECK(e.v == 1);
    REQUIRE(e.roots.size() == 1);
    CHECK(e.roots[0].multiplicity == 2);
    CHECK(e.roots[0].distinct == 1);
    // face polynomial (w-1)^2
    CHECK(T->is_zero(T->up_eval(e.roots[0].factor, AlgNum(1L))));
    CHECK(e.M == iv({12}));
}

TEST_CASE("newton path: z^3 + x1*x2") {
    auto T = Q();
    QOPair p = pair_of(T, "z^3 + x1*x2", {"x1", "x2", "z"});
    NewtonPath path = build_newton_path(p);
    REQUIRE(path.r() == 1);
    const EdgeData& e = path.edges[0];
    CHECK(e.n1 == 3);
    CHECK(e.b == iv({1, 1}));
    CHECK(e.c == iv({1, 1}));
    REQUIRE(e.w.size() == 2);
    CHECK(e.w[0] == iv({3, 0, 1}));
    CHECK(e.w[1] == iv({0, 3, 1}));
    CHECK(e.v == 1);
    CHECK(e.M == iv({3, 3}));
}

TEST_CASE("newton path: multi-edge ordering and slopes") {
    auto T = Q();
    // (z^2-x1^5)(z-x1^2)(z^3-x1^2): slopes 5/2 > 2 > 2/3
    QOPair p = pair_of(T, "(z^2-x1^5)*(z-x1^2)*(z^3-x1^2)", {"x1", "z"});
    NewtonPath path = build_newton_path(p);
    REQUIRE(path.r() == 3);
    CHECK(path.edges[0].lambda[0] == Rat(5, 2));
    CHECK(path.edges[1].lambda[0] == Rat(2));
    CHECK(path.edges[2].lambda[0] == Rat(2, 3));
    CHECK(path.vertex_z == std::vector<Int>({Int(0), Int(2), Int(3), Int(6)}));
}

TEST_CASE("fundamental sets") {
    SUBCASE("{(2,3),(0,1)}") {
        SimplicialCone c = fundamental_set({iv({2, 3}), iv({0, 1})});
        CHECK(c.multiplicity == 2);
        REQUIRE(c.fset.size() == 2);
        CHECK(c.fset[0] == iv({1, 2}));
        CHECK(c.fset[1] == iv({2, 4}));
    }
    SUBCASE("{(2,3)}") {
        SimplicialCone c = fundamental_set({iv({2, 3})});
        CHECK(c.multiplicity == 1);
        REQUIRE(c.fset.size() == 1);
        CHECK(c.fset[0] == iv({2, 3}));
    }
    SUBCASE("{(2,0,3),(0,2,3)}") {
        SimplicialCone c = fundamental_set({iv({2, 0, 3}), iv({0, 2, 3})});
        CHECK(c.multiplicity == 2);
        REQUIRE(c.fset.size() == 2);
        CHECK(c.fset[0] == iv({1, 1, 3}));
        CHECK(c.fset[1] == iv({2, 2, 6}));
    }
    SUBCASE("dependent generators rejected") {
        CHECK_THROWS_AS(fundamental_set({iv({1, 2}), iv({2, 4})}), Error);
    }
}

TEST_CASE("edge-cone multiplicity identity |G| = n1^{d-1}/prod c_l") {
    auto T = Q();
    for (const char* t : {"z^2 - x1^3", "z^3 + x1*x2", "z^2 - x1^2*x2^5",
                          "z^4 - x1^2*x2^6", "z^6 + x1^4*x2^3"}) {
        std::vector<std::string> vars = {"x1", "x2", "z"};
        if (std::string(t) == "z^2 - x1^3") vars = {"x1", "z"};
        QOPair p = pair_of(T, t, vars);
        NewtonPath path = build_newton_path(p);
        for (const EdgeData& e : path.edges) {
            SimplicialCone c = fundamental_set(e.w);
            int d = (int)e.b.size();
            Int expect = 1;
            for (int i = 1; i < d; ++i) expect *= e.n1;
            for (auto& cl : e.c) expect /= cl;
            CHECK(c.multiplicity == expect);
        }
    }
}

TEST_CASE("genfun oracles") {
    SUBCASE("cusp edge ray (2,3) from vertex (3,0)") {
        SimplicialCone c = fundamental_set({iv({2, 3})});
        FormExponents nu{{1}};
        std::vector<std::vector<Int>> support = {iv({3, 0}), iv({0, 2})};
        auto w = [&](const std::vector<Int>& k) {
            return std::make_pair(sigma_weight(nu, k), min_support_value(support, k));
        };
        MotivicExpr g = genfun(c, w);
        MotivicExpr expect = me_from(lt_monomial(-5, 6, Rat(1)), {{5, 6}});
        CHECK(me_eq(g, expect));
    }
    SUBCASE("quintic-fourfold facet ray (2,2,2,2,1)") {
        SimplicialCone c = fundamental_set({iv({2, 2, 2, 2, 1})});
        FormExponents nu{{1, 1, 1, 1}};
        std::vector<std::vector<Int>> support = {iv({3, 0, 0, 0, 0}), iv({0, 3, 0, 0, 0}),
                                                 iv({0, 0, 3, 0, 0}), iv({0, 0, 0, 3, 0}),
                                                 iv({0, 0, 0, 0, 6})};
        auto w = [&](const std::vector<Int>& k) {
            return std::make_pair(sigma_weight(nu, k), min_support_value(support, k));
        };
        MotivicExpr g = genfun(c, w);
        MotivicExpr expect = me_from(lt_monomial(-9, 6, Rat(1)), {{9, 6}});
        CHECK(me_eq(g, expect));
    }
    SUBCASE("positive quadrant") {
        SimplicialCone c = fundamental_set({iv({1, 0}), iv({0, 1})});
        auto w = [&](const std::vector<Int>& k) { return std::make_pair(k[0], k[1]); };
        MotivicExpr g = genfun(c, w);
        MotivicExpr expect = me_from(lt_monomial(-1, 1, Rat(1)), {{1, 0}, {0, 1}});
        CHECK(me_eq(g, expect));
    }
}

TEST_CASE("genfun equals brute-force lattice enumeration (T-degree 20)") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> gen_entry(0, 4), nvars(2, 3), nuv(1, 3), av(1, 3);
    const int MAXDEG = 20;
    int done = 0;
    while (done < 50) {
        int n = nvars(rng);
        // random full-dimensional simplicial cone
        std::vector<std::vector<Int>> gens(n, std::vector<Int>(n));
        for (auto& g : gens) {
            bool allz = true;
            for (auto& x : g) {
                int e = gen_entry(rng);
                x = e;
                if (e) allz = false;
            }
            if (allz) g[0] = 1;
        }
        if (int_rank(gens) != n) continue;
        // weight: L-part from a random nu, T-part from a strictly positive vector
        std::vector<Int> sig(n), deg(n);
        for (int i = 0; i < n; ++i) {
            sig[i] = nuv(rng);
            deg[i] = av(rng);
        }
        auto w = [&](const std::vector<Int>& k) {
            Int a = 0, b = 0;
            for (int i = 0; i < n; ++i) {
                a += sig[i] * k[i];
                b += deg[i] * k[i];
            }
            return std::make_pair(a, b);
        };
        SimplicialCone cone = fundamental_set(gens);
        auto series = me_series_T(genfun(cone, w), MAXDEG);
        // enumeration: G^{-1} k coordinates must all be > 0
        std::vector<std::vector<Rat>> Ginv; // solve per point via Gauss on the transpose
        std::vector<std::map<long, Rat>> expect(MAXDEG + 1);
        std::vector<Int> k(n, Int(0));
        for (;;) {
            auto [a, b] = w(k);
            if (b <= MAXDEG) {
                // membership: k = sum mu_l gens[l], all mu_l > 0
                std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1));
                for (int row = 0; row < n; ++row) {
                    for (int col = 0; col < n; ++col) A[row][col] = Rat(gens[col][row]);
                    A[row][n] = Rat(k[row]);
                }
                // gauss
                bool ok = true;
                for (int col = 0; col < n; ++col) {
                    int pr = -1;
                    for (int r = col; r < n; ++r)
                        if (A[r][col] != 0) { pr = r; break; }
                    if (pr < 0) { ok = false; break; }
                    std::swap(A[pr], A[col]);
                    Rat inv = 1 / A[col][col];
                    for (int j = col; j <= n; ++j) A[col][j] *= inv;
                    for (int r = 0; r < n; ++r) {
                        if (r == col || A[r][col] == 0) continue;
                        Rat f = A[r][col];
                        for (int j = col; j <= n; ++j) A[r][j] -= f * A[col][j];
                    }
                }
                if (ok)
                    for (int i = 0; i < n; ++i)
                        if (A[i][n] <= 0) ok = false;
                if (ok) expect[(long)b.get_si()][-(long)a.get_si()] += 1;
            }
            // next point in the box 0..MAXDEG (pruned by the positive degree vector)
            int t = n - 1;
            while (t >= 0) {
                ++k[t];
                std::vector<Int> probe(n, Int(0));
                probe[t] = k[t];
                if (w(probe).second <= MAXDEG) break;
                k[t] = 0;
                --t;
            }
            if (t < 0) break;
        }
        for (int j = 0; j <= MAXDEG; ++j) {
            std::map<long, Rat> got;
            for (auto& [le, cv] : series[j])
                if (cv != 0) got[le] = cv;
            CHECK(got == expect[j]);
        }
        ++done;
    }
}

TEST_CASE("J_edge oracles") {
    auto T = Q();
    SUBCASE("cusp") {
        QOPair p = pair_of(T, "z^2 - x1^3", {"x1", "z"});
        NewtonPath path = build_newton_path(p);
        CHECK(rf_eq(J_edge(path.edges[0], p.nu), rf_atom(Rat(1), {{6, 5}})));
    }
    SUBCASE("z^3 + x1*x2") {
        QOPair p = pair_of(T, "z^3 + x1*x2", {"x1", "x2", "z"});
        NewtonPath path = build_newton_path(p);
        CHECK(rf_eq(J_edge(path.edges[0], p.nu), rf_atom(Rat(3), {{3, 4}, {3, 4}})));
    }
    SUBCASE("z^2 - x1^2*x2^5") {
        QOPair p = pair_of(T, "z^2 - x1^2*x2^5", {"x1", "x2", "z"});
        NewtonPath path = build_newton_path(p);
        CHECK(rf_eq(J_edge(path.edges[0], p.nu), rf_atom(Rat(2), {{4, 4}, {10, 7}})));
    }
}

TEST_CASE("J_vertex oracles (cusp)") {
    auto T = Q();
    QOPair p = pair_of(T, "z^2 - x1^3", {"x1", "z"});
    NewtonPath path = build_newton_path(p);
    CHECK(rf_eq(J_vertex(path, 0, p.nu, p.N, p.epsilon), rf_atom(Rat(2), {{6, 5}})));
    CHECK(rf_eq(J_vertex(path, 1, p.nu, p.N, p.epsilon), rf_atom(Rat(3), {{6, 5}})));
}

TEST_CASE("general fan") {
    auto T = Q();
    SUBCASE("x1^3 + z^3 edge volume") {
        MPoly h = parse(*T, "x1^3 + z^3", {"x1", "z"});
        GeneralFaceFan fan = build_general_fan(h);
        int edges = 0;
        for (auto& f : fan.faces) {
            if (f.dim == 1) {
                ++edges;
                CHECK(f.normalized_volume == 3);
                REQUIRE(f.rays.size() == 1);
                CHECK(f.rays[0] == iv({1, 1}));
            }
            if (f.dim == 0) CHECK(f.normalized_volume == 1);
        }
        CHECK(edges == 1);
    }
    SUBCASE("cusp") {
        MPoly h = parse(*T, "z^2 - x1^3", {"x1", "z"});
        GeneralFaceFan fan = build_general_fan(h);
        int v = 0, e = 0;
        for (auto& f : fan.faces) {
            if (f.dim == 0) ++v;
            if (f.dim == 1) {
                ++e;
                CHECK(f.normalized_volume == 1);
                REQUIRE(f.rays.size() == 1);
                CHECK(f.rays[0] == iv({2, 3}));
            }
        }
        CHECK(v == 2);
        CHECK(e == 1);
    }
    SUBCASE("quintic fourfold: unique compact facet with dual ray (2,2,2,2,1)") {
        MPoly h = parse(*T, "x1^3+x2^3+x3^3+x4^3+z^6", {"x1", "x2", "x3", "x4", "z"});
        GeneralFaceFan fan = build_general_fan(h);
        int facets = 0;
        for (auto& f : fan.faces)
            if (f.dim == 4) {
                ++facets;
                REQUIRE(f.rays.size() == 1);
                CHECK(f.rays[0] == iv({2, 2, 2, 2, 1}));
            }
        CHECK(facets == 1);
    }
}

TEST_CASE("good coordinates") {
    auto T = Q();
    SUBCASE("(z-x1^2)^2 - x1^5 shifts to z^2 - x1^5") {
        QOPair p = pair_of(T, "(z-x1^2)^2 - x1^5", {"x1", "z"});
        auto [g, log] = good_coordinates(p);
        REQUIRE(log.size() == 1);
        CHECK(mp_eq(*T, qopair_full(g), parse(*T, "z^2 - x1^5", {"x1", "z"})));
        CHECK(mp_eq(*T, log[0].shift, parse(*T, "x1^2", {"x1", "z"})));
    }
    SUBCASE("already good: identity, even with an inner n1=1 edge") {
        QOPair p = pair_of(T, "(z^2-x1^5)*(z-x1^2)*(z^3-x1^2)", {"x1", "z"});
        auto [g, log] = good_coordinates(p);
        CHECK(log.empty());
        CHECK(mp_eq(*T, qopair_full(g), qopair_full(p)));
    }
    SUBCASE("z^2 + 2*z - x1 never terminates") {
        QOPair p = pair_of(T, "z^2 + 2*z - x1", {"x1", "z"});
        bool threw = false;
        try {
            good_coordinates(p, 8);
        } catch (const Error& e) {
            threw = true;
            CHECK(e.code() == "NonTerminatingNormalization");
        }
        CHECK(threw);
    }
    SUBCASE("idempotent on the cusp") {
        QOPair p = pair_of(T, "z^2 - x1^3", {"x1", "z"});
        auto [g, log] = good_coordinates(p);
        CHECK(log.empty());
    }
}

TEST_CASE("residual z-order") {
    auto T = Q();
    CHECK(residual_z_order(pair_of(T, "z^2 - x1^3", {"x1", "z"})) == 2);
    CHECK(residual_z_order(pair_of(T, "z^2 + 2*z - x1", {"x1", "z"})) == 1);
    CHECK(residual_z_order(pair_of(T, "x1^2*z", {"x1", "z"})) == 0);
    CHECK(residual_z_order(pair_of(T, "(z^2-x1^3)^2 + x1^7", {"x1", "z"})) == 4);
}

TEST_CASE("newton map substitution") {
    auto T = Q();
    SUBCASE("cusp, alpha = 1") {
        QOPair p = pair_of(T, "z^2 - x1^3", {"x1", "z"});
        NewtonPath path = build_newton_path(p);
        QOPair q = newton_map_substitute(p, path.edges[0], AlgNum(1L));
        CHECK(q.N == std::vector<int>({6}));
        CHECK(q.nu.nu == std::vector<int>({5}));
        CHECK(q.epsilon == 1);
        // residual z + 2
        CHECK(mp_eq(*T, q.residual, parse(*T, "z + 2", {"x1", "z"})));
    }
    SUBCASE("cusp, invalid root") {
        QOPair p = pair_of(T, "z^2 - x1^3", {"x1", "z"});
        NewtonPath path = build_newton_path(p);
        CHECK_THROWS_AS(newton_map_substitute(p, path.edges[0], AlgNum(2L)), Error);
    }
    SUBCASE("(z^2-x1^3)^2 + x1^7, alpha = 1") {
        QOPair p = pair_of(T, "(z^2-x1^3)^2 + x1^7", {"x1", "z"});
        NewtonPath path = build_newton_path(p);
        QOPair q = newton_map_substitute(p, path.edges[0], AlgNum(1L));
        CHECK(q.N == std::vector<int>({12}));
        CHECK(q.nu.nu == std::vector<int>({5}));
        CHECK(q.epsilon == 0);
        CHECK(mp_eq(*T, q.residual, parse(*T, "(z^2+2*z)^2 + x1^2", {"x1", "z"})));
    }
    SUBCASE("z^3 - x1^2 with a cube root of unity") {
        // adjoin a primitive cube root of unity and use it as alpha
        FieldTower F0;
        UPoly cyc = FieldTower::up_from({AlgNum(1L), AlgNum(1L), AlgNum(1L)});
        auto [F1, omega] = adjoin_root(F0, cyc, "w");
        auto T1 = std::make_shared<FieldTower>(F1);
        QOPair p = pair_of(T1, "z^3 - x1^2", {"x1", "z"});
        NewtonPath path = build_newton_path(p);
        const EdgeData& e = path.edges[0];
        CHECK(e.n1 == 3);
        CHECK(e.b == iv({2}));
        QOPair q = newton_map_substitute(p, e, omega);
        CHECK(q.N == std::vector<int>({6}));
        CHECK(q.nu.nu == std::vector<int>({5}));
        CHECK(q.epsilon == 1);
        // residual z^2 + 3w z + 3w^2
        const FieldTower& F = *T1;
        MPoly expect = mp_zero(1);
        expect = mp_add(F, expect, mp_monomial(1, {0, 2}, AlgNum(1L)));
        expect = mp_add(F, expect, mp_monomial(1, {0, 1}, F.mul(AlgNum(3L), omega)));
        expect = mp_add(F, expect, mp_monomial(1, {0, 0}, F.mul(AlgNum(3L), F.pow(omega, 2))));
        CHECK(mp_eq(F, q.residual, expect));
    }
}

TEST_CASE("rational function arithmetic in s") {
    RatFuncS a = rf_atom(Rat(1), {{1, 1}});
    CHECK(rf_eq(rf_add(a, a), rf_atom(Rat(2), {{1, 1}})));
    // (6s+3)/(2s+1) cancels to 3
    RatFuncS b;
    b.num = {Rat(3), Rat(6)};
    b.den[{Int(2), Int(1)}] = 1;
    RatFuncS c = rf_mul(b, rf_const(Rat(1)));
    CHECK(rf_eq(c, rf_const(Rat(3))));
    // non-primitive denominator pair (6,9) normalizes to (2,3)/3
    RatFuncS d = rf_atom(Rat(1), {{6, 9}});
    CHECK(rf_eq(d, rf_atom(Rat(1, 3), {{2, 3}})));
    auto poles = rf_poles(rf_atom(Rat(1), {{1, 1}, {6, 5}, {6, 5}}));
    REQUIRE(poles.size() == 2);
    CHECK(poles.at({Int(6), Int(5)}) == 2);
}

TEST_CASE("chi specialization") {
    SUBCASE("(L-1)/(1-L^{-1}T) -> 1/(1+s)") {
        MotivicExpr m = me_from(lt_Lminus1_pow(1), {{1, 1}});
        CHECK(rf_eq(chi_specialize(m), rf_atom(Rat(1), {{1, 1}})));
    }
    SUBCASE("(L-1) L^{-9}T^6/(1-L^{-9}T^6) -> 1/(6s+9)") {
        MotivicExpr m = me_from(lt_mul(lt_Lminus1_pow(1), lt_monomial(-9, 6, Rat(1))), {{9, 6}});
        CHECK(rf_eq(chi_specialize(m), rf_atom(Rat(1), {{6, 9}})));
    }
    SUBCASE("pure pole term raises SpecializationPole") {
        MotivicExpr m = me_from(lt_monomial(-9, 6, Rat(1)), {{9, 6}});
        CHECK_THROWS_AS(chi_specialize(m), Error);
    }
    SUBCASE("(L-1)^2 L^{-5}T^6/((1-L^{-5}T^6)(1-L^{-1}T))") {
        // two denominator factors; exact second-order expansion required
        MotivicExpr m = me_from(lt_mul(lt_Lminus1_pow(2), lt_monomial(-5, 6, Rat(1))),
                                {{5, 6}, {1, 1}});
        CHECK(rf_eq(chi_specialize(m), rf_atom(Rat(1), {{6, 5}, {1, 1}})));
    }
}

TEST_CASE("motivic expression algebra") {
    MotivicExpr a = me_from(lt_monomial(-1, 1, Rat(1)), {{1, 1}});
    MotivicExpr b = me_from(lt_monomial(-2, 2, Rat(1)), {{1, 1}});
    CHECK(me_eq(me_add(a, b), me_add(b, a)));
    CHECK(me_is_zero(me_sub(me_add(a, b), me_add(b, a))));
    // geometric identity: y/(1-y) + 1 = 1/(1-y)
    MotivicExpr one = me_from(lt_monomial(0, 0, Rat(1)));
    MotivicExpr lhs = me_add(a, one);
    MotivicExpr rhs = me_from(lt_monomial(0, 0, Rat(1)), {{1, 1}});
    CHECK(me_eq(lhs, rhs));
    auto s = me_series_T(a, 4);
    for (int j = 1; j <= 4; ++j) {
        REQUIRE(s[j].count(-j));
        CHECK(s[j].at(-j) == 1);
    }
    CHECK(s[0].empty());
}
