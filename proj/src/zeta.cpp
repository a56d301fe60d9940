#include <algorithm>

#include "qoz/zeta.hpp"

namespace qoz {

bool PoleSet::contains(const Int& N, const Int& nu) const {
    // pairs are stored as produced; compare up to common scaling
    for (auto& [k, tags] : pairs)
        if (k.first * nu == k.second * N) return true;
    return false;
}

namespace {

Int idot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// z-order of the full polynomial restricted to x = 0; the node is terminal
// (no further Newton maps needed) iff this is <= 1
int effective_z_order(const QOPair& p) { return p.epsilon + residual_z_order(p); }

RatFuncS ztop_base_eff(const QOPair& p, int eps_eff) {
    std::vector<std::pair<Int, Int>> dens;
    for (int i = 0; i < eps_eff; ++i) dens.push_back({1, 1});
    for (int j = 0; j < p.d(); ++j)
        if (p.N[j] > 0) dens.push_back({p.N[j], p.nu.nu[j]});
    return rf_atom(Rat(1), dens);
}

MotivicExpr zmot_base_eff(const QOPair& p, int eps_eff) {
    int d = p.d();
    // L^{-(d+1)} (L-1)^{d+1} * prod_j y_j/(1-y_j) * y_z/(1-y_z)
    // with y_j = L^{-nu_j} T^{N_j} and y_z = L^{-1} T^{eps}; every variable
    // contributes a factor, N_j = 0 included (then y_j/(1-y_j) = 1/(L-1))
    LTPoly num = lt_mul(lt_Lminus1_pow(d + 1), lt_monomial(-(d + 1), 0, Rat(1)));
    std::vector<std::pair<long, long>> dens;
    for (int j = 0; j < d; ++j) {
        num = lt_mul(num, lt_monomial(-p.nu.nu[j], p.N[j], Rat(1)));
        dens.push_back({p.nu.nu[j], p.N[j]});
    }
    num = lt_mul(num, lt_monomial(-1, eps_eff, Rat(1)));
    dens.push_back({1, eps_eff});
    return me_from(num, dens);
}

// ---- tree construction ----

std::shared_ptr<NewtonTree> build_tree(const QOPair& p, int guard) {
    check(guard > 0, "InternalError", "newton recursion exceeded the depth guard");
    auto node = std::make_shared<NewtonTree>();
    int eff = effective_z_order(p);
    if (eff <= 1) {
        node->pair = p;
        node->terminal = true;
        node->eps_eff = eff;
        return node;
    }
    auto [good, shifts] = good_coordinates(p);
    node->pair = good;
    node->shifts = std::move(shifts);
    node->path = build_newton_path(good);
    const FieldTower& F = *good.tower;
    for (const EdgeData& e : node->path.edges) {
        std::vector<TreePtr> kids;
        for (const RootClass& rc : e.roots) {
            // beta = a root of the face factor, alpha = an n1-th root of beta
            auto [F1, beta] = adjoin_root(F, rc.factor, "b");
            AlgNum alpha = beta;
            FieldTower F2 = F1;
            if (e.n1 > 1) {
                UPoly pw(1 + (size_t)e.n1.get_si(), FieldTower::zero());
                pw[0] = F1.neg(beta);
                pw.back() = FieldTower::one();
                auto [F2b, a2] = adjoin_root(F1, pw, "a");
                F2 = std::move(F2b);
                alpha = a2;
            }
            auto T2 = std::make_shared<FieldTower>(std::move(F2));
            QOPair lifted{T2, good.residual, good.nu, good.N, good.epsilon};
            QOPair child = newton_map_substitute(lifted, e, alpha);
            kids.push_back(build_tree(child, guard - 1));
        }
        node->children.push_back(std::move(kids));
    }
    return node;
}

// edge-cone multiplicity n1^{d-1} / prod c_l
Rat edge_mult(const EdgeData& e) {
    int d = (int)e.b.size();
    Rat m = 1;
    for (int i = 1; i < d; ++i) m *= Rat(e.n1);
    for (auto& c : e.c) m /= Rat(c);
    return m;
}

} // namespace

TreePtr newton_tree(const QOPair& p) { return build_tree(p, 64); }

// ---- topological ----

RatFuncS ztop_base(const QOPair& p) {
    int eff = effective_z_order(p);
    check(eff <= 1, "InvalidInput", "not a terminal pair (depth > 0)");
    return ztop_base_eff(p, eff);
}

RatFuncS ztop_tree(const TreePtr& t) {
    if (t->terminal) return ztop_base_eff(t->pair, t->eps_eff);
    const QOPair& p = t->pair;
    RatFuncS Z = rf_zero();
    int r = t->path.r();
    for (int q = 0; q <= r; ++q)
        Z = rf_add(Z, J_vertex(t->path, q, p.nu, p.N, p.epsilon));
    for (int q = 0; q < r; ++q) {
        const EdgeData& e = t->path.edges[q];
        Z = rf_sub(Z, rf_scale(J_edge(e, p.nu), Rat(e.v)));
        RatFuncS rec = rf_zero();
        for (size_t c = 0; c < e.roots.size(); ++c)
            rec = rf_add(rec, rf_scale(ztop_tree(t->children[q][c]), Rat(e.roots[c].distinct)));
        Z = rf_add(Z, rf_scale(rec, edge_mult(e)));
    }
    return Z;
}

RatFuncS ztop_qo(const QOPair& p) { return ztop_tree(newton_tree(p)); }

RatFuncS ztop_nondeg(const MPoly& h, const FormExponents& nu, bool assume_nondegenerate) {
    check((int)nu.nu.size() == h.d, "InvalidInput", "nu dimension mismatch");
    GeneralFaceFan fan = build_general_fan(h);
    if (!assume_nondegenerate) {
        // certify non-degeneracy exactly where possible:
        //  - faces whose variables each occur in a single monomial have
        //    monomial partial derivatives, hence no torus critical point;
        //  - segments with rational coefficients reduce to a univariate
        //    squarefree test.
        const FieldTower F;
        for (auto& f : fan.faces) {
            if (f.dim == 0) continue;
            bool disjoint = true;
            for (int v = 0; v < fan.n && disjoint; ++v) {
                int cnt = 0;
                for (int pi : f.pts)
                    if (fan.support[pi][v] > 0) ++cnt;
                if (cnt >= 2) disjoint = false;
            }
            if (disjoint) continue;
            check(f.dim == 1, "InvalidInput",
                  "cannot certify non-degeneracy of a face of dimension >= 2; "
                  "pass assume_nondegenerate to proceed");
            // segment: write points as p0 + t*dir, t = 0..len, and check the
            // univariate polynomial is squarefree
            const auto& p0 = fan.support[f.pts[0]];
            const auto& p1 = fan.support[f.pts[f.pts.size() - 1]];
            std::vector<Int> dir(fan.n);
            Int g = 0;
            for (int v = 0; v < fan.n; ++v) {
                dir[v] = p1[v] - p0[v];
                g = gcd(g, dir[v]);
            }
            for (auto& x : dir) x /= g;
            long len = g.get_si();
            std::vector<AlgNum> cs(len + 1, FieldTower::zero());
            for (int pi : f.pts) {
                // t such that support[pi] = p0 + t*dir
                long tpos = -1;
                for (int v = 0; v < fan.n; ++v)
                    if (dir[v] != 0) {
                        tpos = Int((fan.support[pi][v] - p0[v]) / dir[v]).get_si();
                        break;
                    }
                std::vector<int> key(fan.n);
                for (int v = 0; v < fan.n; ++v) key[v] = (int)fan.support[pi][v].get_si();
                cs[tpos] = h.terms.at(key);
            }
            for (const AlgNum& a : cs)
                check(a.lvl == 0, "InvalidInput",
                      "cannot certify non-degeneracy with algebraic coefficients; "
                      "pass assume_nondegenerate to proceed");
            UPoly up = FieldTower::up_from(cs);
            UPoly gg = F.up_gcd(up, F.up_derivative(up));
            check(F.up_deg(gg) <= 0, "InvalidInput",
                  "degenerate face (non-squarefree segment restriction); "
                  "pass assume_nondegenerate to override");
        }
    }
    RatFuncS Z = rf_zero();
    // s/(s+1) = 1 - 1/(s+1)
    RatFuncS s_over = rf_sub(rf_const(Rat(1)), rf_atom(Rat(1), {{1, 1}}));
    for (auto& f : fan.faces) {
        RatFuncS J = rf_zero();
        for (auto& sc : f.simplices) {
            std::vector<std::pair<Int, Int>> dens;
            for (auto& a : sc.gens)
                dens.push_back({min_support_value(fan.support, a), sigma_weight(nu, a)});
            J = rf_add(J, rf_atom(Rat(sc.multiplicity), dens));
        }
        if (f.dim == 0) {
            Z = rf_add(Z, J);
        } else {
            Rat coef(f.normalized_volume);
            if (f.dim % 2 == 1) coef = -coef;
            Z = rf_add(Z, rf_mul(s_over, rf_scale(J, coef)));
        }
    }
    return Z;
}

// ---- motivic ----

namespace {

// weight assignment y^k = L^{-sigma(k)} T^{k . at} for a face containing `at`
ConeWeight weight_at(const FormExponents& nu, const std::vector<Int>& at) {
    return [nu, at](const std::vector<Int>& k) {
        return std::make_pair(sigma_weight(nu, k), idot(k, at));
    };
}

std::vector<Int> vertex_coords(const NewtonPath& path, int q) {
    std::vector<Int> v = path.vertex_x[q];
    v.push_back(path.vertex_z[q]);
    return v;
}

// S-series of all path faces: S_edge[q] and S_vertex[q]
void path_S_terms(const NewtonPath& path, const FormExponents& nu,
                  std::vector<MotivicExpr>& S_edge, std::vector<MotivicExpr>& S_vertex) {
    int r = path.r();
    int d = (int)nu.nu.size();
    std::vector<Int> ez(d + 1, Int(0));
    ez[d] = 1;
    S_edge.clear();
    S_vertex.clear();
    for (int q = 0; q < r; ++q)
        S_edge.push_back(
            genfun(fundamental_set(path.edges[q].w), weight_at(nu, vertex_coords(path, q))));
    // vertex 0: cone spanned by the first edge generators plus e_{d+1}
    {
        std::vector<std::vector<Int>> gens = path.edges[0].w;
        gens.push_back(ez);
        S_vertex.push_back(genfun(fundamental_set(gens), weight_at(nu, vertex_coords(path, 0))));
    }
    // vertices q = 1..r by inclusion-exclusion over capped cones
    for (int q = 1; q <= r; ++q) {
        auto w = weight_at(nu, vertex_coords(path, q));
        std::vector<std::vector<Int>> low = path.edges[q - 1].w;
        low.push_back(ez);
        std::vector<std::vector<Int>> high;
        if (q < r) {
            high = path.edges[q].w;
            high.push_back(ez);
        } else {
            for (int i = 0; i <= d; ++i) {
                std::vector<Int> e(d + 1, Int(0));
                e[i] = 1;
                high.push_back(e);
            }
        }
        MotivicExpr S = genfun(fundamental_set(high), w);
        S = me_sub(S, genfun(fundamental_set(path.edges[q - 1].w), w));
        S = me_sub(S, genfun(fundamental_set(low), w));
        S_vertex.push_back(S);
    }
}

// A-part: L^{-(d+1)}(L-1)^{d+1} ( sum_j S_vertex[j]
//                                 + sum_q (1 - v(q)/(L-1)) S_edge[q] )
MotivicExpr zmot_A(const NewtonPath& path, const FormExponents& nu) {
    int d = (int)nu.nu.size();
    std::vector<MotivicExpr> SE, SV;
    path_S_terms(path, nu, SE, SV);
    MotivicExpr acc = me_zero();
    for (auto& S : SV) acc = me_add(acc, S);
    LTPoly Lm1d1 = lt_Lminus1_pow(d + 1);
    LTPoly Lm1d = lt_Lminus1_pow(d);
    MotivicExpr out = me_scale(acc, lt_mul(Lm1d1, lt_monomial(-(d + 1), 0, Rat(1))));
    for (int q = 0; q < path.r(); ++q) {
        // (L-1)^{d+1} - v (L-1)^d
        LTPoly c = lt_add(Lm1d1, lt_mul(Lm1d, lt_monomial(0, 0, Rat(-path.edges[q].v))));
        out = me_add(out, me_scale(SE[q], lt_mul(c, lt_monomial(-(d + 1), 0, Rat(1)))));
    }
    return out;
}

MotivicExpr zmot_curve_rec(const TreePtr& t) {
    if (t->terminal) return zmot_base_eff(t->pair, t->eps_eff);
    MotivicExpr Z = zmot_A(t->path, t->pair.nu);
    for (int q = 0; q < t->path.r(); ++q) {
        const EdgeData& e = t->path.edges[q];
        for (size_t c = 0; c < e.roots.size(); ++c) {
            MotivicExpr k = zmot_curve_rec(t->children[q][c]);
            Z = me_add(Z, me_scale(k, lt_monomial(0, 0, Rat(e.roots[c].distinct))));
        }
    }
    return Z;
}

} // namespace

MotivicExpr zmot_base(const QOPair& p) {
    int eff = effective_z_order(p);
    check(eff <= 1, "InvalidInput", "not a terminal pair (depth > 0)");
    return zmot_base_eff(p, eff);
}

MotivicExpr zmot_curve(const QOPair& p) {
    auto [red, kept] = reduce_to_essential(p);
    int e = (int)kept.size();
    check(e <= 1, "UnsupportedDegenerateMotivic",
          "motivic recursion implemented for at most one essential variable; "
          "use the topological computation instead");
    MotivicExpr Z = zmot_curve_rec(newton_tree(red));
    int drop = p.d() - e;
    if (drop > 0) Z = me_scale(Z, lt_monomial(-drop, 0, Rat(1)));
    return Z;
}

MotivicExpr zmot_nondeg_qo(const QOPair& p) {
    int eff = effective_z_order(p);
    if (eff <= 1) return zmot_base_eff(p, eff);
    QOPair g = good_coordinates(p).first;
    NewtonPath path = build_newton_path(g);
    int d = g.d();
    for (const EdgeData& e : path.edges)
        for (const RootClass& rc : e.roots)
            check(rc.multiplicity == 1, "UnsupportedDegenerateMotivic",
                  "edge face polynomial is not squarefree (degenerate input)");
    std::vector<MotivicExpr> SE, SV;
    path_S_terms(path, g.nu, SE, SV);
    LTPoly Lm1d1 = lt_Lminus1_pow(d + 1);
    LTPoly Lm1d = lt_Lminus1_pow(d);
    LTPoly Lpref = lt_monomial(-(d + 1), 0, Rat(1));
    MotivicExpr Z = me_zero();
    for (auto& S : SV) Z = me_add(Z, me_scale(S, lt_mul(Lm1d1, Lpref)));
    for (int q = 0; q < path.r(); ++q) {
        int v = path.edges[q].v;
        // A-part coefficient (L-1)^{d+1} - v(L-1)^d, plus the B-part
        // (L-1) * v(L-1)^d * L^{-1}T/(1-L^{-1}T)
        LTPoly cA = lt_add(Lm1d1, lt_mul(Lm1d, lt_monomial(0, 0, Rat(-v))));
        MotivicExpr term = me_scale(SE[q], lt_mul(cA, Lpref));
        LTPoly cB = lt_mul(lt_Lminus1_pow(d + 1), lt_monomial(-1, 1, Rat(v)));
        MotivicExpr B = me_from(lt_mul(cB, Lpref), {{1, 1}});
        term = me_add(term, me_mul(B, SE[q]));
        Z = me_add(Z, term);
    }
    return Z;
}

// ---- candidate poles / depth ----

namespace {

void add_pair(PoleSet& out, Int N, Int nu, const std::string& tag) {
    if (N <= 0) return;
    out.pairs[{N, nu}].insert(tag);
}

void collect_poles(const TreePtr& t, PoleSet& out, bool strong, bool inside) {
    const QOPair& p = t->pair;
    std::string rtag = inside ? "recursion" : "";
    auto tag = [&](const char* base) { return inside ? rtag : std::string(base); };
    if (t->terminal) {
        if (t->eps_eff >= 1) add_pair(out, 1, 1, tag("smooth"));
        // divisor pairs of an inner node repeat its parent edge pairs
        // (N' = M/c, nu' = nu p + bbar), so they are recorded only at the root
        if (!inside)
            for (int j = 0; j < p.d(); ++j)
                add_pair(out, p.N[j], p.nu.nu[j], tag("divisor"));
        return;
    }
    if (p.epsilon) add_pair(out, 1, 1, tag("smooth"));
    if (!inside)
        for (int j = 0; j < p.d(); ++j) add_pair(out, p.N[j], p.nu.nu[j], tag("divisor"));
    for (int q = 0; q < t->path.r(); ++q) {
        const EdgeData& e = t->path.edges[q];
        int special = -1, nspecial = 0;
        for (int l = 0; l < p.d(); ++l)
            if (p.N[l] == 0 && p.nu.nu[l] == 1 && e.b[l] == 1) {
                special = l;
                ++nspecial;
            }
        for (int l = 0; l < p.d(); ++l) {
            // a pair special in exactly one coordinate on a one-root edge is
            // provably not a pole; with several roots it survives through the
            // transversal sections, and special in >= 2 coordinates the pairs
            // coincide and are kept
            if (strong && nspecial == 1 && e.v == 1 && l == special) continue;
            add_pair(out, e.M[l] / e.c[l], Int(p.nu.nu[l]) * e.p[l] + e.bbar[l], tag("edge"));
        }
        for (auto& kid : t->children[q]) collect_poles(kid, out, strong, true);
    }
}

} // namespace

PoleSet candidate_poles(const QOPair& p) {
    PoleSet out;
    collect_poles(newton_tree(p), out, false, false);
    return out;
}

PoleSet strong_candidate_poles(const QOPair& p) {
    PoleSet out;
    collect_poles(newton_tree(p), out, true, false);
    return out;
}

namespace {
int depth_rec(const TreePtr& t) {
    if (t->terminal) return 0;
    int m = 0;
    for (auto& row : t->children)
        for (auto& kid : row) m = std::max(m, depth_rec(kid));
    return 1 + m;
}
} // namespace

int depth(const QOPair& p) { return depth_rec(newton_tree(p)); }

} // namespace qoz
