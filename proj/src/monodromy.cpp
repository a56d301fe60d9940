#include <numeric>
#include <sstream>

#include "qoz/monodromy.hpp"

namespace qoz {

CycloProduct cp_one() { return {}; }

CycloProduct cp_factor(const Int& a, int e) {
    CycloProduct c;
    if (e != 0 && a > 0) c.factors[a] = e;
    return c;
}

CycloProduct cp_mul(const CycloProduct& x, const CycloProduct& y) {
    CycloProduct r = x;
    for (auto& [a, e] : y.factors) {
        int m = (r.factors.count(a) ? r.factors[a] : 0) + e;
        if (m == 0)
            r.factors.erase(a);
        else
            r.factors[a] = m;
    }
    return r;
}

CycloProduct cp_pow(const CycloProduct& x, int e) {
    CycloProduct r;
    if (e == 0) return r;
    for (auto& [a, m] : x.factors) r.factors[a] = m * e;
    return r;
}

bool cp_eq(const CycloProduct& x, const CycloProduct& y) { return x.factors == y.factors; }

std::string cp_to_string(const CycloProduct& x) {
    if (x.factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [a, e] : x.factors) {
        if (!first) os << "*";
        first = false;
        os << "(1-t";
        if (a != 1) os << "^" << a;
        os << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

Int cp_degree(const CycloProduct& x) {
    Int d = 0;
    for (auto& [a, e] : x.factors) d += a * e;
    return d;
}

namespace {

CycloProduct curve_rec(const TreePtr& t) {
    const QOPair& p = t->pair;
    Int N = p.N[0];
    if (t->terminal) {
        if (t->eps_eff == 0) return N > 0 ? cp_factor(N) : cp_one();
        return N > 0 ? cp_one() : cp_factor(1);
    }
    CycloProduct z = cp_one();
    // end factors: the toric divisor next to a coordinate axis not contained
    // in h^{-1}(0) keeps an extra stratum point
    if (N == 0) z = cp_mul(z, cp_factor(t->path.vertex_z.back()));
    if (p.epsilon == 0) z = cp_mul(z, cp_factor(t->path.vertex_x[0][0]));
    for (int q = 0; q < t->path.r(); ++q) {
        const EdgeData& e = t->path.edges[q];
        z = cp_mul(z, cp_factor(e.M[0], -e.v));
        for (size_t c = 0; c < e.roots.size(); ++c)
            z = cp_mul(z, cp_pow(curve_rec(t->children[q][c]), e.roots[c].distinct));
    }
    return z;
}

int effective_z_order_m(const QOPair& p) { return p.epsilon + residual_z_order(p); }

CycloProduct monomial_base(const QOPair& p, int eff) {
    // h = x^N z^eff * unit up to a formal coordinate change
    int positives = 0;
    Int Npos = 0;
    for (int j = 0; j < p.d(); ++j)
        if (p.N[j] > 0) {
            ++positives;
            Npos = p.N[j];
        }
    if (eff >= 1) return positives > 0 ? cp_one() : cp_factor(1);
    if (positives == 1) return cp_factor(Npos);
    return cp_one();  // unit, or a normal crossing of >= 2 smooth divisors
}

// A'Campo count over the toric modification attached to the Newton polygon,
// valid for any plane-curve germ (no reducedness assumed): every edge ray
// contributes (1 - t^M)^{-v} with v its number of distinct face roots, the two
// boundary rays contribute their multiplicities when the matching axis is not
// a component, and face roots of multiplicity >= 2 are pushed down a Newton
// map and handled recursively.
CycloProduct plane_rec(TowerPtr T, const MPoly& H, int guard) {
    check(guard > 0, "InternalError", "plane monodromy recursion exceeded the depth guard");
    check(H.d == 1 && !mp_is_zero(H), "InvalidInput", "plane germ must be nonzero with d = 1");
    const FieldTower& F = *T;
    std::vector<int> mono;
    MPoly R = mp_extract_monomial(H, mono);
    long N = mono[0], E = mono[1];
    if (mp_deg_z(R) == 0 || R.terms.count({0, 0})) {
        // monomial times a unit germ
        if (N > 0 && E > 0) return cp_one();
        if (N > 0) return cp_factor(Int(N));
        if (E > 0) return cp_factor(Int(E));
        return cp_one();
    }
    // lower Newton polygon of R: minimal x-exponent per z-degree, then the
    // convex staircase from (x_bot, 0) to (0, k_top)
    std::map<int, int> minx;  // z-degree -> minimal x-exponent
    for (auto& [e, c] : R.terms) {
        auto it = minx.find(e[1]);
        if (it == minx.end() || e[0] < it->second) minx[e[1]] = e[0];
    }
    std::vector<std::pair<long, long>> verts;  // (x, k)
    long cx = minx.at(0), ck = 0;
    verts.push_back({cx, ck});
    while (cx > 0) {
        // steepest available descent: minimize (x - cx)/(k - ck); ties go to
        // the farthest point, so consecutive vertices are true corners
        long bk = -1, bx = 0;
        for (auto& [k, x] : minx) {
            if (k <= ck || x >= cx) continue;
            // compare slopes (x - cx)/(k - ck) by cross-multiplication
            // (denominators are positive); ties go to the farthest point,
            // so consecutive vertices are true corners
            long lhs = (x - cx) * (bk - ck), rhs = (bx - cx) * (k - ck);
            if (bk < 0 || lhs < rhs || (lhs == rhs && k > bk)) {
                bk = k;
                bx = x;
            }
        }
        check(bk > 0, "InternalError", "plane Newton polygon does not reach the z-axis");
        cx = bx;
        ck = bk;
        verts.push_back({cx, ck});
    }
    CycloProduct z = cp_one();
    if (N == 0) {
        // ord_z H(0, z): x = 0 is not a component, its strict transform ends a
        // divisor chain whose last multiplicity is this order
        long a = verts.back().second + E;
        z = cp_mul(z, cp_factor(Int(a)));
    }
    if (E == 0) {
        long a = verts.front().first + N;
        z = cp_mul(z, cp_factor(Int(a)));
    }
    for (size_t q = 0; q + 1 < verts.size(); ++q) {
        auto [x0, k0] = verts[q];
        auto [x1, k1] = verts[q + 1];
        long dz = k1 - k0, dx = x0 - x1;
        long g = std::gcd(dz, dx);
        long n1 = dz / g, b = dx / g;
        Int M = Int(n1) * (x0 + N) + Int(b) * (k0 + E);
        // face polynomial in w, with z^{n1} = w x^b along the edge
        UPoly fp((size_t)g + 1, FieldTower::zero());
        for (auto& [e, c] : R.terms) {
            if (e[1] < k0 || e[1] > k1) continue;
            if (Int(n1) * e[0] + Int(b) * e[1] != Int(n1) * x0 + Int(b) * k0) continue;
            fp[(size_t)((e[1] - k0) / n1)] = c;
        }
        auto parts = factor_irreducible(F, fp);
        int v = 0;
        for (auto& part : parts) v += (int)part.factor.size() - 1;
        z = cp_mul(z, cp_factor(M, -v));
        for (auto& part : parts) {
            if (part.multiplicity < 2) continue;  // transversal smooth branches
            auto [F1, beta] = adjoin_root(F, part.factor, "b");
            AlgNum alpha = beta;
            FieldTower F2 = F1;
            if (n1 > 1) {
                UPoly pw((size_t)n1 + 1, FieldTower::zero());
                pw[0] = F1.neg(beta);
                pw.back() = FieldTower::one();
                auto [F2b, a2] = adjoin_root(F1, pw, "a");
                F2 = std::move(F2b);
                alpha = a2;
            }
            auto T2 = std::make_shared<FieldTower>(std::move(F2));
            const FieldTower& G = *T2;
            // Newton map x = y^{n1}, z = (z1 + alpha) y^b on the full germ
            MPoly zs = mp_monomial(1, {0, 0}, alpha);
            zs = mp_add(G, zs, mp_monomial(1, {0, 1}, FieldTower::one()));
            std::vector<MPoly> zpow = {mp_const(1, FieldTower::one())};
            MPoly H2 = mp_zero(1);
            for (auto& [e, c] : H.terms) {
                int k = e[1];
                while ((int)zpow.size() <= k) zpow.push_back(mp_mul(G, zpow.back(), zs));
                std::vector<int> ye = {(int)(n1 * e[0] + b * e[1]), 0};
                H2 = mp_add(G, H2, mp_mul(G, mp_monomial(1, ye, c), zpow[k]));
            }
            z = cp_mul(z, cp_pow(plane_rec(T2, H2, guard - 1), (int)part.factor.size() - 1));
        }
    }
    return z;
}

}  // namespace

CycloProduct zeta_monodromy_plane(TowerPtr tower, const MPoly& h) {
    return plane_rec(std::move(tower), h, 64);
}

CycloProduct zeta_monodromy_curve(const QOPair& p) {
    check(p.d() == 1, "InvalidInput", "curve monodromy routine requires exactly one x variable");
    return curve_rec(newton_tree(p));
}

CycloProduct zeta_monodromy_qo(const QOPair& p) {
    if (p.d() == 1) return zeta_monodromy_curve(p);
    int eff = effective_z_order_m(p);
    if (eff <= 1) return monomial_base(p, eff);
    QOPair g = good_coordinates(p).first;
    NewtonPath path = build_newton_path(g);
    const EdgeData& top = path.edges.back();
    int nonzero = 0, keep = -1;
    for (int j = 0; j < g.d(); ++j)
        if (top.b[j] > 0) {
            ++nonzero;
            if (keep < 0) keep = j;
        }
    Int n = path.vertex_z.back();
    if (nonzero >= 2) return cp_factor(n);
    check(keep >= 0, "InternalError", "top edge without x-support");
    // the smallest characteristic exponent lives in one coordinate: restrict
    // the other variables to 0 and compute on that coordinate plane; the
    // restriction may be non-reduced, so use the general plane-germ routine
    const FieldTower& F = *g.tower;
    MPoly r = qopair_full(g);
    for (int j = 0; j < g.d(); ++j)
        if (j != keep) r = mp_eval_var(F, r, j, AlgNum(Rat(0)));
    check(!mp_is_zero(r), "InternalError", "coordinate-plane restriction vanished");
    MPoly h1 = mp_zero(1);
    for (auto& [e2, c] : r.terms) {
        std::vector<int> e1 = {e2[keep], e2[g.d()]};
        h1 = mp_add(F, h1, mp_monomial(1, e1, c));
    }
    return zeta_monodromy_plane(g.tower, h1);
}

bool eigenvalue_check(const Int& N, const Int& nu, const CycloProduct& zeta) {
    check(N > 0, "InvalidInput", "eigenvalue test needs N > 0");
    long sum = 0;
    for (auto& [a, e] : zeta.factors)
        if ((a * nu) % N == 0) sum += e;
    return sum != 0;
}

std::vector<PoleVerdict> check_conjecture(const QOPair& p) {
    PoleSet scp = strong_candidate_poles(p);
    CycloProduct zeta0 = zeta_monodromy_qo(p);
    std::string z0 = cp_to_string(zeta0);
    std::vector<PoleVerdict> out;
    for (auto& [k, tags] : scp.pairs) {
        auto [N, nu] = k;
        PoleVerdict v;
        v.pole = k;
        if (eigenvalue_check(N, nu, zeta0)) {
            v.status = "VERIFIED_AT_ORIGIN";
            v.witness = z0;
        } else {
            bool divisor = false;
            for (int j = 0; j < p.d(); ++j)
                if (p.N[j] > 0 && Int(p.N[j]) * nu == Int(p.nu.nu[j]) * N) divisor = true;
            bool unit_pole = (N == nu);  // s = -1, eigenvalue 1
            if (divisor || unit_pole) {
                // on a generic point of the coordinate stratum (resp. a smooth
                // point of h^{-1}(0)) the local zeta is 1-t^{N_j} (resp. 1-t),
                // which always carries the eigenvalue
                v.status = "VERIFIED_ON_COORDINATE_STRATUM";
                v.witness = divisor ? "coordinate stratum, zeta 1-t^N" : "smooth point, zeta 1-t";
            } else {
                check(p.d() >= 2, "InternalError",
                      "plane-curve strong candidate failed the origin eigenvalue test");
                v.status = "DEFERRED_TO_TRANSVERSAL_SECTION";
                v.witness = "transversal section (not computed)";
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace qoz
