#include <algorithm>

#include "qoz/cones.hpp"
#include "qoz/mpoly.hpp"

namespace qoz {

int residual_z_order(const QOPair& p) {
    const FieldTower& F = *p.tower;
    MPoly r = p.residual;
    for (int v = 0; v < p.d(); ++v) r = mp_eval_var(F, r, v, AlgNum(Rat(0)));
    check(!mp_is_zero(r), "InternalError", "residual vanishes identically at x = 0");
    int ord = -1;
    for (auto& [e, c] : r.terms) {
        if (ord < 0 || e[p.d()] < ord) ord = e[p.d()];
    }
    return ord;
}

namespace {

// the z-lowest edge is a "bad face" when it is a power of a single linear form
// in a coordinate chart where z does not divide h: a shift of z can then move
// the corresponding root into the monomial part
bool bad_first_edge(const QOPair& p, const NewtonPath& path) {
    if (p.epsilon != 0) return false;
    if (path.edges.empty()) return false;
    const EdgeData& e = path.edges.front();
    return e.n1 == 1 && e.v == 1;
}

} // namespace

std::pair<QOPair, std::vector<ShiftLogEntry>> good_coordinates(const QOPair& p, int max_shifts) {
    const FieldTower& F = *p.tower;
    QOPair cur = p;
    std::vector<ShiftLogEntry> log;
    for (int iter = 0;; ++iter) {
        if (mp_deg_z(cur.residual) <= 0) return {cur, log};
        NewtonPath path = build_newton_path(cur);
        if (!bad_first_edge(cur, path)) return {cur, log};
        check(iter < max_shifts, "NonTerminatingNormalization",
              "coordinate normalization did not terminate: a factor has an "
              "infinite-series root (input out of the supported class)");
        const EdgeData& e = path.edges.front();
        // unique root beta of the monic linear factor w + c0
        const RootClass& rc = e.roots.front();
        check((int)rc.factor.size() == 2, "InternalError", "bad face root not linear");
        AlgNum beta = F.neg(F.div(rc.factor[0], rc.factor[1]));
        // shift z -> z + beta * x^b  (n1 == 1, so the slope is integral)
        std::vector<int> be(cur.d() + 1, 0);
        for (int l = 0; l < cur.d(); ++l) be[l] = (int)e.b[l].get_si();
        MPoly shift = mp_monomial(cur.d(), be, beta);
        MPoly h = mp_shift_z(F, qopair_full(cur), shift);
        cur = make_qopair_trusted(cur.tower, h, cur.nu);
        log.push_back({shift});
    }
}

QOPair newton_map_substitute(const QOPair& p, const EdgeData& e, const AlgNum& alpha) {
    const FieldTower& F = *p.tower;
    int d = p.d();
    check((int)e.b.size() == d, "InvalidInput", "edge dimension mismatch");

    // alpha^{n1} must be a root of the face polynomial
    AlgNum an = F.pow(alpha, (long)e.n1.get_si());
    check(F.is_zero(F.up_eval(e.face_poly_w, an)), "InvalidRoot",
          "alpha^{n1} is not a root of the face polynomial");

    // substitute x_l = y_l^{p_l}, z = (z1 + alpha) * prod y_l^{bbar_l}
    MPoly h = qopair_full(p);
    MPoly zs = mp_monomial(d, std::vector<int>(d + 1, 0), alpha);
    {
        std::vector<int> ez(d + 1, 0);
        ez[d] = 1;
        zs = mp_add(F, zs, mp_monomial(d, ez, AlgNum(Rat(1))));
    }
    std::vector<MPoly> zpow; // (z1 + alpha)^k
    zpow.push_back(mp_const(d, AlgNum(Rat(1))));
    MPoly out = mp_zero(d);
    for (auto& [a, c] : h.terms) {
        int k = a[d];
        while ((int)zpow.size() <= k) zpow.push_back(mp_mul(F, zpow.back(), zs));
        std::vector<int> ye(d + 1, 0);
        for (int l = 0; l < d; ++l)
            ye[l] = (int)(e.p[l].get_si()) * a[l] + (int)(e.bbar[l].get_si()) * k;
        out = mp_add(F, out, mp_mul(F, mp_monomial(d, ye, c), zpow[k]));
    }

    // the pulled-back form exponents
    FormExponents nu2;
    nu2.nu.resize(d);
    for (int l = 0; l < d; ++l)
        nu2.nu[l] = (int)(e.p[l].get_si()) * p.nu.nu[l] + (int)e.bbar[l].get_si();
    QOPair res = make_qopair_trusted(p.tower, out, nu2);

    // exponent bookkeeping must agree with the edge data
    for (int l = 0; l < d; ++l) {
        Int expect = e.b[l] > 0 ? e.M[l] / e.c[l] : Int(p.N[l]);
        check(Int(res.N[l]) == expect, "InternalError", "pullback monomial exponent mismatch");
    }
    check(res.epsilon <= 1, "InternalError", "pullback not squarefree in z");

    // re-normalize unless the pair is already terminal (unit or a single smooth
    // branch, where normalization may not terminate and is not needed)
    if (mp_deg_z(res.residual) > 0 && res.epsilon == 0 && residual_z_order(res) >= 2)
        res = good_coordinates(res).first;
    return res;
}

} // namespace qoz
