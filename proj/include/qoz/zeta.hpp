#pragma once
#include <memory>
#include <set>

#include "qoz/cones.hpp"
#include "qoz/mpoly.hpp"
#include "qoz/zetalg.hpp"

namespace qoz {

// ---- candidate poles ----

struct PoleSet {
    // (N, nu), N > 0, meaning the candidate pole s = -nu/N; values are
    // provenance tags ("divisor", "edge", "smooth", "recursion")
    std::map<std::pair<Int, Int>, std::set<std::string>> pairs;
    bool contains(const Int& N, const Int& nu) const;
};

// ---- the recursion tree of the Newton process ----

struct NewtonTree {
    QOPair pair;                        // in good coordinates at this node
    std::vector<ShiftLogEntry> shifts;  // coordinate shifts applied on entry
    bool terminal = false;
    int eps_eff = 0;                    // z-order of h(0,...,0,z) at a terminal node
    NewtonPath path;                    // only meaningful when !terminal
    // children[q][c] is the pull-back for root class c of edge q, computed once
    // per irreducible factor (conjugate roots share one subtree)
    std::vector<std::vector<std::shared_ptr<const NewtonTree>>> children;
};
using TreePtr = std::shared_ptr<const NewtonTree>;

TreePtr newton_tree(const QOPair& p);

// ---- topological zeta functions ----

// terminal case h = x^N z^eps * unit (or a single smooth branch):
// (1/(s+1))^eps * prod over {j : N_j > 0} of 1/(nu_j + N_j s)
RatFuncS ztop_base(const QOPair& p);

// quasi-ordinary recursion:
// Z = sum J_vertex - sum v(q) J_edge + sum mult(edge cone) * sum_j Z(pullback)
RatFuncS ztop_qo(const QOPair& p);
RatFuncS ztop_tree(const TreePtr& t);

// Newton non-degenerate formula over all compact faces:
// Z = sum_{dim 0} J + (s/(s+1)) sum_{dim >= 1} (-1)^dim (dim)! V(tau) J
// Non-degeneracy is certified exactly when possible (disjoint-variable face
// polynomials, or squarefree segment restrictions); otherwise the caller must
// pass assume_nondegenerate.
RatFuncS ztop_nondeg(const MPoly& h, const FormExponents& nu,
                     bool assume_nondegenerate = false);

// ---- motivic zeta functions ----

// terminal closed form
MotivicExpr zmot_base(const QOPair& p);
// recursion for one essential variable (curve case); errors
// UnsupportedDegenerateMotivic when more than one variable is essential
MotivicExpr zmot_curve(const QOPair& p);
// non-recursive formula valid when every edge face polynomial is squarefree
MotivicExpr zmot_nondeg_qo(const QOPair& p);

// ---- pole sets / depth ----

PoleSet candidate_poles(const QOPair& p);
PoleSet strong_candidate_poles(const QOPair& p);

int depth(const QOPair& p);

} // namespace qoz
