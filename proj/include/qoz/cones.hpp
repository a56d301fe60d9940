#pragma once
#include <functional>

#include "qoz/hull.hpp"
#include "qoz/mpoly.hpp"
#include "qoz/zetalg.hpp"

namespace qoz {

// ---- the monotone Newton path of a quasi-ordinary pair ----

struct RootClass {
    UPoly factor;      // irreducible over the pair's tower, in the edge variable w
    int multiplicity;  // multiplicity in the face polynomial
    int distinct;      // number of distinct roots beta it carries (= its degree)
};

struct EdgeData {
    std::vector<Rat> lambda;  // multi-slope b/n1
    Int n1;                   // primitive z-drop
    std::vector<Int> b;       // primitive x-step (componentwise >= 0)
    std::vector<Int> c;       // c_l = gcd(n1, b_l)
    std::vector<Int> p;       // p_l = n1 / c_l
    std::vector<Int> bbar;    // bbar_l = b_l / c_l
    std::vector<Int> M;       // value of n1*x_l + b_l*z on the edge
    std::vector<std::vector<Int>> w;  // generators w_l = (n1 e_l + b_l e_{d+1}) / c_l
    UPoly face_poly_w;        // face polynomial in w (z^{n1} = w x^b direction)
    std::vector<RootClass> roots;
    int v = 0;                // total number of distinct roots
    int lattice_len = 0;      // number of primitive steps along the edge
};

struct NewtonPath {
    std::vector<std::vector<Int>> vertex_x;  // x-part of each vertex
    std::vector<Int> vertex_z;               // z-height d_q, strictly increasing
    std::vector<EdgeData> edges;             // edges[q] joins vertex q and q+1
    int r() const { return (int)edges.size(); }
};

NewtonPath build_newton_path(const QOPair& p);

// ---- simplicial cones and fundamental sets ----

struct SimplicialCone {
    std::vector<std::vector<Int>> gens;       // primitive integer vectors
    std::vector<std::vector<Int>> fset;       // fundamental set G
    Int multiplicity;                         // |G|
};

SimplicialCone fundamental_set(const std::vector<std::vector<Int>>& gens);

// generating function of the strictly positive lattice points of the cone:
// (sum over G of y^g) / prod over gens of (1 - y^gen), with y^k = L^{-a} T^b
// given by weight(k) = (a, b)
using ConeWeight = std::function<std::pair<Int, Int>(const std::vector<Int>&)>;
MotivicExpr genfun(const SimplicialCone& cone, const ConeWeight& weight);

// ---- J-terms of the path ----

RatFuncS J_edge(const EdgeData& e, const FormExponents& nu);
RatFuncS J_vertex(const NewtonPath& path, int q, const FormExponents& nu,
                  const std::vector<int>& N, int epsilon);

// ---- the general compact-face fan (non-degenerate engine) ----

struct FanFace {
    std::vector<int> pts;                    // indices into support points
    int dim = 0;
    Int normalized_volume;                   // (dim)! * V(tau), integer
    std::vector<std::vector<Int>> rays;      // extreme rays of the dual cone
    std::vector<SimplicialCone> simplices;   // placing triangulation of the dual cone
};

struct GeneralFaceFan {
    int n = 0;                               // ambient dimension d+1
    std::vector<std::vector<Int>> support;
    std::vector<FanFace> faces;              // all compact faces
};

GeneralFaceFan build_general_fan(const MPoly& h);

// facets of the pointed cone spanned by the given rays (normals primitive,
// oriented so every ray is on the nonnegative side)
std::vector<std::vector<Int>> cone_facet_normals(const std::vector<std::vector<Int>>& rays);
// deterministic pulling triangulation in input-ray order; each output is a
// maximal linearly independent generator subset
std::vector<std::vector<std::vector<Int>>> triangulate_cone(
    const std::vector<std::vector<Int>>& rays);

// sigma_omega(k) = sum nu_l k_l + k_{d+1}
Int sigma_weight(const FormExponents& nu, const std::vector<Int>& k);
// m_h(k) = min over the support of h of k . x
Int min_support_value(const std::vector<std::vector<Int>>& support, const std::vector<Int>& k);

} // namespace qoz
