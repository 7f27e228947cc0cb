#pragma once
//
// Relative tensor products: the state-based one H (x)_mu K over the GNS space
// of a faithful state, and the C*-based one alpha |> H_base <| beta over a
// C*-base. Both are realized as quotients of the plain product H (x) K, with
// the plain index a * dim(K) + c.
//

#include <memory>
#include <string>

#include "qgw/cfact.hpp"

namespace qgw {

enum class Flavor { State, CStar };

struct RelativeTensorSpace {
    Flavor flavor = Flavor::State;
    Index left_dim = 0;
    Index right_dim = 0;
    Matrix gram;
    GramQuotient quotient;
    /// R(e_a) and R(f_c): maps from the base space (H_mu or H_base) into H, K.
    std::vector<Matrix> left_r;
    std::vector<Matrix> right_r;
    Vector zeta;

    // State flavor
    std::shared_ptr<const GnsTriple> gns;
    AlgebraMap left_rep;
    AlgebraMap right_rep;

    // C* flavor
    FactorizationPtr left_fact;
    FactorizationPtr right_fact;

    Index dim() const { return quotient.dim; }
    Index plain_dim() const { return left_dim * right_dim; }
    const Matrix& classes() const { return quotient.classes; }
    const Matrix& section() const { return quotient.section; }
    Vector class_of(const Vector& xi, const Vector& eta) const;
};

using SpacePtr = std::shared_ptr<const RelativeTensorSpace>;

/// H_left (x)_mu K_right; the two representations must have opposite sides.
RelativeTensorSpace rtp_state(std::shared_ptr<const GnsTriple> g, const AlgebraMap& left,
                              const AlgebraMap& right, const Tolerance& tol = {});

/// alpha |> H_base <| beta, with beta a factorization over the opposite base.
RelativeTensorSpace rtp_cstar(FactorizationPtr left, FactorizationPtr right, const Tolerance& tol = {});

/// Class of xi |> x <| eta computed from inner products with the class basis.
Vector triple_class(const RelativeTensorSpace& s, const Matrix& xi, const Vector& x, const Matrix& eta);

/// |xi>_1 : K -> X for xi in the left factorization, |eta>_2 : H -> X for
/// eta in the right one. Throws MembershipError outside the factorization.
Matrix ket_left(const RelativeTensorSpace& s, const Matrix& xi, const Tolerance& tol = {});
Matrix ket_right(const RelativeTensorSpace& s, const Matrix& eta, const Tolerance& tol = {});

/// max over basis data of the differences between xi |> eta x, xi |> x <| eta
/// and xi x <| eta.
double identification_residual(const RelativeTensorSpace& s, const Tolerance& tol = {});

/// [|xi>_1 delta] on X: the new leg sits on the right factor, over delta's base.
FactorizationPtr leg_right(const RelativeTensorSpace& x, const CStarFactorization& delta,
                           const Tolerance& tol = {});
/// [|eta>_2 gamma] on X: the new leg sits on the left factor, over gamma's base.
FactorizationPtr leg_left(const RelativeTensorSpace& x, const CStarFactorization& gamma,
                          const Tolerance& tol = {});

/// S (x) T from src to tgt; NotWellDefinedError if the null space of src is
/// not carried into the null space of tgt.
struct Lift {
    Matrix op;
    double residual = 0.0;
};

Lift lift_checked(const RelativeTensorSpace& src, const RelativeTensorSpace& tgt, const Matrix& s,
                  const Matrix& t, const Tolerance& tol = {});
Matrix lift(const RelativeTensorSpace& src, const RelativeTensorSpace& tgt, const Matrix& s, const Matrix& t,
            const Tolerance& tol = {});
/// lift_checked for every pair, ordered (ss[0], ts[0]), (ss[0], ts[1]), ...
std::vector<Lift> lift_family(const RelativeTensorSpace& src, const RelativeTensorSpace& tgt,
                              const std::vector<Matrix>& ss, const std::vector<Matrix>& ts);
Matrix lift(const RelativeTensorSpace& s, const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// The flipped space K (x) H and the flip unitary between the two.
struct Flip {
    std::shared_ptr<const RelativeTensorSpace> target;
    Matrix op;
    double well_defined = 0.0;
    double unitarity = 0.0;
};

Flip flip(const RelativeTensorSpace& s, const Tolerance& tol = {});

/// Permutation matrix of C^{d_0} (x) ... (x) C^{d_{k-1}} sending factor i to
/// position perm[i].
Matrix tensor_permutation(const std::vector<Index>& dims, const std::vector<Index>& perm);

/// Class maps of a nested product from the plain triple product.
/// Left nesting: outer = X (x) H3 with X = inner = H1 (x) H2.
/// Right nesting: outer = H1 (x) X with X = inner = H2 (x) H3.
struct NestedQuotient {
    Matrix classes;
    Matrix section;
};

NestedQuotient nest_left(const RelativeTensorSpace& outer, const RelativeTensorSpace& inner);
NestedQuotient nest_right(const RelativeTensorSpace& outer, const RelativeTensorSpace& inner);

/// Operator between nested quotients induced by a plain permutation (or the
/// identity when perm is empty), certified for well-definedness and
/// unitarity.
struct InducedUnitary {
    Matrix op;
    double well_defined = 0.0;
    double unitarity = 0.0;
};

InducedUnitary induced_unitary(const NestedQuotient& src, const NestedQuotient& tgt, const Matrix& plain);

/// Phi : H (x)_mu K -> alpha |> H_base <| beta for linked data.
struct PhiUnitary {
    Matrix op;
    double well_defined = 0.0;
    double unitarity = 0.0;
    double membership = 0.0;
};

PhiUnitary phi_unitary(const RelativeTensorSpace& state_side, const RelativeTensorSpace& cstar_side,
                       const LinkedBase& lb, const Tolerance& tol = {});

}  // namespace qgw
