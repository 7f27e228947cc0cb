#pragma once
//
// Deterministic generators: finite groupoids with their unitaries and
// coproducts, random standard bases and random linked data.
//

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qgw/pmu.hpp"

namespace qgw {

struct Arrow {
    std::string id;
    Index src = 0;
    Index tgt = 0;
};

class FiniteGroupoid {
public:
    /// compose lists (g, h, gh) for every pair with src(g) == tgt(h).
    /// Throws PreconditionError unless the groupoid axioms hold.
    FiniteGroupoid(std::vector<std::string> units, std::vector<Arrow> arrows,
                   const std::vector<std::array<Index, 3>>& compose);

    Index unit_count() const { return static_cast<Index>(units_.size()); }
    Index arrow_count() const { return static_cast<Index>(arrows_.size()); }
    const std::vector<std::string>& units() const { return units_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    bool composable(Index g, Index h) const { return arrows_[g].src == arrows_[h].tgt; }
    /// gh for composable pairs, -1 otherwise.
    Index compose(Index g, Index h) const { return table_[static_cast<std::size_t>(g * arrow_count() + h)]; }
    Index identity_at(Index u) const { return identities_[static_cast<std::size_t>(u)]; }
    Index inverse(Index g) const { return inverses_[static_cast<std::size_t>(g)]; }
    std::vector<std::array<Index, 3>> composition_table() const;

private:
    std::vector<std::string> units_;
    std::vector<Arrow> arrows_;
    std::vector<Index> table_;
    std::vector<Index> identities_;
    std::vector<Index> inverses_;
};

FiniteGroupoid cyclic_group(Index n);
/// Arrows (i <- j) for 0 <= i, j < n, indexed i * n + j.
FiniteGroupoid pair_groupoid(Index n);

/// N = C^units with mu = normalized weights (counting state by default),
/// H = C^arrows, rho = sigma = range projections, sigma_hat = source
/// projections.
struct GroupoidLegs {
    std::shared_ptr<const GnsTriple> gns;
    AlgebraMap rho;
    AlgebraMap sigma;
    AlgebraMap sigma_hat;
};

GroupoidLegs groupoid_legs(const FiniteGroupoid& g, const std::optional<std::vector<double>>& weights = std::nullopt,
                           const Tolerance& tol = {});

/// V(d_g (x) d_h) = d_g (x) d_gh on normalized composable-pair classes.
PmuData groupoid_pmu(const FiniteGroupoid& g, const std::optional<std::vector<double>>& weights = std::nullopt,
                     const Tolerance& tol = {});

/// A = span{lambda_g}, Delta(lambda_g) = lambda_g (x) lambda_g on
/// H (x)_{rho sigma} H, counting state.
HopfData groupoid_hopf(const FiniteGroupoid& g, const Tolerance& tol = {});

/// Diagonal algebra on C^n spanned by the coordinate projections.
StarAlgebra diagonal_algebra(Index n);
/// Block-diagonal algebra (+) M_{n_i} acting on C^{sum n_i}.
StarAlgebra block_algebra(const std::vector<Index>& blocks);
/// Random faithful state on block_algebra(blocks).
State random_faithful_state(const std::vector<Index>& blocks, std::uint64_t seed);
CStarBase random_standard_base(const std::vector<Index>& blocks, std::uint64_t seed, const Tolerance& tol = {});

/// Haar-like random unitary from the QR of a Gaussian matrix.
Matrix random_unitary(Index n, std::uint64_t seed);

/// base conjugated by u^*: B' = u^* B u, zeta' = u^* zeta, linked through u.
LinkedBase random_linked_base(const GnsTriple& g, std::uint64_t seed, const Tolerance& tol = {});

/// V' = V diag(1, ..., e^{i theta}, ...) on source coordinate `index`.
PmuData phase_perturbed(const PmuData& p, Index index, double theta, const Tolerance& tol = {});
/// V replaced by the tensor flip; needs N = C so that both spaces are H (x) H.
PmuData swapped(const PmuData& p, const Tolerance& tol = {});
/// Delta' = Ad_{exp(i theta h)} o Delta with h a seeded random Hermitian
/// element of the classical fiber product.
HopfData perturbed_coproduct(const HopfData& h, double theta, std::uint64_t seed, const Tolerance& tol = {});

}  // namespace qgw
