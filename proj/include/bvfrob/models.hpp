#pragma once

#include "bvfrob/bv.hpp"
#include "bvfrob/retract.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bvf {

/// Exterior algebra on n degree-1 generators; basis e_I ordered by |I|, then lexicographically.
class ExteriorAlgebra {
public:
    explicit ExteriorAlgebra(std::size_t n, const std::string& prefix = "e");

    std::size_t generators() const { return n_; }
    const SpacePtr& space() const { return space_; }
    std::uint32_t mask(std::size_t i) const { return masks_[i]; }
    std::size_t index(std::uint32_t mask) const { return index_.at(mask); }
    std::size_t top() const { return index((1u << n_) - 1); }

    /// e_I e_J = wedge_sign(I, J) e_{I u J}; 0 if I and J meet.
    static int wedge_sign(std::uint32_t I, std::uint32_t J);
    std::vector<MultEntry> mult_entries() const;

private:
    std::size_t n_;
    SpacePtr space_;
    std::vector<std::uint32_t> masks_;
    std::map<std::uint32_t, std::size_t> index_;
};

/// [X_i, X_j] = c X_k (0-based; the antisymmetric partner is implied).
struct Bracket {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    Scalar c;
};

/// Multivector: sum of coeff * X_{i1} ^ ... ^ X_{ik} (indices 0-based, in the given order).
struct Multivector {
    std::vector<std::pair<std::vector<std::size_t>, Scalar>> terms;
    bool is_zero() const;
};

struct CEModel {
    std::string name;
    std::size_t n = 0;
    std::vector<Bracket> brackets;
};

/// c^k_{ij} for all i, j (antisymmetrized; throws InputError on inconsistent entries).
std::vector<std::vector<std::vector<Scalar>>> structure_tensor(const CEModel& model);

/// de_k = -sum_{i<j} c^k_{ij} e_i e_j, extended as a derivation.
GradedMap ce_differential(const ExteriorAlgebra& ext, const CEModel& model);

/// Contraction iota_w = iota_{X_i1} o ... o iota_{X_ik} summed over the terms of w.
GradedMap contraction(const ExteriorAlgebra& ext, const Multivector& w);

/// Wedge product of multivectors (concatenation of index words).
Multivector wedge(const Multivector& u, const Multivector& v);

/// Coefficient of the top monomial e_1...e_n.
Vec top_trace(const ExteriorAlgebra& ext);

/// Orthonormal Hodge star: *(e_I) = sign(I, I^c) e_{I^c}.
Matrix hodge_star(const ExteriorAlgebra& ext);

/// <a, b> = Tr(a * (*b)); identity on the wedge basis.
InnerProduct star_inner_product(const ExteriorAlgebra& ext, const BVAlgebra& A);

/// Delta_0 = d, Delta_1 = iota_pi d - d iota_pi, Delta_2 = iota_eta iota_pi.
/// Throws InputError if pi is not a bivector or eta not a vector.
BVAlgebra generate_jacobi_model(const CEModel& model, const Multivector& pi, const Multivector& eta);

/// Square-zero extension K*1 + span{x (deg 0), y (deg 1)} with dx = y, all products of x, y zero.
BVAlgebra contractible_model();

}  // namespace bvf
