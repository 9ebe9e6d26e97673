#pragma once

#include "bvfrob/bv.hpp"
#include "bvfrob/linalg.hpp"
#include "bvfrob/report.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace bvf {

/// Block-diagonal symmetric Gram matrix; block q is indexed by space.indices_of_degree(q).
class InnerProduct {
public:
    InnerProduct() = default;
    InnerProduct(SpacePtr space, std::map<int, Matrix> blocks, std::string kind = "explicit");

    static InnerProduct orthonormal(SpacePtr space);
    /// Seeded random symmetric positive-definite blocks (L D L^T with small integer entries).
    static InnerProduct random(SpacePtr space, std::uint64_t seed);
    /// Build from a full Gram matrix; throws InputError on cross-degree entries or asymmetry.
    static InnerProduct from_full(SpacePtr space, const Matrix& full, std::string kind = "explicit");

    const SpacePtr& space() const { return space_; }
    const std::map<int, Matrix>& blocks() const { return blocks_; }
    const Matrix& block(int degree) const;
    const std::string& kind() const { return kind_; }
    Matrix full() const;

    /// Sylvester criterion on every block (all leading principal minors positive).
    bool positive_definite() const;

private:
    SpacePtr space_;
    std::map<int, Matrix> blocks_;
    std::string kind_;
};

/// Rows/cols of a graded map restricted to index lists.
Matrix block_of(const GradedMap& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

/// Adjoint of d with respect to ip: per degree, d* = G_q^{-1} d^T G_{q+1}.
GradedMap adjoint(const GradedMap& d, const InnerProduct& ip);

struct Cohomology {
    SpacePtr H;                    // basis of H(A), one element per harmonic representative
    std::vector<Vec> representatives;  // in A, same order as H
    std::vector<int> betti() const;    // dims by degree from min to max degree of A
    int betti_offset = 0;             // degree of betti()[0]
};

/// Harmonic representatives: kernel of dd* + d*d per degree. The unit class is listed
/// first when 1 is harmonic. Throws MathError if ip is not positive definite.
Cohomology cohomology(const BVAlgebra& A, const InnerProduct& ip);

struct Retract {
    SpacePtr H;
    GradedMap iota;  // H -> A, degree 0
    GradedMap p;     // A -> H, degree 0
    GradedMap h;     // A -> A, degree -1
};

/// iota = harmonic inclusion, p = orthogonal projection, h = -d* G with G the Green operator.
Retract build_retract(const BVAlgebra& A, const InnerProduct& ip);

/// p iota = id, hd + dh = iota p - id, h^2 = h iota = p h = 0, d iota = 0, p d = 0.
Report verify_retract(const BVAlgebra& A, const Retract& R);

}  // namespace bvf
