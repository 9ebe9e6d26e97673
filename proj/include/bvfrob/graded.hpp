#pragma once

#include "bvfrob/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bvf {

struct BasisElement {
    std::string label;
    int degree = 0;
};

/// Finite graded vector space with an ordered, labelled basis.
class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::vector<BasisElement> basis);

    std::size_t dim() const { return basis_.size(); }
    const BasisElement& operator[](std::size_t i) const { return basis_[i]; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    int degree(std::size_t i) const { return basis_[i].degree; }
    const std::string& label(std::size_t i) const { return basis_[i].label; }

    std::optional<std::size_t> find(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;  // throws InputError

    /// Basis indices of the given degree, in basis order.
    std::vector<std::size_t> indices_of_degree(int degree) const;
    std::vector<int> degrees() const;  // distinct, ascending
    int min_degree() const;
    int max_degree() const;

    /// Degree of a vector if homogeneous; nullopt for zero or mixed vectors.
    std::optional<int> degree_of(const Vec& v) const;

    bool operator==(const GradedSpace& other) const;

private:
    std::vector<BasisElement> basis_;
    std::map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

/// Degree-homogeneous linear map stored as sparse rows (row = target index).
class GradedMap {
public:
    using Row = std::vector<std::pair<std::uint32_t, Scalar>>;

    GradedMap() = default;
    GradedMap(SpacePtr source, SpacePtr target, int degree);

    static GradedMap zero(SpacePtr source, SpacePtr target, int degree);
    static GradedMap identity(SpacePtr space);
    /// Build from a dense row-major matrix; throws MathError if an entry breaks homogeneity.
    static GradedMap from_dense(SpacePtr source, SpacePtr target, int degree,
                                const std::vector<Vec>& rows);

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int degree() const { return degree_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return source_ ? source_->dim() : 0; }

    Scalar get(std::size_t row, std::size_t col) const;
    /// Setting an entry that connects basis elements of the wrong degrees throws MathError.
    void set(std::size_t row, std::size_t col, const Scalar& value);
    void add_to(std::size_t row, std::size_t col, const Scalar& value);
    const Row& row(std::size_t i) const { return rows_[i]; }

    Vec apply(const Vec& x) const;
    Vec column(std::size_t j) const;
    std::vector<Vec> to_dense() const;

    bool is_zero() const;
    std::size_t nnz() const;

    GradedMap transpose() const;  // degree -degree, source/target swapped

    bool operator==(const GradedMap& other) const;
    bool operator!=(const GradedMap& other) const { return !(*this == other); }

    GradedMap& operator+=(const GradedMap& other);
    GradedMap& operator-=(const GradedMap& other);
    GradedMap& operator*=(const Scalar& s);

private:
    SpacePtr source_;
    SpacePtr target_;
    int degree_ = 0;
    std::vector<Row> rows_;
};

GradedMap operator+(GradedMap a, const GradedMap& b);
GradedMap operator-(GradedMap a, const GradedMap& b);
GradedMap operator*(const Scalar& s, GradedMap a);
GradedMap operator-(GradedMap a);
/// Composition f o g; degree is additive.
GradedMap compose(const GradedMap& f, const GradedMap& g);
GradedMap operator*(const GradedMap& f, const GradedMap& g);

/// Graded commutator [f, g] = fg - (-1)^{|f||g|} gf.
GradedMap graded_commutator(const GradedMap& f, const GradedMap& g);

}  // namespace bvf
