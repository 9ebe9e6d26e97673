#include "bvfrob/retract.hpp"
#include "bvfrob/checks.hpp"

#include <algorithm>
#include <random>

namespace bvf {

InnerProduct::InnerProduct(SpacePtr space, std::map<int, Matrix> blocks, std::string kind)
    : space_(std::move(space)), blocks_(std::move(blocks)), kind_(std::move(kind))
{
    for (int q : space_->degrees()) {
        auto it = blocks_.find(q);
        std::size_t m = space_->indices_of_degree(q).size();
        if (it == blocks_.end() || it->second.rows() != m || it->second.cols() != m)
            throw InputError("inner product block for degree " + std::to_string(q) + " has the wrong size");
        if (!(it->second == it->second.transpose()))
            throw InputError("inner product block for degree " + std::to_string(q) + " is not symmetric");
    }
}

InnerProduct InnerProduct::orthonormal(SpacePtr space)
{
    std::map<int, Matrix> blocks;
    for (int q : space->degrees())
        blocks[q] = Matrix::identity(space->indices_of_degree(q).size());
    return InnerProduct(std::move(space), std::move(blocks), "orthonormal");
}

InnerProduct InnerProduct::random(SpacePtr space, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::map<int, Matrix> blocks;
    for (int q : space->degrees()) {
        const std::size_t m = space->indices_of_degree(q).size();
        Matrix L = Matrix::identity(m);
        Matrix D(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            D(i, i) = static_cast<long>(rng() % 3) + 1;
            for (std::size_t j = 0; j < i; ++j)
                L(i, j) = static_cast<long>(rng() % 5) - 2;
        }
        blocks[q] = L * D * L.transpose();
    }
    return InnerProduct(std::move(space), std::move(blocks), "random:" + std::to_string(seed));
}

InnerProduct InnerProduct::from_full(SpacePtr space, const Matrix& full, std::string kind)
{
    const std::size_t n = space->dim();
    if (full.rows() != n || full.cols() != n)
        throw InputError("inner product matrix has the wrong size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(full(i, j)) != 0 && space->degree(i) != space->degree(j))
                throw InputError("inner product pairs " + space->label(i) + " with " + space->label(j) +
                                 " of a different degree");
    std::map<int, Matrix> blocks;
    for (int q : space->degrees()) {
        auto idx = space->indices_of_degree(q);
        Matrix b(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = 0; c < idx.size(); ++c)
                b(a, c) = full(idx[a], idx[c]);
        blocks[q] = std::move(b);
    }
    return InnerProduct(std::move(space), std::move(blocks), std::move(kind));
}

const Matrix& InnerProduct::block(int degree) const
{
    auto it = blocks_.find(degree);
    if (it == blocks_.end())
        throw MathError("no inner product block in degree " + std::to_string(degree));
    return it->second;
}

Matrix InnerProduct::full() const
{
    Matrix out(space_->dim(), space_->dim());
    for (const auto& [q, b] : blocks_) {
        auto idx = space_->indices_of_degree(q);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = 0; c < idx.size(); ++c)
                out(idx[a], idx[c]) = b(a, c);
    }
    return out;
}

bool InnerProduct::positive_definite() const
{
    for (const auto& [q, b] : blocks_) {
        for (std::size_t k = 1; k <= b.rows(); ++k) {
            Matrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    minor(i, j) = b(i, j);
            if (sgn(determinant(minor)) <= 0)
                return false;
        }
    }
    return true;
}

Matrix block_of(const GradedMap& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    Matrix out(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(a, c) = m.get(rows[a], cols[c]);
    return out;
}

namespace {

GradedMap to_map(SpacePtr source, SpacePtr target, int degree, const Matrix& m)
{
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(m.row(i));
    return GradedMap::from_dense(std::move(source), std::move(target), degree, rows);
}

Matrix block_inverse(const InnerProduct& ip)
{
    const auto& V = *ip.space();
    Matrix out(V.dim(), V.dim());
    for (const auto& [q, b] : ip.blocks()) {
        auto idx = V.indices_of_degree(q);
        Matrix inv = inverse(b);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = 0; c < idx.size(); ++c)
                out(idx[a], idx[c]) = inv(a, c);
    }
    return out;
}

void require_pd(const InnerProduct& ip)
{
    if (!ip.positive_definite())
        throw MathError("inner product is not positive definite");
}

std::string class_label(const GradedSpace& V, const Vec& rep, int degree, std::size_t ordinal)
{
    std::optional<std::size_t> single;
    for (std::size_t i = 0; i < rep.size(); ++i) {
        if (sgn(rep[i]) == 0)
            continue;
        if (single || rep[i] != 1)
            return "h" + std::to_string(degree) + "_" + std::to_string(ordinal);
        single = i;
    }
    return single ? V.label(*single) : "h" + std::to_string(degree) + "_" + std::to_string(ordinal);
}

}  // namespace

GradedMap adjoint(const GradedMap& d, const InnerProduct& ip)
{
    Matrix G = ip.full();
    Matrix Ginv = block_inverse(ip);
    Matrix ds = Ginv * Matrix::from_map(d).transpose() * G;
    return to_map(d.target(), d.source(), -d.degree(), ds);
}

std::vector<int> Cohomology::betti() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < H->dim(); ++i) {
        int q = H->degree(i) - betti_offset;
        if (q < 0)
            continue;
        if (static_cast<std::size_t>(q) >= out.size())
            out.resize(q + 1, 0);
        ++out[q];
    }
    return out;
}

Cohomology cohomology(const BVAlgebra& A, const InnerProduct& ip)
{
    require_pd(ip);
    const auto& V = *A.space();
    const std::size_t n = V.dim();
    Matrix D = Matrix::from_map(A.d());
    Matrix Ds = Matrix::from_map(adjoint(A.d(), ip));
    Matrix L = D * Ds + Ds * D;

    std::vector<std::pair<int, Vec>> reps;
    const Vec one = A.unit_vector();
    const bool unit_harmonic = is_zero(L.apply(one));
    for (int q : V.degrees()) {
        auto idx = V.indices_of_degree(q);
        Matrix Lq(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = 0; c < idx.size(); ++c)
                Lq(a, c) = L(idx[a], idx[c]);
        std::vector<Vec> kernel;
        for (const auto& k : kernel_basis(Lq)) {
            Vec v = zero_vec(n);
            for (std::size_t a = 0; a < idx.size(); ++a)
                v[idx[a]] = k[a];
            kernel.push_back(std::move(v));
        }
        if (q == 0 && unit_harmonic) {
            std::vector<Vec> chosen{one};
            for (auto& v : kernel) {
                auto trial = chosen;
                trial.push_back(v);
                if (rank(Matrix::from_columns(trial, n)) == trial.size())
                    chosen = std::move(trial);
            }
            kernel = std::move(chosen);
        }
        for (auto& v : kernel)
            reps.emplace_back(q, std::move(v));
    }
    // The unit class goes first so structure constants can be indexed from it.
    std::stable_partition(reps.begin(), reps.end(), [&](const auto& r) { return r.second == one; });

    Cohomology out;
    std::vector<BasisElement> basis;
    std::map<int, std::size_t> ordinal;
    for (const auto& [q, v] : reps) {
        std::string label = class_label(V, v, q, ordinal[q]++);
        for (const auto& b : basis)
            if (b.label == label)
                label += "'";
        basis.push_back({label, q});
        out.representatives.push_back(v);
    }
    out.H = std::make_shared<const GradedSpace>(std::move(basis));
    out.betti_offset = n ? V.min_degree() : 0;
    return out;
}

Retract build_retract(const BVAlgebra& A, const InnerProduct& ip)
{
    Cohomology coh = cohomology(A, ip);
    const auto& V = *A.space();
    const std::size_t n = V.dim();
    const std::size_t mu = coh.H->dim();

    Matrix iota = Matrix::from_columns(coh.representatives, n);
    Matrix p(mu, n);
    for (int q : V.degrees()) {
        std::vector<std::size_t> hidx = coh.H->indices_of_degree(q);
        if (hidx.empty())
            continue;
        auto idx = V.indices_of_degree(q);
        Matrix B(idx.size(), hidx.size());
        for (std::size_t c = 0; c < hidx.size(); ++c)
            for (std::size_t a = 0; a < idx.size(); ++a)
                B(a, c) = coh.representatives[hidx[c]][idx[a]];
        const Matrix& Gq = ip.block(q);
        Matrix BtG = B.transpose() * Gq;
        Matrix Pq = inverse(BtG * B) * BtG;
        for (std::size_t r = 0; r < hidx.size(); ++r)
            for (std::size_t a = 0; a < idx.size(); ++a)
                p(hidx[r], idx[a]) = Pq(r, a);
    }

    Matrix D = Matrix::from_map(A.d());
    Matrix Ds = Matrix::from_map(adjoint(A.d(), ip));
    Matrix proj = iota * p;
    Matrix green = inverse(D * Ds + Ds * D + proj) - proj;
    Matrix h = Matrix(n, n) - Ds * green;

    Retract R;
    R.H = coh.H;
    R.iota = to_map(coh.H, A.space(), 0, iota);
    R.p = to_map(A.space(), coh.H, 0, p);
    R.h = to_map(A.space(), A.space(), -1, h);
    return R;
}

Report verify_retract(const BVAlgebra& A, const Retract& R)
{
    Report rep;
    const GradedMap& d = A.d();
    GradedMap idA = GradedMap::identity(A.space());
    GradedMap idH = GradedMap::identity(R.H);

    expect_zero(rep.add("p_iota_identity"), R.p * R.iota - idH, "p iota - id");
    expect_zero(rep.add("homotopy"), R.h * d + d * R.h - (R.iota * R.p - idA), "hd + dh - (iota p - id)");
    expect_zero(rep.add("h_squared"), R.h * R.h, "h h");
    expect_zero(rep.add("h_iota"), R.h * R.iota, "h iota");
    expect_zero(rep.add("p_h"), R.p * R.h, "p h");
    expect_zero(rep.add("d_iota"), d * R.iota, "d iota");
    expect_zero(rep.add("p_d"), R.p * d, "p d");
    return rep;
}

}  // namespace bvf
