#include "bvfrob/graded.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bvf {

Scalar parse_scalar(const std::string& text)
{
    try {
        Scalar q(text, 10);
        if (sgn(q.get_den()) == 0)
            throw InputError("zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("not a rational number: '" + text + "'");
    }
}

std::string to_string(const Scalar& x) { return x.get_str(); }

Scalar dot(const Vec& a, const Vec& b)
{
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

GradedSpace::GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis))
{
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!index_.emplace(basis_[i].label, i).second)
            throw InputError("duplicate basis label '" + basis_[i].label + "'");
    }
}

std::optional<std::size_t> GradedSpace::find(const std::string& label) const
{
    auto it = index_.find(label);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t GradedSpace::index_of(const std::string& label) const
{
    if (auto i = find(label))
        return *i;
    throw InputError("unknown basis label '" + label + "'");
}

std::vector<std::size_t> GradedSpace::indices_of_degree(int degree) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].degree == degree)
            out.push_back(i);
    return out;
}

std::vector<int> GradedSpace::degrees() const
{
    std::set<int> s;
    for (const auto& b : basis_)
        s.insert(b.degree);
    return {s.begin(), s.end()};
}

int GradedSpace::min_degree() const
{
    int m = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        m = i == 0 ? basis_[i].degree : std::min(m, basis_[i].degree);
    return m;
}

int GradedSpace::max_degree() const
{
    int m = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        m = i == 0 ? basis_[i].degree : std::max(m, basis_[i].degree);
    return m;
}

std::optional<int> GradedSpace::degree_of(const Vec& v) const
{
    std::optional<int> d;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        if (d && *d != basis_[i].degree)
            return std::nullopt;
        d = basis_[i].degree;
    }
    return d;
}

bool GradedSpace::operator==(const GradedSpace& other) const
{
    if (basis_.size() != other.basis_.size())
        return false;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].label != other.basis_[i].label || basis_[i].degree != other.basis_[i].degree)
            return false;
    return true;
}

// ---------------------------------------------------------------------------

GradedMap::GradedMap(SpacePtr source, SpacePtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), rows_(target_->dim())
{
}

GradedMap GradedMap::zero(SpacePtr source, SpacePtr target, int degree)
{
    return GradedMap(std::move(source), std::move(target), degree);
}

GradedMap GradedMap::identity(SpacePtr space)
{
    GradedMap m(space, space, 0);
    for (std::size_t i = 0; i < space->dim(); ++i)
        m.rows_[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
    return m;
}

GradedMap GradedMap::from_dense(SpacePtr source, SpacePtr target, int degree, const std::vector<Vec>& rows)
{
    GradedMap m(std::move(source), std::move(target), degree);
    if (rows.size() != m.target_->dim())
        throw MathError("dense matrix row count does not match target dimension");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.source_->dim())
            throw MathError("dense matrix column count does not match source dimension");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (sgn(rows[i][j]) != 0)
                m.set(i, j, rows[i][j]);
    }
    return m;
}

Scalar GradedMap::get(std::size_t row, std::size_t col) const
{
    const auto& r = rows_.at(row);
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == col)
        return it->second;
    return 0;
}

void GradedMap::set(std::size_t row, std::size_t col, const Scalar& value)
{
    auto& r = rows_.at(row);
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (sgn(value) == 0) {
        if (it != r.end() && it->first == col)
            r.erase(it);
        return;
    }
    if (target_->degree(row) != source_->degree(col) + degree_) {
        std::ostringstream os;
        os << "entry " << source_->label(col) << " -> " << target_->label(row)
           << " violates homogeneity of degree " << degree_;
        throw MathError(os.str());
    }
    if (it != r.end() && it->first == col)
        it->second = value;
    else
        r.insert(it, {static_cast<std::uint32_t>(col), value});
}

void GradedMap::add_to(std::size_t row, std::size_t col, const Scalar& value)
{
    if (sgn(value) != 0)
        set(row, col, get(row, col) + value);
}

Vec GradedMap::apply(const Vec& x) const
{
    Vec y(rows_.size(), Scalar(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, a] : rows_[i])
            if (sgn(x[j]) != 0)
                y[i] += a * x[j];
    return y;
}

Vec GradedMap::column(std::size_t j) const
{
    Vec c(rows_.size(), Scalar(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        c[i] = get(i, j);
    return c;
}

std::vector<Vec> GradedMap::to_dense() const
{
    std::vector<Vec> out(rows_.size(), Vec(cols(), Scalar(0)));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, a] : rows_[i])
            out[i][j] = a;
    return out;
}

bool GradedMap::is_zero() const
{
    for (const auto& r : rows_)
        if (!r.empty())
            return false;
    return true;
}

std::size_t GradedMap::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += r.size();
    return n;
}

GradedMap GradedMap::transpose() const
{
    GradedMap t(target_, source_, -degree_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, a] : rows_[i])
            t.rows_[j].emplace_back(static_cast<std::uint32_t>(i), a);
    return t;
}

bool GradedMap::operator==(const GradedMap& other) const
{
    if (rows_.size() != other.rows_.size() || cols() != other.cols())
        return false;
    // Degree is irrelevant for two zero maps between the same spaces.
    if (degree_ != other.degree_ && !(is_zero() && other.is_zero()))
        return false;
    return rows_ == other.rows_;
}

static void check_same_shape(const GradedMap& a, const GradedMap& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw MathError("graded map shape mismatch");
}

GradedMap& GradedMap::operator+=(const GradedMap& other)
{
    check_same_shape(*this, other);
    if (other.is_zero())
        return *this;
    if (is_zero())
        degree_ = other.degree_;
    else if (degree_ != other.degree_)
        throw MathError("adding graded maps of different degrees");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (other.rows_[i].empty())
            continue;
        Row merged;
        auto a = rows_[i].begin();
        auto b = other.rows_[i].begin();
        while (a != rows_[i].end() || b != other.rows_[i].end()) {
            if (b == other.rows_[i].end() || (a != rows_[i].end() && a->first < b->first)) {
                merged.push_back(*a++);
            } else if (a == rows_[i].end() || b->first < a->first) {
                merged.push_back(*b++);
            } else {
                Scalar s = a->second + b->second;
                if (sgn(s) != 0)
                    merged.emplace_back(a->first, s);
                ++a;
                ++b;
            }
        }
        rows_[i] = std::move(merged);
    }
    return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& other) { return *this += (-Scalar(1)) * other; }

GradedMap& GradedMap::operator*=(const Scalar& s)
{
    if (sgn(s) == 0) {
        for (auto& r : rows_)
            r.clear();
        return *this;
    }
    for (auto& r : rows_)
        for (auto& e : r)
            e.second *= s;
    return *this;
}

GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
GradedMap operator*(const Scalar& s, GradedMap a) { return a *= s; }
GradedMap operator-(GradedMap a) { return a *= Scalar(-1); }

GradedMap compose(const GradedMap& f, const GradedMap& g)
{
    if (f.cols() != g.rows())
        throw MathError("composition dimension mismatch");
    GradedMap out(g.source(), f.target(), f.degree() + g.degree());
    const std::size_t n = g.cols();
    Vec acc(n, Scalar(0));
    std::vector<char> touched(n, 0);
    std::vector<std::uint32_t> cols;
    for (std::size_t i = 0; i < f.rows(); ++i) {
        cols.clear();
        for (const auto& [k, a] : f.row(i)) {
            for (const auto& [j, b] : g.row(k)) {
                if (!touched[j]) {
                    touched[j] = 1;
                    cols.push_back(j);
                }
                acc[j] += a * b;
            }
        }
        std::sort(cols.begin(), cols.end());
        for (auto j : cols) {
            if (sgn(acc[j]) != 0)
                out.set(i, j, acc[j]);
            acc[j] = 0;
            touched[j] = 0;
        }
    }
    return out;
}

GradedMap operator*(const GradedMap& f, const GradedMap& g) { return compose(f, g); }

GradedMap graded_commutator(const GradedMap& f, const GradedMap& g)
{
    GradedMap fg = f * g;
    GradedMap gf = g * f;
    if (is_odd(f.degree()) && is_odd(g.degree()))
        return fg + gf;
    return fg - gf;
}

}  // namespace bvf
