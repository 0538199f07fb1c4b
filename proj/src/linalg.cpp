// Exact rational matrices, linear maps and V-polytope membership.
#include "adl/geometry.hpp"

#include <algorithm>

namespace adl {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::columns(std::size_t from, std::size_t count) const {
    Matrix out(rows, count);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, from + j);
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols) throw DimensionMismatch("matrix has " + std::to_string(cols) + " columns, vector has " +
                                                  std::to_string(v.size()) + " entries");
    Vec out(rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool operator==(const Matrix& x, const Matrix& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (sgn(x(i, k)) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out(i, j) += x(i, k) * y(k, j);
        }
    return out;
}

std::size_t rank(const Matrix& m) {
    Matrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows) continue;
        for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            if (sgn(a(i, c)) == 0) continue;
            Rational q = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols; ++j) a(i, j) -= q * a(r, j);
        }
        ++r;
    }
    return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) throw DimensionMismatch("inverse of a non-square matrix");
    std::size_t n = m.rows;
    Matrix a = m, inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(c, j), a(p, j));
            std::swap(inv(c, j), inv(p, j));
        }
        Rational d = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a(i, c)) == 0) continue;
            Rational q = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= q * a(c, j);
                inv(i, j) -= q * inv(c, j);
            }
        }
    }
    return inv;
}

LinearMap::LinearMap(std::size_t dim, Matrix m) : m(dim), mat(std::move(m)) {
    if (mat.rows != 2 * dim || mat.cols != 2 * dim)
        throw DimensionMismatch("linear map for m=" + std::to_string(dim) + " needs a " + std::to_string(2 * dim) +
                                "x" + std::to_string(2 * dim) + " matrix");
    inv = inverse(mat);
}

LinearMap LinearMap::concatenation(std::size_t m) { return LinearMap(m, Matrix::identity(2 * m)); }

LinearMap LinearMap::swap_halves(std::size_t m) {
    Matrix s(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        s(i, m + i) = 1;
        s(m + i, i) = 1;
    }
    return LinearMap(m, s);
}

Vec LinearMap::apply(const Vec& u, const Vec& v) const {
    if (u.size() != m || v.size() != m) throw DimensionMismatch("f expects two vectors of dimension " + std::to_string(m));
    Vec w = u;
    w.insert(w.end(), v.begin(), v.end());
    return mat.apply(w);
}

std::pair<Vec, Vec> LinearMap::unapply(const Vec& w) const {
    if (!inv) throw UnvalidatedMap("linear map is not invertible");
    Vec uv = inv->apply(w);
    return {Vec(uv.begin(), uv.begin() + m), Vec(uv.begin() + m, uv.end())};
}

bool operator==(const LinearMap& x, const LinearMap& y) { return x.m == y.m && x.mat == y.mat; }

bool validate_linear_map(const LinearMap& f) {
    if (f.mat.rows != 2 * f.m || f.mat.cols != 2 * f.m) throw DimensionMismatch("linear map shape mismatch");
    // left half injective, right half injective, images meet only in 0.
    return rank(f.mat.columns(0, f.m)) == f.m && rank(f.mat.columns(f.m, f.m)) == f.m && rank(f.mat) == 2 * f.m;
}

// ---- regions ---------------------------------------------------------------

bool is_basis_vector(const Vec& v) {
    int ones = 0;
    for (const auto& x : v) {
        if (sgn(x) == 0) continue;
        if (x != 1) return false;
        ++ones;
    }
    return ones == 1;
}

Vec unit_vector(std::size_t dim, std::size_t k) {
    Vec v(dim);
    v[k] = 1;
    return v;
}

Vec midpoint(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("midpoint of vectors of different dimension");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + y[i]) / 2;
    return out;
}

Region::Region(std::size_t d, std::vector<Vec> g) : dim(d), gens(std::move(g)) {
    for (const auto& v : gens)
        if (v.size() != dim) throw DimensionMismatch("generator dimension differs from region dimension");
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    one_hot = std::all_of(gens.begin(), gens.end(), is_basis_vector);
}

bool operator==(const Region& x, const Region& y) { return x.dim == y.dim && x.gens == y.gens; }

namespace {

// Is there x >= 0 with A x = b?  Phase I of the simplex method, Bland's rule.
bool lp_feasible(std::vector<Vec> A, Vec b) {
    std::size_t r = A.size();
    if (r == 0) return true;
    std::size_t n = A[0].size();
    for (std::size_t i = 0; i < r; ++i)
        if (sgn(b[i]) < 0) {
            for (auto& x : A[i]) x = -x;
            b[i] = -b[i];
        }
    // Tableau columns: n structural, r artificial, rhs.
    std::size_t w = n + r + 1;
    std::vector<Vec> t(r, Vec(w));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
        t[i][n + i] = 1;
        t[i][w - 1] = b[i];
    }
    std::vector<std::size_t> basis(r);
    for (std::size_t i = 0; i < r; ++i) basis[i] = n + i;
    Vec cost(w);  // reduced costs of minimising the artificial sum
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < w; ++j)
            if (j < n || j == w - 1) cost[j] -= t[i][j];

    for (;;) {
        std::size_t enter = w;
        for (std::size_t j = 0; j + 1 < w; ++j)
            if (sgn(cost[j]) < 0) {
                enter = j;
                break;
            }
        if (enter == w) break;
        std::size_t leave = r;
        Rational best;
        for (std::size_t i = 0; i < r; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rational ratio = t[i][w - 1] / t[i][enter];
            if (leave == r || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == r) break;  // unbounded direction; cannot happen in phase I
        Rational piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Rational q = t[i][enter];
            for (std::size_t j = 0; j < w; ++j) t[i][j] -= q * t[leave][j];
        }
        if (sgn(cost[enter]) != 0) {
            Rational q = cost[enter];
            for (std::size_t j = 0; j < w; ++j) cost[j] -= q * t[leave][j];
        }
        basis[leave] = enter;
    }
    return sgn(cost[w - 1]) == 0;
}

}  // namespace

bool contains_point(const Region& r, const Vec& p) {
    if (p.size() != r.dim) throw DimensionMismatch("point dimension " + std::to_string(p.size()) +
                                                   " differs from region dimension " + std::to_string(r.dim));
    if (r.gens.empty()) return false;
    if (std::binary_search(r.gens.begin(), r.gens.end(), p)) return true;
    if (r.one_hot) {
        // hull of basis vectors e_k (k in K): p >= 0, sum p = 1, support in K
        Rational sum;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (sgn(p[i]) < 0) return false;
            if (sgn(p[i]) == 0) continue;
            if (!std::binary_search(r.gens.begin(), r.gens.end(), unit_vector(r.dim, i))) return false;
            sum += p[i];
        }
        return sum == 1;
    }
    std::vector<Vec> A(r.dim + 1, Vec(r.gens.size()));
    Vec b(r.dim + 1);
    for (std::size_t j = 0; j < r.gens.size(); ++j) {
        for (std::size_t i = 0; i < r.dim; ++i) A[i][j] = r.gens[j][i];
        A[r.dim][j] = 1;
    }
    for (std::size_t i = 0; i < r.dim; ++i) b[i] = p[i];
    b[r.dim] = 1;
    return lp_feasible(std::move(A), std::move(b));
}

bool regions_disjoint(const Region& r1, const Region& r2) {
    if (r1.dim != r2.dim) throw DimensionMismatch("regions of different dimension");
    if (r1.empty() || r2.empty()) return true;
    if (r1.one_hot && r2.one_hot) {
        for (const auto& g : r1.gens)
            if (std::binary_search(r2.gens.begin(), r2.gens.end(), g)) return false;
        return true;
    }
    std::size_t n1 = r1.gens.size(), n2 = r2.gens.size(), d = r1.dim;
    std::vector<Vec> A(d + 2, Vec(n1 + n2));
    Vec b(d + 2);
    for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t i = 0; i < d; ++i) A[i][j] = r1.gens[j][i];
        A[d][j] = 1;
    }
    for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t i = 0; i < d; ++i) A[i][n1 + j] = -r2.gens[j][i];
        A[d + 1][n1 + j] = 1;
    }
    b[d] = 1;
    b[d + 1] = 1;
    return !lp_feasible(std::move(A), std::move(b));
}

bool region_subset(const Region& inner, const Region& outer) {
    if (inner.dim != outer.dim) throw DimensionMismatch("regions of different dimension");
    return std::all_of(inner.gens.begin(), inner.gens.end(), [&](const Vec& g) { return contains_point(outer, g); });
}

Region intersect_one_hot(const std::vector<Region>& rs) {
    if (rs.empty()) throw DimensionMismatch("intersection of no regions");
    std::vector<Vec> common = rs[0].gens;
    for (std::size_t k = 1; k < rs.size(); ++k) {
        if (!rs[k].one_hot || !rs[0].one_hot) throw UnsupportedRegionStructure("intersection needs one-hot regions");
        std::vector<Vec> next;
        std::set_intersection(common.begin(), common.end(), rs[k].gens.begin(), rs[k].gens.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    return Region(rs[0].dim, std::move(common));
}

}  // namespace adl
