#include "puncture/linalg.hpp"

#include <sstream>

namespace puncture {

Matrix Matrix::identity(const Field& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (field_ != o.field_) throw StructuralError("Matrix: field mismatch");
    if (cols_ != o.rows_) throw StructuralError("Matrix: shape mismatch in product");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("Matrix: shape mismatch in sum");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("Matrix: shape mismatch in difference");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != o.data_[i]) return false;
    return true;
}

Matrix Matrix::hcat(const Matrix& o) const {
    if (rows_ != o.rows_) throw StructuralError("Matrix: hcat row mismatch");
    Matrix r(field_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : " ") << at(i, j).to_string();
        os << " ]\n";
    }
    return os.str();
}

namespace {

// Fraction-free (Bareiss) elimination on an integer matrix held in
// rational scalars.  Row swaps allowed; only the first `pivot_limit`
// columns are eligible pivots.  Exact divisions by the previous pivot
// keep intermediate entries at determinant size.
std::vector<int> eliminate_bareiss(Matrix& m, int pivot_limit) {
    const Field f = m.field();
    std::vector<int> pivots;
    Scalar prev = Scalar::one(f);
    int row = 0;
    for (int col = 0; col < pivot_limit && row < m.rows(); ++col) {
        int sel = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        const Scalar pivot = m.at(row, col);
        for (int i = row + 1; i < m.rows(); ++i) {
            const Scalar factor = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = (pivot * m.at(i, j) - factor * m.at(row, j)) / prev;
        }
        prev = pivot;
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Plain Gaussian elimination over F_p with unit pivots.
std::vector<int> eliminate_mod_p(Matrix& m, int pivot_limit) {
    const Field f = m.field();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < pivot_limit && row < m.rows(); ++col) {
        int sel = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        Scalar inv = m.at(row, col).inverse();
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (int i = row + 1; i < m.rows(); ++i) {
            Scalar factor = m.at(i, col);
            if (factor.is_zero()) continue;
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - factor * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Multiply each row by the lcm of its denominators so Bareiss runs on
// integer entries.  Row scaling preserves row space and kernel.
void clear_denominators(Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class l(1);
        for (int j = 0; j < m.cols(); ++j) {
            const mpq_class& q = m.at(i, j).rational();
            mpz_class den = q.get_den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
            l = l / g * den;
        }
        if (l == 1) continue;
        Scalar s = Scalar::from_mpq(m.field(), mpq_class(l));
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) * s;
    }
}

std::vector<int> eliminate(Matrix& m, int pivot_limit) {
    if (m.field().is_rationals()) {
        clear_denominators(m);
        return eliminate_bareiss(m, pivot_limit);
    }
    return eliminate_mod_p(m, pivot_limit);
}

} // namespace

Echelon echelon(const Matrix& a) {
    Matrix m = a;
    std::vector<int> pivots = eliminate(m, a.cols());
    return Echelon{std::move(m), pivots, static_cast<int>(pivots.size())};
}

int rank(const Matrix& a) { return echelon(a).rank; }

Matrix kernel_basis(const Matrix& a) {
    const Field f = a.field();
    Echelon e = echelon(a);
    std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
    for (int c : e.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    int nullity = a.cols() - e.rank;
    Matrix basis(f, a.cols(), nullity);
    int out = 0;
    for (int free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[static_cast<size_t>(free_col)]) continue;
        // back-substitute with this free variable set to 1
        basis.at(free_col, out) = Scalar::one(f);
        for (int k = e.rank - 1; k >= 0; --k) {
            int pc = e.pivot_cols[static_cast<size_t>(k)];
            Scalar acc = e.reduced.at(k, free_col);
            for (int k2 = k + 1; k2 < e.rank; ++k2) {
                int pc2 = e.pivot_cols[static_cast<size_t>(k2)];
                acc = acc + e.reduced.at(k, pc2) * basis.at(pc2, out);
            }
            basis.at(pc, out) = -(acc / e.reduced.at(k, pc));
        }
        ++out;
    }
    return basis;
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw StructuralError("solve_linear: row mismatch");
    const Field f = a.field();
    Matrix aug = a.hcat(b);
    std::vector<int> pivots = eliminate(aug, a.cols());
    int r = static_cast<int>(pivots.size());
    // any nonzero entry in the b-part below the pivot rows means inconsistent
    for (int i = r; i < aug.rows(); ++i)
        for (int j = a.cols(); j < aug.cols(); ++j)
            if (!aug.at(i, j).is_zero()) return std::nullopt;
    Matrix x(f, a.cols(), b.cols());
    for (int rhs = 0; rhs < b.cols(); ++rhs) {
        for (int k = r - 1; k >= 0; --k) {
            int pc = pivots[static_cast<size_t>(k)];
            Scalar acc = aug.at(k, a.cols() + rhs);
            for (int k2 = k + 1; k2 < r; ++k2) {
                int pc2 = pivots[static_cast<size_t>(k2)];
                acc = acc - aug.at(k, pc2) * x.at(pc2, rhs);
            }
            x.at(pc, rhs) = acc / aug.at(k, pc);
        }
    }
    return x;
}

// ---------------------------------------------------------------------------

void GradedSpace::set_dim(int d, int n) {
    if (!window_.contains(d)) throw StructuralError("GradedSpace: degree " + std::to_string(d) + " outside window");
    if (n < 0) throw StructuralError("GradedSpace: negative dimension");
    dims_[static_cast<size_t>(d - window_.lo)] = n;
}

int GradedSpace::total_dim() const {
    int t = 0;
    for (int n : dims_) t += n;
    return t;
}

std::map<int, int> GradedSpace::dims_map() const {
    std::map<int, int> m;
    for (int d = window_.lo; d <= window_.hi; ++d) m[d] = dim(d);
    return m;
}

GradedMap GradedMap::identity(const Field& f, const GradedSpace& s) {
    GradedMap m(f, s, s, 0);
    for (int d = s.window().lo; d <= s.window().hi; ++d)
        if (s.dim(d) > 0) m.set_block(d, Matrix::identity(f, s.dim(d)));
    return m;
}

void GradedMap::set_block(int source_degree, Matrix block) {
    if (!source_.window().contains(source_degree))
        throw StructuralError("GradedMap: source degree " + std::to_string(source_degree) + " outside window");
    int td = source_degree + shift_;
    int expect_rows = target_.window().contains(td) ? target_.dim(td) : 0;
    int expect_cols = source_.dim(source_degree);
    if (block.rows() != expect_rows || block.cols() != expect_cols)
        throw StructuralError("GradedMap: block shape mismatch at degree " + std::to_string(source_degree) +
                              " (got " + std::to_string(block.rows()) + "x" + std::to_string(block.cols()) +
                              ", expected " + std::to_string(expect_rows) + "x" + std::to_string(expect_cols) + ")");
    if (expect_rows == 0 || expect_cols == 0 || block.is_zero()) {
        blocks_.erase(source_degree);
        return;
    }
    blocks_.insert_or_assign(source_degree, std::move(block));
}

Matrix GradedMap::block(int source_degree) const {
    auto it = blocks_.find(source_degree);
    if (it != blocks_.end()) return it->second;
    int td = source_degree + shift_;
    int rows = target_.window().contains(td) ? target_.dim(td) : 0;
    int cols = source_.window().contains(source_degree) ? source_.dim(source_degree) : 0;
    return Matrix(field_, rows, cols);
}

bool GradedMap::is_zero() const { return blocks_.empty(); }

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (source_ != o.source_ || target_ != o.target_ || shift_ != o.shift_)
        throw StructuralError("GradedMap: sum of incompatible maps");
    GradedMap r(field_, source_, target_, shift_);
    for (int d = source_.window().lo; d <= source_.window().hi; ++d) {
        if (!has_block(d) && !o.has_block(d)) continue;
        r.set_block(d, block(d) + o.block(d));
    }
    return r;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + o.scaled(Scalar(field_, -1)); }

GradedMap GradedMap::scaled(const Scalar& c) const {
    GradedMap r(field_, source_, target_, shift_);
    if (c.is_zero()) return r;
    for (const auto& [d, b] : blocks_) {
        Matrix m = b;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) * c;
        r.set_block(d, std::move(m));
    }
    return r;
}

bool GradedMap::operator==(const GradedMap& o) const {
    if (source_ != o.source_ || target_ != o.target_ || shift_ != o.shift_) return false;
    for (int d = source_.window().lo; d <= source_.window().hi; ++d)
        if (!(block(d) == o.block(d))) return false;
    return true;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
    if (f.target() != g.source()) {
        // name the first offending degree for the report
        const DegreeWindow& wf = f.target().window();
        const DegreeWindow& wg = g.source().window();
        if (wf != wg)
            throw StructuralError("compose: window mismatch [" + std::to_string(wf.lo) + "," + std::to_string(wf.hi) +
                                  "] vs [" + std::to_string(wg.lo) + "," + std::to_string(wg.hi) + "]");
        for (int d = wf.lo; d <= wf.hi; ++d)
            if (f.target().dim(d) != g.source().dim(d))
                throw StructuralError("compose: dimension mismatch at degree " + std::to_string(d));
        throw StructuralError("compose: incompatible maps");
    }
    GradedMap r(f.field(), f.source(), g.target(), f.shift() + g.shift());
    for (int d = f.source().window().lo; d <= f.source().window().hi; ++d) {
        if (f.source().dim(d) == 0) continue;
        int td = d + f.shift() + g.shift();
        if (!g.target().window().contains(td)) continue;
        Matrix prod = g.block(d + f.shift()) * f.block(d);
        if (!prod.is_zero()) r.set_block(d, std::move(prod));
    }
    return r;
}

KernelImage kernel_image(const GradedMap& f) {
    KernelImage out{GradedSpace(f.source().window()), GradedSpace(f.target().window()), {}, {}};
    for (int d = f.source().window().lo; d <= f.source().window().hi; ++d) {
        Matrix b = f.block(d);
        Matrix kb = kernel_basis(b);
        int rk = (b.rows() == 0 || b.cols() == 0) ? 0 : rank(b);
        // rank-nullity per degree
        if (rk + kb.cols() != b.cols())
            throw StructuralError("kernel_image: rank-nullity violated at degree " + std::to_string(d));
        out.kernel.set_dim(d, kb.cols());
        out.kernel_basis.emplace(d, std::move(kb));
        int td = d + f.shift();
        if (f.target().window().contains(td)) {
            Echelon e = echelon(b);
            Matrix img(f.field(), b.rows(), e.rank);
            for (int k = 0; k < e.rank; ++k)
                for (int i = 0; i < b.rows(); ++i) img.at(i, k) = b.at(i, e.pivot_cols[static_cast<size_t>(k)]);
            out.image.set_dim(td, out.image.dim(td) + e.rank);
            out.image_basis.emplace(td, std::move(img));
        }
    }
    return out;
}

Homology homology_at(const GradedMap& f_in, const GradedMap& f_out) {
    if (f_in.target() != f_out.source()) throw StructuralError("homology_at: middle space mismatch");
    GradedMap comp = compose(f_out, f_in);
    for (int d = comp.source().window().lo; d <= comp.source().window().hi; ++d)
        if (!comp.block(d).is_zero())
            throw StructuralError("homology_at: not a complex at degree " + std::to_string(d));

    const GradedSpace& mid = f_in.target();
    Homology out{GradedSpace(mid.window()), {}};
    for (int m = mid.window().lo; m <= mid.window().hi; ++m) {
        Matrix b_out = f_out.block(m);
        Matrix kb = kernel_basis(b_out);
        Matrix b_in = f_in.block(m - f_in.shift());
        // representatives: kernel columns independent from the incoming image
        Matrix stacked = b_in.hcat(kb);
        Echelon e = echelon(stacked);
        std::vector<int> reps;
        for (int c : e.pivot_cols)
            if (c >= b_in.cols()) reps.push_back(c - b_in.cols());
        Matrix rep(f_in.field(), mid.dim(m), static_cast<int>(reps.size()));
        for (size_t k = 0; k < reps.size(); ++k)
            for (int i = 0; i < mid.dim(m); ++i) rep.at(i, static_cast<int>(k)) = kb.at(i, reps[static_cast<size_t>(k)]);
        out.dims.set_dim(m, static_cast<int>(reps.size()));
        out.representatives.emplace(m, std::move(rep));
    }
    return out;
}

} // namespace puncture
