#pragma once

#include <map>
#include <optional>
#include <vector>

#include "puncture/scalar.hpp"

namespace puncture {

/// Closed integer interval [lo, hi] of internal (t-)degrees.
struct DegreeWindow {
    int lo = 0;
    int hi = 0;

    DegreeWindow() = default;
    DegreeWindow(int l, int h) : lo(l), hi(h) {
        if (l > h) throw StructuralError("DegreeWindow: lo > hi");
    }

    bool contains(int d) const { return d >= lo && d <= hi; }
    int length() const { return hi - lo + 1; }
    DegreeWindow grown(int by) const { return DegreeWindow(lo - by, hi + by); }
    DegreeWindow interior(int margin) const {
        if (lo + margin > hi - margin)
            throw StructuralError("DegreeWindow: interior empty after margin " + std::to_string(margin));
        return DegreeWindow(lo + margin, hi - margin);
    }
    bool operator==(const DegreeWindow& o) const { return lo == o.lo && hi == o.hi; }
    bool operator!=(const DegreeWindow& o) const { return !(*this == o); }
};

/// Dense matrix over the configured field.
class Matrix {
  public:
    Matrix(const Field& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols),
          data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Scalar::zero(f)) {
        if (rows < 0 || cols < 0) throw StructuralError("Matrix: negative shape");
    }

    static Matrix identity(const Field& f, int n);

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int r, int c) { return data_[idx(r, c)]; }
    const Scalar& at(int r, int c) const { return data_[idx(r, c)]; }

    bool is_zero() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    /// Columns of `cols` appended to this matrix's columns.
    Matrix hcat(const Matrix& o) const;

    std::string to_string() const;

  private:
    size_t idx(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw StructuralError("Matrix: index out of range");
        return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
    }
    Field field_;
    int rows_, cols_;
    std::vector<Scalar> data_;
};

/// Result of exact elimination.  Over Q the elimination is fraction-free
/// (Bareiss) on a denominator-cleared integer copy; over F_p it is plain
/// Gaussian elimination.
struct Echelon {
    Matrix reduced;              // row echelon form over the field
    std::vector<int> pivot_cols; // in elimination order
    int rank = 0;
};

Echelon echelon(const Matrix& a);
int rank(const Matrix& a);

/// Basis of the right kernel, one column per basis vector.
Matrix kernel_basis(const Matrix& a);

/// One solution of A x = b, if consistent.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

/// A finite-dimensional graded vector space supported on a window.
class GradedSpace {
  public:
    explicit GradedSpace(const DegreeWindow& w) : window_(w), dims_(static_cast<size_t>(w.length()), 0) {}

    const DegreeWindow& window() const { return window_; }
    int dim(int d) const { return window_.contains(d) ? dims_[static_cast<size_t>(d - window_.lo)] : 0; }
    void set_dim(int d, int n);
    int total_dim() const;

    bool operator==(const GradedSpace& o) const { return window_ == o.window_ && dims_ == o.dims_; }
    bool operator!=(const GradedSpace& o) const { return !(*this == o); }

    std::map<int, int> dims_map() const;

  private:
    DegreeWindow window_;
    std::vector<int> dims_;
};

/// A graded linear map of internal degree `shift`: blocks indexed by the
/// source degree n map dim_source(n) -> dim_target(n + shift).  Absent
/// blocks are zero; blocks whose target degree leaves the target window
/// may not be stored.
class GradedMap {
  public:
    GradedMap(const Field& f, GradedSpace source, GradedSpace target, int shift)
        : field_(f), source_(std::move(source)), target_(std::move(target)), shift_(shift) {}

    static GradedMap zero(const Field& f, const GradedSpace& s, const GradedSpace& t, int shift) {
        return GradedMap(f, s, t, shift);
    }
    static GradedMap identity(const Field& f, const GradedSpace& s);

    const Field& field() const { return field_; }
    const GradedSpace& source() const { return source_; }
    const GradedSpace& target() const { return target_; }
    int shift() const { return shift_; }

    void set_block(int source_degree, Matrix block);
    /// The block at `source_degree`, materializing zeros.
    Matrix block(int source_degree) const;
    bool has_block(int source_degree) const { return blocks_.count(source_degree) > 0; }
    const std::map<int, Matrix>& blocks() const { return blocks_; }

    bool is_zero() const;
    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap scaled(const Scalar& c) const;
    bool operator==(const GradedMap& o) const;

  private:
    Field field_;
    GradedSpace source_, target_;
    int shift_;
    std::map<int, Matrix> blocks_;
};

/// g after f (blockwise products; shifts add).
GradedMap compose(const GradedMap& g, const GradedMap& f);

struct KernelImage {
    GradedSpace kernel;               // graded over the source window
    GradedSpace image;                // graded over the target window
    std::map<int, Matrix> kernel_basis; // keyed by source degree
    std::map<int, Matrix> image_basis;  // keyed by target degree
};

/// Exact per-degree kernel and image with basis witnesses; rank-nullity
/// is asserted for every degree.
KernelImage kernel_image(const GradedMap& f);

struct Homology {
    GradedSpace dims;                    // over the middle window
    std::map<int, Matrix> representatives; // keyed by middle degree
};

/// Middle homology ker(f_out)/im(f_in) per degree.  Throws
/// StructuralError naming the first failing degree when f_out o f_in != 0.
Homology homology_at(const GradedMap& f_in, const GradedMap& f_out);

} // namespace puncture
