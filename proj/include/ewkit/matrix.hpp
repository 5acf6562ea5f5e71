// Dense complex matrices with optional bipartite dimension metadata.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewkit {

using Complex = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct DimMismatchError : Error { using Error::Error; };
struct MissingDimsError : Error { using Error::Error; };
struct BadDimensionError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct ConstraintViolationError : Error { using Error::Error; };
struct CountMismatchError : Error { using Error::Error; };
struct NoWitnessExistsError : Error { using Error::Error; };
struct InvalidCError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct BipartiteDims {
    int a = 0;
    int b = 0;
    int joint() const { return a * b; }
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Square matrix of complex entries, row-major.  Immutable by convention
// once handed to the higher layers; mutation is only used during assembly.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(int dim)
        : dim_(dim), data_(static_cast<size_t>(dim) * dim, Complex{0.0, 0.0}) {
        if (dim < 1) throw BadDimensionError("matrix dimension must be >= 1");
    }

    ComplexMatrix(int dim, std::vector<Complex> entries)
        : dim_(dim), data_(std::move(entries)) {
        if (dim < 1) throw BadDimensionError("matrix dimension must be >= 1");
        if (data_.size() != static_cast<size_t>(dim) * dim)
            throw DimMismatchError("entry count does not match dimension");
        for (const Complex& z : data_)
            if (!is_finite(z)) throw ParseError("non-finite matrix entry");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    const std::optional<BipartiteDims>& bipartite_dims() const { return dims_; }

    void set_bipartite_dims(BipartiteDims d) {
        if (d.a < 1 || d.b < 1 || d.joint() != dim_)
            throw DimMismatchError("bipartite dims do not factor the matrix dimension");
        dims_ = d;
    }

    BipartiteDims require_dims() const {
        if (!dims_) throw MissingDimsError("operation requires bipartite dimensions");
        return *dims_;
    }

    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
    Complex operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        out.dims_ = dims_;
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    Complex trace() const {
        Complex t{0.0, 0.0};
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (Complex& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int n = a.dim_;
        ComplexMatrix out(n);
        out.dims_ = a.dims_ ? a.dims_ : b.dims_;
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex{0.0, 0.0}) continue;
                for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw DimMismatchError("matrix dimensions differ");
    }

    int dim_ = 0;
    std::vector<Complex> data_;
    std::optional<BipartiteDims> dims_;
};

// |v><w| restricted to matching lengths.
inline ComplexMatrix outer(const std::vector<Complex>& v, const std::vector<Complex>& w) {
    if (v.size() != w.size()) throw DimMismatchError("outer product length mismatch");
    ComplexMatrix m(static_cast<int>(v.size()));
    for (size_t r = 0; r < v.size(); ++r)
        for (size_t c = 0; c < w.size(); ++c)
            m(static_cast<int>(r), static_cast<int>(c)) = v[r] * std::conj(w[c]);
    return m;
}

inline Complex inner(const std::vector<Complex>& v, const std::vector<Complex>& w) {
    if (v.size() != w.size()) throw DimMismatchError("inner product length mismatch");
    Complex s{0.0, 0.0};
    for (size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
    return s;
}

inline double norm2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline std::vector<Complex> mat_vec(const ComplexMatrix& m, const std::vector<Complex>& v) {
    if (static_cast<size_t>(m.dim()) != v.size())
        throw DimMismatchError("matrix/vector dimension mismatch");
    std::vector<Complex> out(v.size(), Complex{0.0, 0.0});
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

}  // namespace ewkit
