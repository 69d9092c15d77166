#include "subphase/types.hpp"

#include <cmath>
#include <utility>

#include "subphase/kernels.hpp"

namespace subphase {

int ComplexMatrix::check_dim(int dim) {
    if (dim < 1) throw ValidationError("matrix dimension must be >= 1");
    return dim;
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries)
    : dim_(check_dim(dim)), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(dim_) * dim_) {
        throw ShapeError("matrix entry count does not match dim*dim");
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

double ComplexMatrix::maxnorm() const {
    double m = 0.0;
    for (const cplx& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return r;
}

bool ComplexMatrix::is_hermitian(double tol_rel) const {
    const double scale = std::max(maxnorm(), 1.0);
    return hermiticity_residual() <= tol_rel * scale;
}

void ComplexMatrix::require_hermitian(const char* what, double tol_rel) const {
    if (!is_hermitian(tol_rel)) {
        throw ConventionError(std::string(what) + ": matrix is not Hermitian");
    }
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    }
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw ShapeError("matrix dimension mismatch in +=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw ShapeError("matrix dimension mismatch in -=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& z : a_) z *= s;
    return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ShapeError("matrix dimension mismatch in matmul");
    const int d = a.dim();
    ComplexMatrix c(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

cplx trace(const ComplexMatrix& a) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

StateVector StateVector::basis(int dim, int k) {
    if (k < 0 || k >= dim) throw ValidationError("basis index out of range");
    StateVector v(dim);
    v[k] = 1.0;
    return v;
}

double StateVector::norm() const {
    return std::sqrt(kernels::active().cnorm2(v_.size(), v_.data()));
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
    for (cplx& z : v_) z /= n;
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw ShapeError("vector dimension mismatch in inner product");
    return kernels::active().cdotc(static_cast<std::size_t>(a.dim()), a.data(), b.data());
}

StateVector apply(const ComplexMatrix& m, const StateVector& x) {
    if (m.dim() != x.dim()) throw ShapeError("dimension mismatch in matrix-vector product");
    StateVector y(x.dim());
    kernels::active().cmatvec(m.dim(), m.data(), x.data(), y.data());
    return y;
}

TimeGrid::TimeGrid(double t0, double t_end, int n_steps) : t0_(t0), t_end_(t_end), n_steps_(n_steps) {
    if (!(t_end > t0)) throw ValidationError("time grid requires t_end > t0");
    if (n_steps < 2) throw ValidationError("time grid requires n_steps >= 2");
    h_ = (t_end - t0) / n_steps;
}

bool TimeGrid::contains(double t, double slack_rel) const {
    const double slack = slack_rel * span();
    return t >= t0_ - slack && t <= t_end_ + slack;
}

int TimeGrid::index_of(double t) const {
    const double x = (t - t0_) / h_;
    const int j = static_cast<int>(std::lround(x));
    if (j < 0 || j > n_steps_ || std::abs(x - j) > 1e-6) {
        throw RangeError("time is not on the grid");
    }
    return j;
}

} // namespace subphase
