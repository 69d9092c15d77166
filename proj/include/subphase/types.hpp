#pragma once

#include <complex>
#include <vector>

#include "subphase/errors.hpp"

namespace subphase {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Sized for small systems (the
// library contract is dim <= 32); everything is value-semantic.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(check_dim(dim)), a_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::vector<cplx> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx* data() const { return a_.data(); }
    cplx* data() { return a_.data(); }

    // max_i max_j |a_ij|, the scale used by residual bounds
    double maxnorm() const;
    // max_ij |a_ij - conj(a_ji)|
    double hermiticity_residual() const;
    bool is_hermitian(double tol_rel = 1e-12) const;
    // enforces the Hermitian convention or throws ConventionError
    void require_hermitian(const char* what, double tol_rel = 1e-12) const;

    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

private:
    static int check_dim(int dim);
    int dim_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
cplx trace(const ComplexMatrix& a);

// Complex amplitude vector; dim is implicit in the length.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int dim) : v_(static_cast<size_t>(dim)) {}
    explicit StateVector(std::vector<cplx> amps) : v_(std::move(amps)) {}

    static StateVector basis(int dim, int k);

    int dim() const { return static_cast<int>(v_.size()); }
    cplx& operator[](int i) { return v_[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    const cplx* data() const { return v_.data(); }
    cplx* data() { return v_.data(); }
    const std::vector<cplx>& amplitudes() const { return v_; }

    double norm() const;
    bool is_normalized(double tol = 1e-10) const;
    void normalize();

private:
    std::vector<cplx> v_;
};

// <a|b> with the bra conjugated
cplx inner(const StateVector& a, const StateVector& b);
// y = M x
StateVector apply(const ComplexMatrix& m, const StateVector& x);

// Uniform time grid on [t0, t_end] with n_steps steps (n_steps + 1 samples).
// Natural units, hbar = 1.
class TimeGrid {
public:
    TimeGrid(double t0, double t_end, int n_steps);

    double t0() const { return t0_; }
    double t_end() const { return t_end_; }
    int n_steps() const { return n_steps_; }
    int n_samples() const { return n_steps_ + 1; }
    double step() const { return h_; }
    double time(int j) const { return j == n_steps_ ? t_end_ : t0_ + h_ * j; }
    double span() const { return t_end_ - t0_; }
    bool contains(double t, double slack_rel = 1e-9) const;
    // nearest grid index for an on-grid time; throws RangeError if t is not
    // within half a step of a sample
    int index_of(double t) const;

    bool operator==(const TimeGrid& o) const {
        return t0_ == o.t0_ && t_end_ == o.t_end_ && n_steps_ == o.n_steps_;
    }

private:
    double t0_, t_end_;
    int n_steps_;
    double h_;
};

} // namespace subphase
