#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace subphase::kernels {

using cplx = std::complex<double>;

// Inner-loop kernels behind the numerics layer. Each has a scalar reference
// implementation and SIMD variants (AVX2 on x86-64, NEON on aarch64) selected
// at runtime; backends are equivalence-tested against the scalar reference.
struct KernelTable {
    const char* name;
    // y = A x, A row-major dim x dim
    void (*cmatvec)(int dim, const cplx* a, const cplx* x, cplx* y);
    // y += alpha * x
    void (*caxpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    // sum conj(x_i) y_i
    cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);
    // sum |x_i|^2
    double (*cnorm2)(std::size_t n, const cplx* x);
};

enum class Backend { automatic, scalar, avx2, neon };

const KernelTable& scalar_table();

// Table for an explicit backend; throws subphase::ValidationError if the
// backend is not available on this machine.
const KernelTable& table_for(Backend b);

// Process-wide active table. Defaults to the best available backend; tests
// and the CLI may pin one.
const KernelTable& active();
void select(Backend b);
Backend parse_backend(const std::string& name);

std::vector<std::string> available_backends();

} // namespace subphase::kernels
