#pragma once
#include <array>
#include <complex>
#include <vector>

namespace edwalk {

using cd = std::complex<double>;
using cvec = std::vector<cd>;

// Dense row-major complex matrix. Everything here is 2x2 .. 5x5, so the
// implementation favors clarity over blocking.
struct ComplexMatrix {
    int rows = 0, cols = 0;
    std::vector<cd> a;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static ComplexMatrix identity(int n);

    cd& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const cd& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    ComplexMatrix adjoint() const;
};

ComplexMatrix operator*(const ComplexMatrix&, const ComplexMatrix&);
ComplexMatrix operator+(const ComplexMatrix&, const ComplexMatrix&);
ComplexMatrix operator-(const ComplexMatrix&, const ComplexMatrix&);
ComplexMatrix operator*(cd scale, const ComplexMatrix&);
cvec operator*(const ComplexMatrix&, const cvec&);

// M^k for k >= 0 by binary exponentiation; k = 0 gives the identity.
ComplexMatrix matrix_power(const ComplexMatrix&, long long k);

double frobenius_norm(const ComplexMatrix&);
double unitarity_defect(const ComplexMatrix&);  // ||M M^dag - I||_F

cd inner(const cvec& x, const cvec& y);  // conjugate-linear in x
double norm(const cvec&);

using Mat3 = std::array<std::array<double, 3>, 3>;

// Thin SVD of a real 3x3: D = W diag(s) V^T with s descending and W, V
// orthogonal. One-sided Jacobi; a rank-deficient input gets its left
// basis completed to a full orthonormal set.
struct Svd3 {
    Mat3 W{};
    std::array<double, 3> s{};
    Mat3 V{};
};
Svd3 svd3(const Mat3& D);

}  // namespace edwalk
