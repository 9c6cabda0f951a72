#include "edwalk/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "edwalk/tolerances.hpp"

namespace edwalk {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix m(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const cd xik = x.at(i, k);
            if (xik == cd{}) continue;
            for (int j = 0; j < y.cols; ++j) m.at(i, j) += xik * y.at(k, j);
        }
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum: shape mismatch");
    ComplexMatrix m = x;
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] += y.a[i];
    return m;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix difference: shape mismatch");
    ComplexMatrix m = x;
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] -= y.a[i];
    return m;
}

ComplexMatrix operator*(cd scale, const ComplexMatrix& x) {
    ComplexMatrix m = x;
    for (auto& v : m.a) v *= scale;
    return m;
}

cvec operator*(const ComplexMatrix& m, const cvec& v) {
    if (static_cast<size_t>(m.cols) != v.size()) throw std::invalid_argument("matrix apply: shape mismatch");
    cvec out(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        cd acc{};
        for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, long long k) {
    if (m.rows != m.cols) throw std::invalid_argument("matrix power: not square");
    if (k < 0) throw std::invalid_argument("matrix power: negative exponent");
    ComplexMatrix acc = ComplexMatrix::identity(m.rows);
    ComplexMatrix base = m;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0;
    for (const auto& v : m.a) s += std::norm(v);
    return std::sqrt(s);
}

double unitarity_defect(const ComplexMatrix& m) {
    return frobenius_norm(m * m.adjoint() - ComplexMatrix::identity(m.rows));
}

cd inner(const cvec& x, const cvec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: length mismatch");
    cd acc{};
    for (size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm(const cvec& x) {
    double s = 0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

namespace {

// Columns of m (and the accumulator v) rotated so columns p and q of m
// become orthogonal. Hestenes one-sided scheme.
bool orthogonalize_pair(Mat3& m, Mat3& v, int p, int q, double scale) {
    double app = 0, aqq = 0, apq = 0;
    for (int i = 0; i < 3; ++i) {
        app += m[i][p] * m[i][p];
        aqq += m[i][q] * m[i][q];
        apq += m[i][p] * m[i][q];
    }
    if (std::abs(apq) <= tol::svd_offdiag * scale * scale) return false;
    const double zeta = (aqq - app) / (2.0 * apq);
    const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = c * t;
    for (int i = 0; i < 3; ++i) {
        const double mp = m[i][p], mq = m[i][q];
        m[i][p] = c * mp - s * mq;
        m[i][q] = s * mp + c * mq;
        const double vp = v[i][p], vq = v[i][q];
        v[i][p] = c * vp - s * vq;
        v[i][q] = s * vp + c * vq;
    }
    return true;
}

}  // namespace

Svd3 svd3(const Mat3& D) {
    Mat3 u = D;
    Mat3 v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    double scale = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(D[i][j]));
    if (scale == 0) scale = 1;

    for (int sweep = 0; sweep < tol::svd_max_sweeps; ++sweep) {
        bool any = false;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) any |= orthogonalize_pair(u, v, p, q, scale);
        if (!any) break;
    }

    Svd3 out;
    out.V = v;
    for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int i = 0; i < 3; ++i) s += u[i][j] * u[i][j];
        out.s[j] = std::sqrt(s);
    }

    // Descending order, permuting all three factors together.
    std::array<int, 3> ord{0, 1, 2};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (out.s[ord[j]] > out.s[ord[i]]) std::swap(ord[i], ord[j]);
    Svd3 sorted;
    for (int j = 0; j < 3; ++j) {
        sorted.s[j] = out.s[ord[j]];
        for (int i = 0; i < 3; ++i) {
            sorted.W[i][j] = u[i][ord[j]];
            sorted.V[i][j] = v[i][ord[j]];
        }
    }

    // Normalize left columns; fill near-null ones with any unit vector
    // orthogonal to the columns already placed.
    const double tiny = scale * 1e-15;
    for (int j = 0; j < 3; ++j) {
        if (sorted.s[j] > tiny) {
            for (int i = 0; i < 3; ++i) sorted.W[i][j] /= sorted.s[j];
            continue;
        }
        sorted.s[j] = 0.0;
        std::array<double, 3> cand{};
        for (int basis = 0; basis < 3; ++basis) {
            cand = {0, 0, 0};
            cand[basis] = 1;
            for (int k = 0; k < j; ++k) {
                double dot = 0;
                for (int i = 0; i < 3; ++i) dot += sorted.W[i][k] * cand[i];
                for (int i = 0; i < 3; ++i) cand[i] -= dot * sorted.W[i][k];
            }
            double n2 = cand[0] * cand[0] + cand[1] * cand[1] + cand[2] * cand[2];
            if (n2 > 0.25) {
                const double n = std::sqrt(n2);
                for (int i = 0; i < 3; ++i) sorted.W[i][j] = cand[i] / n;
                break;
            }
        }
    }
    return sorted;
}

}  // namespace edwalk
