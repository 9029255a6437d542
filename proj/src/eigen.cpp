#include "pwbands/eigen.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>

namespace pwbands {

namespace {

using Complex = std::complex<double>;

// Reduce Hermitian `a` in place to tridiagonal form; `q` accumulates the
// reflectors so that the input equals q·T·q†.
void householder_tridiagonalize(ComplexMatrix& a, ComplexMatrix& q) {
    const std::size_t n = a.dim();
    if (n < 3) return;
    std::vector<Complex> v(n), p(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha2 += std::norm(a(i, k));
        // Column already reduced.
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
        if (tail == 0.0) continue;

        const double alpha = std::sqrt(alpha2);
        const Complex x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex{1.0, 0.0};

        std::fill(v.begin(), v.end(), Complex{});
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] += phase * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        const double w = 2.0 / vnorm2;

        // p = w·B·v on the trailing block B = a[k+1:, k+1:].
        Complex vp{};
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex s{};
            const Complex* ai = a.row(i);
            for (std::size_t j = k + 1; j < n; ++j) s += ai[j] * v[j];
            p[i] = w * s;
            vp += std::conj(v[i]) * p[i];
        }
        // v†p is real for Hermitian B.
        const double half_k = 0.5 * w * vp.real();
        for (std::size_t i = k + 1; i < n; ++i) p[i] -= half_k * v[i];

        // B -= v·p† + p·v†
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex* ai = a.row(i);
            for (std::size_t j = k + 1; j < n; ++j) {
                ai[j] -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);
            }
        }
        a(k + 1, k) = -phase * alpha;
        a(k, k + 1) = std::conj(a(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = Complex{};
            a(k, i) = Complex{};
        }

        // q ← q·(I - w v v†)
        for (std::size_t r = 0; r < n; ++r) {
            Complex* qr = q.row(r);
            Complex s{};
            for (std::size_t i = k + 1; i < n; ++i) s += qr[i] * v[i];
            s *= w;
            for (std::size_t j = k + 1; j < n; ++j) qr[j] -= s * std::conj(v[j]);
        }
    }
}

// Implicit-shift QL on the real symmetric tridiagonal (diag, off) where off[i]
// couples i and i+1. Rotations are applied to the rows of zt, the transposed
// eigenvector matrix, so each update touches two contiguous rows.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off, ComplexMatrix& zt) {
    const std::size_t n = diag.size();
    constexpr int kMaxSweeps = 30;
    if (n == 0) return;
    off.resize(n, 0.0);
    off[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (iter++ == kMaxSweeps) {
                throw ConvergenceError("tridiagonal QL did not converge for eigenvalue " +
                                       std::to_string(l));
            }

            double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * off[i];
                const double b = c * off[i];
                r = std::hypot(f, g);
                off[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                Complex* lower = zt.row(i);
                Complex* upper = zt.row(i + 1);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex t = upper[k];
                    upper[k] = s * lower[k] + c * t;
                    lower[k] = c * lower[k] - s * t;
                }
            }
            if (deflated) continue;
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        } while (m != l);
    }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& h) {
    const std::size_t n = h.dim();
    double defect = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scale = std::max(scale, std::abs(h(i, j)));
            defect = std::max(defect, std::abs(h(i, j) - std::conj(h(j, i))));
        }
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

EigenResult eigh(const ComplexMatrix& h) {
    const std::size_t n = h.dim();
    for (const auto& x : h.data()) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw InvalidMatrixError("matrix has non-finite entries");
        }
    }
    const double defect = hermiticity_defect(h);
    if (defect > kHermitianTolerance) {
        throw InvalidMatrixError("matrix is not Hermitian (relative defect " +
                                 std::to_string(defect) + ")");
    }

    // Work on the exactly Hermitian part.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = 0; j < i; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }

    ComplexMatrix z = ComplexMatrix::identity(n);
    householder_tridiagonalize(a, z);

    std::vector<double> diag(n), off(n, 0.0);
    Complex d_phase{1.0, 0.0};
    // Column phases D with D_{i+1} = D_i·e_i/|e_i| make the subdiagonal real; z ← z·D.
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
        for (std::size_t r = 0; r < n; ++r) z(r, i) *= d_phase;
        if (i + 1 < n) {
            const Complex e = a(i + 1, i);
            off[i] = std::abs(e);
            if (off[i] > 0.0) d_phase *= e / off[i];
        }
    }

    ComplexMatrix zt(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) zt(c, r) = z(r, c);
    }
    tridiagonal_ql(diag, off, zt);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    EigenResult result;
    result.values.resize(n);
    result.vectors = ComplexMatrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        result.values[c] = diag[order[c]];
        const Complex* column = zt.row(order[c]);
        for (std::size_t r = 0; r < n; ++r) result.vectors(r, c) = column[r];
    }
    return result;
}

}  // namespace pwbands
