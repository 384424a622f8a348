#include "specf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specf/errors.hpp"

namespace specf {

namespace {

constexpr int kQlIterationCap = 100;

// Householder reduction of the symmetric matrix stored in V to tridiagonal
// form (diagonal d, off-diagonal e); V is overwritten with the accumulated
// orthogonal transformation.
void householder_tridiagonalize(int n, std::vector<double>& V, std::vector<double>& d,
                                std::vector<double>& e) {
    auto v = [&](int i, int j) -> double& { return V[static_cast<std::size_t>(i) * n + j]; };

    for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0.0;

            for (int j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (int i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e); eigenvector columns of V are
// rotated along. Throws if any eigenvalue fails to settle within the cap.
void tridiagonal_ql(int n, std::vector<double>& V, std::vector<double>& d,
                    std::vector<double>& e) {
    auto v = [&](int i, int j) -> double& { return V[static_cast<std::size_t>(i) * n + j]; };

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        while (m < n && std::abs(e[m]) > eps * tst1) ++m;
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > kQlIterationCap)
                    throw NumericalError("eig_sym: QL iteration cap reached; residual " +
                                         std::to_string(std::abs(e[l])));
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (int k = 0; k < n; ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

void sort_ascending(Spectrum& s) {
    const int n = s.n;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return s.eigenvalues[a] < s.eigenvalues[b]; });
    std::vector<double> values(n);
    std::vector<double> vectors(s.vectors.size());
    for (int l = 0; l < n; ++l) {
        values[l] = s.eigenvalues[order[l]];
        for (int i = 0; i < n; ++i)
            vectors[static_cast<std::size_t>(i) * n + l] = s.u(i, order[l]);
    }
    s.eigenvalues = std::move(values);
    s.vectors = std::move(vectors);
}

// Sign convention: the first component of each eigenvector that is not
// negligible (relative to the column max) is made positive.
void fix_signs(Spectrum& s) {
    const int n = s.n;
    for (int l = 0; l < n; ++l) {
        double max_abs = 0.0;
        for (int i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(s.u(i, l)));
        const double thresh = 1e-9 * max_abs;
        for (int i = 0; i < n; ++i) {
            const double val = s.u(i, l);
            if (std::abs(val) > thresh) {
                if (val < 0.0)
                    for (int r = 0; r < n; ++r) s.u_ref(r, l) = -s.u(r, l);
                break;
            }
        }
    }
}

}  // namespace

Spectrum eig_sym(const DenseSymmetricMatrix& m) {
    const int n = m.size();
    Spectrum s;
    s.n = n;
    s.vectors = m.data();
    s.eigenvalues.assign(n, 0.0);
    if (n == 1) {
        s.eigenvalues[0] = m(0, 0);
        s.vectors = {1.0};
        return s;
    }
    std::vector<double> e(n, 0.0);
    householder_tridiagonalize(n, s.vectors, s.eigenvalues, e);
    tridiagonal_ql(n, s.vectors, s.eigenvalues, e);
    sort_ascending(s);
    fix_signs(s);
    return s;
}

Signal gft(const Signal& s, const Spectrum& spec) {
    if (static_cast<int>(s.size()) != spec.n)
        throw std::invalid_argument("gft: signal length does not match spectrum");
    Signal out = Signal::zeros(s.size());
    for (int l = 0; l < spec.n; ++l) {
        double acc = 0.0;
        for (int i = 0; i < spec.n; ++i) acc += spec.u(i, l) * s[i];
        out[l] = acc;
    }
    return out;
}

Signal igft(const Signal& shat, const Spectrum& spec) {
    if (static_cast<int>(shat.size()) != spec.n)
        throw std::invalid_argument("igft: spectrum length does not match eigenbasis");
    Signal out = Signal::zeros(shat.size());
    for (int i = 0; i < spec.n; ++i) {
        double acc = 0.0;
        for (int l = 0; l < spec.n; ++l) acc += spec.u(i, l) * shat[l];
        out[i] = acc;
    }
    return out;
}

int default_eigengap_max_k(int n) {
    return std::max(1, std::min(n - 1, n / 2));
}

EigengapEstimate estimate_k_eigengap(const Spectrum& spec, int max_k) {
    const int n = spec.n;
    if (n < 2) throw std::invalid_argument("estimate_k_eigengap: need n >= 2");
    if (max_k < 1 || max_k >= n)
        throw std::invalid_argument("estimate_k_eigengap: max_k out of [1, n)");
    const auto& lam = spec.eigenvalues;
    const double span = lam[n - 1] - lam[0];
    if (span <= 1e-12 * std::max(1.0, std::abs(lam[n - 1])))
        return {1, true};
    int best = 1;
    double best_gap = lam[1] - lam[0];
    for (int j = 2; j <= max_k; ++j) {
        const double gap = lam[j] - lam[j - 1];
        if (gap > best_gap) {
            best = j;
            best_gap = gap;
        }
    }
    return {best, false};
}

FilterResponse ideal_lowpass(const Spectrum& spec, int k) {
    const int n = spec.n;
    if (k < 1 || k > n) throw std::invalid_argument("ideal_lowpass: k out of [1, n]");
    FilterResponse fr;
    fr.kind = FilterKind::ideal;
    fr.target.assign(n, 0.0);
    if (k == n) {
        std::fill(fr.target.begin(), fr.target.end(), 1.0);
    } else {
        const double cut = spec.eigenvalues[k];
        const double tol = 1e-9 * std::max(1.0, std::abs(cut));
        for (int l = 0; l < n; ++l)
            fr.target[l] = spec.eigenvalues[l] < cut - tol ? 1.0 : 0.0;
    }
    fr.realized = fr.target;
    return fr;
}

namespace {

// Cholesky factorization of the (d+1)x(d+1) normal-equations matrix built
// from moment sums of x. Returns false on a non-positive pivot, signalling
// rank deficiency.
bool cholesky_solve(const std::vector<double>& gram, std::vector<double> rhs, int dim,
                    std::vector<double>& out) {
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> low(static_cast<std::size_t>(dim) * dim, 0.0);
    auto g = [&](int i, int j) { return gram[static_cast<std::size_t>(i) * dim + j]; };
    auto l = [&](int i, int j) -> double& { return low[static_cast<std::size_t>(i) * dim + j]; };
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = g(i, j);
            for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (sum <= 100.0 * eps * g(i, i)) return false;
                l(i, j) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }
    // forward then back substitution
    for (int i = 0; i < dim; ++i) {
        double sum = rhs[i];
        for (int k = 0; k < i; ++k) sum -= l(i, k) * rhs[k];
        rhs[i] = sum / l(i, i);
    }
    for (int i = dim - 1; i >= 0; --i) {
        double sum = rhs[i];
        for (int k = i + 1; k < dim; ++k) sum -= l(k, i) * rhs[k];
        rhs[i] = sum / l(i, i);
    }
    out = std::move(rhs);
    return true;
}

double horner(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// One least-squares fit attempt at the given degree.
bool try_fit(const std::vector<double>& x, const std::vector<double>& y, int degree,
             std::vector<double>& coeffs) {
    const int n = static_cast<int>(x.size());
    const int dim = degree + 1;
    std::vector<double> moments(2 * degree + 1, 0.0);
    for (int l = 0; l < n; ++l) {
        double p = 1.0;
        for (int r = 0; r <= 2 * degree; ++r) {
            moments[r] += p;
            p *= x[l];
        }
    }
    std::vector<double> gram(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            gram[static_cast<std::size_t>(i) * dim + j] = moments[i + j];
    auto project = [&](const std::vector<double>& vals) {
        std::vector<double> rhs(dim, 0.0);
        for (int l = 0; l < n; ++l) {
            double p = 1.0;
            for (int i = 0; i < dim; ++i) {
                rhs[i] += vals[l] * p;
                p *= x[l];
            }
        }
        return rhs;
    };
    if (!cholesky_solve(gram, project(y), dim, coeffs)) return false;
    // two rounds of least-squares refinement to sharpen ill-conditioned fits
    for (int round = 0; round < 2; ++round) {
        std::vector<double> resid(n);
        for (int l = 0; l < n; ++l) resid[l] = y[l] - horner(coeffs, x[l]);
        std::vector<double> corr;
        if (!cholesky_solve(gram, project(resid), dim, corr)) break;
        for (int i = 0; i < dim; ++i) coeffs[i] += corr[i];
    }
    return true;
}

}  // namespace

FilterResponse fit_polynomial_filter(const Spectrum& spec, const std::vector<double>& alphas,
                                     int degree) {
    const int n = spec.n;
    if (degree < 0) throw std::invalid_argument("fit_polynomial_filter: degree must be >= 0");
    if (static_cast<int>(alphas.size()) != n)
        throw std::invalid_argument("fit_polynomial_filter: target length does not match spectrum");
    if (n < degree + 1)
        throw std::invalid_argument("fit_polynomial_filter: need at least degree + 1 eigenvalues");

    FilterResponse fr;
    fr.kind = FilterKind::polynomial;
    fr.target = alphas;
    const double lmax = spec.lambda_max();
    fr.lambda_scale = lmax > 0.0 ? lmax : 1.0;

    std::vector<double> x(n);
    for (int l = 0; l < n; ++l) x[l] = spec.eigenvalues[l] / fr.lambda_scale;

    // degree 0 always succeeds (gram reduces to [n]), so this terminates
    int d = degree;
    std::vector<double> coeffs;
    while (!try_fit(x, alphas, d, coeffs) && d > 0) {
        fr.degree_reduced = true;
        --d;
    }
    if (coeffs.empty())
        coeffs = {std::accumulate(alphas.begin(), alphas.end(), 0.0) / static_cast<double>(n)};
    fr.degree = d;
    fr.coefficients = coeffs;
    fr.realized.resize(n);
    for (int l = 0; l < n; ++l) fr.realized[l] = horner(coeffs, x[l]);
    return fr;
}

Signal apply_filter(const Signal& shat, const FilterResponse& fr) {
    if (shat.size() != fr.realized.size())
        throw std::invalid_argument("apply_filter: spectrum length does not match response");
    Signal out = shat;
    for (std::size_t l = 0; l < out.size(); ++l) out[l] *= fr.realized[l];
    return out;
}

}  // namespace specf
