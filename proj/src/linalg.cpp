#include "torres/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "torres/errors.hpp"

namespace torres {

namespace {

int nrows(const QMat& a) { return static_cast<int>(a.size()); }
int ncols(const QMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

}  // namespace

int q_rank(QMat a) {
    int m = nrows(a), n = ncols(a);
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i) {
            if (a[i][c] != 0) { p = i; break; }
        }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        for (int i = r + 1; i < m; ++i) {
            if (a[i][c] == 0) continue;
            QQ f = a[i][c] / a[r][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

Rref rref_with_transform(QMat a) {
    int m = nrows(a), n = ncols(a);
    Rref out;
    out.cols = n;
    out.transform.assign(m, QVec(m, 0));
    for (int i = 0; i < m; ++i) out.transform[i][i] = 1;

    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i) {
            if (a[i][c] != 0) { p = i; break; }
        }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        std::swap(out.transform[r], out.transform[p]);
        QQ inv = 1 / a[r][c];
        for (int j = 0; j < n; ++j) a[r][j] *= inv;
        for (int j = 0; j < m; ++j) out.transform[r][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0) continue;
            QQ f = a[i][c];
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
            for (int j = 0; j < m; ++j) out.transform[i][j] -= f * out.transform[r][j];
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.rref = std::move(a);
    return out;
}

std::optional<QVec> Rref::solve(const QVec& b) const {
    int m = static_cast<int>(transform.size());
    if (static_cast<int>(b.size()) != m) throw InternalError("rref solve: size mismatch");
    QVec y(m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (transform[i][j] != 0 && b[j] != 0) y[i] += transform[i][j] * b[j];
        }
    }
    for (int i = rank; i < m; ++i) {
        if (y[i] != 0) return std::nullopt;
    }
    QVec x(cols, 0);
    for (int i = 0; i < rank; ++i) x[pivot_cols[i]] = y[i];
    return x;
}

std::optional<QVec> q_solve(QMat a, QVec b) {
    Rref f = rref_with_transform(std::move(a));
    return f.solve(b);
}

ZZ z_det(ZMat a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    for (auto& row : a) {
        if (static_cast<int>(row.size()) != n) throw InternalError("z_det: non-square matrix");
    }
    // Bareiss: exact, division-free growth control.
    ZZ prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i) {
                if (a[i][k] != 0) { p = i; break; }
            }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                ZZ num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

ZMat hnf_rows(ZMat a) {
    int m = static_cast<int>(a.size());
    int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        // Euclid on rows r.. until column c has a single nonzero there.
        while (true) {
            int p = -1;
            for (int i = r; i < m; ++i) {
                if (a[i][c] != 0 && (p < 0 || cmp(abs(a[i][c]), abs(a[p][c])) < 0)) p = i;
            }
            if (p < 0) break;
            std::swap(a[r], a[p]);
            bool clean = true;
            for (int i = r + 1; i < m; ++i) {
                if (a[i][c] == 0) continue;
                ZZ q = a[i][c] / a[r][c];  // truncating is fine for Euclid
                if (q != 0) {
                    for (int j = 0; j < n; ++j) a[i][j] -= q * a[r][j];
                }
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < m && a[r][c] != 0) {
            if (a[r][c] < 0) {
                for (int j = 0; j < n; ++j) a[r][j] = -a[r][j];
            }
            for (int i = 0; i < r; ++i) {
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                if (q != 0) {
                    for (int j = 0; j < n; ++j) a[i][j] -= q * a[r][j];
                }
            }
            ++r;
        }
    }
    a.resize(r);
    return a;
}

ZMat kernel_lattice(const ZMat& a) {
    int m = static_cast<int>(a.size());
    int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    ZMat w = a;
    ZMat v(n, std::vector<ZZ>(n, 0));
    for (int j = 0; j < n; ++j) v[j][j] = 1;

    auto col_sub = [&](int dst, int src, const ZZ& q) {
        for (int i = 0; i < m; ++i) w[i][dst] -= q * w[i][src];
        for (int i = 0; i < n; ++i) v[i][dst] -= q * v[i][src];
    };
    auto col_swap = [&](int x, int y) {
        for (int i = 0; i < m; ++i) std::swap(w[i][x], w[i][y]);
        for (int i = 0; i < n; ++i) std::swap(v[i][x], v[i][y]);
    };

    int c = 0;
    for (int row = 0; row < m && c < n; ++row) {
        while (true) {
            int p = -1;
            for (int j = c; j < n; ++j) {
                if (w[row][j] != 0 && (p < 0 || cmp(abs(w[row][j]), abs(w[row][p])) < 0)) p = j;
            }
            if (p < 0) break;
            col_swap(c, p);
            bool clean = true;
            for (int j = c + 1; j < n; ++j) {
                if (w[row][j] == 0) continue;
                ZZ q = w[row][j] / w[row][c];
                if (q != 0) col_sub(j, c, q);
                if (w[row][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (w[row][c] != 0) ++c;
    }

    ZMat basis;
    for (int j = c; j < n; ++j) {
        std::vector<ZZ> k(n);
        for (int i = 0; i < n; ++i) k[i] = v[i][j];
        basis.push_back(std::move(k));
    }
    return hnf_rows(std::move(basis));
}

Smith smith_normal_form(ZMat a) {
    int m = static_cast<int>(a.size());
    int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    Smith out;
    out.u.assign(m, std::vector<ZZ>(m, 0));
    for (int i = 0; i < m; ++i) out.u[i][i] = 1;

    auto row_sub = [&](int dst, int src, const ZZ& q) {
        for (int j = 0; j < n; ++j) a[dst][j] -= q * a[src][j];
        for (int j = 0; j < m; ++j) out.u[dst][j] -= q * out.u[src][j];
    };
    auto row_neg = [&](int i) {
        for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
        for (int j = 0; j < m; ++j) out.u[i][j] = -out.u[i][j];
    };
    auto col_sub = [&](int dst, int src, const ZZ& q) {
        for (int i = 0; i < m; ++i) a[i][dst] -= q * a[i][src];
    };

    int t = 0;
    while (t < m && t < n) {
        // Locate the smallest nonzero entry in the trailing block.
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i) {
            for (int j = t; j < n; ++j) {
                if (a[i][j] != 0 && (pi < 0 || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        std::swap(out.u[t], out.u[pi]);
        for (int i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);

        bool dirty = false;
        for (int i = t + 1; i < m; ++i) {
            if (a[i][t] == 0) continue;
            ZZ q = a[i][t] / a[t][t];
            row_sub(i, t, q);
            if (a[i][t] != 0) dirty = true;
        }
        for (int j = t + 1; j < n; ++j) {
            if (a[t][j] == 0) continue;
            ZZ q = a[t][j] / a[t][t];
            col_sub(j, t, q);
            if (a[t][j] != 0) dirty = true;
        }
        if (dirty) continue;

        // Enforce divisibility of the remaining block by the pivot.
        bool divides = true;
        for (int i = t + 1; i < m && divides; ++i) {
            for (int j = t + 1; j < n && divides; ++j) {
                if (a[i][j] % a[t][t] != 0) {
                    row_sub(t, i, ZZ(-1));  // fold row i into the pivot row
                    divides = false;
                }
            }
        }
        if (!divides) continue;
        if (a[t][t] < 0) row_neg(t);
        ++t;
    }
    out.diag.assign(std::min(m, n), 0);
    for (int i = 0; i < t; ++i) out.diag[i] = a[i][i];
    return out;
}

int perm_sign(const std::vector<int>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i) {
        for (size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] > seq[j]) ++inv;
        }
    }
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace torres
