#include "standby/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace standby::kernels {

int worker_count() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("STANDBY_MMAP_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(n, 1);
}

void vecmat_serial(const RowVector& x, const SparseMatrix& D, RowVector& y) {
    y.setZero(D.cols());
    // Scatter row by row: each y[j] receives its terms in increasing row order.
    for (Index i = 0; i < D.outerSize(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (SparseMatrix::InnerIterator it(D, i); it; ++it) y[it.col()] += xi * it.value();
    }
}

void vecmat_parallel(const RowVector& x, const SparseColMatrix& Dcol, RowVector& y) {
    y.resize(Dcol.cols());
    const Index n = Dcol.cols();
    const int* outer = Dcol.outerIndexPtr();
    const int* inner = Dcol.innerIndexPtr();
    const double* val = Dcol.valuePtr();
    const double* xp = x.data();
    double* yp = y.data();
    // Gather column by column (rows ascending), matching the serial order.
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (Index j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int p = outer[j]; p < outer[j + 1]; ++p) {
            const double xi = xp[inner[p]];
            if (xi != 0.0) acc += xi * val[p];
        }
        yp[j] = acc;
    }
}

Vector row_sums_serial(const SparseMatrix& D) {
    Vector out = Vector::Zero(D.rows());
    for (Index i = 0; i < D.outerSize(); ++i)
        for (SparseMatrix::InnerIterator it(D, i); it; ++it) out[i] += it.value();
    return out;
}

Vector row_sums_parallel(const SparseMatrix& D) {
    Vector out(D.rows());
    const int* outer = D.outerIndexPtr();
    const double* val = D.valuePtr();
    const Index n = D.rows();
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int p = outer[i]; p < outer[i + 1]; ++p) acc += val[p];
        out[i] = acc;
    }
    return out;
}

}  // namespace standby::kernels
