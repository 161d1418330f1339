#pragma once

#include "standby/types.hpp"

// Hot loops in two flavours: an OpenMP version used by default and a plain
// serial reference kept for testing and benchmarking. Both accumulate in the
// same order, so their results are bitwise identical.
namespace standby::kernels {

// Worker count: omp_get_max_threads(), capped by STANDBY_MMAP_THREADS.
int worker_count();

// y = x * D
void vecmat_serial(const RowVector& x, const SparseMatrix& D, RowVector& y);
void vecmat_parallel(const RowVector& x, const SparseColMatrix& Dcol, RowVector& y);

// D * e
Vector row_sums_serial(const SparseMatrix& D);
Vector row_sums_parallel(const SparseMatrix& D);
inline Vector row_sums(const SparseMatrix& D) { return row_sums_parallel(D); }

}  // namespace standby::kernels
