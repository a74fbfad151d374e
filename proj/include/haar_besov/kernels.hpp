#pragma once

#include <span>

// Data-parallel kernels on dense grids. `serial` is the reference; `omp`
// parallelizes the outer loop over independent items and reduces with the
// fixed chunking of reduce.hpp, so both return identical bits.
//
// A level-m grid in dimension d has 2^{md} cells stored row-major. Haar
// detail arrays for level l hold 2^d-1 entries per level-(l-1) parent cube,
// ordered by (parent flat index, pattern).

namespace haar_besov::kernels {

namespace serial {

// sum |v_i|^p
double abs_pow_sum(std::span<const double> v, double p);
// Level-k cube means of a level-m grid.
void block_average(std::span<const double> fine, int d, int m, int k, std::span<double> coarse);
// One cascade step: level-l averages -> level-(l-1) averages and level-l details.
void haar_analysis_step(std::span<const double> fine, int d, int l, std::span<double> coarse,
                        std::span<double> details);
void haar_synthesis_step(std::span<const double> coarse, std::span<const double> details, int d,
                         int l, std::span<double> fine);
// In-place univariate Haar transform of every fiber along `axis`.
void tensor_axis_analysis(std::span<double> data, int d, int m, int axis);
void tensor_axis_synthesis(std::span<double> data, int d, int m, int axis);
// out[a] = sum_x |v(x+a) - v(x)|^p over grid shifts a in [-r,r]^d, row-major in a+r.
void shift_pow_sums(std::span<const double> v, int d, int m, int radius, double p,
                    std::span<double> out);
// out[Q] = min_c int_Q |f - c|^p for each level-k cube Q (cell measure 2^{-md}).
void cube_best_errors(std::span<const double> v, int d, int m, int k, double p,
                      std::span<double> out);

}  // namespace serial

namespace omp {

// sum |v_i|^p
double abs_pow_sum(std::span<const double> v, double p);
// Level-k cube means of a level-m grid.
void block_average(std::span<const double> fine, int d, int m, int k, std::span<double> coarse);
// One cascade step: level-l averages -> level-(l-1) averages and level-l details.
void haar_analysis_step(std::span<const double> fine, int d, int l, std::span<double> coarse,
                        std::span<double> details);
void haar_synthesis_step(std::span<const double> coarse, std::span<const double> details, int d,
                         int l, std::span<double> fine);
// In-place univariate Haar transform of every fiber along `axis`.
void tensor_axis_analysis(std::span<double> data, int d, int m, int axis);
void tensor_axis_synthesis(std::span<double> data, int d, int m, int axis);
// out[a] = sum_x |v(x+a) - v(x)|^p over grid shifts a in [-r,r]^d, row-major in a+r.
void shift_pow_sums(std::span<const double> v, int d, int m, int radius, double p,
                    std::span<double> out);
// out[Q] = min_c int_Q |f - c|^p for each level-k cube Q (cell measure 2^{-md}).
void cube_best_errors(std::span<const double> v, int d, int m, int k, double p,
                      std::span<double> out);

}  // namespace omp

}  // namespace haar_besov::kernels
