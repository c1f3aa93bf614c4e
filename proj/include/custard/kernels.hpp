#pragma once

// Dense/sparse vector kernels used by the power iteration. Each kernel has a
// serial reference version and an OpenMP version; the serial one is what the
// tests treat as ground truth and what the experiment harness uses inside a
// trial (trials themselves run in parallel).

#include "custard/transition.hpp"

#include <span>
#include <string_view>

namespace custard {

enum class Backend { Serial, OpenMP };

std::string_view to_string(Backend b) noexcept;

namespace kernels {

namespace serial {

/// y = T x
void spmv(const TransitionMatrix &t, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void scale(std::span<double> a, double factor);
double l1_distance(std::span<const double> a, std::span<const double> b);

} // namespace serial

namespace omp {

void spmv(const TransitionMatrix &t, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void scale(std::span<double> a, double factor);
double l1_distance(std::span<const double> a, std::span<const double> b);

} // namespace omp

void spmv(Backend b, const TransitionMatrix &t, std::span<const double> x, std::span<double> y);
double dot(Backend b, std::span<const double> x, std::span<const double> y);
double sum(Backend b, std::span<const double> a);
void scale(Backend b, std::span<double> a, double factor);
double l1_distance(Backend b, std::span<const double> x, std::span<const double> y);

} // namespace kernels
} // namespace custard
