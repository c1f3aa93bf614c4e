#include "custard/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace custard {

std::string_view to_string(Backend b) noexcept {
    return b == Backend::OpenMP ? "openmp" : "serial";
}

namespace kernels {

namespace serial {

void spmv(const TransitionMatrix &t, std::span<const double> x, std::span<double> y) {
    const auto offsets = t.offsets();
    const auto indices = t.indices();
    const auto values = t.values();
    const std::size_t n = t.size();
    for (std::size_t u = 0; u < n; ++u) {
        double acc = 0.0;
        for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k)
            acc += values[k] * x[indices[k]];
        y[u] = acc;
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

double sum(std::span<const double> a) {
    double acc = 0.0;
    for (const double x : a)
        acc += x;
    return acc;
}

void scale(std::span<double> a, double factor) {
    for (double &x : a)
        x *= factor;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::abs(a[i] - b[i]);
    return acc;
}

} // namespace serial

namespace omp {

// Rows are independent, so the sparse product is race free and every y[u]
// is accumulated in the same order as the serial version.
void spmv(const TransitionMatrix &t, std::span<const double> x, std::span<double> y) {
    const auto offsets = t.offsets();
    const auto indices = t.indices();
    const auto values = t.values();
    const auto n = static_cast<std::int64_t>(t.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < n; ++u) {
        double acc = 0.0;
        for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k)
            acc += values[k] * x[indices[k]];
        y[u] = acc;
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<std::int64_t>(a.size());
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (std::int64_t i = 0; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

double sum(std::span<const double> a) {
    const auto n = static_cast<std::int64_t>(a.size());
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (std::int64_t i = 0; i < n; ++i)
        acc += a[i];
    return acc;
}

void scale(std::span<double> a, double factor) {
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        a[i] *= factor;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<std::int64_t>(a.size());
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (std::int64_t i = 0; i < n; ++i)
        acc += std::abs(a[i] - b[i]);
    return acc;
}

} // namespace omp

void spmv(Backend b, const TransitionMatrix &t, std::span<const double> x, std::span<double> y) {
    b == Backend::OpenMP ? omp::spmv(t, x, y) : serial::spmv(t, x, y);
}

double dot(Backend b, std::span<const double> x, std::span<const double> y) {
    return b == Backend::OpenMP ? omp::dot(x, y) : serial::dot(x, y);
}

double sum(Backend b, std::span<const double> a) {
    return b == Backend::OpenMP ? omp::sum(a) : serial::sum(a);
}

void scale(Backend b, std::span<double> a, double factor) {
    b == Backend::OpenMP ? omp::scale(a, factor) : serial::scale(a, factor);
}

double l1_distance(Backend b, std::span<const double> x, std::span<const double> y) {
    return b == Backend::OpenMP ? omp::l1_distance(x, y) : serial::l1_distance(x, y);
}

} // namespace kernels
} // namespace custard
