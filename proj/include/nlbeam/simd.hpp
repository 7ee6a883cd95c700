#pragma once

#include <cstddef>
#include <span>
#include <string_view>

/// Data-parallel inner loops of the solvers. Every routine has a portable
/// scalar reference and, where the target allows, an AVX2+FMA or NEON variant.
/// The variant is chosen once at first use from the CPU features, and can be
/// pinned with the NLBEAM_SIMD environment variable (scalar, avx2, neon) or
/// with force_isa() in tests. Results agree with the scalar reference up to
/// summation order (dot, matvec) and exactly for max_abs / max_abs_diff.
namespace nlbeam::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

Isa active_isa();

/// Throws ArgumentError if `isa` is not available.
void force_isa(Isa isa);

/// Back to the automatic choice.
void reset_isa();

double dot(std::span<const double> a, std::span<const double> b);

/// y = M x for a row-major M with x.size() columns and y.size() rows.
void matvec(std::span<const double> m, std::span<const double> x, std::span<double> y);

double max_abs(std::span<const double> a);

double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// u <- (1 - w) u + w v.
void blend(std::span<double> u, std::span<const double> v, double w);

}  // namespace nlbeam::simd
