#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels.hpp"
#include "nlbeam/error.hpp"
#include "nlbeam/simd.hpp"

namespace nlbeam::simd {

namespace {

using detail::Kernels;

const Kernels* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &detail::kScalar;
    case Isa::Avx2:
#if defined(NLBEAM_HAVE_AVX2_KERNELS)
      return &detail::kAvx2;
#else
      return nullptr;
#endif
    case Isa::Neon:
#if defined(NLBEAM_HAVE_NEON_KERNELS)
      return &detail::kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(NLBEAM_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(NLBEAM_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa automatic_choice() {
  if (const char* env = std::getenv("NLBEAM_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == to_string(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

struct State {
  std::atomic<Isa> isa{automatic_choice()};
};

State& state() {
  static State s;
  return s;
}

const Kernels& active() { return *table_for(state().isa.load(std::memory_order_relaxed)); }

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw ArgumentError("span sizes differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) { return table_for(isa) != nullptr && cpu_supports(isa); }

Isa active_isa() { return state().isa.load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw ArgumentError("SIMD variant '" + std::string(to_string(isa)) + "' not available");
  state().isa.store(isa, std::memory_order_relaxed);
}

void reset_isa() { state().isa.store(automatic_choice(), std::memory_order_relaxed); }

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active().dot(a.data(), b.data(), a.size());
}

void matvec(std::span<const double> m, std::span<const double> x, std::span<double> y) {
  check_same(m.size(), x.size() * y.size());
  active().matvec(m.data(), y.size(), x.size(), x.data(), y.data());
}

double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

void blend(std::span<double> u, std::span<const double> v, double w) {
  check_same(u.size(), v.size());
  active().blend(u.data(), v.data(), w, u.size());
}

}  // namespace nlbeam::simd
