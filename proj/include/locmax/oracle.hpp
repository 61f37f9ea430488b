#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "locmax/instance.hpp"

namespace locmax {

// Counts carry arbitrary-precision values: the polynomial counters can return
// powers of two past 64 bits, and every path shares this report shape.
struct CountReport {
  mpz_class value;
  std::string method;  // "brute" | "monotone" | "affine" | "im2-pipeline"
  std::vector<std::string> notes;
};

// (n_max0, n_max1, n_bad) over the satisfying assignments that are maximal for
// every variable except possibly the distinguished one: n_bad counts those not
// maximal for it, the others are locally maximal split by its value.
struct GadgetProfile {
  std::uint64_t n_max0 = 0;
  std::uint64_t n_max1 = 0;
  std::uint64_t n_bad = 0;

  bool operator==(const GadgetProfile&) const = default;
};

// Enumeration refuses instances with more than this many variables unless the
// caller raises the cap explicitly.
inline constexpr int kDefaultEnumerationCap = 24;

// Exhaustive 2^n enumeration. Errors TooLarge past the cap.
CountReport count_sat(const Instance& instance, int cap = kDefaultEnumerationCap);
CountReport count_max_sat(const Instance& instance, int cap = kDefaultEnumerationCap);

// Exhaustive profile for a candidate gadget; `distinguished` is a variable id.
GadgetProfile gadget_profile(const Instance& instance, int distinguished,
                             int cap = kDefaultEnumerationCap);

}  // namespace locmax
