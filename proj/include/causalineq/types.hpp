#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace causalineq {

// Bitmask over observed-variable indices (storage order). Supports up to 64
// observed variables; the constraint-derivation algorithms impose their own,
// much tighter, per-component caps.
using VarSet = std::uint64_t;

constexpr VarSet var_bit(int i) { return VarSet{1} << i; }
constexpr bool contains(VarSet s, int i) { return (s >> i) & VarSet{1}; }
constexpr bool is_subset(VarSet a, VarSet b) { return (a & ~b) == 0; }
constexpr bool is_proper_subset(VarSet a, VarSet b) {
  return a != b && is_subset(a, b);
}
constexpr int set_size(VarSet s) { return std::popcount(s); }

// Ascending index order.
std::vector<int> set_members(VarSet s);

// Visits every subset of mask exactly once (order unspecified; callers that
// need the size-then-lexicographic order collect and sort).
template <typename F>
void for_each_subset(VarSet mask, F&& fn) {
  VarSet sub = mask;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

// Malformed user input: bad files, unknown names, inconsistent tables.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural limit was exceeded (for example a c-component larger than the
// configured cap). Reported separately so callers can distinguish "this graph
// is out of scope" from "this input is malformed".
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace causalineq
