#pragma once

#include <map>
#include <optional>
#include <string>

#include "fbp/drawing.hpp"

namespace fbp {

enum class Family {
    OnesidedGeneral,
    OnesidedOuter,
    Bn,
    Waterlily,
    DoubleWaterlily,
    LayeredLily,
    D12,
};
std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct FamilyInstance {
    Family family;
    std::map<std::string, long> parameters;
    Graph graph;
    std::optional<BundledDrawing> drawing;
    long expected_edges = 0;
};

// Pentagonal planar base with all faces of length 5 (n = 5+3k), as a
// bundle-free drawing whose faces can be traced.
BundledDrawing pentagonal_base(int k);

FamilyInstance gen_onesided_general(int k);  // n = 5+3k, k >= 1
FamilyInstance gen_onesided_outer(int q);    // n = 3q+2, q >= 1
FamilyInstance gen_bn(int k);                // n = 3k+2, k >= 1
FamilyInstance gen_waterlily(int n);         // n >= 9
FamilyInstance gen_double_waterlily(int n);  // n >= 9
FamilyInstance gen_layered_lily(int n);      // n >= 10, n even
FamilyInstance gen_d12();

// Tight density bound of Table 1 for a validated drawing class, as a floor.
long density_bound(int sides, Variant variant, long n);

}  // namespace fbp
