#pragma once

#include <vector>

#include "cmclab/jacobi_modes.hpp"

namespace cmclab {

// Dimension bookkeeping for moduli of CMC surfaces with k ends: the
// difference dim J^G - dim J^G_0 of tempered versus L^2 Jacobi fields is
// half the dimension of the deficiency space W^G, which is additive over
// representative ends.

enum class EndClass { Generic, MirrorPlane, Axis };

// 6 for an end in general position, 4 in a mirror plane, 2 along a
// rotation axis.
int end_contribution(EndClass e);

int deficiency_dim(const std::vector<EndClass>& ends);

struct DimReport {
    int k = 0;
    bool coplanar = false;
    bool nondegenerate = true;
    int deficiency = 0;       // dim W^G over a full set of ends
    int half_deficiency = 0;  // expected dim J^G - dim J^G_0
    int premoduli = 0;        // 2k (coplanar) or 3k
    int moduli = 0;           // 2k-3 or 3k-6
    bool lower_bound_only = false;  // premoduli is only a lower bound
};

DimReport moduli_dims(int k, bool coplanar, bool nondegenerate);

struct ConsistencyReport {
    int computed_even = 0;  // numerical tempered even dimension at k = 2
    int predicted = 0;      // 2k with k = 2
    bool consistent = false;
    bool inconclusive = false;
};

// Numerical shadow of nondegeneracy: the mode computation's even
// tempered count must reproduce the k = 2 prediction.
ConsistencyReport consistency_report(const NecksizeParams& params,
                                     const TemperedDimension& modes);

}  // namespace cmclab
