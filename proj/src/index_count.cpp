#include "cmclab/index_count.hpp"

#include <stdexcept>

namespace cmclab {

int end_contribution(EndClass e) {
    switch (e) {
        case EndClass::Generic: return 6;
        case EndClass::MirrorPlane: return 4;
        case EndClass::Axis: return 2;
    }
    return 0;
}

int deficiency_dim(const std::vector<EndClass>& ends) {
    if (ends.empty()) throw std::invalid_argument("deficiency_dim: empty end list");
    int sum = 0;
    for (EndClass e : ends) sum += end_contribution(e);
    return sum;
}

DimReport moduli_dims(int k, bool coplanar, bool nondegenerate) {
    if (k < 2) throw std::invalid_argument("moduli_dims: need k >= 2 ends");
    DimReport rep;
    rep.k = k;
    rep.coplanar = coplanar;
    rep.nondegenerate = nondegenerate;
    rep.deficiency = k * (coplanar ? 4 : 6);
    rep.half_deficiency = rep.deficiency / 2;
    rep.premoduli = coplanar ? 2 * k : 3 * k;
    rep.moduli = coplanar ? 2 * k - 3 : 3 * k - 6;
    rep.lower_bound_only = !nondegenerate;
    return rep;
}

ConsistencyReport consistency_report(const NecksizeParams&, const TemperedDimension& modes) {
    ConsistencyReport rep;
    rep.computed_even = modes.even;
    rep.predicted = 2 * 2;  // k = 2 for the unduloid
    rep.inconclusive = modes.inconclusive;
    rep.consistent = !rep.inconclusive && rep.computed_even == rep.predicted;
    return rep;
}

}  // namespace cmclab
