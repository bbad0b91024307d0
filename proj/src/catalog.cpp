#include "models.hpp"

namespace zl::models {

// Placeholder catalog while the engine is brought up; replaced by the full
// database below.
static const char* kCatalogText = R"CAT(
# blow up of an intersection of two quadrics along a conic
model 2-16 on P(2) x Gr(2,4) cut dual(U2)(1,0)+O(0,2) expect (14,22,2,2);
model 2-16 alt 1 on Fl(1,2;4) cut O(1,0)+O(0,2) expect (14,22,2,2);
# quintic del Pezzo surface
model dp-5-1 on Gr(2,5) cut O(1)+O(1)+O(1)+O(1) expect (5,6);
)CAT";

const std::vector<ModelRecord>& catalog() {
    static const std::vector<ModelRecord>* recs = new std::vector<ModelRecord>(parse(kCatalogText));
    return *recs;
}

} // namespace zl::models
