#include "frontier/order.hpp"

namespace frontier {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::Less: return "Less";
    case Relation::Greater: return "Greater";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

}  // namespace frontier
