#include "conical/common.hpp"

namespace conical {

std::string_view region_name(Region r) {
  switch (r) {
    case Region::SeriesNear1: return "series";
    case Region::KummerLargeTau: return "kummer";
    case Region::LargeX: return "largex";
    case Region::Recurrence: return "recurrence";
    case Region::OdeMarch: return "march";
  }
  return "unknown";
}

EvalStatus validate(const EvalPoint& p, FunctionKind kind) {
  if (!std::isfinite(p.x) || !std::isfinite(p.tau)) return EvalStatus::OutOfRange;
  if (p.m < 0 || p.tau < 0.0) return EvalStatus::OutOfRange;
  if (kind == FunctionKind::P) {
    if (p.x <= -1.0) return EvalStatus::OutOfRange;
  } else if (p.x <= 1.0) {
    return EvalStatus::OutOfRange;
  }
  return EvalStatus::Ok;
}

}  // namespace conical
