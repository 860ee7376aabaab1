#pragma once

namespace bji {

/// Selects the serial reference kernel or its OpenMP counterpart. Both
/// produce bit-identical results.
enum class Exec { serial, parallel };

}  // namespace bji
