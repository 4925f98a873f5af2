#pragma once

#include <string>

#include "weylab/grid.hpp"
#include "weylab/quantize.hpp"

#include <nlohmann/json.hpp>

namespace weylab {

/// Flat binary container for a phase-space field.
/// Layout: magic "WLF1" | u32 n | f64 L | u64 N | u32 flag (0 = float64
/// payload, 1 = complex128 payload) | i32 poly_degree | row-major payload.
void write_field(const SymbolField& a, const std::string& path);
SymbolField read_field(const std::string& path);

/// Kernel container: magic "WLK1" | u32 n | f64 L | u64 N | f64 t |
/// u8 scaled | complex128 payload, row-major (N^n x N^n).
void write_kernel(const OperatorKernel& k, const std::string& path);
OperatorKernel read_kernel(const std::string& path);

/// JSON forms for small cases: values as [re, im] pairs.
nlohmann::json field_to_json(const SymbolField& a);
SymbolField field_from_json(const nlohmann::json& j);

/// Deterministic JSON serialization: keys sorted, doubles printed with
/// round-trip (17 significant digit) precision so identical inputs give
/// byte-identical files.
std::string dump_deterministic(const nlohmann::json& j);
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace weylab
