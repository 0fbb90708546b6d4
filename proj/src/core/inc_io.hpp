#pragma once

#include <string>

#include "incidence.hpp"

namespace pc {

// Text format for incidence systems:
//   planecode v1
//   points <v>
//   lines <b>
//   <b rows of ascending space-separated point indices>
// The writer emits canonical storage order, so write(read(f)) == f.
std::string to_inc_text(const IncidenceSystem& sys);
IncidenceSystem from_inc_text(const std::string& text);  // rejects unsorted/out-of-range rows

void write_inc_file(const IncidenceSystem& sys, const std::string& path);
IncidenceSystem read_inc_file(const std::string& path);

// Content hash of the canonical .inc bytes, as 16 hex digits. Keys census
// caches and file headers.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::string fingerprint(const IncidenceSystem& sys);

}  // namespace pc
