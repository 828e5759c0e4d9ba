#pragma once
#include <cstdint>

namespace tppc {

// abstract cost units for encode-scaling assertions; consistent across code
// sizes, not comparable to wall time
struct OpCount {
    static thread_local std::uint64_t units;
    static void add(std::uint64_t n) { units += n; }
    static std::uint64_t read() { return units; }
    static void reset() { units = 0; }
};

} // namespace tppc
