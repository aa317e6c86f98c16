#ifndef COOPEM_VERSION_HPP
#define COOPEM_VERSION_HPP

namespace coopem {

inline constexpr const char* version = "0.1.0";

} // namespace coopem

#endif
