#ifndef FGK_VERSION_HPP
#define FGK_VERSION_HPP

namespace fgk {

inline constexpr const char* kToolName = "fgk";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fgk

#endif  // FGK_VERSION_HPP
