#ifndef COSLAW_VERSION_HPP
#define COSLAW_VERSION_HPP

namespace coslaw {

inline constexpr const char* version_string = "0.1.0";

}

#endif
