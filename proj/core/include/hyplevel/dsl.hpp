#pragma once

#include <string_view>

#include "hyplevel/holomap.hpp"

namespace hyplevel {

/// Parse the map description language:
///
///   map   := id | const(re,im) | rot(theta) | scale(r) | phi(re,im)
///          | falpha(alpha) | kalpha(alpha) | galpha(alpha)
///          | blaschke([(re,im,mult),...];sigma_re,sigma_im)
///          | compose(map,map) | mul(map,map) | smul(re,im,map)
///
/// Whitespace is insignificant everywhere. Errors carry the byte offset into
/// the original text at which parsing failed.
HoloMap parse_map(std::string_view text);

}  // namespace hyplevel
