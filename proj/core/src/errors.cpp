// SPDX-License-Identifier: Apache-2.0
#include "angproj/errors.hpp"

namespace angproj {

void throw_bad_index(const std::string& what, long index)
{
    throw BadIndex(what + " (index " + std::to_string(index) + ")");
}

} // namespace angproj
