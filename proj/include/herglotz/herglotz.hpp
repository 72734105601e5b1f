#ifndef HERGLOTZ_HERGLOTZ_HPP
#define HERGLOTZ_HERGLOTZ_HPP

#include "herglotz/classes.hpp"
#include "herglotz/errors.hpp"
#include "herglotz/fock.hpp"
#include "herglotz/growth.hpp"
#include "herglotz/multi_index.hpp"
#include "herglotz/optuple.hpp"
#include "herglotz/pairing.hpp"
#include "herglotz/parallel.hpp"
#include "herglotz/random.hpp"
#include "herglotz/series.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace herglotz

#endif  // HERGLOTZ_HERGLOTZ_HPP
