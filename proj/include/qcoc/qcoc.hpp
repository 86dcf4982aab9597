#ifndef QCOC_QCOC_HPP
#define QCOC_QCOC_HPP

#include "qcoc/abelian_group.hpp"
#include "qcoc/chain_complex.hpp"
#include "qcoc/cochain_io.hpp"
#include "qcoc/coloring.hpp"
#include "qcoc/diagram.hpp"
#include "qcoc/error.hpp"
#include "qcoc/extensions.hpp"
#include "qcoc/matrix.hpp"
#include "qcoc/quandle.hpp"

namespace qcoc {

inline constexpr const char* version = "0.1.0";

}  // namespace qcoc

#endif
