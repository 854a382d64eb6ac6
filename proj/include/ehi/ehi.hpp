#ifndef EHI_EHI_HPP
#define EHI_EHI_HPP

#include "cohom.hpp"
#include "combi.hpp"
#include "core.hpp"
#include "interp.hpp"
#include "ledger.hpp"
#include "qseries.hpp"
#include "torusquad.hpp"
#include "trig.hpp"
#include "verify.hpp"

#endif
