#pragma once

#include "blowdown/errors.hpp"
#include "blowdown/exact_lattice.hpp"
#include "blowdown/manifold_ledger.hpp"
#include "blowdown/report.hpp"
#include "blowdown/surgery_calculus.hpp"
#include "blowdown/rational_surfaces.hpp"
#include "blowdown/prop_verifiers.hpp"
#include "blowdown/sw_bookkeeping.hpp"
#include "blowdown/geography.hpp"
#include "blowdown/json_io.hpp"
#include "blowdown/svg.hpp"
#include "blowdown/cli.hpp"
