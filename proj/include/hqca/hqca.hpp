#pragma once

#include "hqca/builder.hpp"
#include "hqca/chain.hpp"
#include "hqca/circuit.hpp"
#include "hqca/dense_backend.hpp"
#include "hqca/error.hpp"
#include "hqca/evolution.hpp"
#include "hqca/rules.hpp"
#include "hqca/symbols.hpp"
#include "hqca/verify.hpp"
#include "hqca/walk.hpp"
