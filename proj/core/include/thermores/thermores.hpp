#pragma once

#include "thermores/channel.hpp"
#include "thermores/errors.hpp"
#include "thermores/lindblad.hpp"
#include "thermores/linalg.hpp"
#include "thermores/metrics.hpp"
#include "thermores/protocol.hpp"
#include "thermores/qstate.hpp"
