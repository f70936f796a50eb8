#pragma once

#include "plwe/attack.hpp"
#include "plwe/context.hpp"
#include "plwe/cyclotomic.hpp"
#include "plwe/errors.hpp"
#include "plwe/experiment.hpp"
#include "plwe/extension.hpp"
#include "plwe/fq.hpp"
#include "plwe/poly.hpp"
#include "plwe/polyeval.hpp"
#include "plwe/ring.hpp"
#include "plwe/rng.hpp"
#include "plwe/sample_io.hpp"
#include "plwe/stats.hpp"
