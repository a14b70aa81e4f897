#pragma once

#include "wsnlink/channel.hpp"
#include "wsnlink/csv.hpp"
#include "wsnlink/errors.hpp"
#include "wsnlink/link.hpp"
#include "wsnlink/modem.hpp"
#include "wsnlink/montecarlo.hpp"
#include "wsnlink/profiles.hpp"
#include "wsnlink/rng.hpp"
#include "wsnlink/solve.hpp"
#include "wsnlink/svg.hpp"
