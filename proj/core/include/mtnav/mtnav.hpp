#pragma once

#include "mtnav/control.hpp"
#include "mtnav/error.hpp"
#include "mtnav/geometry.hpp"
#include "mtnav/harness.hpp"
#include "mtnav/imagination.hpp"
#include "mtnav/mission.hpp"
#include "mtnav/perception.hpp"
#include "mtnav/rng.hpp"
#include "mtnav/scenario.hpp"
#include "mtnav/sim.hpp"
