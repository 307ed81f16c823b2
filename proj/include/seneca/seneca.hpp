#ifndef SENECA_SENECA_HPP
#define SENECA_SENECA_HPP

#include "seneca/error.hpp"
#include "seneca/growth.hpp"
#include "seneca/cost_gain.hpp"
#include "seneca/competition.hpp"
#include "seneca/numerics/trajectory.hpp"
#include "seneca/numerics/integrate.hpp"
#include "seneca/numerics/roots.hpp"
#include "seneca/numerics/events.hpp"
#include "seneca/scenario.hpp"
#include "seneca/run.hpp"
#include "seneca/output.hpp"
#include "seneca/presets.hpp"

#endif // SENECA_SENECA_HPP
