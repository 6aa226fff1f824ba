#pragma once

#include "leaguelab/challenge.hpp"
#include "leaguelab/error.hpp"
#include "leaguelab/fixtures.hpp"
#include "leaguelab/ingest.hpp"
#include "leaguelab/metrics.hpp"
#include "leaguelab/model.hpp"
#include "leaguelab/render.hpp"
#include "leaguelab/schemes.hpp"
#include "leaguelab/simlab.hpp"
