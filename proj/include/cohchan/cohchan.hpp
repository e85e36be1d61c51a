#pragma once

#include "cohchan/channels.hpp"
#include "cohchan/commands.hpp"
#include "cohchan/entropies.hpp"
#include "cohchan/errors.hpp"
#include "cohchan/io.hpp"
#include "cohchan/linalg.hpp"
#include "cohchan/monotones.hpp"
#include "cohchan/properties.hpp"
#include "cohchan/qubit_examples.hpp"
#include "cohchan/random.hpp"
