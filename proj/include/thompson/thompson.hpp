#pragma once

// Umbrella header.

#include "thompson/cogrowth.hpp"
#include "thompson/counting.hpp"
#include "thompson/fordham.hpp"
#include "thompson/normal_form.hpp"
#include "thompson/oracles.hpp"
#include "thompson/parallel.hpp"
#include "thompson/report.hpp"
#include "thompson/rng.hpp"
#include "thompson/sampling.hpp"
#include "thompson/selftest.hpp"
#include "thompson/tree_pair.hpp"
#include "thompson/version.hpp"
#include "thompson/walks.hpp"
#include "thompson/words.hpp"
