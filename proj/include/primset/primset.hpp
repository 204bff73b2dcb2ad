/// @file primset.hpp
/// Umbrella header for the primitive-set toolkit.
#pragma once

#include "primset/common.hpp"
#include "primset/sieve.hpp"
#include "primset/primitivity.hpp"
#include "primset/slow_variation.hpp"
#include "primset/sathe_selberg.hpp"
#include "primset/prime_sequence.hpp"
#include "primset/set_construction.hpp"
#include "primset/adic_blocks.hpp"
#include "primset/config.hpp"
