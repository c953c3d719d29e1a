#pragma once

// Umbrella header: shifted multiplicative character problems and hidden coset
// problems over F_q and Z/n, simulated classically through the abelian Fourier
// transform.

#include "cosetforge/characters.hpp"
#include "cosetforge/domain.hpp"
#include "cosetforge/error.hpp"
#include "cosetforge/fourier.hpp"
#include "cosetforge/group_algebra.hpp"
#include "cosetforge/hidden_coset.hpp"
#include "cosetforge/rational.hpp"
#include "cosetforge/rng.hpp"
#include "cosetforge/serialization.hpp"
#include "cosetforge/shift_engine.hpp"
