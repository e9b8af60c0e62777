#pragma once

#include "locvar/error.hpp"
#include "locvar/regex.hpp"
#include "locvar/dfa.hpp"
#include "locvar/lang.hpp"
#include "locvar/variety.hpp"
#include "locvar/duality.hpp"
#include "locvar/automata.hpp"
#include "locvar/dmonoid.hpp"
#include "locvar/eilenberg.hpp"
#include "locvar/io.hpp"
#include "locvar/random.hpp"
