#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ovallab/profile_flow/flow.hpp"

using namespace ovallab;
using namespace ovallab::flow;

TEST_CASE("placeholder") { CHECK(true); }
