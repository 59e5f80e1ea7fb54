#include <doctest.h>
#include "test_helpers.hpp"

TEST_CASE("placeholder test_config_ip") { CHECK(true); }
