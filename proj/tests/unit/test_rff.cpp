#include <doctest.h>

TEST_SUITE_BEGIN("rff");

TEST_SUITE_END();
